#ifndef RHEX_SURROGATE_HPP_
#define RHEX_SURROGATE_HPP_

#include <span>

#include "rhex/types.hpp"

namespace rhex {

// First-order ARX surrogate: y(j) = a*y(j-1) + b*u(j), point z(j) = [u(j), y(j)],
// with z(0) given by initial_state.
struct SurrogateModel {
  double a = 0.8;
  double b = 0.2;
  RegressorPoint initial_state{0.0, 0.0};  // z(0) = (u0, y0)

  double initial_output() const { return initial_state[1]; }

  // Validates |a| < 1, finite parameters, 2-dimensional finite initial state.
  static SurrogateModel validated(double a, double b, RegressorPoint initial_state);
};

// Applied inputs and measured outputs, index-aligned (pair j is (u(j), y(j))).
struct IoRecord {
  std::vector<double> u;
  std::vector<double> y;

  std::size_t size() const { return u.size(); }
  void append(double input, double output) {
    u.push_back(input);
    y.push_back(output);
  }
};

// Simulates the model over past ++ candidate and returns z(0 .. k+L-1) where
// k-1 = past length and L = candidate length; the result always includes z(0).
// Throws DivergenceError if the state becomes non-finite.
Distribution simulate(const SurrogateModel& model, std::span<const double> past,
                      std::span<const double> candidate = {});

struct RefitResult {
  SurrogateModel model;
  bool skipped = false;  // rank-deficient data or too few rows; model unchanged
  bool clipped = false;  // |a'| >= 1 clipped to sign(a')*0.999
};

// Ordinary least squares for (a, b) on rows y(j) ~ [y(j-1), u(j)], j = 2..M.
// Keeps the incumbent model (skipped=true) when fewer than 2 usable rows exist
// or the regressor matrix is rank deficient. initial_state is preserved.
RefitResult refit(const SurrogateModel& incumbent, const IoRecord& data);

// Mean squared one-step prediction error of `model` over the usable rows of
// `data` (same rows refit uses). Throws ConfigError when no rows exist.
double one_step_mse(const SurrogateModel& model, const IoRecord& data);

}  // namespace rhex

#endif  // RHEX_SURROGATE_HPP_
