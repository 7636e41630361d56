#ifndef RHEX_PLANT_HPP_
#define RHEX_PLANT_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "rhex/rng.hpp"
#include "rhex/types.hpp"

namespace rhex {

enum class PlantKind { kHammerstein, kLti };

// Static input map of the Hammerstein block. kAtan is f(u) = atan(s*u)/atan(s),
// normalized so f(+-1) = +-1; kIdentity is f(u) = u (the lti kind).
enum class Nonlinearity { kIdentity, kAtan };

struct PlantParams {
  PlantKind kind = PlantKind::kHammerstein;
  double a = 0.8;                            // linear pole, |a| < 1
  double b = 0.2;                            // input gain
  Nonlinearity nonlinearity = Nonlinearity::kAtan;
  double steepness = 3.0;                    // atan steepness s > 0
  double y0 = 0.0;                           // initial output
  double u0 = 0.0;                           // input coordinate of z(0)
  double noise_std = 0.0;                    // measurement noise, 0 = off
  std::uint64_t noise_seed = 0;

  void validate() const;  // throws ConfigError
};

// First-order test process: y(k) = a*y(k-1) + b*f(u(k)). Stateful,
// single-owner; copying a plant snapshots its state.
class PlantModel {
 public:
  explicit PlantModel(const PlantParams& params);

  // Applies one input and returns the measured output (state plus optional
  // seeded Gaussian measurement noise). Throws DivergenceError on overflow.
  double step(double u);

  double output() const { return y_; }
  void reset(double y0) { y_ = y0; }
  const PlantParams& params() const { return params_; }

  double static_map(double u) const;                 // f(u)
  double steady_state(double u) const;               // b*f(u)/(1-a)

 private:
  PlantParams params_;
  double y_;
  Rng noise_;
};

// Simulates a fresh copy of the plant over `signal` and returns the true
// process points z(0..N): z(0) = (u0, y0), z(j) = [u(j), y(j)]. The optional
// arguments override the plant's configured initial condition.
Distribution process_distribution(const PlantModel& plant, const ExcitationSignal& signal,
                                  std::optional<double> y0 = std::nullopt,
                                  std::optional<double> u0 = std::nullopt);

std::string plant_kind_name(PlantKind kind);
std::string nonlinearity_name(Nonlinearity nl);

}  // namespace rhex

#endif  // RHEX_PLANT_HPP_
