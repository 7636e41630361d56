#ifndef RHEX_CRITERION_HPP_
#define RHEX_CRITERION_HPP_

#include <span>

#include "rhex/types.hpp"

namespace rhex {

// Axis-aligned boost region: weights of psi points inside `rect` (closed
// containment) are multiplied by `multiplier`.
struct BoostRegion {
  Box rect;
  double multiplier = 1.0;
};

struct WeightingScheme {
  double base = 1.0;
  std::vector<BoostRegion> boosts;

  // Validates base > 0, multipliers >= 1 and finite, rects inside state_box.
  void validate(const Box& state_box) const;
};

// The distance metric dataset: psi points with weights q >= 0.
class DistanceDataset {
 public:
  // Validates: points pairwise distinct and inside state_box, weights same
  // length, all >= 0 and finite, at least one weight > 0.
  static DistanceDataset validated(Distribution points, std::vector<double> weights,
                                   const Box& state_box);

  const Distribution& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return points_.size(); }
  std::size_t dim() const { return points_.dim(); }

 private:
  DistanceDataset(Distribution points, std::vector<double> weights)
      : points_(std::move(points)), weights_(std::move(weights)) {}
  Distribution points_;
  std::vector<double> weights_;
};

// Regular grid over state_box including the box corners. Index order is
// row-major with the first dimension slowest: for p = 2 and resolution
// (r1, r2), point j corresponds to (i1, i2) with j = i1*r2 + i2.
// Throws ConfigError if the total point count exceeds `cap`.
Distribution build_psi_grid(const Box& state_box, std::span<const int> resolution,
                            std::size_t cap = 100000);

// q(j) = base * product of multipliers over boosts whose rect contains psi(j).
std::vector<double> assign_weights(const Distribution& points, const WeightingScheme& scheme);

// Euclidean distance from `psi_point` to its nearest neighbor in `x`.
// Computed as sqrt(min of squared distances); identical to the min of
// distances since sqrt is monotone. Throws std::invalid_argument on empty x.
double nn_distance(std::span<const double> psi_point, const Distribution& x);

// Weighted nearest-neighbor criterion: J = sum_j q(j) * d_NN(psi(j), x).
// Summation order is fixed (ascending j); this is the reference path.
double criterion_j(const Distribution& x, const DistanceDataset& psi);

// Accelerated evaluation for horizon search: caches the per-psi minimum
// squared distance to a fixed prefix so candidate trajectories only pay for
// their own (<= L) points. Exactly equal to criterion_j over prefix + extra.
class CriterionCache {
 public:
  explicit CriterionCache(const DistanceDataset& psi);

  // Direct construction from already-transformed coordinates (e.g. the
  // normalized copy of a validated dataset).
  CriterionCache(const Distribution& points, std::vector<double> weights);

  std::size_t dim() const { return dim_; }

  // Recomputes the prefix minima from scratch. Prefix may be empty.
  void reset(const Distribution& prefix);

  // Folds one more realized point into the prefix minima.
  void extend(std::span<const double> pt);

  // J of the prefix alone. Requires a nonempty prefix.
  double prefix_j() const;

  // J over prefix plus `count` extra points stored flat in `extra_flat`.
  double eval(std::span<const double> extra_flat, std::size_t count) const;

  std::size_t prefix_size() const { return prefix_size_; }

 private:
  std::size_t dim_;
  std::size_t prefix_size_ = 0;
  std::vector<double> psi_flat_;
  std::vector<double> weights_;
  std::vector<double> min_sq_;  // per-psi min squared distance to prefix
};

}  // namespace rhex

#endif  // RHEX_CRITERION_HPP_
