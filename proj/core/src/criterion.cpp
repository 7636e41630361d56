#include "rhex/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rhex {

void WeightingScheme::validate(const Box& state_box) const {
  if (!(base > 0.0) || !std::isfinite(base)) {
    throw ConfigError("weighting: base weight must be positive and finite");
  }
  for (std::size_t r = 0; r < boosts.size(); ++r) {
    const BoostRegion& boost = boosts[r];
    if (!(boost.multiplier >= 1.0) || !std::isfinite(boost.multiplier)) {
      throw ConfigError("weighting: boost multiplier must be finite and >= 1 (region " +
                        std::to_string(r + 1) + ")");
    }
    if (boost.rect.dim() != state_box.dim()) {
      throw ConfigError("weighting: boost rect dimension mismatch (region " +
                        std::to_string(r + 1) + ")");
    }
    for (std::size_t i = 0; i < state_box.dim(); ++i) {
      const Interval& b = boost.rect.dims[i];
      const Interval& s = state_box.dims[i];
      if (!(b.lo <= b.hi) || b.lo < s.lo || b.hi > s.hi) {
        throw ConfigError("weighting: boost rect must lie inside the state box (region " +
                          std::to_string(r + 1) + ")");
      }
    }
  }
}

DistanceDataset DistanceDataset::validated(Distribution points, std::vector<double> weights,
                                           const Box& state_box) {
  if (points.empty()) throw ConfigError("psi: dataset must be nonempty");
  if (points.dim() != state_box.dim()) {
    throw ConfigError("psi: point dimension does not match the state box");
  }
  if (weights.size() != points.size()) {
    throw ConfigError("psi: weights length must equal point count");
  }
  bool any_positive = false;
  for (double q : weights) {
    if (!(q >= 0.0) || !std::isfinite(q)) {
      throw ConfigError("psi: weights must be finite and >= 0");
    }
    any_positive |= q > 0.0;
  }
  if (!any_positive) throw ConfigError("psi: at least one weight must be > 0");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!all_finite(points[i])) throw ConfigError("psi: points must be finite");
    if (!state_box.contains(points[i])) {
      throw ConfigError("psi: point " + std::to_string(i + 1) + " lies outside the state box");
    }
  }
  // Pairwise distinctness via lexicographic sort of indices.
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto less = [&](std::size_t a, std::size_t b) {
    auto pa = points[a];
    auto pb = points[b];
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  };
  std::sort(order.begin(), order.end(), less);
  for (std::size_t i = 1; i < order.size(); ++i) {
    auto pa = points[order[i - 1]];
    auto pb = points[order[i]];
    if (std::equal(pa.begin(), pa.end(), pb.begin())) {
      throw ConfigError("psi: points must be pairwise distinct");
    }
  }
  return DistanceDataset(std::move(points), std::move(weights));
}

Distribution build_psi_grid(const Box& state_box, std::span<const int> resolution,
                            std::size_t cap) {
  if (resolution.size() != state_box.dim()) {
    throw ConfigError("psi grid: resolution must give one count per dimension");
  }
  std::size_t total = 1;
  for (int r : resolution) {
    if (r < 2) throw ConfigError("psi grid: each resolution must be >= 2");
    if (total > cap / static_cast<std::size_t>(r)) {
      throw ConfigError("psi grid: point count exceeds cap of " + std::to_string(cap));
    }
    total *= static_cast<std::size_t>(r);
  }
  if (total > cap) {
    throw ConfigError("psi grid: point count exceeds cap of " + std::to_string(cap));
  }

  const std::size_t p = state_box.dim();
  Distribution out(p);
  out.reserve(total);
  std::vector<std::size_t> idx(p, 0);
  std::vector<double> pt(p);
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (std::size_t d = 0; d < p; ++d) {
      const Interval& iv = state_box.dims[d];
      const double frac = static_cast<double>(idx[d]) / static_cast<double>(resolution[d] - 1);
      pt[d] = iv.lo + frac * (iv.hi - iv.lo);
    }
    out.append(pt);
    // Increment with the last dimension fastest (first dimension slowest).
    for (std::size_t d = p; d-- > 0;) {
      if (++idx[d] < static_cast<std::size_t>(resolution[d])) break;
      idx[d] = 0;
    }
  }
  return out;
}

std::vector<double> assign_weights(const Distribution& points, const WeightingScheme& scheme) {
  std::vector<double> q(points.size(), scheme.base);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (const BoostRegion& boost : scheme.boosts) {
      if (boost.rect.contains(points[i])) q[i] *= boost.multiplier;
    }
  }
  return q;
}

namespace {

inline double squared_distance(std::span<const double> a, const double* b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace

double nn_distance(std::span<const double> psi_point, const Distribution& x) {
  if (x.empty()) {
    throw std::invalid_argument("nn_distance: distribution must be nonempty");
  }
  if (x.dim() != psi_point.size()) {
    throw std::invalid_argument("nn_distance: dimension mismatch");
  }
  double best = std::numeric_limits<double>::infinity();
  const double* data = x.data().data();
  for (std::size_t i = 0; i < x.size(); ++i) {
    best = std::min(best, squared_distance(psi_point, data + i * x.dim()));
  }
  return std::sqrt(best);
}

double criterion_j(const Distribution& x, const DistanceDataset& psi) {
  double j = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    j += psi.weights()[i] * nn_distance(psi.points()[i], x);
  }
  return j;
}

CriterionCache::CriterionCache(const DistanceDataset& psi)
    : CriterionCache(psi.points(), psi.weights()) {}

CriterionCache::CriterionCache(const Distribution& points, std::vector<double> weights)
    : dim_(points.dim()), psi_flat_(points.data()), weights_(std::move(weights)) {
  if (weights_.size() != points.size()) {
    throw std::invalid_argument("CriterionCache: weights length mismatch");
  }
  min_sq_.assign(weights_.size(), std::numeric_limits<double>::infinity());
}

void CriterionCache::reset(const Distribution& prefix) {
  if (!prefix.empty() && prefix.dim() != dim_) {
    throw std::invalid_argument("CriterionCache::reset: dimension mismatch");
  }
  min_sq_.assign(weights_.size(), std::numeric_limits<double>::infinity());
  prefix_size_ = 0;
  for (std::size_t i = 0; i < prefix.size(); ++i) extend(prefix[i]);
}

void CriterionCache::extend(std::span<const double> pt) {
  if (pt.size() != dim_) {
    throw std::invalid_argument("CriterionCache::extend: dimension mismatch");
  }
  for (std::size_t j = 0; j < min_sq_.size(); ++j) {
    const double d = squared_distance(pt, psi_flat_.data() + j * dim_);
    if (d < min_sq_[j]) min_sq_[j] = d;
  }
  ++prefix_size_;
}

double CriterionCache::prefix_j() const {
  if (prefix_size_ == 0) {
    throw std::invalid_argument("CriterionCache::prefix_j: empty prefix");
  }
  double j = 0.0;
  for (std::size_t i = 0; i < min_sq_.size(); ++i) {
    j += weights_[i] * std::sqrt(min_sq_[i]);
  }
  return j;
}

double CriterionCache::eval(std::span<const double> extra_flat, std::size_t count) const {
  if (prefix_size_ == 0 && count == 0) {
    throw std::invalid_argument("CriterionCache::eval: empty distribution");
  }
  double j = 0.0;
  for (std::size_t i = 0; i < min_sq_.size(); ++i) {
    const double* psi = psi_flat_.data() + i * dim_;
    double m = min_sq_[i];
    for (std::size_t c = 0; c < count; ++c) {
      const double* pt = extra_flat.data() + c * dim_;
      double s = 0.0;
      for (std::size_t d = 0; d < dim_; ++d) {
        const double diff = pt[d] - psi[d];
        s += diff * diff;
      }
      if (s < m) m = s;
    }
    j += weights_[i] * std::sqrt(m);
  }
  return j;
}

}  // namespace rhex
