#ifndef RHEX_TYPES_HPP_
#define RHEX_TYPES_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rhex/errors.hpp"

namespace rhex {

// A point in the model input space, dimension p.
using RegressorPoint = std::vector<double>;

// Closed interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v) const { return v >= lo && v <= hi; }
  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  double clamp(double v) const { return v < lo ? lo : (v > hi ? hi : v); }
};

// Axis-aligned box in R^p.
struct Box {
  std::vector<Interval> dims;

  std::size_t dim() const { return dims.size(); }
  bool contains(std::span<const double> pt) const;
};

// Ordered set of regressor points, stored flat (row-major).
class Distribution {
 public:
  explicit Distribution(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : data_.size() / dim_; }
  bool empty() const { return data_.empty(); }

  void append(std::span<const double> pt);
  std::span<const double> operator[](std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  RegressorPoint point(std::size_t i) const {
    auto s = (*this)[i];
    return RegressorPoint(s.begin(), s.end());
  }
  const std::vector<double>& data() const { return data_; }
  void reserve(std::size_t n) { data_.reserve(n * dim_); }
  void clear() { data_.clear(); }

 private:
  std::size_t dim_;
  std::vector<double> data_;
};

// Designed input sequence u(1..N); append-only during a run.
class ExcitationSignal {
 public:
  ExcitationSignal() = default;
  explicit ExcitationSignal(std::vector<double> samples) : samples_(std::move(samples)) {}

  const std::vector<double>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  double operator[](std::size_t i) const { return samples_[i]; }
  void append(double u) { samples_.push_back(u); }

 private:
  std::vector<double> samples_;
};

// Input box U and model-input-space box X.
struct Constraints {
  Interval input_box;  // U
  Box state_box;       // X, dimension p; dimension 0 is the input coordinate

  std::size_t dim() const { return state_box.dim(); }

  // Validates: finite bounds, lo < hi everywhere, U contained in the
  // projection of X onto the input coordinate.
  static Constraints validated(Interval input_box, Box state_box);
};

enum class DesignMode { kFixedSurrogate, kActiveLearning };

struct RunConfig {
  int n = 0;                  // total signal length N
  int horizon = 1;            // time horizon L
  std::uint64_t seed = 1;
  bool normalize = true;      // per-dimension scaling of distances

  void validate() const;      // throws ConfigError
};

// Affine bijection mapping a state box onto [0,1]^p.
class Normalizer {
 public:
  explicit Normalizer(const Box& box);  // throws ConfigError on degenerate dims

  std::size_t dim() const { return lo_.size(); }
  void normalize(std::span<const double> in, std::span<double> out) const;
  void denormalize(std::span<const double> in, std::span<double> out) const;
  RegressorPoint normalize(const RegressorPoint& p) const;
  RegressorPoint denormalize(const RegressorPoint& p) const;
  Distribution normalize(const Distribution& d) const;

 private:
  std::vector<double> lo_;
  std::vector<double> width_;
  std::vector<double> inv_width_;
};

// normalize_point / denormalize in one call each.
RegressorPoint normalize_point(const RegressorPoint& x, const Constraints& c);

bool all_finite(std::span<const double> v);

std::string mode_name(DesignMode mode);

}  // namespace rhex

#endif  // RHEX_TYPES_HPP_
