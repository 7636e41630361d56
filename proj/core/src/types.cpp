#include "rhex/types.hpp"

#include <cmath>

namespace rhex {

bool all_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

bool Box::contains(std::span<const double> pt) const {
  if (pt.size() != dims.size()) return false;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (!dims[i].contains(pt[i])) return false;
  }
  return true;
}

void Distribution::append(std::span<const double> pt) {
  if (pt.size() != dim_) {
    throw std::invalid_argument("Distribution::append: dimension mismatch");
  }
  data_.insert(data_.end(), pt.begin(), pt.end());
}

Constraints Constraints::validated(Interval input_box, Box state_box) {
  if (!std::isfinite(input_box.lo) || !std::isfinite(input_box.hi)) {
    throw ConfigError("constraints: input box bounds must be finite");
  }
  if (!(input_box.lo < input_box.hi)) {
    throw ConfigError("constraints: input box requires u_min < u_max");
  }
  if (state_box.dim() == 0) {
    throw ConfigError("constraints: state box must have at least one dimension");
  }
  for (std::size_t i = 0; i < state_box.dim(); ++i) {
    const Interval& d = state_box.dims[i];
    if (!std::isfinite(d.lo) || !std::isfinite(d.hi)) {
      throw ConfigError("constraints: state box bounds must be finite (dimension " +
                        std::to_string(i + 1) + ")");
    }
    if (!(d.lo < d.hi)) {
      throw ConfigError("constraints: state box requires lo < hi (dimension " +
                        std::to_string(i + 1) + ")");
    }
  }
  const Interval& proj = state_box.dims[0];
  if (input_box.lo < proj.lo || input_box.hi > proj.hi) {
    throw ConfigError(
        "constraints: input box must be contained in the state box projection "
        "onto the input coordinate");
  }
  Constraints c;
  c.input_box = input_box;
  c.state_box = std::move(state_box);
  return c;
}

void RunConfig::validate() const {
  if (n < 1) throw ConfigError("run: n must be >= 1");
  if (horizon < 1 || horizon > n) {
    throw ConfigError("run: horizon must satisfy 1 <= horizon <= n");
  }
}

Normalizer::Normalizer(const Box& box) {
  lo_.reserve(box.dim());
  width_.reserve(box.dim());
  inv_width_.reserve(box.dim());
  for (std::size_t i = 0; i < box.dim(); ++i) {
    const Interval& d = box.dims[i];
    const double w = d.hi - d.lo;
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw ConfigError("normalizer: degenerate box (dimension " +
                        std::to_string(i + 1) + ")");
    }
    lo_.push_back(d.lo);
    width_.push_back(w);
    inv_width_.push_back(1.0 / w);
  }
}

void Normalizer::normalize(std::span<const double> in, std::span<double> out) const {
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    out[i] = (in[i] - lo_[i]) * inv_width_[i];
  }
}

void Normalizer::denormalize(std::span<const double> in, std::span<double> out) const {
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    out[i] = lo_[i] + in[i] * width_[i];
  }
}

RegressorPoint Normalizer::normalize(const RegressorPoint& p) const {
  RegressorPoint out(p.size());
  normalize(p, out);
  return out;
}

RegressorPoint Normalizer::denormalize(const RegressorPoint& p) const {
  RegressorPoint out(p.size());
  denormalize(p, out);
  return out;
}

Distribution Normalizer::normalize(const Distribution& d) const {
  Distribution out(d.dim());
  out.reserve(d.size());
  std::vector<double> buf(d.dim());
  for (std::size_t i = 0; i < d.size(); ++i) {
    normalize(d[i], buf);
    out.append(buf);
  }
  return out;
}

RegressorPoint normalize_point(const RegressorPoint& x, const Constraints& c) {
  return Normalizer(c.state_box).normalize(x);
}

std::string mode_name(DesignMode mode) {
  return mode == DesignMode::kFixedSurrogate ? "fixed-surrogate" : "active-learning";
}

}  // namespace rhex
