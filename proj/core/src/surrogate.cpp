#include "rhex/surrogate.hpp"

#include <array>
#include <cmath>

namespace rhex {

SurrogateModel SurrogateModel::validated(double a, double b, RegressorPoint initial_state) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw ConfigError("surrogate: parameters must be finite");
  }
  if (!(std::abs(a) < 1.0)) {
    throw ConfigError("surrogate: |a| < 1 required for stable simulation");
  }
  if (initial_state.size() != 2 || !all_finite(initial_state)) {
    throw ConfigError("surrogate: initial state must be a finite point (u0, y0)");
  }
  SurrogateModel m;
  m.a = a;
  m.b = b;
  m.initial_state = std::move(initial_state);
  return m;
}

Distribution simulate(const SurrogateModel& model, std::span<const double> past,
                      std::span<const double> candidate) {
  Distribution out(2);
  out.reserve(past.size() + candidate.size() + 1);
  out.append(model.initial_state);
  double y = model.initial_output();
  auto advance = [&](double u) {
    y = model.a * y + model.b * u;
    if (!std::isfinite(y)) {
      throw DivergenceError("surrogate: state became non-finite during simulation");
    }
    const std::array<double, 2> z{u, y};
    out.append(z);
  };
  for (double u : past) advance(u);
  for (double u : candidate) advance(u);
  return out;
}

namespace {

// Accumulated normal equations for rows y(j) ~ [y(j-1), u(j)], j = 2..M.
struct NormalEq {
  double s11 = 0, s12 = 0, s22 = 0, b1 = 0, b2 = 0;
  std::size_t rows = 0;
};

NormalEq accumulate(const IoRecord& data) {
  NormalEq e;
  for (std::size_t j = 1; j < data.size(); ++j) {
    const double x1 = data.y[j - 1];
    const double x2 = data.u[j];
    const double t = data.y[j];
    e.s11 += x1 * x1;
    e.s12 += x1 * x2;
    e.s22 += x2 * x2;
    e.b1 += x1 * t;
    e.b2 += x2 * t;
    ++e.rows;
  }
  return e;
}

}  // namespace

RefitResult refit(const SurrogateModel& incumbent, const IoRecord& data) {
  RefitResult r{incumbent, true, false};
  const NormalEq e = accumulate(data);
  if (e.rows < 2) return r;

  const double det = e.s11 * e.s22 - e.s12 * e.s12;
  const double scale = e.s11 * e.s22;
  if (!(det > 1e-12 * scale) || !std::isfinite(det)) return r;  // rank deficient

  double a = (e.b1 * e.s22 - e.b2 * e.s12) / det;
  double b = (e.s11 * e.b2 - e.s12 * e.b1) / det;
  if (!std::isfinite(a) || !std::isfinite(b)) return r;

  r.skipped = false;
  if (std::abs(a) >= 1.0) {
    a = (a < 0 ? -1.0 : 1.0) * 0.999;
    r.clipped = true;
  }
  r.model.a = a;
  r.model.b = b;
  return r;
}

double one_step_mse(const SurrogateModel& model, const IoRecord& data) {
  if (data.size() < 2) {
    throw ConfigError("one_step_mse: need at least 2 io pairs");
  }
  double sse = 0.0;
  std::size_t rows = 0;
  for (std::size_t j = 1; j < data.size(); ++j) {
    const double pred = model.a * data.y[j - 1] + model.b * data.u[j];
    const double err = data.y[j] - pred;
    sse += err * err;
    ++rows;
  }
  return sse / static_cast<double>(rows);
}

}  // namespace rhex
