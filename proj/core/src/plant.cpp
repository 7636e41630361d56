#include "rhex/plant.hpp"

#include <array>
#include <cmath>

namespace rhex {

void PlantParams::validate() const {
  if (!std::isfinite(a) || !(std::abs(a) < 1.0)) {
    throw ConfigError("plant: |a| < 1 required");
  }
  if (!std::isfinite(b)) throw ConfigError("plant: b must be finite");
  if (nonlinearity == Nonlinearity::kAtan && !(steepness > 0.0)) {
    throw ConfigError("plant: atan steepness must be > 0");
  }
  if (!std::isfinite(y0) || !std::isfinite(u0)) {
    throw ConfigError("plant: initial condition must be finite");
  }
  if (!(noise_std >= 0.0) || !std::isfinite(noise_std)) {
    throw ConfigError("plant: noise std must be finite and >= 0");
  }
  if (kind == PlantKind::kLti && nonlinearity != Nonlinearity::kIdentity) {
    throw ConfigError("plant: lti kind requires the identity nonlinearity");
  }
}

PlantModel::PlantModel(const PlantParams& params)
    : params_(params), y_(params.y0), noise_(params.noise_seed) {
  params_.validate();
}

double PlantModel::static_map(double u) const {
  switch (params_.nonlinearity) {
    case Nonlinearity::kIdentity:
      return u;
    case Nonlinearity::kAtan:
      return std::atan(params_.steepness * u) / std::atan(params_.steepness);
  }
  return u;
}

double PlantModel::steady_state(double u) const {
  return params_.b * static_map(u) / (1.0 - params_.a);
}

double PlantModel::step(double u) {
  y_ = params_.a * y_ + params_.b * static_map(u);
  if (!std::isfinite(y_)) {
    throw DivergenceError("plant: output became non-finite");
  }
  double measured = y_;
  if (params_.noise_std > 0.0) {
    measured += params_.noise_std * noise_.normal();
  }
  return measured;
}

Distribution process_distribution(const PlantModel& plant, const ExcitationSignal& signal,
                                  std::optional<double> y0, std::optional<double> u0) {
  PlantParams params = plant.params();
  if (y0) params.y0 = *y0;
  if (u0) params.u0 = *u0;
  PlantModel sim(params);

  Distribution out(2);
  out.reserve(signal.size() + 1);
  out.append(std::array<double, 2>{params.u0, params.y0});
  for (double u : signal.samples()) {
    const double y = sim.step(u);
    out.append(std::array<double, 2>{u, y});
  }
  return out;
}

std::string plant_kind_name(PlantKind kind) {
  return kind == PlantKind::kHammerstein ? "hammerstein" : "lti";
}

std::string nonlinearity_name(Nonlinearity nl) {
  return nl == Nonlinearity::kIdentity ? "identity" : "atan";
}

}  // namespace rhex
