#include "rhex/report.hpp"

#include <algorithm>

namespace rhex {

CoverageReport compute_coverage(const Distribution& process_points, const Distribution& psi_points,
                                const Box& state_box, bool normalize,
                                std::span<const BoostRegion> regions) {
  if (process_points.empty()) {
    throw ConfigError("coverage: process distribution must be nonempty");
  }
  CoverageReport report;

  const Distribution* x = &process_points;
  const Distribution* psi = &psi_points;
  Distribution x_norm(process_points.dim());
  Distribution psi_norm(psi_points.dim());
  if (normalize) {
    const Normalizer norm(state_box);
    x_norm = norm.normalize(process_points);
    psi_norm = norm.normalize(psi_points);
    x = &x_norm;
    psi = &psi_norm;
  }

  double sum = 0.0;
  double max_gap = 0.0;
  for (std::size_t i = 0; i < psi->size(); ++i) {
    const double d = nn_distance((*psi)[i], *x);
    sum += d;
    max_gap = std::max(max_gap, d);
  }
  report.j_true = sum;
  report.fill_distance = max_gap;

  for (const BoostRegion& region : regions) {
    std::size_t inside = 0;
    for (std::size_t i = 0; i < process_points.size(); ++i) {
      if (region.rect.contains(process_points[i])) ++inside;
    }
    report.regions.push_back(
        {region.rect, region.multiplier,
         static_cast<double>(inside) / static_cast<double>(process_points.size())});
  }
  return report;
}

}  // namespace rhex
