#ifndef RHEX_REPORT_HPP_
#define RHEX_REPORT_HPP_

#include <cstdint>
#include <span>

#include "rhex/criterion.hpp"
#include "rhex/types.hpp"

namespace rhex {

struct RegionFraction {
  Box rect;
  double multiplier = 1.0;
  double fraction = 0.0;  // share of process points inside rect (closed)
};

// Coverage metrics of a process distribution against a psi dataset.
// j_true and fill_distance use uniform weights; both are computed in
// normalized coordinates when `normalize` is set.
struct CoverageReport {
  double j_true = 0.0;         // sum of nearest-neighbor distances over psi
  double fill_distance = 0.0;  // max nearest-neighbor distance over psi
  std::vector<RegionFraction> regions;
  double runtime_s = 0.0;
  std::uint64_t seed = 0;

  // The canonical region_fraction column: first region, or 1 when none.
  double primary_region_fraction() const {
    return regions.empty() ? 1.0 : regions.front().fraction;
  }
};

CoverageReport compute_coverage(const Distribution& process_points, const Distribution& psi_points,
                                const Box& state_box, bool normalize,
                                std::span<const BoostRegion> regions);

}  // namespace rhex

#endif  // RHEX_REPORT_HPP_
