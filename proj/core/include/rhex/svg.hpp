#ifndef RHEX_SVG_HPP_
#define RHEX_SVG_HPP_

#include <filesystem>

#include "rhex/types.hpp"

namespace rhex {

// Plot generation. All plots are rendered from previously written CSV
// artifacts, not from in-memory state, so plotting stays side-effect-free
// for the numeric pipeline.

// Signal over time as a step line.
void plot_signal_svg(const std::filesystem::path& signal_csv,
                     const std::filesystem::path& out_svg, const Interval& u_box);

// Input-space scatter with the psi grid overlay; psi points with weight
// above `base_weight` are marked in red.
void plot_input_space_svg(const std::filesystem::path& distribution_csv,
                          const std::filesystem::path& psi_csv,
                          const std::filesystem::path& out_svg, const Box& state_box,
                          double base_weight);

// Signal panel above the input-space panel in one file.
void plot_design_figure_svg(const std::filesystem::path& signal_csv,
                            const std::filesystem::path& distribution_csv,
                            const std::filesystem::path& psi_csv,
                            const std::filesystem::path& out_svg, const Interval& u_box,
                            const Box& state_box, double base_weight);

}  // namespace rhex

#endif  // RHEX_SVG_HPP_
