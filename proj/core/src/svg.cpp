#include "rhex/svg.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "rhex/csv.hpp"
#include "rhex/errors.hpp"

namespace rhex {

namespace {

constexpr double kPanelW = 420.0;
constexpr double kPanelH = 300.0;
constexpr double kMargin = 46.0;

std::string num(double v) { return format_double(v); }

// Maps data coordinates into one panel's pixel rectangle (y axis flipped).
struct PanelMap {
  double x0, y0;  // top-left pixel corner of the plotting area
  double w, h;
  double xmin, xmax, ymin, ymax;

  double px(double x) const { return x0 + (x - xmin) / (xmax - xmin) * w; }
  double py(double y) const { return y0 + h - (y - ymin) / (ymax - ymin) * h; }
};

void panel_frame(std::ostringstream& svg, const PanelMap& m, const std::string& title,
                 const std::string& xlabel, const std::string& ylabel) {
  svg << "<rect x='" << num(m.x0) << "' y='" << num(m.y0) << "' width='" << num(m.w)
      << "' height='" << num(m.h) << "' fill='white' stroke='black' stroke-width='1'/>\n";
  svg << "<text x='" << num(m.x0 + m.w / 2) << "' y='" << num(m.y0 - 8)
      << "' text-anchor='middle' font-size='13'>" << title << "</text>\n";
  svg << "<text x='" << num(m.x0 + m.w / 2) << "' y='" << num(m.y0 + m.h + 30)
      << "' text-anchor='middle' font-size='11'>" << xlabel << "</text>\n";
  svg << "<text x='" << num(m.x0 - 34) << "' y='" << num(m.y0 + m.h / 2)
      << "' text-anchor='middle' font-size='11' transform='rotate(-90 " << num(m.x0 - 34) << " "
      << num(m.y0 + m.h / 2) << ")'>" << ylabel << "</text>\n";
  // Corner tick labels.
  svg << "<text x='" << num(m.x0) << "' y='" << num(m.y0 + m.h + 14)
      << "' text-anchor='middle' font-size='10'>" << num(m.xmin) << "</text>\n";
  svg << "<text x='" << num(m.x0 + m.w) << "' y='" << num(m.y0 + m.h + 14)
      << "' text-anchor='middle' font-size='10'>" << num(m.xmax) << "</text>\n";
  svg << "<text x='" << num(m.x0 - 6) << "' y='" << num(m.y0 + m.h + 3)
      << "' text-anchor='end' font-size='10'>" << num(m.ymin) << "</text>\n";
  svg << "<text x='" << num(m.x0 - 6) << "' y='" << num(m.y0 + 3)
      << "' text-anchor='end' font-size='10'>" << num(m.ymax) << "</text>\n";
}

void signal_panel(std::ostringstream& svg, const CsvTable& signal, const Interval& u_box,
                  double top) {
  const double n = signal.rows.empty() ? 1.0 : static_cast<double>(signal.rows.size());
  PanelMap m{kMargin, top, kPanelW, kPanelH * 0.6, 0.0, n, u_box.lo, u_box.hi};
  panel_frame(svg, m, "excitation signal", "k", "u");
  if (signal.rows.empty()) return;
  svg << "<polyline fill='none' stroke='#1f77b4' stroke-width='1' points='";
  double prev_y = m.py(signal.rows.front()[1]);
  svg << num(m.px(0.0)) << "," << num(prev_y) << " ";
  for (const auto& r : signal.rows) {
    const double x = m.px(r[0]);
    const double y = m.py(r[1]);
    svg << num(x) << "," << num(prev_y) << " " << num(x) << "," << num(y) << " ";
    prev_y = y;
  }
  svg << "'/>\n";
}

void scatter_panel(std::ostringstream& svg, const CsvTable& dist,
                   const std::vector<std::vector<double>>* psi_rows, const Box& state_box,
                   double base_weight, double top) {
  PanelMap m{kMargin,
             top,
             kPanelW,
             kPanelH,
             state_box.dims[0].lo,
             state_box.dims[0].hi,
             state_box.dims[1].lo,
             state_box.dims[1].hi};
  panel_frame(svg, m, "input space", "x1", "x2");
  if (psi_rows) {
    for (const auto& r : *psi_rows) {
      const bool boosted = r.size() >= 4 && r[3] > base_weight;
      if (boosted) {
        svg << "<circle cx='" << num(m.px(r[1])) << "' cy='" << num(m.py(r[2]))
            << "' r='3' fill='#d62728'/>\n";
      } else {
        svg << "<rect x='" << num(m.px(r[1]) - 1.4) << "' y='" << num(m.py(r[2]) - 1.4)
            << "' width='2.8' height='2.8' fill='#bbbbbb'/>\n";
      }
    }
  }
  for (const auto& r : dist.rows) {
    // Points may leave the state box; clip to the frame.
    if (r[1] < m.xmin || r[1] > m.xmax || r[2] < m.ymin || r[2] > m.ymax) continue;
    svg << "<circle cx='" << num(m.px(r[1])) << "' cy='" << num(m.py(r[2]))
        << "' r='2.2' fill='#1f77b4' fill-opacity='0.75'/>\n";
  }
}

void write_svg(const std::filesystem::path& path, const std::string& body, double width,
               double height) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << num(width) << "' height='"
      << num(height) << "' viewBox='0 0 " << num(width) << " " << num(height) << "'>\n"
      << body << "</svg>\n";
  if (!out) throw IoError("write failure on " + path.string());
}

}  // namespace

void plot_signal_svg(const std::filesystem::path& signal_csv,
                     const std::filesystem::path& out_svg, const Interval& u_box) {
  const CsvTable signal = read_numeric_csv(signal_csv, kSignalHeader);
  std::ostringstream svg;
  signal_panel(svg, signal, u_box, 24.0);
  write_svg(out_svg, svg.str(), kPanelW + 2 * kMargin, kPanelH * 0.6 + 80.0);
}

void plot_input_space_svg(const std::filesystem::path& distribution_csv,
                          const std::filesystem::path& psi_csv,
                          const std::filesystem::path& out_svg, const Box& state_box,
                          double base_weight) {
  const CsvTable dist = read_numeric_csv(distribution_csv, kDistributionHeader);
  CsvTable psi;
  const std::vector<std::vector<double>>* psi_rows = nullptr;
  if (!psi_csv.empty()) {
    psi = read_numeric_csv(psi_csv, kPsiHeader);
    psi_rows = &psi.rows;
  }
  std::ostringstream svg;
  scatter_panel(svg, dist, psi_rows, state_box, base_weight, 24.0);
  write_svg(out_svg, svg.str(), kPanelW + 2 * kMargin, kPanelH + 80.0);
}

void plot_design_figure_svg(const std::filesystem::path& signal_csv,
                            const std::filesystem::path& distribution_csv,
                            const std::filesystem::path& psi_csv,
                            const std::filesystem::path& out_svg, const Interval& u_box,
                            const Box& state_box, double base_weight) {
  const CsvTable signal = read_numeric_csv(signal_csv, kSignalHeader);
  const CsvTable dist = read_numeric_csv(distribution_csv, kDistributionHeader);
  CsvTable psi;
  const std::vector<std::vector<double>>* psi_rows = nullptr;
  if (!psi_csv.empty()) {
    psi = read_numeric_csv(psi_csv, kPsiHeader);
    psi_rows = &psi.rows;
  }
  std::ostringstream svg;
  signal_panel(svg, signal, u_box, 24.0);
  scatter_panel(svg, dist, psi_rows, state_box, base_weight, kPanelH * 0.6 + 100.0);
  write_svg(out_svg, svg.str(), kPanelW + 2 * kMargin, kPanelH * 0.6 + kPanelH + 170.0);
}

}  // namespace rhex
