#ifndef RHEX_COMMANDS_HPP_
#define RHEX_COMMANDS_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rhex/config.hpp"
#include "rhex/optimizer.hpp"
#include "rhex/report.hpp"

namespace rhex {

// Exit codes (documented in the README).
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;       // config / validation / parse errors
inline constexpr int kExitInfeasible = 3;   // design-infeasible, plant divergence
inline constexpr int kExitIo = 4;           // filesystem failures
inline constexpr int kExitInternal = 5;

struct GlobalOptions {
  std::optional<std::uint64_t> seed;      // overrides the config seed
  std::optional<std::string> out_dir;     // overrides [output] dir
  bool quiet = false;
};

// Artifact filenames within an output directory.
inline constexpr const char* kSignalCsv = "signal.csv";
inline constexpr const char* kSurrogateDistributionCsv = "surrogate_distribution.csv";
inline constexpr const char* kProcessDistributionCsv = "process_distribution.csv";
inline constexpr const char* kTraceCsv = "trace.csv";
inline constexpr const char* kPsiCsv = "psi.csv";
inline constexpr const char* kMetaCsv = "meta.csv";
inline constexpr const char* kReportCsv = "report.csv";
inline constexpr const char* kRegionsCsv = "regions.csv";
inline constexpr const char* kComparisonCsv = "comparison.csv";
inline constexpr const char* kSummaryTxt = "summary.txt";
inline constexpr const char* kSignalSvg = "signal.svg";
inline constexpr const char* kInputSpaceSvg = "input_space.svg";
inline constexpr const char* kFigureSvg = "figure.svg";

// Throwing helpers shared by the commands and the test suites.

// Runs the design and writes all design artifacts into `dir`.
DesignResult run_design(const ExperimentConfig& cfg, const std::filesystem::path& dir,
                        bool quiet);

// Simulates the plant over `signal` and computes the coverage report against
// the psi context. `runtime_s` and `seed` are recorded verbatim.
CoverageReport evaluate_signal(const ExcitationSignal& signal, const PlantParams& plant,
                               const PsiContext& psi, double runtime_s, std::uint64_t seed);

// Writes evaluate artifacts (process csv, psi csv, regions csv, report csv,
// meta csv, summary txt) into `dir`.
void write_evaluation(const std::filesystem::path& dir, const ExcitationSignal& signal,
                      const PlantParams& plant, const PsiContext& psi,
                      const CoverageReport& report);

// CLI entry points; never throw, print diagnostics, return an exit code.
int cmd_design(const std::string& config_path, const GlobalOptions& opts);
int cmd_evaluate(const std::string& signal_csv, const std::string& plant_spec,
                 const std::string& psi_spec, const GlobalOptions& opts);
int cmd_compare(const std::string& config_path, const std::vector<std::string>& variant_specs,
                const GlobalOptions& opts);

}  // namespace rhex

#endif  // RHEX_COMMANDS_HPP_
