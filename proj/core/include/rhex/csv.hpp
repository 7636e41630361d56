#ifndef RHEX_CSV_HPP_
#define RHEX_CSV_HPP_

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "rhex/types.hpp"

namespace rhex {

// Shortest round-trip decimal representation, locale independent.
std::string format_double(double v);

// Minimal CSV emitter; comma separated, newline terminated rows.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& header);  // throws IoError
  void row(const std::vector<std::string>& fields);
  void close();  // flushes; throws IoError on stream failure

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

// Reads a all-numeric CSV. When `expected_header` is nonempty the file header
// must match it exactly. Parse failures name the row and column.
CsvTable read_numeric_csv(const std::filesystem::path& path,
                          const std::string& expected_header = {});

// Writers/readers for the documented artifact schemas.
void write_signal_csv(const std::filesystem::path& path, const ExcitationSignal& signal);
ExcitationSignal read_signal_csv(const std::filesystem::path& path);

void write_distribution_csv(const std::filesystem::path& path, const Distribution& d);
Distribution read_distribution_csv(const std::filesystem::path& path);

inline constexpr const char* kSignalHeader = "k,u";
inline constexpr const char* kDistributionHeader = "j,x1,x2";
inline constexpr const char* kPsiHeader = "j,x1,x2,q";
inline constexpr const char* kTraceHeader =
    "k,J_before,J_after,accepted_moves,feasibility_rejections,theta_a,theta_b";
inline constexpr const char* kReportHeader = "J_true,fill_distance,region_fraction,runtime_s,seed";
inline constexpr const char* kComparisonHeader =
    "variant,J_true,fill_distance,region_fraction,runtime_s,seed";
inline constexpr const char* kRegionsHeader = "region,x1_min,x1_max,x2_min,x2_max,rho,fraction";
inline constexpr const char* kMetaHeader = "key,value";

}  // namespace rhex

#endif  // RHEX_CSV_HPP_
