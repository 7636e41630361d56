#ifndef RHEX_CONFIG_HPP_
#define RHEX_CONFIG_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "rhex/baseline.hpp"
#include "rhex/criterion.hpp"
#include "rhex/optimizer.hpp"
#include "rhex/plant.hpp"
#include "rhex/surrogate.hpp"
#include "rhex/types.hpp"

namespace rhex {

struct IniEntry {
  std::string key;
  std::string value;
  int line = 0;
};

struct IniSection {
  std::string name;
  int line = 0;
  std::vector<IniEntry> entries;
};

// Strict INI dialect: [section] headers, key = value pairs, '#' comments.
// Duplicate keys within a section are errors.
std::vector<IniSection> parse_ini(const std::string& text, const std::string& filename);

// Full experiment description; strict parsing (unknown sections/keys fatal).
struct ExperimentConfig {
  RunConfig run;
  DesignMode mode = DesignMode::kFixedSurrogate;
  Constraints constraints;
  SurrogateModel surrogate;
  PlantParams plant;
  std::vector<int> psi_resolution{15, 15};
  std::size_t psi_cap = 100000;
  WeightingScheme weighting;
  SaConfig sa;
  AprbsParams baseline;
  std::string out_dir = "out";
  bool plots = true;

  DistanceDataset build_psi() const;
  DesignProblem problem() const;

  static ExperimentConfig load(const std::filesystem::path& path);
};

// Partial loaders for `evaluate`; both accept a full experiment config file
// or a fragment containing just the needed sections.
PlantParams load_plant_spec(const std::filesystem::path& path);

struct PsiContext {
  Constraints constraints;
  std::vector<int> resolution{15, 15};
  std::size_t cap = 100000;
  WeightingScheme weighting;
  bool normalize = true;

  DistanceDataset build() const;
};

PsiContext load_psi_spec(const std::filesystem::path& path);

// Compare-command variants.
struct Variant {
  enum class Kind { kUniform, kBoost, kUniformRandom, kAprbs };
  Kind kind = Kind::kUniform;
  double rho = 1.0;       // kBoost only
  std::string label;      // verbatim variant string
};

// Grammar: "uniform" | "boost:<rho>" | "uniform-random" | "aprbs",
// comma separated. Throws ConfigError on unknown names.
std::vector<Variant> parse_variants(const std::vector<std::string>& specs);

}  // namespace rhex

#endif  // RHEX_CONFIG_HPP_
