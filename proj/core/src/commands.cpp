#include "rhex/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>

#include "rhex/csv.hpp"
#include "rhex/plant.hpp"
#include "rhex/svg.hpp"

namespace rhex {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

void write_psi_csv(const fs::path& path, const DistanceDataset& psi) {
  CsvWriter w(path, kPsiHeader);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const auto pt = psi.points()[i];
    w.row({std::to_string(i), format_double(pt[0]), format_double(pt[1]),
           format_double(psi.weights()[i])});
  }
  w.close();
}

void write_trace_csv(const fs::path& path, const std::vector<StepTrace>& trace) {
  CsvWriter w(path, kTraceHeader);
  for (const StepTrace& t : trace) {
    w.row({std::to_string(t.k), format_double(t.j_before), format_double(t.j_after),
           std::to_string(t.accepted_moves), std::to_string(t.feasibility_rejections),
           format_double(t.theta_a), format_double(t.theta_b)});
  }
  w.close();
}

void write_regions_csv(const fs::path& path, const CoverageReport& report) {
  CsvWriter w(path, kRegionsHeader);
  for (std::size_t i = 0; i < report.regions.size(); ++i) {
    const RegionFraction& r = report.regions[i];
    w.row({std::to_string(i + 1), format_double(r.rect.dims[0].lo),
           format_double(r.rect.dims[0].hi), format_double(r.rect.dims[1].lo),
           format_double(r.rect.dims[1].hi), format_double(r.multiplier),
           format_double(r.fraction)});
  }
  w.close();
}

void write_report_csv(const fs::path& path, const CoverageReport& report) {
  CsvWriter w(path, kReportHeader);
  char runtime[32];
  std::snprintf(runtime, sizeof runtime, "%.3f", report.runtime_s);
  w.row({format_double(report.j_true), format_double(report.fill_distance),
         format_double(report.primary_region_fraction()), runtime,
         std::to_string(report.seed)});
  w.close();
}

struct MetaRow {
  std::string key;
  std::string value;
};

void write_meta_csv(const fs::path& path, const std::vector<MetaRow>& rows) {
  CsvWriter w(path, kMetaHeader);
  for (const MetaRow& r : rows) w.row({r.key, r.value});
  w.close();
}

std::vector<MetaRow> common_meta(const Constraints& c, bool normalize, std::uint64_t seed,
                                 const PlantParams& plant) {
  return {
      {"u_min", format_double(c.input_box.lo)},
      {"u_max", format_double(c.input_box.hi)},
      {"x1_min", format_double(c.state_box.dims[0].lo)},
      {"x1_max", format_double(c.state_box.dims[0].hi)},
      {"x2_min", format_double(c.state_box.dims[1].lo)},
      {"x2_max", format_double(c.state_box.dims[1].hi)},
      {"normalize", normalize ? "true" : "false"},
      {"seed", std::to_string(seed)},
      {"plant_kind", plant_kind_name(plant.kind)},
      {"plant_a", format_double(plant.a)},
      {"plant_b", format_double(plant.b)},
      {"plant_nonlinearity", nonlinearity_name(plant.nonlinearity)},
      {"plant_steepness", format_double(plant.steepness)},
      {"plant_y0", format_double(plant.y0)},
      {"plant_u0", format_double(plant.u0)},
      {"plant_noise_std", format_double(plant.noise_std)},
  };
}

void validate_signal_inputs(const ExcitationSignal& signal, const Interval& u_box) {
  for (std::size_t i = 0; i < signal.size(); ++i) {
    if (!u_box.contains(signal[i])) {
      throw ConfigError("signal sample k=" + std::to_string(i + 1) + " (u=" +
                        format_double(signal[i]) + ") violates the input box");
    }
  }
}

std::string variant_dir_name(const std::string& label) {
  std::string out = label;
  for (char& c : out) {
    if (c == ':' || c == '/' || c == '\\') c = '_';
  }
  return out;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const IoError*>(&e)) return kExitIo;
  if (dynamic_cast<const ConfigError*>(&e)) return kExitConfig;
  if (dynamic_cast<const InfeasibleError*>(&e)) return kExitInfeasible;
  if (dynamic_cast<const DivergenceError*>(&e)) return kExitInfeasible;
  return kExitInternal;
}

ExperimentConfig load_with_overrides(const std::string& config_path, const GlobalOptions& opts) {
  ExperimentConfig cfg = ExperimentConfig::load(config_path);
  if (opts.seed) cfg.run.seed = *opts.seed;
  if (opts.out_dir) cfg.out_dir = *opts.out_dir;
  return cfg;
}

// Compact form for human-facing console/summary lines; CSV artifacts carry
// the full round-trip representation.
std::string brief(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

DesignResult run_design(const ExperimentConfig& cfg, const fs::path& dir, bool quiet) {
  ensure_dir(dir);
  DesignResult result = design_signal(cfg.problem());

  write_signal_csv(dir / kSignalCsv, result.signal);
  write_distribution_csv(dir / kSurrogateDistributionCsv, result.realized);
  const PlantModel plant(cfg.plant);
  const Distribution process = process_distribution(plant, result.signal);
  write_distribution_csv(dir / kProcessDistributionCsv, process);
  write_trace_csv(dir / kTraceCsv, result.trace);
  const DistanceDataset psi = cfg.build_psi();
  write_psi_csv(dir / kPsiCsv, psi);

  auto meta = common_meta(cfg.constraints, cfg.run.normalize, cfg.run.seed, cfg.plant);
  meta.insert(meta.begin(), {{"command", "design"},
                             {"n", std::to_string(cfg.run.n)},
                             {"horizon", std::to_string(cfg.run.horizon)},
                             {"mode", mode_name(cfg.mode)}});
  meta.push_back({"surrogate_a0", format_double(cfg.surrogate.a)});
  meta.push_back({"surrogate_b0", format_double(cfg.surrogate.b)});
  meta.push_back({"weighting_base", format_double(cfg.weighting.base)});
  meta.push_back({"initial_temperature_used", format_double(result.initial_temperature_used)});
  meta.push_back({"status", result.status == DesignStatus::kCompleted ? "completed"
                            : result.status == DesignStatus::kInfeasible
                                ? "infeasible"
                                : "plant-divergence"});
  if (!result.diagnostics.empty()) meta.push_back({"diagnostics", result.diagnostics});
  write_meta_csv(dir / kMetaCsv, meta);

  if (cfg.plots) {
    plot_signal_svg(dir / kSignalCsv, dir / kSignalSvg, cfg.constraints.input_box);
    plot_input_space_svg(dir / kProcessDistributionCsv, dir / kPsiCsv, dir / kInputSpaceSvg,
                         cfg.constraints.state_box, cfg.weighting.base);
    plot_design_figure_svg(dir / kSignalCsv, dir / kProcessDistributionCsv, dir / kPsiCsv,
                           dir / kFigureSvg, cfg.constraints.input_box,
                           cfg.constraints.state_box, cfg.weighting.base);
  }

  if (!quiet) {
    std::cout << "design: wrote " << result.signal.size() << "/" << cfg.run.n
              << " samples to " << dir.string();
    if (!result.trace.empty()) {
      std::cout << " (J " << brief(result.trace.front().j_before) << " -> "
                << brief(result.trace.back().j_after) << ")";
    }
    std::cout << "\n";
    if (result.status != DesignStatus::kCompleted) {
      std::cout << "design: INCOMPLETE: " << result.diagnostics << "\n";
    }
  }
  return result;
}

CoverageReport evaluate_signal(const ExcitationSignal& signal, const PlantParams& plant,
                               const PsiContext& psi, double runtime_s, std::uint64_t seed) {
  validate_signal_inputs(signal, psi.constraints.input_box);
  const PlantModel model(plant);
  const Distribution process = process_distribution(model, signal);
  const DistanceDataset dataset = psi.build();
  CoverageReport report =
      compute_coverage(process, dataset.points(), psi.constraints.state_box, psi.normalize,
                       psi.weighting.boosts);
  report.runtime_s = runtime_s;
  report.seed = seed;
  return report;
}

void write_evaluation(const fs::path& dir, const ExcitationSignal& signal,
                      const PlantParams& plant, const PsiContext& psi,
                      const CoverageReport& report) {
  ensure_dir(dir);
  const PlantModel model(plant);
  write_distribution_csv(dir / kProcessDistributionCsv, process_distribution(model, signal));
  write_psi_csv(dir / kPsiCsv, psi.build());
  write_regions_csv(dir / kRegionsCsv, report);
  write_report_csv(dir / kReportCsv, report);

  auto meta = common_meta(psi.constraints, psi.normalize, report.seed, plant);
  meta.insert(meta.begin(), {{"command", "evaluate"},
                             {"signal_length", std::to_string(signal.size())},
                             {"psi_res1", std::to_string(psi.resolution[0])},
                             {"psi_res2", std::to_string(psi.resolution[1])}});
  write_meta_csv(dir / kMetaCsv, meta);

  std::ofstream summary(dir / kSummaryTxt, std::ios::binary);
  if (!summary) throw IoError("cannot open " + (dir / kSummaryTxt).string());
  summary << "coverage report\n"
          << "  signal length : " << signal.size() << "\n"
          << "  J_true        : " << brief(report.j_true)
          << "  (uniform weights, sum of nearest-neighbor distances)\n"
          << "  fill distance : " << brief(report.fill_distance) << "\n";
  for (std::size_t i = 0; i < report.regions.size(); ++i) {
    const RegionFraction& r = report.regions[i];
    summary << "  region " << (i + 1) << "      : [" << brief(r.rect.dims[0].lo) << ","
            << brief(r.rect.dims[0].hi) << "]x[" << brief(r.rect.dims[1].lo) << ","
            << brief(r.rect.dims[1].hi) << "] rho=" << brief(r.multiplier)
            << " fraction=" << brief(r.fraction) << "\n";
  }
  summary << "  runtime_s     : " << brief(report.runtime_s) << "\n"
          << "  seed          : " << report.seed << "\n";
}

int cmd_design(const std::string& config_path, const GlobalOptions& opts) {
  try {
    const ExperimentConfig cfg = load_with_overrides(config_path, opts);
    const DesignResult result = run_design(cfg, cfg.out_dir, opts.quiet);
    if (result.status == DesignStatus::kCompleted) return kExitOk;
    std::cerr << "design failed: " << result.diagnostics << " (partial artifacts in "
              << cfg.out_dir << ")\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "design: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

int cmd_evaluate(const std::string& signal_csv, const std::string& plant_spec,
                 const std::string& psi_spec, const GlobalOptions& opts) {
  try {
    const auto start = Clock::now();
    const ExcitationSignal signal = read_signal_csv(signal_csv);
    const PlantParams plant = load_plant_spec(plant_spec);
    const PsiContext psi = load_psi_spec(psi_spec);
    CoverageReport report =
        evaluate_signal(signal, plant, psi, 0.0, opts.seed.value_or(0));
    report.runtime_s = seconds_since(start);
    const fs::path dir = opts.out_dir.value_or("out");
    write_evaluation(dir, signal, plant, psi, report);
    if (!opts.quiet) {
      std::cout << "evaluate: J_true=" << brief(report.j_true)
                << " fill_distance=" << brief(report.fill_distance)
                << " region_fraction=" << brief(report.primary_region_fraction())
                << " -> " << dir.string() << "\n";
    }
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "evaluate: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

namespace {

struct VariantOutcome {
  std::string label;
  bool ok = false;
  CoverageReport report;
  std::string error;
  int error_code = kExitOk;
};

ExperimentConfig variant_config(const ExperimentConfig& base, const Variant& v,
                                std::uint64_t variant_seed) {
  ExperimentConfig cfg = base;
  cfg.run.seed = variant_seed;
  switch (v.kind) {
    case Variant::Kind::kUniform:
      cfg.weighting.boosts.clear();
      break;
    case Variant::Kind::kBoost:
      if (cfg.weighting.boosts.empty()) {
        throw ConfigError("variant '" + v.label +
                          "' requires at least one [boost] section in the config");
      }
      for (BoostRegion& region : cfg.weighting.boosts) region.multiplier = v.rho;
      break;
    default:
      break;
  }
  return cfg;
}

}  // namespace

int cmd_compare(const std::string& config_path, const std::vector<std::string>& variant_specs,
                const GlobalOptions& opts) {
  try {
    const ExperimentConfig base = load_with_overrides(config_path, opts);
    const std::vector<Variant> variants = parse_variants(variant_specs);
    const fs::path root = base.out_dir;
    ensure_dir(root);

    PsiContext psi_ctx;
    psi_ctx.constraints = base.constraints;
    psi_ctx.resolution = base.psi_resolution;
    psi_ctx.cap = base.psi_cap;
    psi_ctx.weighting = base.weighting;  // report regions come from the base config
    psi_ctx.normalize = base.run.normalize;

    std::vector<VariantOutcome> outcomes;
    for (std::size_t i = 0; i < variants.size(); ++i) {
      const Variant& v = variants[i];
      VariantOutcome outcome;
      outcome.label = v.label;
      const std::uint64_t variant_seed = mix_seed(base.run.seed, 9000 + i);
      const fs::path dir = root / variant_dir_name(v.label);
      const auto start = Clock::now();
      try {
        ensure_dir(dir);
        ExcitationSignal signal;
        if (v.kind == Variant::Kind::kUniformRandom || v.kind == Variant::Kind::kAprbs) {
          Rng rng(variant_seed);
          signal = v.kind == Variant::Kind::kUniformRandom
                       ? generate_uniform_random(base.run.n, base.constraints.input_box, rng)
                       : generate_aprbs(base.run.n, base.constraints.input_box, base.baseline, rng);
          write_signal_csv(dir / kSignalCsv, signal);
        } else {
          const ExperimentConfig cfg = variant_config(base, v, variant_seed);
          const DesignResult result = run_design(cfg, dir, opts.quiet);
          if (result.status != DesignStatus::kCompleted) {
            throw InfeasibleError(result.diagnostics);
          }
          signal = result.signal;
        }
        CoverageReport report = evaluate_signal(signal, base.plant, psi_ctx, 0.0, variant_seed);
        report.runtime_s = seconds_since(start);
        write_evaluation(dir / "evaluation", signal, base.plant, psi_ctx, report);
        if (base.plots) {
          // Design variants show their own weighting; baselines show the
          // base config's region of interest.
          const bool designed = fs::exists(dir / kPsiCsv);
          plot_design_figure_svg(dir / kSignalCsv,
                                 dir / "evaluation" / kProcessDistributionCsv,
                                 designed ? dir / kPsiCsv : dir / "evaluation" / kPsiCsv,
                                 dir / kFigureSvg, base.constraints.input_box,
                                 base.constraints.state_box, base.weighting.base);
        }
        outcome.ok = true;
        outcome.report = report;
      } catch (const std::exception& e) {
        outcome.error = e.what();
        outcome.error_code = exit_code_for(e);
      }
      outcomes.push_back(std::move(outcome));
    }

    CsvWriter table(root / kComparisonCsv, kComparisonHeader);
    for (const VariantOutcome& o : outcomes) {
      if (o.ok) {
        char runtime[32];
        std::snprintf(runtime, sizeof runtime, "%.3f", o.report.runtime_s);
        table.row({o.label, format_double(o.report.j_true),
                   format_double(o.report.fill_distance),
                   format_double(o.report.primary_region_fraction()), runtime,
                   std::to_string(o.report.seed)});
      } else {
        table.row({o.label, "nan", "nan", "nan", "nan", "0"});
      }
    }
    table.close();

    int exit_code = kExitOk;
    for (const VariantOutcome& o : outcomes) {
      if (!o.ok) {
        std::cerr << "compare: variant '" << o.label << "' failed: " << o.error << "\n";
        if (exit_code == kExitOk) exit_code = o.error_code;
      } else if (!opts.quiet) {
        std::cout << "compare: " << o.label << " J_true=" << brief(o.report.j_true)
                  << " fill=" << brief(o.report.fill_distance)
                  << " region_fraction=" << brief(o.report.primary_region_fraction()) << "\n";
      }
    }
    if (!opts.quiet) {
      std::cout << "compare: table written to " << (root / kComparisonCsv).string() << "\n";
    }
    return exit_code;
  } catch (const std::exception& e) {
    std::cerr << "compare: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace rhex
