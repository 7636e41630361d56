#include "rhex/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace rhex {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<IniSection> parse_ini(const std::string& text, const std::string& filename) {
  std::vector<IniSection> sections;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const auto comment = raw.find('#');
    std::string line = trim(comment == std::string::npos ? raw : raw.substr(0, comment));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ParseError(filename, lineno, "malformed section header");
      }
      sections.push_back({trim(line.substr(1, line.size() - 2)), lineno, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(filename, lineno, "expected 'key = value'");
    }
    if (sections.empty()) {
      throw ParseError(filename, lineno, "key outside of any [section]");
    }
    IniEntry e{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno};
    if (e.key.empty()) throw ParseError(filename, lineno, "empty key");
    for (const IniEntry& prev : sections.back().entries) {
      if (prev.key == e.key) {
        throw ParseError(filename, lineno,
                         "duplicate key '" + e.key + "' in [" + sections.back().name + "]");
      }
    }
    sections.back().entries.push_back(std::move(e));
  }
  return sections;
}

namespace {

// Tracks key consumption so unknown keys can be reported with their line.
class SectionReader {
 public:
  SectionReader(const IniSection* section, std::string filename)
      : section_(section), filename_(std::move(filename)) {}

  bool present() const { return section_ != nullptr; }

  const IniEntry* find(const std::string& key) {
    if (!section_) return nullptr;
    for (const IniEntry& e : section_->entries) {
      if (e.key == key) {
        consumed_.insert(key);
        return &e;
      }
    }
    return nullptr;
  }

  double number(const std::string& key, double def) {
    const IniEntry* e = find(key);
    return e ? parse_number(*e) : def;
  }

  double require_number(const std::string& key) {
    const IniEntry* e = find(key);
    if (!e) {
      throw ParseError(filename_, section_ ? section_->line : 0,
                       "[" + name() + "] missing required key '" + key + "'");
    }
    return parse_number(*e);
  }

  long long integer(const std::string& key, long long def) {
    const IniEntry* e = find(key);
    if (!e) return def;
    return parse_integer(*e);
  }

  long long require_integer(const std::string& key) {
    const IniEntry* e = find(key);
    if (!e) {
      throw ParseError(filename_, section_ ? section_->line : 0,
                       "[" + name() + "] missing required key '" + key + "'");
    }
    return parse_integer(*e);
  }

  bool boolean(const std::string& key, bool def) {
    const IniEntry* e = find(key);
    if (!e) return def;
    if (e->value == "true") return true;
    if (e->value == "false") return false;
    throw ParseError(filename_, e->line, "'" + key + "' must be true or false");
  }

  std::string text(const std::string& key, const std::string& def) {
    const IniEntry* e = find(key);
    return e ? e->value : def;
  }

  void finish() {
    if (!section_) return;
    for (const IniEntry& e : section_->entries) {
      if (!consumed_.count(e.key)) {
        throw ParseError(filename_, e.line,
                         "unknown key '" + e.key + "' in [" + section_->name + "]");
      }
    }
  }

  int line() const { return section_ ? section_->line : 0; }
  const std::string& filename() const { return filename_; }

 private:
  std::string name() const { return section_ ? section_->name : ""; }

  double parse_number(const IniEntry& e) const {
    double v = 0.0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last) {
      throw ParseError(filename_, e.line, "'" + e.key + "': not a number: '" + e.value + "'");
    }
    return v;
  }

  long long parse_integer(const IniEntry& e) const {
    long long v = 0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last) {
      throw ParseError(filename_, e.line, "'" + e.key + "': not an integer: '" + e.value + "'");
    }
    return v;
  }

  const IniSection* section_;
  std::string filename_;
  std::set<std::string> consumed_;
};

const std::set<std::string>& known_sections() {
  static const std::set<std::string> names{"run",    "constraints", "surrogate", "plant",
                                           "psi",    "weighting",   "boost",     "sa",
                                           "baseline", "output"};
  return names;
}

struct ParsedFile {
  std::vector<IniSection> sections;
  std::string filename;

  const IniSection* unique(const std::string& name) const {
    const IniSection* found = nullptr;
    for (const IniSection& s : sections) {
      if (s.name != name) continue;
      if (found) {
        throw ParseError(filename, s.line, "duplicate section [" + name + "]");
      }
      found = &s;
    }
    return found;
  }

  std::vector<const IniSection*> all(const std::string& name) const {
    std::vector<const IniSection*> out;
    for (const IniSection& s : sections) {
      if (s.name == name) out.push_back(&s);
    }
    return out;
  }
};

ParsedFile parse_file(const std::filesystem::path& path) {
  ParsedFile f;
  f.filename = path.string();
  f.sections = parse_ini(read_file(path), f.filename);
  for (const IniSection& s : f.sections) {
    if (!known_sections().count(s.name)) {
      throw ParseError(f.filename, s.line, "unknown section [" + s.name + "]");
    }
  }
  return f;
}

Constraints read_constraints(const ParsedFile& f) {
  SectionReader r(f.unique("constraints"), f.filename);
  Interval u{r.number("u_min", -1.0), r.number("u_max", 1.0)};
  Box x;
  x.dims.push_back({r.number("x1_min", -1.0), r.number("x1_max", 1.0)});
  x.dims.push_back({r.number("x2_min", -1.0), r.number("x2_max", 1.0)});
  r.finish();
  return Constraints::validated(u, std::move(x));
}

SurrogateModel read_surrogate(const ParsedFile& f) {
  SectionReader r(f.unique("surrogate"), f.filename);
  const double a = r.number("a", 0.8);
  const double b = r.number("b", 0.2);
  RegressorPoint x0{r.number("x0_u", 0.0), r.number("x0_y", 0.0)};
  r.finish();
  return SurrogateModel::validated(a, b, std::move(x0));
}

PlantParams read_plant(const ParsedFile& f) {
  SectionReader r(f.unique("plant"), f.filename);
  PlantParams p;
  const std::string kind = r.text("kind", "hammerstein");
  if (kind == "hammerstein") {
    p.kind = PlantKind::kHammerstein;
    p.nonlinearity = Nonlinearity::kAtan;
  } else if (kind == "lti") {
    p.kind = PlantKind::kLti;
    p.nonlinearity = Nonlinearity::kIdentity;
  } else {
    throw ParseError(f.filename, r.line(), "plant kind must be 'hammerstein' or 'lti'");
  }
  p.a = r.number("a", 0.8);
  p.b = r.number("b", 0.2);
  const std::string nl = r.text("nonlinearity", nonlinearity_name(p.nonlinearity));
  if (nl == "atan") {
    p.nonlinearity = Nonlinearity::kAtan;
  } else if (nl == "identity") {
    p.nonlinearity = Nonlinearity::kIdentity;
  } else {
    throw ParseError(f.filename, r.line(), "nonlinearity must be 'atan' or 'identity'");
  }
  p.steepness = r.number("steepness", 3.0);
  p.y0 = r.number("y0", 0.0);
  p.u0 = r.number("u0", 0.0);
  p.noise_std = r.number("noise_std", 0.0);
  p.noise_seed = static_cast<std::uint64_t>(r.integer("noise_seed", 0));
  r.finish();
  p.validate();
  return p;
}

WeightingScheme read_weighting(const ParsedFile& f, const Constraints& constraints) {
  WeightingScheme w;
  SectionReader r(f.unique("weighting"), f.filename);
  w.base = r.number("base", 1.0);
  r.finish();
  for (const IniSection* s : f.all("boost")) {
    SectionReader br(s, f.filename);
    BoostRegion region;
    Box rect;
    rect.dims.push_back({br.require_number("x1_min"), br.require_number("x1_max")});
    rect.dims.push_back({br.require_number("x2_min"), br.require_number("x2_max")});
    region.rect = std::move(rect);
    region.multiplier = br.require_number("rho");
    br.finish();
    w.boosts.push_back(std::move(region));
  }
  w.validate(constraints.state_box);
  return w;
}

SaConfig read_sa(const ParsedFile& f) {
  SaConfig sa;
  SectionReader r(f.unique("sa"), f.filename);
  const std::string t0 = r.text("initial_temperature", "auto");
  if (t0 != "auto") {
    double v = 0.0;
    const auto res = std::from_chars(t0.data(), t0.data() + t0.size(), v);
    if (res.ec != std::errc{} || res.ptr != t0.data() + t0.size()) {
      throw ParseError(f.filename, r.line(), "initial_temperature must be 'auto' or a number");
    }
    sa.initial_temperature = v;
  }
  sa.cooling_factor = r.number("cooling_factor", sa.cooling_factor);
  sa.iterations_per_temperature =
      static_cast<int>(r.integer("iterations_per_temperature", sa.iterations_per_temperature));
  sa.temperature_levels = static_cast<int>(r.integer("temperature_levels", sa.temperature_levels));
  sa.step_scale = r.number("step_scale", sa.step_scale);
  sa.restart_count = static_cast<int>(r.integer("restart_count", sa.restart_count));
  r.finish();
  sa.validate();
  return sa;
}

}  // namespace

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  const ParsedFile f = parse_file(path);
  ExperimentConfig cfg;

  const IniSection* run_section = f.unique("run");
  if (!run_section) {
    throw ParseError(f.filename, 1, "missing required section [run]");
  }
  SectionReader run(run_section, f.filename);
  cfg.run.n = static_cast<int>(run.require_integer("n"));
  cfg.run.horizon = static_cast<int>(run.require_integer("horizon"));
  cfg.run.seed = static_cast<std::uint64_t>(run.integer("seed", 1));
  cfg.run.normalize = run.boolean("normalize", true);
  const std::string mode = run.text("mode", "fixed-surrogate");
  if (mode == "fixed-surrogate") {
    cfg.mode = DesignMode::kFixedSurrogate;
  } else if (mode == "active-learning") {
    cfg.mode = DesignMode::kActiveLearning;
  } else {
    throw ParseError(f.filename, run.line(),
                     "mode must be 'fixed-surrogate' or 'active-learning'");
  }
  run.finish();
  cfg.run.validate();

  cfg.constraints = read_constraints(f);
  cfg.surrogate = read_surrogate(f);
  cfg.plant = read_plant(f);
  cfg.weighting = read_weighting(f, cfg.constraints);
  cfg.sa = read_sa(f);

  SectionReader psi(f.unique("psi"), f.filename);
  cfg.psi_resolution = {static_cast<int>(psi.integer("res1", 15)),
                        static_cast<int>(psi.integer("res2", 15))};
  cfg.psi_cap = static_cast<std::size_t>(psi.integer("cap", 100000));
  psi.finish();

  SectionReader baseline(f.unique("baseline"), f.filename);
  cfg.baseline.hold_min = static_cast<int>(baseline.integer("hold_min", 5));
  cfg.baseline.hold_max = static_cast<int>(baseline.integer("hold_max", 10));
  baseline.finish();
  cfg.baseline.validate();

  SectionReader output(f.unique("output"), f.filename);
  cfg.out_dir = output.text("dir", "out");
  cfg.plots = output.boolean("plots", true);
  output.finish();

  return cfg;
}

DistanceDataset ExperimentConfig::build_psi() const {
  Distribution points = build_psi_grid(constraints.state_box, psi_resolution, psi_cap);
  std::vector<double> q = assign_weights(points, weighting);
  return DistanceDataset::validated(std::move(points), std::move(q), constraints.state_box);
}

DesignProblem ExperimentConfig::problem() const {
  DesignProblem p{run, constraints, surrogate, build_psi(), sa, mode, std::nullopt};
  if (mode == DesignMode::kActiveLearning) p.plant = plant;
  return p;
}

PlantParams load_plant_spec(const std::filesystem::path& path) {
  const ParsedFile f = parse_file(path);
  if (!f.unique("plant")) {
    throw ParseError(f.filename, 1, "missing required section [plant]");
  }
  return read_plant(f);
}

PsiContext load_psi_spec(const std::filesystem::path& path) {
  const ParsedFile f = parse_file(path);
  PsiContext ctx;
  ctx.constraints = read_constraints(f);

  SectionReader psi(f.unique("psi"), f.filename);
  ctx.resolution = {static_cast<int>(psi.integer("res1", 15)),
                    static_cast<int>(psi.integer("res2", 15))};
  ctx.cap = static_cast<std::size_t>(psi.integer("cap", 100000));
  psi.finish();

  ctx.weighting = read_weighting(f, ctx.constraints);

  const IniSection* run_section = f.unique("run");
  if (run_section) {
    SectionReader run(run_section, f.filename);
    ctx.normalize = run.boolean("normalize", true);
    run.find("n");
    run.find("horizon");
    run.find("seed");
    run.find("mode");
    run.finish();
  }
  return ctx;
}

DistanceDataset PsiContext::build() const {
  Distribution points = build_psi_grid(constraints.state_box, resolution, cap);
  std::vector<double> q = assign_weights(points, weighting);
  return DistanceDataset::validated(std::move(points), std::move(q), constraints.state_box);
}

std::vector<Variant> parse_variants(const std::vector<std::string>& specs) {
  std::vector<Variant> out;
  for (const std::string& spec : specs) {
    Variant v;
    v.label = spec;
    if (spec == "uniform") {
      v.kind = Variant::Kind::kUniform;
    } else if (spec == "uniform-random") {
      v.kind = Variant::Kind::kUniformRandom;
    } else if (spec == "aprbs") {
      v.kind = Variant::Kind::kAprbs;
    } else if (spec.rfind("boost:", 0) == 0) {
      v.kind = Variant::Kind::kBoost;
      const std::string arg = spec.substr(6);
      double rho = 0.0;
      const auto res = std::from_chars(arg.data(), arg.data() + arg.size(), rho);
      if (res.ec != std::errc{} || res.ptr != arg.data() + arg.size() || !(rho >= 1.0)) {
        throw ConfigError("variant '" + spec + "': boost multiplier must be a number >= 1");
      }
      v.rho = rho;
    } else {
      throw ConfigError("unknown variant '" + spec +
                        "' (expected uniform, boost:<rho>, uniform-random or aprbs)");
    }
    out.push_back(std::move(v));
  }
  if (out.empty()) throw ConfigError("variant list must not be empty");
  return out;
}

}  // namespace rhex
