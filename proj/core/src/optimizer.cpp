#include "rhex/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace rhex {

void SaConfig::validate() const {
  if (initial_temperature && !(*initial_temperature > 0.0 && std::isfinite(*initial_temperature))) {
    throw ConfigError("sa: initial_temperature must be > 0 when given");
  }
  if (!(cooling_factor > 0.0 && cooling_factor < 1.0)) {
    throw ConfigError("sa: cooling_factor must lie in (0,1)");
  }
  if (iterations_per_temperature < 1) {
    throw ConfigError("sa: iterations_per_temperature must be >= 1");
  }
  if (temperature_levels < 1) throw ConfigError("sa: temperature_levels must be >= 1");
  if (!(step_scale > 0.0) || !std::isfinite(step_scale)) {
    throw ConfigError("sa: step_scale must be > 0");
  }
  if (restart_count < 0) throw ConfigError("sa: restart_count must be >= 0");
}

DesignState::DesignState(Constraints constraints, SurrogateModel surrogate,
                         const DistanceDataset& psi, bool normalize)
    : constraints_(std::move(constraints)),
      surrogate_(std::move(surrogate)),
      normalize_(normalize),
      cache_(psi),
      realized_(constraints_.dim()) {
  if (psi.dim() != constraints_.dim()) {
    throw ConfigError("design: psi dimension does not match the state box");
  }
  if (surrogate_.initial_state.size() != constraints_.dim()) {
    throw ConfigError("design: surrogate initial state dimension mismatch");
  }
  if (normalize_) {
    normalizer_.emplace(constraints_.state_box);
    // The cache works on normalized psi coordinates.
    cache_ = CriterionCache(normalizer_->normalize(psi.points()), psi.weights());
  }
  rebuild_prefix(ExcitationSignal{});
}

void DesignState::rebuild_prefix(const ExcitationSignal& past) {
  realized_ = simulate(surrogate_, past.samples());
  last_output_ = realized_[realized_.size() - 1][1];
  prefix_feasible_ = true;
  for (std::size_t i = 0; i < realized_.size(); ++i) {
    if (!constraints_.state_box.contains(realized_[i])) prefix_feasible_ = false;
  }
  if (normalize_) {
    cache_.reset(normalizer_->normalize(realized_));
  } else {
    cache_.reset(realized_);
  }
}

void DesignState::append_input(double u) {
  const double y = surrogate_.a * last_output_ + surrogate_.b * u;
  if (!std::isfinite(y)) {
    throw DivergenceError("design: surrogate state became non-finite");
  }
  last_output_ = y;
  const std::array<double, 2> z{u, y};
  realized_.append(z);
  if (!constraints_.state_box.contains(z)) prefix_feasible_ = false;
  if (normalize_) {
    std::array<double, 2> zn;
    normalizer_->normalize(z, zn);
    cache_.extend(zn);
  } else {
    cache_.extend(z);
  }
}

void DesignState::set_surrogate(SurrogateModel model, const ExcitationSignal& past) {
  surrogate_ = std::move(model);
  rebuild_prefix(past);
}

DesignState::CandidateEval DesignState::evaluate_candidate(std::span<const double> candidate) const {
  bool feasible = prefix_feasible_;
  for (double u : candidate) {
    if (!constraints_.input_box.contains(u)) feasible = false;
  }

  const std::size_t p = constraints_.dim();
  scratch_.resize(candidate.size() * p);
  double y = last_output_;
  std::array<double, 2> z;
  std::array<double, 2> zn;
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    y = surrogate_.a * y + surrogate_.b * candidate[i];
    if (!std::isfinite(y)) {
      return {std::numeric_limits<double>::infinity(), false};
    }
    z = {candidate[i], y};
    if (!constraints_.state_box.contains(z)) feasible = false;
    if (normalize_) {
      normalizer_->normalize(z, zn);
      scratch_[i * p] = zn[0];
      scratch_[i * p + 1] = zn[1];
    } else {
      scratch_[i * p] = z[0];
      scratch_[i * p + 1] = z[1];
    }
  }
  return {cache_.eval(scratch_, candidate.size()), feasible};
}

namespace {

std::vector<double> clipped_zero_candidate(int horizon, const Interval& u_box) {
  return std::vector<double>(static_cast<std::size_t>(horizon), u_box.clamp(0.0));
}

std::vector<double> random_candidate(int horizon, const Interval& u_box, Rng& rng) {
  std::vector<double> c(static_cast<std::size_t>(horizon));
  for (double& u : c) u = rng.uniform(u_box.lo, u_box.hi);
  return c;
}

}  // namespace

double calibrate_temperature(const DesignState& state, int horizon, int samples, Rng rng) {
  std::vector<double> js;
  js.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const auto cand = random_candidate(horizon, state.constraints().input_box, rng);
    const auto eval = state.evaluate_candidate(cand);
    if (eval.feasible) js.push_back(eval.j);
  }
  if (js.size() >= 2) {
    double mean = 0.0;
    for (double j : js) mean += j;
    mean /= static_cast<double>(js.size());
    double ss = 0.0;
    for (double j : js) ss += (j - mean) * (j - mean);
    const double sd = std::sqrt(ss / static_cast<double>(js.size() - 1));
    if (sd > 0.0 && std::isfinite(sd)) return sd;
  }
  return 0.1 * std::max(1.0, state.prefix_j());
}

HorizonSolution sa_optimize(const DesignState& state, int horizon, const SaConfig& sa,
                            double initial_temperature, const Rng& step_rng,
                            std::span<const double> warm_start, SaStats* stats,
                            const SaObserver& observer) {
  sa.validate();
  if (!(initial_temperature > 0.0) || !std::isfinite(initial_temperature)) {
    throw ConfigError("sa: initial temperature must be > 0");
  }
  const Interval& u_box = state.constraints().input_box;
  const double sigma = sa.step_scale * u_box.width();

  HorizonSolution best;
  best.achieved_j = std::numeric_limits<double>::infinity();
  SaStats local;

  const bool have_warm = warm_start.size() == static_cast<std::size_t>(horizon);
  const int first_chain = have_warm ? 0 : 1;
  const int last_chain = std::max(1, sa.restart_count);
  int chains = 0;
  for (int chain = first_chain; chain <= last_chain; ++chain) {
    ++chains;
    Rng rng = step_rng.fork(static_cast<std::uint64_t>(chain));

    std::vector<double> current;
    if (chain == 0) {
      current.assign(warm_start.begin(), warm_start.end());
      for (double& u : current) u = u_box.clamp(u);
    } else if (chain == 1) {
      current = clipped_zero_candidate(horizon, u_box);
    } else {
      current = random_candidate(horizon, u_box, rng);
    }

    auto eval = state.evaluate_candidate(current);
    bool have_current = eval.feasible;
    double current_j = eval.j;
    if (!have_current) ++local.feasibility_rejections;
    if (have_current && current_j < best.achieved_j) {
      best.inputs = current;
      best.achieved_j = current_j;
      best.feasible = true;
    }

    double temperature = initial_temperature;
    std::vector<double> proposal(current.size());
    for (int level = 0; level < sa.temperature_levels; ++level) {
      for (int it = 0; it < sa.iterations_per_temperature; ++it) {
        if (!have_current) {
          // No feasible incumbent yet: keep sampling fresh candidates.
          proposal = random_candidate(horizon, u_box, rng);
        } else {
          proposal = current;
          const auto slot = rng.uniform_index(static_cast<std::uint64_t>(horizon));
          proposal[slot] = u_box.clamp(proposal[slot] + sigma * rng.normal());
        }
        const auto prop_eval = state.evaluate_candidate(proposal);
        if (!prop_eval.feasible) {
          ++local.feasibility_rejections;
          continue;
        }
        if (prop_eval.j < best.achieved_j) {
          best.inputs = proposal;
          best.achieved_j = prop_eval.j;
          best.feasible = true;
        }
        if (!have_current) {
          current = proposal;
          current_j = prop_eval.j;
          have_current = true;
          ++local.accepted_moves;
          if (observer) observer(chain, current_j);
          continue;
        }
        const double delta = prop_eval.j - current_j;
        if (delta <= 0.0 || rng.uniform() < std::exp(-delta / temperature)) {
          current = proposal;
          current_j = prop_eval.j;
          ++local.accepted_moves;
          if (observer) observer(chain, current_j);
        }
      }
      temperature *= sa.cooling_factor;
    }
  }

  if (stats) {
    stats->accepted_moves += local.accepted_moves;
    stats->feasibility_rejections += local.feasibility_rejections;
  }
  if (!best.feasible) {
    throw InfeasibleError(
        "sa: no feasible candidate found across " + std::to_string(chains) +
        " chains (" + std::to_string(local.feasibility_rejections) +
        " infeasible evaluations); check the constraint boxes against the surrogate");
  }
  return best;
}

DesignResult design_signal(const DesignProblem& problem) {
  problem.run.validate();
  problem.sa.validate();
  if (problem.mode == DesignMode::kActiveLearning && !problem.plant) {
    throw ConfigError("design: active-learning mode requires a plant");
  }
  if (!problem.constraints.state_box.contains(problem.surrogate.initial_state)) {
    throw ConfigError("design: surrogate initial state lies outside the state box");
  }

  DesignState state(problem.constraints, problem.surrogate, problem.psi, problem.run.normalize);
  const Rng master(problem.run.seed);

  DesignResult result;
  result.final_surrogate = problem.surrogate;
  result.realized = state.realized();

  double t0;
  if (problem.sa.initial_temperature) {
    t0 = *problem.sa.initial_temperature;
  } else {
    t0 = calibrate_temperature(state, problem.run.horizon, 50, master.fork(0));
  }
  result.initial_temperature_used = t0;

  std::optional<PlantModel> plant;
  if (problem.plant) plant.emplace(*problem.plant);

  std::vector<double> warm;
  SurrogateModel current_model = problem.surrogate;

  for (int k = 1; k <= problem.run.n; ++k) {
    SaStats stats;
    StepTrace row;
    row.k = k;
    row.j_before = state.prefix_j();
    row.theta_a = current_model.a;
    row.theta_b = current_model.b;

    // Shrink the horizon near the end of the run: points past N never get
    // applied, and planning with them defers boundary maneuvers forever.
    const int horizon = std::min(problem.run.horizon, problem.run.n - k + 1);
    if (static_cast<int>(warm.size()) > horizon) warm.resize(horizon);

    HorizonSolution sol;
    try {
      sol = sa_optimize(state, horizon, problem.sa, t0,
                        master.fork(static_cast<std::uint64_t>(k)), warm, &stats);
    } catch (const InfeasibleError& e) {
      result.status = DesignStatus::kInfeasible;
      result.diagnostics = "step " + std::to_string(k) + ": " + e.what();
      return result;
    }

    const double u_opt = sol.inputs.front();
    result.signal.append(u_opt);
    state.append_input(u_opt);

    row.j_after = state.prefix_j();
    row.accepted_moves = stats.accepted_moves;
    row.feasibility_rejections = stats.feasibility_rejections;
    result.trace.push_back(row);
    result.realized = state.realized();

    // Warm start for the next step: shift left, repeat the last slot.
    warm.assign(sol.inputs.begin() + 1, sol.inputs.end());
    if (!warm.empty()) warm.push_back(warm.back());

    if (problem.mode == DesignMode::kActiveLearning) {
      double y;
      try {
        y = plant->step(u_opt);
      } catch (const DivergenceError& e) {
        result.status = DesignStatus::kPlantDivergence;
        result.diagnostics = "step " + std::to_string(k) + ": " + e.what();
        return result;
      }
      result.measurements.append(u_opt, y);
      const RefitResult rr = refit(current_model, result.measurements);
      if (!rr.skipped) {
        current_model = rr.model;
        state.set_surrogate(current_model, result.signal);
      }
    }
  }

  result.final_surrogate = current_model;
  return result;
}

}  // namespace rhex
