#ifndef RHEX_OPTIMIZER_HPP_
#define RHEX_OPTIMIZER_HPP_

#include <functional>
#include <optional>

#include "rhex/criterion.hpp"
#include "rhex/plant.hpp"
#include "rhex/rng.hpp"
#include "rhex/surrogate.hpp"
#include "rhex/types.hpp"

namespace rhex {

struct SaConfig {
  // Empty means self-scaled: sample standard deviation of J over 50 random
  // feasible candidates, computed once at k = 1.
  std::optional<double> initial_temperature;
  double cooling_factor = 0.9;
  int iterations_per_temperature = 25;
  int temperature_levels = 30;
  double step_scale = 1.0;   // proposal std-dev in normalized input units
  int restart_count = 2;

  void validate() const;  // throws ConfigError
};

struct HorizonSolution {
  std::vector<double> inputs;  // the optimized horizon, length L
  double achieved_j = 0.0;     // criterion over the full trajectory
  bool feasible = false;
};

// Per-step trace record (serialized to trace.csv by the CLI).
struct StepTrace {
  int k = 0;
  double j_before = 0.0;  // J of the realized prefix before appending
  double j_after = 0.0;   // J after appending u_opt(k)
  long accepted_moves = 0;
  long feasibility_rejections = 0;
  double theta_a = 0.0;   // surrogate used for this step's optimization
  double theta_b = 0.0;
};

// Optimization state at one timestep: constraints, current surrogate, psi
// cache and the realized prefix trajectory. Distances are evaluated in
// normalized coordinates when `normalize` is set; constraint checks are
// always in raw coordinates.
class DesignState {
 public:
  DesignState(Constraints constraints, SurrogateModel surrogate,
              const DistanceDataset& psi, bool normalize);

  // Re-simulates the realized prefix z(0..k-1) from x(0) over `past`.
  void rebuild_prefix(const ExcitationSignal& past);

  // Extends the realized prefix with one applied input.
  void append_input(double u);

  // Swaps the surrogate (active learning) and rebuilds the prefix.
  void set_surrogate(SurrogateModel model, const ExcitationSignal& past);

  const Distribution& realized() const { return realized_; }
  const SurrogateModel& surrogate() const { return surrogate_; }
  const Constraints& constraints() const { return constraints_; }
  double prefix_j() const { return cache_.prefix_j(); }
  double last_output() const { return last_output_; }

  struct CandidateEval {
    double j = 0.0;
    bool feasible = false;
  };

  // Simulates the candidate horizon from the realized prefix. Feasible iff
  // every candidate input lies in U and every trajectory point (prefix and
  // horizon) lies in X; a diverging simulation is infeasible (j = +inf).
  CandidateEval evaluate_candidate(std::span<const double> candidate) const;

 private:
  Constraints constraints_;
  SurrogateModel surrogate_;
  bool normalize_;
  std::optional<Normalizer> normalizer_;
  CriterionCache cache_;
  Distribution realized_;     // raw coordinates
  double last_output_ = 0.0;
  bool prefix_feasible_ = true;
  mutable std::vector<double> scratch_;
};

struct SaStats {
  long accepted_moves = 0;
  long feasibility_rejections = 0;
};

// Called after every accepted move with the current (accepted) J.
using SaObserver = std::function<void(int chain, double current_j)>;

// Inner search solving one timestep. Chain c draws from rng.fork(c) and
// results merge in ascending chain order:
//   chain 0: the warm-start candidate (run only when `warm_start` is given),
//   chain 1: the zero input clipped to U (always run),
//   chains 2..restart_count: uniform random candidates.
// A warm-started call therefore runs a strict superset of the cold-start
// chains, so warm starting can never return a worse J than the cold start on
// the same rng. Throws InfeasibleError when no feasible candidate was
// encountered at all.
HorizonSolution sa_optimize(const DesignState& state, int horizon, const SaConfig& sa,
                            double initial_temperature, const Rng& step_rng,
                            std::span<const double> warm_start = {},
                            SaStats* stats = nullptr, const SaObserver& observer = {});

// Sample standard deviation of J over `samples` uniform random candidates
// (feasible ones only); falls back to 0.1*max(1, prefix J) when fewer than
// two feasible candidates turn up.
double calibrate_temperature(const DesignState& state, int horizon, int samples, Rng rng);

enum class DesignStatus { kCompleted, kInfeasible, kPlantDivergence };

struct DesignProblem {
  RunConfig run;
  Constraints constraints;
  SurrogateModel surrogate;
  DistanceDataset psi;
  SaConfig sa;
  DesignMode mode = DesignMode::kFixedSurrogate;
  std::optional<PlantParams> plant;  // required in active-learning mode
};

struct DesignResult {
  DesignStatus status = DesignStatus::kCompleted;
  std::string diagnostics;            // set when status != kCompleted
  ExcitationSignal signal;            // partial on failure
  // Realized model trajectory z(0..k), raw coordinates, simulated under the
  // surrogate active at the last completed step.
  Distribution realized{2};
  std::vector<StepTrace> trace;
  SurrogateModel final_surrogate;
  IoRecord measurements;              // active-learning mode only
  double initial_temperature_used = 0.0;
};

// The receding-horizon loop: for k = 1..N solve sa_optimize, append only the
// first horizon input, and in active-learning mode step the plant, record the
// measurement and refit the surrogate on all data so far.
// Setup violations throw ConfigError; runtime failures (design-infeasible,
// plant divergence) return a partial result with diagnostics.
DesignResult design_signal(const DesignProblem& problem);

}  // namespace rhex

#endif  // RHEX_OPTIMIZER_HPP_
