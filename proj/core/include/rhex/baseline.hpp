#ifndef RHEX_BASELINE_HPP_
#define RHEX_BASELINE_HPP_

#include "rhex/rng.hpp"
#include "rhex/types.hpp"

namespace rhex {

// Baseline excitation signals for comparison runs.

// i.i.d. uniform samples on the input box.
ExcitationSignal generate_uniform_random(int n, const Interval& u_box, Rng& rng);

struct AprbsParams {
  int hold_min = 5;
  int hold_max = 10;

  void validate() const;  // throws ConfigError
};

// Amplitude-modulated PRBS: uniform amplitude levels on the input box, each
// held for a uniform number of samples in [hold_min, hold_max]; the final
// hold is truncated to the signal length.
ExcitationSignal generate_aprbs(int n, const Interval& u_box, const AprbsParams& params, Rng& rng);

}  // namespace rhex

#endif  // RHEX_BASELINE_HPP_
