#include "rhex/baseline.hpp"

#include "rhex/errors.hpp"

namespace rhex {

void AprbsParams::validate() const {
  if (hold_min < 1 || hold_max < hold_min) {
    throw ConfigError("baseline: aprbs holds require 1 <= hold_min <= hold_max");
  }
}

ExcitationSignal generate_uniform_random(int n, const Interval& u_box, Rng& rng) {
  ExcitationSignal s;
  for (int i = 0; i < n; ++i) s.append(rng.uniform(u_box.lo, u_box.hi));
  return s;
}

ExcitationSignal generate_aprbs(int n, const Interval& u_box, const AprbsParams& params,
                                Rng& rng) {
  params.validate();
  ExcitationSignal s;
  while (static_cast<int>(s.size()) < n) {
    const double level = rng.uniform(u_box.lo, u_box.hi);
    const auto span = static_cast<std::uint64_t>(params.hold_max - params.hold_min + 1);
    const int hold = params.hold_min + static_cast<int>(rng.uniform_index(span));
    for (int i = 0; i < hold && static_cast<int>(s.size()) < n; ++i) s.append(level);
  }
  return s;
}

}  // namespace rhex
