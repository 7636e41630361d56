#ifndef RHEX_RNG_HPP_
#define RHEX_RNG_HPP_

#include <cstdint>
#include <random>

namespace rhex {

// splitmix64 finalizer; used to derive independent sub-stream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Deterministic random stream.
//
// Engine is std::mt19937_64 (fully specified by the C++ standard) and all
// value transforms are implemented here rather than via std::*_distribution,
// so a given seed produces the same draws on every platform/toolchain:
//   uniform():   (next_u64() >> 11) * 2^-53, in [0,1)
//   normal():    Box-Muller, trig form, one cached spare per pair
//   uniform_index(n): rejection sampling on next_u64() % n
//
// fork(stream) derives a child stream from the *original* seed (not the
// current engine state), so child streams do not depend on how many draws
// the parent has made.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0,1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on [lo,hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer on [0,n), unbiased. n must be > 0.
  std::uint64_t uniform_index(std::uint64_t n);

  // Standard normal draw.
  double normal();

  Rng fork(std::uint64_t stream) const { return Rng(mix_seed(seed_, stream)); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace rhex

#endif  // RHEX_RNG_HPP_
