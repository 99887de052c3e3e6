#ifndef PET_RANDOM_HPP
#define PET_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "pet/errors.hpp"

namespace pet {

/// Deterministic random source: std::mt19937_64 with hand-rolled mappings.
/// The standard distributions are implementation-defined, so doubles are
/// built from the top 53 bits and integer ranges by modulo reduction; a fixed
/// seed therefore yields identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform in [0, 1).
  double uniform01() { return std::ldexp(static_cast<double>(eng_() >> 11), -53); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [lo, hi], both inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw DomainError("uniform_int requires lo <= hi");
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(eng_() % span);
  }

  bool coin() { return (eng_() & 1) != 0; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace pet

#endif  // PET_RANDOM_HPP
