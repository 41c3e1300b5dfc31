#pragma once

// Deterministic random numbers. The standard-library distributions are
// implementation-defined, which would break byte-identical artifacts across
// toolchains, so sampling is built directly on SplitMix64.

#include <cstdint>
#include <initializer_list>

namespace hamrec {

namespace detail {
inline std::uint64_t splitmix_scramble(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}
}  // namespace detail

/// SplitMix64 generator (Steele, Lea & Flood). Tiny state, full 64-bit
/// output, identical sequences on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    return detail::splitmix_scramble(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [-1, 1).
  double symmetric() { return 2.0 * uniform() - 1.0; }

  /// Coupling draw: uniform magnitude in [0.1, 2], independent sign.
  /// Two generator calls in fixed order (sign, then magnitude).
  double coupling() {
    const bool negative = (next() & 1ull) != 0;
    const double magnitude = 0.1 + 1.9 * uniform();
    return negative ? -magnitude : magnitude;
  }

 private:
  std::uint64_t state_;
};

/// Derive a child seed from a base seed and a tag-word list, so independent
/// sub-experiments (per model / length / trial / level) get decoupled streams.
inline std::uint64_t derive_seed(std::uint64_t base,
                                 std::initializer_list<std::uint64_t> words) {
  std::uint64_t s = detail::splitmix_scramble(base + 0x9E3779B97F4A7C15ull);
  for (std::uint64_t w : words) {
    s = detail::splitmix_scramble(s ^ (w + 0x9E3779B97F4A7C15ull + (s << 6) + (s >> 2)));
  }
  return s;
}

}  // namespace hamrec
