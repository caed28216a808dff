#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace wscale {

// Deterministic, splittable randomness.
//
// A stream is identified by the root seed plus a path of (tag, index)
// derivations. child() depends only on the parent's identity, never on how
// much the parent has drawn, so consumers that own disjoint children are
// reproducible regardless of scheduling or thread count.
//
// Draws come from std::mt19937_64 (output sequence fixed by the standard).
// All value mappings below avoid std::*_distribution adapters, whose
// algorithms are implementation-defined; together with the derivation rule
// this makes every seeded output a stable part of the file-format contract.
//
// Stream-splitting conventions used across the toolkit:
//   synth:       root(seed).child("synth-row", i)        one stream per row
//   contaminate: root(seed).child("cells"[, k])          cell permutation
//                root(seed).child("values"[, k])         replacement values
//   eval:        root(seed).child("cv-iter", i)          one stream per iteration
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : key_(mix64(seed ^ kRootSalt)), gen_(key_) {}

  // Derive an independent child stream; does not consume parent state.
  RngStream child(std::string_view tag, std::uint64_t index = 0) const {
    std::uint64_t h = key_ ^ 0xcbf29ce484222325ull;
    for (char c : tag) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ull;
    h ^= index + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return RngStream(mix64(h), FromKey{});
  }

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1), strictly open; suitable for inverse-CDF sampling.
  double next_open_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Unbiased integer in [0, n). Rejection on the incomplete top block.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t min = (~n + 1) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= min) return r % n;
    }
  }

 private:
  struct FromKey {};
  RngStream(std::uint64_t key, FromKey) : key_(key), gen_(key) {}

  // splitmix64 finalizer.
  static std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  static constexpr std::uint64_t kRootSalt = 0x77736361'6c650a01ull;

  std::uint64_t key_;
  std::mt19937_64 gen_;
};

}  // namespace wscale
