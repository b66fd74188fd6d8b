#pragma once

#include <cstdint>

namespace wedgekit {

/// SplitMix64. Hand-rolled so that seeded runs are byte-identical across
/// standard library implementations (std distributions are not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform-ish value in [0, n); n = 0 yields 0. Modulo bias is irrelevant
  /// for test-instance generation.
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

  /// Inclusive range.
  std::int64_t int_in(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool chance(std::uint64_t num, std::uint64_t den) {
    return below(den) < num;
  }

  /// Stable derivation of an independent stream, e.g. one per trial.
  static Rng fork(std::uint64_t master, std::uint64_t index) {
    Rng mix(master ^ (0x632be59bd9b4e019ULL * (index + 1)));
    mix.next();
    return mix;
  }

 private:
  std::uint64_t state_;
};

}  // namespace wedgekit
