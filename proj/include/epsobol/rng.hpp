// Copyright (c) 2026 epsobol developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace epsobol {

/// One SplitMix64 step: advances `state` and returns a whitened 64-bit value.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Deterministic random stream on top of std::mt19937_64.
///
/// Uniform and normal variates are produced with fixed algorithms (53-bit
/// uniforms, Box-Muller) rather than the standard library's distribution
/// templates, whose output is implementation-defined. Substreams derived
/// with stream(master, id) depend only on (master, id), never on evaluation
/// order, so replicated experiments can run in parallel and still reproduce
/// bit-identically.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    engine_.seed(splitmix64(s));
  }

  /// Whitened seed for substream `id` of `master`.
  static std::uint64_t derive(std::uint64_t master, std::uint64_t id) {
    std::uint64_t s = master;
    std::uint64_t h = splitmix64(s);
    s = h ^ (id + 0x9e3779b97f4a7c15ull);
    return splitmix64(s);
  }

  /// Substream `id` of a master seed (counter-based splitting).
  static Rng stream(std::uint64_t master, std::uint64_t id) {
    return Rng(derive(master, id));
  }

  std::uint64_t bits() { return engine_(); }

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, bound); bound > 0.
  std::uint64_t uniform_index(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(engine_()) * bound) >> 64);
  }

  /// Standard normal variate (Box-Muller, pair cached).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace epsobol
