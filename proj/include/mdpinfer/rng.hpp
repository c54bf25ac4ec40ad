#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace mdpinfer {

/// splitmix64 finalizer; used to spread raw seeds before feeding mt19937_64.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// FNV-1a over a byte string; stable across runs and platforms.
inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Seed for an independent per-entity stream. Chains for distinct users (or
/// scenario rollouts) derive their seeds as mix_seed(global_seed, user_id),
/// which makes results independent of scheduling and thread count.
inline std::uint64_t mix_seed(std::uint64_t global_seed, std::string_view entity_id) {
  return splitmix64(global_seed ^ fnv1a64(entity_id));
}

inline std::uint64_t mix_seed(std::uint64_t global_seed, std::uint64_t index) {
  return splitmix64(global_seed ^ (0x51ed2701a3b1e159ULL + index));
}

/// Seeded random stream. One instance per chain / per rollout; never shared
/// across threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  double uniform() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
  }

  double uniform_in(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  double normal() {
    return std::normal_distribution<double>(0.0, 1.0)(engine_);
  }

  double gamma(double shape) {
    return std::gamma_distribution<double>(shape, 1.0)(engine_);
  }

  /// Index draw from an explicit probability vector (assumed normalized).
  /// A single-category vector consumes no randomness.
  int categorical(std::span<const double> probs) {
    if (probs.size() <= 1) return 0;
    double u = uniform();
    double cum = 0.0;
    for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
      cum += probs[i];
      if (u < cum) return static_cast<int>(i);
    }
    return static_cast<int>(probs.size()) - 1;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mdpinfer
