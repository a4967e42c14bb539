#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace bayspn {

// xoshiro256++ with splitmix64 seeding. Sub-streams are derived statelessly
// from (seed, tag, a, b), which keeps parallel sampling independent of thread
// count: every instance/iteration gets its own stream.
class Rng {
 public:
  using result_type = uint64_t;

  explicit Rng(uint64_t seed) { seed_from(seed); }
  Rng(uint64_t seed, uint64_t tag, uint64_t a = 0, uint64_t b = 0) {
    seed_from(mix(mix(mix(seed, tag), a), b));
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<uint64_t>::max();
  }

  uint64_t operator()() {
    const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1).
  double uniform() { return ((*this)() >> 11) * 0x1.0p-53; }

  static uint64_t mix(uint64_t h, uint64_t v) {
    // splitmix64 finalizer over h ^ golden-ratio-spread v
    uint64_t z = h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  void seed_from(uint64_t seed) {
    // splitmix64 expansion
    uint64_t z = seed;
    for (int i = 0; i < 4; ++i) {
      z += 0x9e3779b97f4a7c15ull;
      uint64_t w = z;
      w = (w ^ (w >> 30)) * 0xbf58476d1ce4e5b9ull;
      w = (w ^ (w >> 27)) * 0x94d049bb133111ebull;
      s_[i] = w ^ (w >> 31);
    }
    if (!(s_[0] | s_[1] | s_[2] | s_[3])) s_[0] = 0x1ull;
  }

  uint64_t s_[4];
};

// Stream tags; one per randomized phase so trajectories are reproducible and
// thread-count independent.
namespace stream {
constexpr uint64_t kInit = 1;
constexpr uint64_t kZ = 2;
constexpr uint64_t kWeights = 3;
constexpr uint64_t kTheta = 4;
constexpr uint64_t kYSweep = 5;
constexpr uint64_t kDpAssign = 6;
constexpr uint64_t kDpStick = 7;
constexpr uint64_t kDpCluster = 8;
}  // namespace stream

double gamma_draw(double shape, Rng& rng);
double beta_draw(double a, double b, Rng& rng);
double normal_draw(double mean, double stddev, Rng& rng);

/// Dirichlet(alpha) with per-component concentrations; writes probabilities.
void dirichlet_draw(std::span<const double> alpha, std::span<double> out,
                    Rng& rng);

/// Categorical draw from unnormalized linear weights (inverse CDF scan).
int categorical_from_weights(std::span<const double> weights, Rng& rng);

/// Categorical draw from unnormalized log probabilities.
int categorical_from_logits(std::span<const double> logits, Rng& rng);

/// Walker/Vose alias table for O(1) categorical draws from fixed weights.
class AliasTable {
 public:
  AliasTable() = default;
  explicit AliasTable(std::span<const double> weights) { build(weights); }
  void build(std::span<const double> weights);
  int draw(Rng& rng) const;
  int size() const { return static_cast<int>(prob_.size()); }

 private:
  std::vector<double> prob_;
  std::vector<int> alias_;
};

}  // namespace bayspn
