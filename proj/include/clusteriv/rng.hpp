// Seeded generator with hand-rolled samplers. std::*_distribution output is
// implementation-defined, so draws are produced here to keep runs
// bit-reproducible across toolchains.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace clusteriv {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Derive an independent stream, e.g. one per replicate.
  Rng fork(std::uint64_t stream) const {
    return Rng(seed_mix_ ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer on [lo, hi].
  long uniform_int(long lo, long hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next_u64() % span);
  }

  bool bernoulli(double p = 0.5) { return uniform() < p; }

  // Box-Muller with cached spare.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  double normal(double mu, double sd) { return mu + sd * normal(); }

  // One multinomial draw of n trials over the given probabilities.
  std::vector<int> multinomial(int n, const std::vector<double>& probs) {
    std::vector<int> counts(probs.size(), 0);
    double remaining_p = 1.0;
    int remaining_n = n;
    for (std::size_t i = 0; i + 1 < probs.size() && remaining_n > 0; ++i) {
      double p = remaining_p > 0 ? probs[i] / remaining_p : 0.0;
      p = std::min(1.0, std::max(0.0, p));
      int draw = binomial(remaining_n, p);
      counts[i] = draw;
      remaining_n -= draw;
      remaining_p -= probs[i];
    }
    if (!counts.empty()) counts.back() += remaining_n;
    return counts;
  }

  int binomial(int n, double p) {
    int c = 0;
    for (int i = 0; i < n; ++i) c += bernoulli(p) ? 1 : 0;
    return c;
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_mix_ = engine_();
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace clusteriv
