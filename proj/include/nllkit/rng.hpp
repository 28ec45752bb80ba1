#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace nllkit {

// Seed mixing for independent sub-streams. Every stochastic component takes
// its seed from derive_seed(master, purpose[, index]) so results do not
// depend on scheduling or call order.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
  std::uint64_t s = base ^ (salt + 0x9e3779b97f4a7c15ULL + (base << 6) + (base >> 2));
  return splitmix64(s);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::string_view purpose) {
  // FNV-1a over the purpose string, folded into the base seed.
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : purpose) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return mix_seed(base, h);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::string_view purpose,
                                 std::uint64_t index) {
  return mix_seed(derive_seed(base, purpose), index);
}

// mt19937_64 has a standard-specified output sequence; the distribution
// transforms below are fixed here rather than taken from <random> so that
// generated corpora and fitted models are reproducible across library
// versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // [0, 1)
  double uniform01() { return (next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // [0, bound); bound > 0. Modulo bias is ~bound/2^64, irrelevant here.
  std::size_t uniform_index(std::size_t bound) {
    return static_cast<std::size_t>(next_u64() % static_cast<std::uint64_t>(bound));
  }

  double normal(double mean = 0.0, double sd = 1.0) {
    if (has_spare_) {
      has_spare_ = false;
      return mean + sd * spare_;
    }
    // Box-Muller; u in (0,1] to keep the log finite.
    double u = 1.0 - uniform01();
    double v = uniform01();
    double r = std::sqrt(-2.0 * std::log(u));
    double theta = 2.0 * M_PI * v;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return mean + sd * r * std::cos(theta);
  }

  // Geometric on {0,1,2,...} with the given mean.
  long geometric(double mean) {
    if (mean <= 0.0) return 0;
    double p = 1.0 / (mean + 1.0);
    double u = uniform01();
    return static_cast<long>(std::floor(std::log1p(-u) / std::log1p(-p)));
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = uniform_index(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace nllkit
