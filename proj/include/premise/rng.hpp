#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace premise {

// Deterministic RNG used by every generator. The engine is std::mt19937_64
// (bit-stable across platforms); all derived draws (uniform ints, unit
// doubles, normals) are implemented here instead of <random> distributions,
// whose output is not portable across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Unbiased integer in [0, bound) via rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: bound must be > 0");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % bound;
  }

  // Inclusive integer range.
  std::uint64_t range(std::uint64_t lo, std::uint64_t hi) {
    if (lo > hi) throw std::invalid_argument("Rng::range: lo > hi");
    return lo + below(hi - lo + 1);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform double in (0, 1]; never zero, safe for log().
  double unit_pos() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

  // Basic Box-Muller, one fresh pair of uniforms per call.
  double normal(double mean, double sd) {
    const double u1 = unit_pos();
    const double u2 = unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sd * r * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  // k distinct values from [0, n), returned sorted (Floyd's algorithm).
  std::vector<std::uint64_t> distinct(std::uint64_t n, std::uint64_t k) {
    if (k > n) throw std::invalid_argument("Rng::distinct: k > n");
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(static_cast<std::size_t>(k) * 2);
    for (std::uint64_t j = n - k; j < n; ++j) {
      std::uint64_t t = below(j + 1);
      if (!chosen.insert(t).second) chosen.insert(j);
    }
    std::vector<std::uint64_t> out(chosen.begin(), chosen.end());
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::mt19937_64 eng_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Seed derivation for parameter sweeps: mixes a base seed with a tag string
// (axis name) and the value's canonical decimal rendering.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view tag, std::string_view value) {
  std::uint64_t h = fnv1a64(tag);
  h = fnv1a64(value, h);
  return splitmix64(base ^ h);
}

}  // namespace premise
