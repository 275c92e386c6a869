#pragma once

#include <cmath>
#include <cstdint>

namespace levywh::rng {

// SplitMix64; used to derive per-path stream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro256++ with 256-bit state. Stream i is seeded from
// splitmix64(seed ^ mix(i)), so path results are independent of the thread
// partition.
class Xoshiro256pp {
 public:
  Xoshiro256pp(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t sm = seed ^ (0x2545f4914f6cdd1dULL * (stream + 1));
    for (auto& w : s_) w = splitmix64(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform on (0, 1); never returns 0 or 1
  double uniform() {
    const std::uint64_t u = next_u64() >> 11;  // 53 bits
    return (double(u) + 0.5) * 0x1.0p-53;
  }

  // standard normal, Box-Muller with a cached second draw
  double normal() {
    if (have_cache_) {
      have_cache_ = false;
      return cache_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925287 * u2;
    cache_ = r * std::sin(a);
    have_cache_ = true;
    return r * std::cos(a);
  }

  double exponential(double rate) { return -std::log(uniform()) / rate; }

  unsigned long poisson(double mean) {
    // inversion for small means, normal approximation never used: jump
    // counts here stay modest (mean = lambda * T)
    if (mean <= 0.0) return 0;
    if (mean < 60.0) {
      const double l = std::exp(-mean);
      unsigned long k = 0;
      double p = uniform();
      while (p > l) {
        ++k;
        p *= uniform();
      }
      return k;
    }
    // split recursively; keeps the inversion loop short
    const unsigned long a = poisson(0.5 * mean);
    return a + poisson(mean - 0.5 * mean);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s_[4];
  double cache_ = 0.0;
  bool have_cache_ = false;
};

}  // namespace levywh::rng
