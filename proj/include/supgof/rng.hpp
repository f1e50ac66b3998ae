#pragma once

#include <cstdint>

namespace supgof {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// xoshiro256** seeded through splitmix64.  Streams for Monte Carlo work are
// derived counter-style from (master seed, tag, replicate), so results do not
// depend on thread count or evaluation order.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  static Xoshiro256 derive(std::uint64_t master, std::uint64_t tag, std::uint64_t rep) {
    std::uint64_t sm = master;
    std::uint64_t a = splitmix64(sm);
    sm ^= 0xD1B54A32D192ED03ULL * (tag + 1);
    std::uint64_t b = splitmix64(sm);
    sm ^= 0xEB44ACCAB455D165ULL * (rep + 1);
    Xoshiro256 g(a ^ b ^ splitmix64(sm));
    g.next();
    return g;
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on the open interval (0,1): (k + 1/2) * 2^-53 for k in [0, 2^53).
  double uniform01() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

}  // namespace supgof
