#ifndef CHEAPTALK_RNG_HPP
#define CHEAPTALK_RNG_HPP

#include <array>
#include <cstdint>

namespace cheaptalk {

// splitmix64 step (Steele et al.); used for seed expansion and for deriving
// per-sample seeds by counter.
inline constexpr uint64_t splitmix64_next(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// k-th output of the splitmix64 stream started at base (0-based).
inline constexpr uint64_t derive_seed(uint64_t base, uint64_t k) {
  uint64_t state = base + k * 0x9E3779B97F4A7C15ull;
  return splitmix64_next(state);
}

// xoshiro256++ (Blackman & Vigna), state seeded through splitmix64.
// Output sequence is platform-independent, so runs are reproducible
// bit-for-bit from (algorithm id, seed).
class Rng {
 public:
  static constexpr const char* kAlgorithmId = "xoshiro256++";

  explicit Rng(uint64_t seed = 0) {
    uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64_next(sm);
  }

  uint64_t next() {
    const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0,1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Unbiased uniform integer on [0,n) (Lemire's multiply-then-reject).
  uint64_t uniform_below(uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
    auto lo = static_cast<uint64_t>(m);
    if (lo < n) {
      const uint64_t threshold = (0 - n) % n;  // 2^64 mod n
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next()) * n;
        lo = static_cast<uint64_t>(m);
      }
    }
    return static_cast<uint64_t>(m >> 64);
  }

 private:
  static constexpr uint64_t rotl(uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<uint64_t, 4> state_{};
};

}  // namespace cheaptalk

#endif
