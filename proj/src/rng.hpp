#ifndef TRA_RNG_HPP_
#define TRA_RNG_HPP_

#include <cstdint>
#include <span>
#include <string_view>

namespace tra {

// Deterministic 64-bit generator (splitmix64). Used instead of std::mt19937 +
// std::*_distribution so that streams are bit-identical across standard
// library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer on [lo, hi], inclusive.
  int64_t uniform_int(int64_t lo, int64_t hi) {
    uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    // 128-bit multiply maps next_u64() onto [0, span) without rejection bias
    // beyond 2^-64, which is below any tolerance used here.
    unsigned __int128 wide = static_cast<unsigned __int128>(next_u64()) * span;
    return lo + static_cast<int64_t>(wide >> 64);
  }

  // Index into a discrete distribution given by non-normalized weights.
  int64_t categorical(std::span<const double> probs) {
    double u = uniform_double();
    double acc = 0.0;
    for (size_t i = 0; i < probs.size(); ++i) {
      acc += probs[i];
      if (u < acc) return static_cast<int64_t>(i);
    }
    return static_cast<int64_t>(probs.size()) - 1;
  }

 private:
  uint64_t state_;
};

// Derives an independent stream from (seed, stream name, index). All
// randomness in the library flows from one user seed through these streams.
inline uint64_t derive_stream(uint64_t seed, std::string_view name, uint64_t index = 0) {
  uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the stream name
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  Rng mix(seed ^ h);
  mix.next_u64();
  Rng mix2(mix.next_u64() ^ (index * 0x9e3779b97f4a7c15ULL));
  mix2.next_u64();
  return mix2.next_u64();
}

}  // namespace tra

#endif  // TRA_RNG_HPP_
