#pragma once

#include <cstdint>

namespace sixv {

// Counter-based splittable generator: every uniform is a pure hash of
// (master seed, chain id, face, step). Replay is exact and chains never
// share mutable state.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

struct RngKey {
  std::uint64_t key = 0;

  static RngKey from(std::uint64_t seed, std::uint64_t chain_id) {
    RngKey k;
    k.key = mix64(mix64(seed) ^ mix64(chain_id + 0x517cc1b727220a95ull));
    return k;
  }
  RngKey derive(std::uint64_t tag) const {
    RngKey k;
    k.key = mix64(key ^ mix64(tag + 0x2545f4914f6cdd1dull));
    return k;
  }
  std::uint64_t bits(std::uint64_t face, std::uint64_t step) const {
    return mix64(mix64(key ^ (face * 0xd6e8feb86659fd93ull)) ^ (step * 0xa0761d6478bd642full));
  }
  double uniform(std::uint64_t face, std::uint64_t step) const {
    return static_cast<double>(bits(face, step) >> 11) * 0x1.0p-53;
  }
};

// Small sequential stream on top of the keyed generator (permutations etc).
struct RngStream {
  RngKey key;
  std::uint64_t counter = 0;

  std::uint64_t next_bits() { return key.bits(kStreamTag, counter++); }
  double next_uniform() { return key.uniform(kStreamTag, counter++); }
  std::uint64_t next_below(std::uint64_t n) { return next_bits() % n; }

private:
  static constexpr std::uint64_t kStreamTag = 0x73747265616dull;
};

}  // namespace sixv
