#pragma once

#include <cstdint>

namespace qew::rng {

// Counter-based randomness: every draw is a pure function of (seed, stream
// coordinates).  Shots can then be generated in any order, by any number of
// workers, with identical results.

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

inline std::uint64_t fold(std::uint64_t h, std::uint64_t v) {
  return mix64(h ^ (v + kGolden + (h << 6) + (h >> 2)));
}

// Stream tags keep unrelated draw families statistically independent even
// when their integer coordinates coincide.
enum class Stream : std::uint64_t {
  erasure_fire = 0x45524153ull,
  ec_flip = 0x4543464cull,
  pauli_site = 0x50415543ull,
  spread = 0x53505244ull,
  meas_half = 0x4d454153ull,
  reset_mask = 0x52534554ull,
  fp_branch = 0x46504252ull,
  collapse = 0x434f4c50ull,
  generic = 0x47454e52ull,
};

inline std::uint64_t draw_u64(std::uint64_t seed, Stream s, std::uint64_t a,
                              std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t h = fold(seed, static_cast<std::uint64_t>(s));
  h = fold(h, a);
  h = fold(h, b);
  h = fold(h, c);
  return h;
}

inline double to_unit(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

inline double draw_unit(std::uint64_t seed, Stream s, std::uint64_t a,
                        std::uint64_t b = 0, std::uint64_t c = 0) {
  return to_unit(draw_u64(seed, s, a, b, c));
}

inline bool draw_bernoulli(double p, std::uint64_t seed, Stream s,
                           std::uint64_t a, std::uint64_t b = 0,
                           std::uint64_t c = 0) {
  if (p <= 0) return false;
  if (p >= 1) return true;
  return draw_unit(seed, s, a, b, c) < p;
}

// Small stateful generator for places where a sequence is more natural than
// coordinates (e.g. tableau collapse bits).  Seeded from the same keyspace.
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t state) : state_(state) {}
  std::uint64_t next() {
    state_ += kGolden;
    return mix64(state_);
  }
  double next_unit() { return to_unit(next()); }
  bool next_bool() { return next() >> 63; }

 private:
  std::uint64_t state_;
};

}  // namespace qew::rng
