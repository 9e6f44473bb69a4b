#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "qew/rng.hpp"

namespace qew {

// Aaronson-Gottesman stabilizer tableau with sign tracking.  Used for
// noiseless reference runs (detector validation); hot loops never touch it.
class Tableau {
 public:
  explicit Tableau(std::size_t n, std::uint64_t collapse_seed = 0)
      : n_(n), words_((2 * n + 63) / 64), rng_(rng::fold(collapse_seed, 0x7ab1eau)) {
    rows_.assign(2 * n + 1, Row(words_));
    for (std::size_t i = 0; i < n; ++i) {
      set_bit(rows_[i].v, i, true);          // destabilizer X_i
      set_bit(rows_[i + n].v, i + n, true);  // stabilizer Z_i
    }
  }

  std::size_t num_qubits() const { return n_; }

  void h(std::size_t a) {
    for (auto& row : rows_) {
      bool xa = get_bit(row.v, a), za = get_bit(row.v, a + n_);
      row.r ^= xa && za;
      set_bit(row.v, a, za);
      set_bit(row.v, a + n_, xa);
    }
  }

  void s(std::size_t a) {
    for (auto& row : rows_) {
      bool xa = get_bit(row.v, a), za = get_bit(row.v, a + n_);
      row.r ^= xa && za;
      set_bit(row.v, a + n_, za ^ xa);
    }
  }

  void cx(std::size_t a, std::size_t b) {
    for (auto& row : rows_) {
      bool xa = get_bit(row.v, a), za = get_bit(row.v, a + n_);
      bool xb = get_bit(row.v, b), zb = get_bit(row.v, b + n_);
      row.r ^= xa && zb && (xb == za);
      set_bit(row.v, b, xb ^ xa);
      set_bit(row.v, a + n_, za ^ zb);
    }
  }

  void cz(std::size_t a, std::size_t b) {
    h(b);
    cx(a, b);
    h(b);
  }

  void apply_x(std::size_t a) {  // flips signs of rows anticommuting with X_a
    for (auto& row : rows_) row.r ^= get_bit(row.v, a + n_);
  }
  void apply_z(std::size_t a) {
    for (auto& row : rows_) row.r ^= get_bit(row.v, a);
  }

  bool measure_z(std::size_t a) {
    std::size_t p = 2 * n_;
    for (std::size_t i = n_; i < 2 * n_; ++i) {
      if (get_bit(rows_[i].v, a)) {
        p = i;
        break;
      }
    }
    if (p < 2 * n_) {
      // Random outcome.
      for (std::size_t i = 0; i < 2 * n_; ++i)
        if (i != p && get_bit(rows_[i].v, a)) rowsum(i, p);
      rows_[p - n_] = rows_[p];
      Row& rp = rows_[p];
      std::fill(rp.v.begin(), rp.v.end(), 0);
      set_bit(rp.v, a + n_, true);
      rp.r = rng_.next_bool();
      rp.phase2 = 0;
      return rp.r;
    }
    // Deterministic outcome via scratch row.
    Row& sc = rows_[2 * n_];
    std::fill(sc.v.begin(), sc.v.end(), 0);
    sc.r = false;
    sc.phase2 = 0;
    for (std::size_t i = 0; i < n_; ++i)
      if (get_bit(rows_[i].v, a)) rowsum(2 * n_, i + n_);
    return sc.r;
  }

  bool measure_x(std::size_t a) {
    h(a);
    bool m = measure_z(a);
    h(a);
    return m;
  }

  void prep_z(std::size_t a) {
    if (measure_z(a)) apply_x(a);
  }
  void prep_x(std::size_t a) {
    prep_z(a);
    h(a);
  }

 private:
  struct Row {
    explicit Row(std::size_t words) : v(2 * words, 0) {}
    std::vector<std::uint64_t> v;  // first half X bits, second half Z bits
    bool r = false;
    std::uint8_t phase2 = 0;  // scratch for rowsum's mod-4 arithmetic
  };

  static bool get_bit(const std::vector<std::uint64_t>& v, std::size_t i) {
    return (v[i >> 6] >> (i & 63)) & 1;
  }
  static void set_bit(std::vector<std::uint64_t>& v, std::size_t i, bool b) {
    if (b)
      v[i >> 6] |= 1ull << (i & 63);
    else
      v[i >> 6] &= ~(1ull << (i & 63));
  }

  // g(x1,z1,x2,z2): exponent of i when multiplying single-qubit Paulis.
  static int g(int x1, int z1, int x2, int z2) {
    if (!x1 && !z1) return 0;
    if (x1 && z1) return z2 - x2;
    if (x1) return z2 * (2 * x2 - 1);
    return x2 * (1 - 2 * z2);
  }

  void rowsum(std::size_t h, std::size_t i) {
    int phase = 2 * (rows_[h].r ? 1 : 0) + 2 * (rows_[i].r ? 1 : 0);
    for (std::size_t q = 0; q < n_; ++q) {
      int x1 = get_bit(rows_[i].v, q), z1 = get_bit(rows_[i].v, q + n_);
      int x2 = get_bit(rows_[h].v, q), z2 = get_bit(rows_[h].v, q + n_);
      phase += g(x1, z1, x2, z2);
    }
    phase = ((phase % 4) + 4) % 4;
    assert(phase == 0 || phase == 2);
    rows_[h].r = phase == 2;
    for (std::size_t w = 0; w < rows_[h].v.size(); ++w)
      rows_[h].v[w] ^= rows_[i].v[w];
  }

  std::size_t n_;
  std::size_t words_;
  std::vector<Row> rows_;
  rng::SplitMix rng_;
};

}  // namespace qew
