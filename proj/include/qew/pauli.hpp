#pragma once

#include <cassert>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qew {

// Phase-free Pauli string over a fixed qubit universe.  Only error supports
// matter for decoding, so composition is plain XOR of the X/Z masks.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t num_qubits)
      : n_(num_qubits), x_((num_qubits + 63) / 64, 0), z_(x_) {}

  static PauliString single(std::size_t num_qubits, std::size_t q, char p) {
    PauliString s(num_qubits);
    s.set(q, p);
    return s;
  }

  std::size_t num_qubits() const { return n_; }

  bool x(std::size_t q) const { return (x_[q >> 6] >> (q & 63)) & 1; }
  bool z(std::size_t q) const { return (z_[q >> 6] >> (q & 63)) & 1; }

  void set_x(std::size_t q, bool v) { assign_bit(x_, q, v); }
  void set_z(std::size_t q, bool v) { assign_bit(z_, q, v); }
  void flip_x(std::size_t q) { x_[q >> 6] ^= 1ull << (q & 63); }
  void flip_z(std::size_t q) { z_[q >> 6] ^= 1ull << (q & 63); }
  void clear(std::size_t q) {
    set_x(q, false);
    set_z(q, false);
  }

  void set(std::size_t q, char p) {
    switch (p) {
      case 'I': clear(q); break;
      case 'X': set_x(q, true); set_z(q, false); break;
      case 'Y': set_x(q, true); set_z(q, true); break;
      case 'Z': set_x(q, false); set_z(q, true); break;
      default: throw std::invalid_argument("bad Pauli letter");
    }
  }

  char at(std::size_t q) const {
    bool xb = x(q), zb = z(q);
    if (xb && zb) return 'Y';
    if (xb) return 'X';
    if (zb) return 'Z';
    return 'I';
  }

  // XOR composition; associative and self-inverse.
  PauliString& operator*=(const PauliString& other) {
    assert(n_ == other.n_);
    for (std::size_t i = 0; i < x_.size(); ++i) {
      x_[i] ^= other.x_[i];
      z_[i] ^= other.z_[i];
    }
    return *this;
  }
  friend PauliString operator*(PauliString a, const PauliString& b) {
    a *= b;
    return a;
  }

  bool operator==(const PauliString& other) const {
    return n_ == other.n_ && x_ == other.x_ && z_ == other.z_;
  }

  bool is_identity() const {
    for (auto w : x_)
      if (w) return false;
    for (auto w : z_)
      if (w) return false;
    return true;
  }

  std::size_t weight() const {
    std::size_t w = 0;
    for (std::size_t i = 0; i < x_.size(); ++i)
      w += static_cast<std::size_t>(__builtin_popcountll(x_[i] | z_[i]));
    return w;
  }

  // Symplectic product: true if the two strings anticommute.
  bool anticommutes(const PauliString& other) const {
    assert(n_ == other.n_);
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < x_.size(); ++i)
      acc ^= (x_[i] & other.z_[i]) ^ (z_[i] & other.x_[i]);
    return __builtin_popcountll(acc) & 1;
  }

  std::string str() const {
    std::string s;
    s.reserve(n_);
    for (std::size_t q = 0; q < n_; ++q) s.push_back(at(q));
    return s;
  }

 private:
  static void assign_bit(std::vector<std::uint64_t>& w, std::size_t q, bool v) {
    if (v)
      w[q >> 6] |= 1ull << (q & 63);
    else
      w[q >> 6] &= ~(1ull << (q & 63));
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> x_, z_;
};

enum class GateKind : std::uint8_t { I, H, S, CX, CZ };

// One Clifford generator acting on one or two qubits.
struct CliffordOp {
  GateKind kind = GateKind::I;
  std::uint32_t q0 = 0;
  std::uint32_t q1 = 0;  // second target for CX/CZ

  static CliffordOp h(std::uint32_t q) { return {GateKind::H, q, 0}; }
  static CliffordOp s(std::uint32_t q) { return {GateKind::S, q, 0}; }
  static CliffordOp cx(std::uint32_t c, std::uint32_t t) {
    return {GateKind::CX, c, t};
  }
  static CliffordOp cz(std::uint32_t a, std::uint32_t b) {
    return {GateKind::CZ, a, b};
  }
};

// In-place conjugation p -> g p g^dagger (support only, phases dropped).
inline void conjugate_inplace(PauliString& p, const CliffordOp& g) {
  if (g.q0 >= p.num_qubits() || (static_cast<int>(g.kind) >= 3 && g.q1 >= p.num_qubits()))
    throw std::out_of_range("gate target outside Pauli universe");
  switch (g.kind) {
    case GateKind::I:
      break;
    case GateKind::H: {
      bool xb = p.x(g.q0), zb = p.z(g.q0);
      p.set_x(g.q0, zb);
      p.set_z(g.q0, xb);
      break;
    }
    case GateKind::S: {
      // X -> Y, Y -> X, Z -> Z
      if (p.x(g.q0)) p.flip_z(g.q0);
      break;
    }
    case GateKind::CX: {
      if (p.x(g.q0)) p.flip_x(g.q1);
      if (p.z(g.q1)) p.flip_z(g.q0);
      break;
    }
    case GateKind::CZ: {
      if (p.x(g.q0)) p.flip_z(g.q1);
      if (p.x(g.q1)) p.flip_z(g.q0);
      break;
    }
  }
}

inline PauliString conjugate(const PauliString& p, const CliffordOp& g) {
  PauliString out = p;
  conjugate_inplace(out, g);
  return out;
}

inline PauliString conjugate_through(PauliString p,
                                     std::span<const CliffordOp> gates) {
  for (const auto& g : gates) conjugate_inplace(p, g);
  return p;
}

inline PauliString compose(const PauliString& a, const PauliString& b) {
  return a * b;
}

}  // namespace qew
