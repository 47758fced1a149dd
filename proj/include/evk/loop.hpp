#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "evk/scalars.hpp"

namespace evk {

// Basis element of the affinized matrix Lie algebra: either a loop
// generator E[i,j]t^deg or one of the two central elements.  "c" pairs
// nonzero modes of matching matrix units, "z" pairs traces.
struct LoopGen {
  enum class Kind : std::uint8_t { E, C, Z };

  Kind kind = Kind::E;
  int row = 0, col = 0, deg = 0;  // rows/cols 1-based; unused (0) for C, Z

  static LoopGen E(int i, int j, int s) { return LoopGen{Kind::E, i, j, s}; }
  static LoopGen C() { return LoopGen{Kind::C, 0, 0, 0}; }
  static LoopGen Z() { return LoopGen{Kind::Z, 0, 0, 0}; }

  int degree() const { return kind == Kind::E ? deg : 0; }

  auto operator<=>(const LoopGen&) const = default;

  std::string str() const {
    switch (kind) {
      case Kind::C:
        return "c";
      case Kind::Z:
        return "z";
      default:
        break;
    }
    std::ostringstream os;
    os << "E[" << row << "," << col << "]";
    if (deg != 0) os << "t^" << deg;
    return os.str();
  }
};

inline void check_rank(const LoopGen& g, int n) {
  if (g.kind != LoopGen::Kind::E) return;
  if (g.row < 1 || g.row > n || g.col < 1 || g.col > n)
    throw std::invalid_argument("LoopGen: index out of range for rank " + std::to_string(n));
}

// Structure constants of a single bracket [a, b].  Both cocycle terms
// live only on degree-cancelling pairs.
inline std::vector<std::pair<LoopGen, Rat>> bracket_gens(const LoopGen& a, const LoopGen& b) {
  std::vector<std::pair<LoopGen, Rat>> out;
  if (a.kind != LoopGen::Kind::E || b.kind != LoopGen::Kind::E) return out;
  const int i = a.row, j = a.col, s = a.deg;
  const int k = b.row, l = b.col, u = b.deg;
  if (j == k) out.emplace_back(LoopGen::E(i, l, s + u), Rat(1));
  if (i == l) out.emplace_back(LoopGen::E(k, j, s + u), Rat(-1));
  if (s + u == 0 && s != 0) {
    if (j == k && i == l) out.emplace_back(LoopGen::C(), Rat(s));
    if (i == j && k == l) out.emplace_back(LoopGen::Z(), Rat(s));
  }
  return out;
}

template <class S>
struct LieElt {
  std::map<LoopGen, S> terms;

  static LieElt gen(const LoopGen& g, S coeff = ScalarOps<S>::from_rat(Rat(1))) {
    LieElt e;
    if (!ScalarOps<S>::is_zero(coeff)) e.terms[g] = std::move(coeff);
    return e;
  }

  bool is_zero() const { return terms.empty(); }

  void add(const LoopGen& g, const S& c) {
    if (ScalarOps<S>::is_zero(c)) return;
    auto it = terms.find(g);
    if (it == terms.end()) {
      terms[g] = c;
    } else {
      it->second += c;
      if (ScalarOps<S>::is_zero(it->second)) terms.erase(it);
    }
  }

  LieElt operator-() const {
    LieElt r;
    for (const auto& [g, c] : terms) r.terms[g] = -c;
    return r;
  }
  friend LieElt operator+(const LieElt& a, const LieElt& b) {
    LieElt r(a);
    for (const auto& [g, c] : b.terms) r.add(g, c);
    return r;
  }
  friend LieElt operator-(const LieElt& a, const LieElt& b) { return a + (-b); }
  friend LieElt operator*(const S& c, const LieElt& a) {
    LieElt r;
    for (const auto& [g, v] : a.terms) r.add(g, c * v);
    return r;
  }
  friend bool operator==(const LieElt& a, const LieElt& b) { return (a - b).is_zero(); }

  std::string str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, c] : terms) {
      if (!first) os << " + ";
      first = false;
      os << "(" << ScalarOps<S>::str(c) << ")*" << g.str();
    }
    return os.str();
  }
};

template <class S>
LieElt<S> bracket(const LieElt<S>& a, const LieElt<S>& b) {
  LieElt<S> r;
  for (const auto& [ga, ca] : a.terms)
    for (const auto& [gb, cb] : b.terms)
      for (const auto& [g, q] : bracket_gens(ga, gb)) r.add(g, (ca * cb) * ScalarOps<S>::from_rat(q));
  return r;
}

// Anti-automorphism: transposes matrix units, flips loop degree, fixes
// both central elements.  On brackets: omega([a,b]) = [omega(b), omega(a)].
inline LoopGen omega_gen(const LoopGen& g) {
  if (g.kind != LoopGen::Kind::E) return g;
  return LoopGen::E(g.col, g.row, -g.deg);
}

template <class S>
LieElt<S> omega(const LieElt<S>& a) {
  LieElt<S> r;
  for (const auto& [g, c] : a.terms) r.add(omega_gen(g), c);
  return r;
}

}  // namespace evk
