#pragma once

#include <random>
#include <string>

#include "evk/scalars.hpp"

namespace evk {

// Structural parameters entering operator coefficients.  The deformation
// parameter is hbar; c doubles as the coefficient parameter and the
// module level (the two are identified; drawing them apart breaks the
// defining relations in degree >= 2, which a test demonstrates).
template <class S>
struct Params {
  S hbar{};
  S c{};
};

struct Draw {
  Rat hbar, c, lam, c0;
};

inline Rat draw_rat(std::mt19937_64& g) {
  std::uniform_int_distribution<int> num(-20, 20);
  std::uniform_int_distribution<int> den(1, 20);
  return Rat(num(g)) / Rat(den(g));
}

inline Draw draw_params(std::mt19937_64& g) {
  Draw d{draw_rat(g), draw_rat(g), draw_rat(g), Rat(0)};
  while (d.hbar == 0) d.hbar = draw_rat(g);
  d.c0 = d.c;
  return d;
}

inline Params<Rat> numeric_params(const Draw& d) { return Params<Rat>{d.hbar, d.c}; }

inline VarSet symbolic_varset() { return make_varset({"hbar", "c", "lam"}); }

inline Params<PolyQ> symbolic_params(const VarSet& vs) {
  return Params<PolyQ>{PolyQ::var(vs, "hbar"), PolyQ::var(vs, "c")};
}

template <class S>
S spow(const S& base, int k) {
  S r = ScalarOps<S>::from_rat(Rat(1));
  for (int i = 0; i < k; ++i) r *= base;
  return r;
}

}  // namespace evk
