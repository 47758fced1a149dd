#include <doctest.h>

#include "evk/pseries.hpp"

using namespace evk;

namespace {

// scalar series over a one-dimensional box: coefficients are rational
// multiples of the identity
PowerSeries<Rat> scal(std::vector<Rat> cs, int R) {
  PowerSeries<Rat> p = PowerSeries<Rat>::zero(1, R);
  for (size_t m = 0; m < cs.size() && m <= static_cast<size_t>(R); ++m)
    p.c[m] = Closure<Rat>::identity(1, cs[m]);
  return p;
}

Rat coeff(const PowerSeries<Rat>& p, int m) {
  if (p.c[m].cols[0].empty()) return Rat(0);
  return p.c[m].cols[0].front().second;
}

}  // namespace

TEST_CASE("binomial coefficients") {
  CHECK(binom(4, 2) == Rat(6));
  CHECK(binom(5, 0) == Rat(1));
  CHECK(binom(5, 5) == Rat(1));
}

TEST_CASE("argument shift expands the negative powers") {
  const int R = 5;
  // u^-1 shifted by a: (u+a)^-1 = sum_k (-a)^k u^{-1-k}
  PowerSeries<Rat> p = scal({Rat(0), Rat(1)}, R);
  Rat a(3);
  PowerSeries<Rat> s = series_shift(p, a);
  CHECK(coeff(s, 0) == Rat(0));
  for (int m = 1; m <= R; ++m) {
    Rat want(1);
    for (int k = 0; k < m - 1; ++k) want *= -a;
    CHECK(coeff(s, m) == want);
  }
}

TEST_CASE("shift composes additively") {
  const int R = 6;
  PowerSeries<Rat> p = scal({Rat(1), Rat(2), Rat(-1), Rat(5), Rat(0), Rat(3), Rat(7)}, R);
  PowerSeries<Rat> s1 = series_shift(series_shift(p, Rat(2)), Rat(3));
  PowerSeries<Rat> s2 = series_shift(p, Rat(5));
  for (int m = 0; m <= R; ++m) CHECK(coeff(s1, m) == coeff(s2, m));
}

TEST_CASE("inversion against the constant term") {
  const int R = 6;
  // p = (1 - 2 u^-1), inverse has coefficients 2^m
  PowerSeries<Rat> p = scal({Rat(1), Rat(-2)}, R);
  PowerSeries<Rat> inv = series_invert(p, Rat(1));
  for (int m = 0; m <= R; ++m) {
    Rat want(1);
    for (int k = 0; k < m; ++k) want *= Rat(2);
    CHECK(coeff(inv, m) == want);
  }
  PowerSeries<Rat> prod = series_mul(p, inv);
  CHECK(coeff(prod, 0) == Rat(1));
  for (int m = 1; m <= R; ++m) CHECK(coeff(prod, m) == Rat(0));
  // wrong leading term is rejected
  CHECK_THROWS(series_invert(p, Rat(2)));
}

TEST_CASE("multiplication is the Cauchy product") {
  const int R = 4;
  PowerSeries<Rat> a = scal({Rat(1), Rat(1)}, R);       // 1 + u^-1
  PowerSeries<Rat> b = scal({Rat(1), Rat(-1)}, R);      // 1 - u^-1
  PowerSeries<Rat> ab = series_mul(a, b);               // 1 - u^-2
  CHECK(coeff(ab, 0) == Rat(1));
  CHECK(coeff(ab, 1) == Rat(0));
  CHECK(coeff(ab, 2) == Rat(-1));
  CHECK(coeff(ab, 3) == Rat(0));
}

TEST_CASE("signed permutations enumerate the symmetric group") {
  auto p2 = signed_permutations(2);
  CHECK(p2.size() == 2);
  auto p3 = signed_permutations(3);
  CHECK(p3.size() == 6);
  int sum = 0;
  for (const auto& [perm, sgn] : p3) sum += sgn;
  CHECK(sum == 0);
}

TEST_CASE("one-by-one minors reproduce the entry with no shift") {
  const int R = 3;
  PowerSeries<Rat> t11 = scal({Rat(1), Rat(4), Rat(9), Rat(2)}, R);
  auto tf = [&](int, int) { return t11; };
  PowerSeries<Rat> m = quantum_minor<Rat>({1}, {1}, tf, Rat(10), 1, R);
  for (int q = 0; q <= R; ++q) CHECK(coeff(m, q) == coeff(t11, q));
}

TEST_CASE("two-by-two minor of commuting scalar entries") {
  const int R = 3;
  // entries t_{ab}(u) = delta_ab + gamma_ab u^-1 with distinct gammas
  auto g = [](int a, int b) { return Rat(3 * a + b); };
  auto tf = [&](int a, int b) {
    PowerSeries<Rat> p = PowerSeries<Rat>::zero(1, 3);
    p.c[0] = Closure<Rat>::identity(1, a == b ? Rat(1) : Rat(0));
    p.c[1] = Closure<Rat>::identity(1, g(a, b));
    return p;
  };
  Rat unit(7);
  PowerSeries<Rat> m = quantum_minor<Rat>({1, 2}, {1, 2}, tf, unit, 1, R);
  // hand expansion: sum over sigma, tau of sgn*sgn *
  //   t_{s1,t1}(u) t_{s2,t2}(u - unit), scalar entries commute
  auto entry = [&](int a, int b, int shift, int ord) {
    PowerSeries<Rat> base = tf(a, b);
    PowerSeries<Rat> s = shift ? series_shift(base, Rat(shift) * unit) : base;
    return coeff(s, ord);
  };
  for (int ord = 0; ord <= R; ++ord) {
    Rat want(0);
    int rows[2] = {1, 2}, cols[2] = {1, 2};
    auto perms = signed_permutations(2);
    for (const auto& [sig, ssgn] : perms)
      for (const auto& [tau, tsgn] : perms) {
        Rat term(0);
        for (int q = 0; q <= ord; ++q)
          term += entry(rows[sig[0]], cols[tau[0]], 0, q) *
                  entry(rows[sig[1]], cols[tau[1]], 1, ord - q);
        want += Rat(ssgn * tsgn) * term;
      }
    CHECK(coeff(m, ord) == want);
  }
}
