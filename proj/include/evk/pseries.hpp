#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "evk/closure.hpp"
#include "evk/params.hpp"

namespace evk {

inline Rat binom(int n, int k) {
  if (k < 0 || k > n) return Rat(0);
  Rat r(1);
  for (int i = 1; i <= k; ++i) r = r * Rat(n - k + i) / Rat(i);
  return r;
}

// Truncated series in u^{-1} with operator coefficients; c[r] multiplies u^{-r}.
template <class S>
struct PowerSeries {
  std::vector<Closure<S>> c;

  int order() const { return static_cast<int>(c.size()) - 1; }

  static PowerSeries zero(int dim, int R) {
    PowerSeries p;
    p.c.assign(R + 1, Closure<S>::zero(dim));
    return p;
  }

  static PowerSeries delta(int dim, int R, const S& s) {
    PowerSeries p = zero(dim, R);
    p.c[0] = Closure<S>::identity(dim, s);
    return p;
  }

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = r.c[i] + b.c[i];
    return r;
  }
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = r.c[i] - b.c[i];
    return r;
  }
  friend PowerSeries operator*(const S& s, const PowerSeries& a) {
    PowerSeries r = a;
    for (auto& cc : r.c) cc = s * cc;
    return r;
  }
};

template <class S>
PowerSeries<S> series_mul(const PowerSeries<S>& a, const PowerSeries<S>& b) {
  const int R = a.order();
  PowerSeries<S> r = PowerSeries<S>::zero(a.c[0].dim, R);
  for (int p = 0; p <= R; ++p) {
    if (a.c[p].is_zero()) continue;
    for (int q = 0; p + q <= R; ++q) r.c[p + q] = r.c[p + q] + compose(a.c[p], b.c[q]);
  }
  return r;
}

// Argument shift t(u) -> t(u + a), using
// (u+a)^{-r} = sum_k (-1)^k binom(r+k-1, k) a^k u^{-r-k}.
template <class S>
PowerSeries<S> series_shift(const PowerSeries<S>& a, const S& shift) {
  const int R = a.order();
  PowerSeries<S> r = PowerSeries<S>::zero(a.c[0].dim, R);
  r.c[0] = a.c[0];
  for (int p = 1; p <= R; ++p) {
    if (a.c[p].is_zero()) continue;
    S apow = ScalarOps<S>::from_rat(Rat(1));
    for (int k = 0; p + k <= R; ++k) {
      Rat sgn = (k % 2 == 0) ? Rat(1) : Rat(-1);
      S w = ScalarOps<S>::from_rat(sgn * binom(p + k - 1, k)) * apow;
      r.c[p + k] = r.c[p + k] + w * a.c[p];
      apow *= shift;
    }
  }
  return r;
}

// Two-sided inverse of a series whose leading coefficient is the stated
// rational multiple of the identity.
template <class S>
PowerSeries<S> series_invert(const PowerSeries<S>& a, const Rat& lead) {
  const int R = a.order();
  const int dim = a.c[0].dim;
  if (lead == 0) throw std::invalid_argument("series_invert: zero leading coefficient");
  if (!(a.c[0] == Closure<S>::identity(dim, ScalarOps<S>::from_rat(lead))))
    throw std::invalid_argument("series_invert: leading coefficient is not the stated scalar");
  PowerSeries<S> b = PowerSeries<S>::zero(dim, R);
  const Rat inv = Rat(1) / lead;
  b.c[0] = Closure<S>::identity(dim, ScalarOps<S>::from_rat(inv));
  for (int m = 1; m <= R; ++m) {
    Closure<S> s = Closure<S>::zero(dim);
    for (int q = 0; q < m; ++q) {
      if (a.c[m - q].is_zero() || b.c[q].is_zero()) continue;
      s = s + compose(a.c[m - q], b.c[q]);
    }
    b.c[m] = ScalarOps<S>::from_rat(-inv) * s;
  }
  return b;
}

inline std::vector<std::pair<std::vector<int>, int>> signed_permutations(int l) {
  std::vector<int> p(l);
  for (int i = 0; i < l; ++i) p[i] = i;
  std::vector<std::pair<std::vector<int>, int>> out;
  do {
    int inv = 0;
    for (int i = 0; i < l; ++i)
      for (int j = i + 1; j < l; ++j)
        if (p[i] > p[j]) ++inv;
    out.emplace_back(p, inv % 2 == 0 ? 1 : -1);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Row/column determinant with staircase argument shifts: the j-th factor
// (1-based, leftmost first) is t_{a_{sigma(j)}, b_{tau(j)}}(u + (j-1)*unit),
// double-summed over both symmetric groups with sign products.
template <class S>
PowerSeries<S> quantum_minor(const std::vector<int>& rows, const std::vector<int>& cols,
                             const std::function<PowerSeries<S>(int, int)>& t, const S& unit,
                             int dim, int R) {
  const int l = static_cast<int>(rows.size());
  if (l == 0 || cols.size() != rows.size())
    throw std::invalid_argument("quantum_minor: bad index lists");
  std::map<std::pair<int, int>, PowerSeries<S>> base;
  for (int r : rows)
    for (int c : cols)
      if (!base.count({r, c})) base.emplace(std::make_pair(r, c), t(r, c));
  // shifted[(r,c,j)] = t_{r,c}(u + j*unit)
  std::map<std::tuple<int, int, int>, PowerSeries<S>> shifted;
  for (int j = 0; j < l; ++j) {
    S a = ScalarOps<S>::from_rat(Rat(j)) * unit;
    for (auto& [rc, s] : base)
      shifted.emplace(std::make_tuple(rc.first, rc.second, j),
                      j == 0 ? s : series_shift(s, a));
  }
  auto perms = signed_permutations(l);
  PowerSeries<S> total = PowerSeries<S>::zero(dim, R);
  for (const auto& [sig, ssgn] : perms)
    for (const auto& [tau, tsgn] : perms) {
      PowerSeries<S> prod = shifted.at(std::make_tuple(rows[sig[0]], cols[tau[0]], 0));
      for (int j = 1; j < l; ++j)
        prod = series_mul(prod, shifted.at(std::make_tuple(rows[sig[j]], cols[tau[j]], j)));
      Rat s(ssgn * tsgn);
      if (s == 1)
        total = total + prod;
      else
        total = total - prod;
    }
  return total;
}

}  // namespace evk
