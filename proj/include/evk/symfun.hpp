#pragma once

#include <stdexcept>
#include <vector>

#include "evk/scalars.hpp"

namespace evk {

// Complete homogeneous symmetric polynomial h_m(args), computed by the
// one-variable-at-a-time recurrence.  After the t-th pass row[d] holds
// h_d of the first t arguments.
template <class S>
S eval_h(int m, const std::vector<S>& args) {
  if (m < 0) throw std::invalid_argument("eval_h: negative degree");
  if (args.empty()) throw std::invalid_argument("eval_h: empty argument list");
  std::vector<S> row(static_cast<size_t>(m) + 1, S{});
  row[0] = ScalarOps<S>::from_rat(Rat(1));
  for (const S& z : args)
    for (int d = 1; d <= m; ++d) row[d] += z * row[d - 1];
  return row[static_cast<size_t>(m)];
}

// Independent oracle: direct enumeration of weakly increasing index tuples.
template <class S>
S eval_h_brute(int m, const std::vector<S>& args) {
  if (m < 0) throw std::invalid_argument("eval_h_brute: negative degree");
  if (args.empty()) throw std::invalid_argument("eval_h_brute: empty argument list");
  S total{};
  std::vector<size_t> idx;
  auto rec = [&](auto&& self, size_t lo, int left) -> void {
    if (left == 0) {
      S prod = ScalarOps<S>::from_rat(Rat(1));
      for (size_t i : idx) prod *= args[i];
      total += prod;
      return;
    }
    for (size_t i = lo; i < args.size(); ++i) {
      idx.push_back(i);
      self(self, i, left - 1);
      idx.pop_back();
    }
  };
  rec(rec, 0, m);
  return total;
}

// Coefficient family f^m_n: h_{m-n} evaluated at ((z_t + 1) * c), zero
// outside 2 <= n <= m.
template <class S>
S eval_f(int m, int n, const std::vector<S>& args, const S& c) {
  if (static_cast<int>(args.size()) != n)
    throw std::invalid_argument("eval_f: argument count differs from arity");
  if (!(2 <= n && n <= m)) return S{};
  std::vector<S> shifted;
  shifted.reserve(args.size());
  const S one = ScalarOps<S>::from_rat(Rat(1));
  for (const S& z : args) shifted.push_back((z + one) * c);
  return eval_h<S>(m - n, shifted);
}

}  // namespace evk
