#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "evk/module.hpp"

namespace evk {

// Operator materialized over the truncated-module basis: column j is the
// image of basis vector j.
template <class S>
struct Closure {
  int dim = 0;
  std::vector<SparseVec<S>> cols;

  static Closure zero(int dim) {
    Closure c;
    c.dim = dim;
    c.cols.resize(dim);
    return c;
  }

  static Closure identity(int dim, const S& s) {
    Closure c = zero(dim);
    if (!ScalarOps<S>::is_zero(s))
      for (int j = 0; j < dim; ++j) c.cols[j] = {{j, s}};
    return c;
  }

  bool is_zero() const {
    for (const auto& col : cols)
      if (!col.empty()) return false;
    return true;
  }

  SparseVec<S> apply(const SparseVec<S>& v) const {
    Acc<S> acc;
    for (const auto& [i, c] : v) acc_add_vec(acc, cols[i], c);
    return acc_flatten(acc);
  }

  friend Closure operator+(const Closure& a, const Closure& b) {
    Closure r = zero(a.dim);
    for (int j = 0; j < a.dim; ++j) {
      Acc<S> acc;
      const S one = ScalarOps<S>::from_rat(Rat(1));
      acc_add_vec(acc, a.cols[j], one);
      acc_add_vec(acc, b.cols[j], one);
      r.cols[j] = acc_flatten(acc);
    }
    return r;
  }

  friend Closure operator-(const Closure& a, const Closure& b) {
    Closure r = zero(a.dim);
    for (int j = 0; j < a.dim; ++j) {
      Acc<S> acc;
      acc_add_vec(acc, a.cols[j], ScalarOps<S>::from_rat(Rat(1)));
      acc_add_vec(acc, b.cols[j], ScalarOps<S>::from_rat(Rat(-1)));
      r.cols[j] = acc_flatten(acc);
    }
    return r;
  }

  friend Closure operator*(const S& s, const Closure& a) {
    Closure r = zero(a.dim);
    if (ScalarOps<S>::is_zero(s)) return r;
    for (int j = 0; j < a.dim; ++j)
      for (const auto& [i, c] : a.cols[j]) {
        S v = s * c;
        if (!ScalarOps<S>::is_zero(v)) r.cols[j].emplace_back(i, std::move(v));
      }
    return r;
  }

  friend bool operator==(const Closure& a, const Closure& b) { return (a - b).is_zero(); }
};

template <class S>
Closure<S> compose(const Closure<S>& a, const Closure<S>& b) {
  Closure<S> r = Closure<S>::zero(a.dim);
  for (int j = 0; j < b.dim; ++j) r.cols[j] = a.apply(b.cols[j]);
  return r;
}

template <class S>
Closure<S> commutator(const Closure<S>& a, const Closure<S>& b) {
  return compose(a, b) - compose(b, a);
}

// Builds the matrix of a generator (or any per-basis action) once.
template <class S, class F>
Closure<S> closure_from(int dim, F&& column) {
  Closure<S> c = Closure<S>::zero(dim);
  for (int j = 0; j < dim; ++j) c.cols[j] = column(j);
  return c;
}

template <class S>
Closure<S> gen_closure(ModuleContext<S>& ctx, const LoopGen& g) {
  return closure_from<S>(ctx.dim(), [&](int j) { return ctx.act_basis(g, j); });
}

// Human-readable witness of the first nonzero entry, for failure reports.
template <class S>
std::string first_entry_str(const Closure<S>& a, const ModuleContext<S>& ctx) {
  for (int j = 0; j < a.dim; ++j)
    if (!a.cols[j].empty()) {
      const auto& [i, c] = a.cols[j].front();
      std::ostringstream os;
      os << "maps " << ctx.basis_str(j) << " to (" << ScalarOps<S>::str(c) << ")*" << ctx.basis_str(i);
      return os.str();
    }
  return "0";
}

}  // namespace evk
