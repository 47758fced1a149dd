#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "evk/loop.hpp"
#include "evk/scalars.hpp"

namespace evk {

// Negative-mode letters are packed into one char16_t so that the numeric
// order of the packed value is the normal-ordering used for basis words:
// loop degree ascending, then row, then column.
using Letter = char16_t;
using Word = std::u16string;

inline Letter mk_letter(int deg, int row, int col) {
  return static_cast<Letter>(((deg + 64) << 8) | (row << 4) | col);
}
inline int letter_deg(Letter l) { return (static_cast<int>(l) >> 8) - 64; }
inline int letter_row(Letter l) { return (static_cast<int>(l) >> 4) & 0xF; }
inline int letter_col(Letter l) { return static_cast<int>(l) & 0xF; }
inline LoopGen letter_gen(Letter l) {
  return LoopGen::E(letter_row(l), letter_col(l), letter_deg(l));
}

inline int word_depth(const Word& w) {
  int d = 0;
  for (Letter l : w) d -= letter_deg(l);
  return d;
}

inline std::string word_str(const Word& w) {
  if (w.empty()) return "vac";
  std::ostringstream os;
  for (Letter l : w) os << letter_gen(l).str() << ".";
  os << "vac";
  return os.str();
}

// Sparse vector over enumerated basis indices, kept sorted by index.
template <class S>
using SparseVec = std::vector<std::pair<int, S>>;

template <class S>
using Acc = std::map<int, S>;

// The scalar parameter is a non-deduced context so that expression
// templates (boost rationals) convert to S at the call site.
template <class S>
void acc_add(Acc<S>& acc, int idx, const std::type_identity_t<S>& c) {
  if (ScalarOps<S>::is_zero(c)) return;
  auto it = acc.find(idx);
  if (it == acc.end()) {
    acc[idx] = c;
  } else {
    it->second += c;
    if (ScalarOps<S>::is_zero(it->second)) acc.erase(it);
  }
}

template <class S>
void acc_add_vec(Acc<S>& acc, const SparseVec<S>& v, const std::type_identity_t<S>& c) {
  if (ScalarOps<S>::is_zero(c)) return;
  for (const auto& [i, x] : v) acc_add(acc, i, S(c * x));
}

template <class S>
SparseVec<S> acc_flatten(Acc<S>& acc) {
  SparseVec<S> v;
  v.reserve(acc.size());
  for (auto& [i, x] : acc) v.emplace_back(i, std::move(x));
  acc.clear();
  return v;
}

// Finite-dimensional gl(n) representation used as the top layer of the
// induced module.  mat[(i-1)*n + (j-1)] is the dim x dim matrix of E[i,j].
template <class S>
struct WRep {
  int n = 0, dim = 0;
  std::string name;
  std::vector<std::vector<S>> mat;

  const S& entry(int i, int j, int r, int c) const { return mat[(i - 1) * n + (j - 1)][r * dim + c]; }
  S& entry(int i, int j, int r, int c) { return mat[(i - 1) * n + (j - 1)][r * dim + c]; }

  static WRep blank(int n, int dim, std::string name) {
    WRep w;
    w.n = n;
    w.dim = dim;
    w.name = std::move(name);
    w.mat.assign(static_cast<size_t>(n) * n, std::vector<S>(static_cast<size_t>(dim) * dim, S{}));
    return w;
  }

  // One-dimensional character: E[i,j] acts by lam * delta_{i,j}.
  static WRep trivial(int n, const S& lam) {
    WRep w = blank(n, 1, "trivial");
    for (int i = 1; i <= n; ++i) w.entry(i, i, 0, 0) = lam;
    return w;
  }

  static WRep natural(int n) {
    WRep w = blank(n, n, "natural");
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) w.entry(i, j, i - 1, j - 1) = ScalarOps<S>::from_rat(Rat(1));
    return w;
  }

  // Tensor square of the natural representation; index (a,b) -> a*n + b.
  static WRep natural2(int n) {
    WRep w = blank(n, n * n, "natural2");
    const S one = ScalarOps<S>::from_rat(Rat(1));
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        for (int b = 0; b < n; ++b) {
          w.entry(i, j, (i - 1) * n + b, (j - 1) * n + b) += one;
          w.entry(i, j, b * n + (i - 1), b * n + (j - 1)) += one;
        }
    return w;
  }

  bool satisfies_gln() const {
    auto mul = [&](const std::vector<S>& A, const std::vector<S>& B) {
      std::vector<S> C(static_cast<size_t>(dim) * dim, S{});
      for (int r = 0; r < dim; ++r)
        for (int k = 0; k < dim; ++k) {
          const S& a = A[r * dim + k];
          if (ScalarOps<S>::is_zero(a)) continue;
          for (int c = 0; c < dim; ++c) C[r * dim + c] += a * B[k * dim + c];
        }
      return C;
    };
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b)
        for (int c = 1; c <= n; ++c)
          for (int d = 1; d <= n; ++d) {
            const auto& A = mat[(a - 1) * n + (b - 1)];
            const auto& B = mat[(c - 1) * n + (d - 1)];
            std::vector<S> lhs = mul(A, B);
            std::vector<S> rhs = mul(B, A);
            for (int r = 0; r < dim; ++r)
              for (int s = 0; s < dim; ++s) {
                S v = lhs[r * dim + s] - rhs[r * dim + s];
                if (b == c) v -= entry(a, d, r, s);
                if (d == a) v += entry(c, b, r, s);
                if (!ScalarOps<S>::is_zero(v)) return false;
              }
          }
    return true;
  }
};

// Truncated induced module: basis words are normal-ordered products of
// negative-mode letters of total depth <= D applied to W-vectors.  The
// central element c acts by c0, z by 1.  All straightening and action
// results are memoized; a context is not safe for concurrent use.
template <class S>
class ModuleContext {
 public:
  ModuleContext(int n, int D, WRep<S> W, S c0)
      : n_(n), D_(D), c0_(std::move(c0)), W_(std::move(W)) {
    if (n < 2) throw std::invalid_argument("ModuleContext: rank must be at least 2");
    if (D < 0) throw std::invalid_argument("ModuleContext: negative depth");
    if (W_.n != n) throw std::invalid_argument("ModuleContext: representation rank mismatch");
    if (!W_.satisfies_gln()) throw std::invalid_argument("ModuleContext: top layer violates gl(n) relations");
    build_basis();
  }

  int n() const { return n_; }
  int depth_bound() const { return D_; }
  const S& level() const { return c0_; }
  const WRep<S>& top() const { return W_; }

  int dim() const { return static_cast<int>(basis_.size()); }
  const std::pair<Word, int>& basis_elt(int i) const { return basis_[i]; }

  int basis_index(const Word& w, int widx) const {
    auto it = index_.find(key_of(w, widx));
    if (it == index_.end()) throw std::logic_error("ModuleContext: unknown basis element");
    return it->second;
  }

  std::string basis_str(int i) const {
    const auto& [w, widx] = basis_[i];
    std::ostringstream os;
    os << word_str(w);
    if (W_.dim > 1) os << "[" << widx << "]";
    return os.str();
  }

  // Action of a single algebra generator on a basis vector.
  const SparseVec<S>& act_basis(const LoopGen& g, int bi) {
    std::u16string key = gen_key(g);
    const auto& [w, widx] = basis_[bi];
    key += key_of(w, widx);
    auto it = act_memo_.find(key);
    if (it != act_memo_.end()) return it->second;
    SparseVec<S> r = act_uncached(g, w, widx);
    return act_memo_.emplace(std::move(key), std::move(r)).first->second;
  }

  SparseVec<S> act(const LoopGen& g, const SparseVec<S>& v) {
    check_rank(g, n_);
    Acc<S> acc;
    for (const auto& [bi, c] : v) acc_add_vec(acc, act_basis(g, bi), c);
    return acc_flatten(acc);
  }

  SparseVec<S> act_elt(const LieElt<S>& a, const SparseVec<S>& v) {
    Acc<S> acc;
    for (const auto& [g, c] : a.terms)
      for (const auto& [bi, cv] : v) acc_add_vec(acc, act_basis(g, bi), c * cv);
    return acc_flatten(acc);
  }

  SparseVec<S> vacuum(int widx = 0) const {
    return {{basis_index(Word{}, widx), ScalarOps<S>::from_rat(Rat(1))}};
  }

 private:
  static std::u16string key_of(const Word& w, int widx) {
    std::u16string k = w;
    k.push_back(static_cast<char16_t>(0x4000 + widx));
    return k;
  }

  static std::u16string gen_key(const LoopGen& g) {
    std::u16string k;
    k.push_back(static_cast<char16_t>(0x5000 + static_cast<int>(g.kind)));
    if (g.kind == LoopGen::Kind::E) {
      k.push_back(mk_letter(g.deg, g.row, g.col));
    }
    return k;
  }

  void build_basis() {
    std::vector<Word> words{Word{}};
    Word cur;
    auto extend = [&](auto&& self, Letter min_l, int budget) -> void {
      for (int deg = -budget; deg <= -1; ++deg)
        for (int r = 1; r <= n_; ++r)
          for (int c = 1; c <= n_; ++c) {
            Letter l = mk_letter(deg, r, c);
            if (l < min_l) continue;
            cur.push_back(l);
            words.push_back(cur);
            self(self, l, budget + deg);
            cur.pop_back();
          }
    };
    if (D_ > 0) extend(extend, mk_letter(-D_, 1, 1), D_);
    std::stable_sort(words.begin(), words.end(), [](const Word& a, const Word& b) {
      int da = word_depth(a), db = word_depth(b);
      if (da != db) return da < db;
      return a < b;
    });
    for (const Word& w : words)
      for (int x = 0; x < W_.dim; ++x) {
        index_[key_of(w, x)] = static_cast<int>(basis_.size());
        basis_.emplace_back(w, x);
      }
  }

  // Straightens letter * word into normal-ordered words.  Structure
  // constants are rational; no central terms arise between negative modes.
  const std::map<Word, Rat>& mult_neg(Letter l, const Word& w) {
    std::u16string key;
    key.push_back(l);
    key += w;
    auto it = neg_memo_.find(key);
    if (it != neg_memo_.end()) return it->second;

    std::map<Word, Rat> out;
    if (-letter_deg(l) + word_depth(w) <= D_) {
      if (w.empty() || l <= w[0]) {
        Word nw;
        nw.push_back(l);
        nw += w;
        out[std::move(nw)] = Rat(1);
      } else {
        Letter head = w[0];
        Word tail = w.substr(1);
        for (const auto& [w2, q] : mult_neg(l, tail))
          for (const auto& [w3, q2] : mult_neg(head, w2)) {
            Rat& dst = out[w3];
            dst += q * q2;
            if (dst == 0) out.erase(w3);
          }
        for (const auto& [g, q] : bracket_gens(letter_gen(l), letter_gen(head)))
          for (const auto& [w2, q2] : mult_neg(mk_letter(g.deg, g.row, g.col), tail)) {
            Rat& dst = out[w2];
            dst += q * q2;
            if (dst == 0) out.erase(w2);
          }
      }
    }
    return neg_memo_.emplace(std::move(key), std::move(out)).first->second;
  }

  SparseVec<S> act_uncached(const LoopGen& g, const Word& w, int widx) {
    Acc<S> acc;
    switch (g.kind) {
      case LoopGen::Kind::C:
        acc_add(acc, basis_index(w, widx), c0_);
        break;
      case LoopGen::Kind::Z:
        acc_add(acc, basis_index(w, widx), ScalarOps<S>::from_rat(Rat(1)));
        break;
      case LoopGen::Kind::E: {
        if (g.deg < 0) {
          for (const auto& [w2, q] : mult_neg(mk_letter(g.deg, g.row, g.col), w))
            acc_add(acc, basis_index(w2, widx), ScalarOps<S>::from_rat(q));
        } else if (w.empty()) {
          if (g.deg == 0)
            for (int r = 0; r < W_.dim; ++r)
              acc_add(acc, basis_index(w, r), W_.entry(g.row, g.col, r, widx));
          // positive modes annihilate the top layer
        } else {
          Letter head = w[0];
          Word tail = w.substr(1);
          int tail_idx = basis_index(tail, widx);
          for (const auto& [bi, c] : act_basis(g, tail_idx)) {
            const auto& [wb, xb] = basis_[bi];
            for (const auto& [w2, q] : mult_neg(head, wb))
              acc_add(acc, basis_index(w2, xb), c * ScalarOps<S>::from_rat(q));
          }
          for (const auto& [gb, q] : bracket_gens(g, letter_gen(head))) {
            const S qc = ScalarOps<S>::from_rat(q);
            if (gb.kind == LoopGen::Kind::C) {
              acc_add(acc, tail_idx, qc * c0_);
            } else if (gb.kind == LoopGen::Kind::Z) {
              acc_add(acc, tail_idx, qc);
            } else {
              for (const auto& [bi, c] : act_basis(gb, tail_idx)) acc_add(acc, bi, qc * c);
            }
          }
        }
        break;
      }
    }
    return acc_flatten(acc);
  }

  int n_, D_;
  S c0_;
  WRep<S> W_;
  std::vector<std::pair<Word, int>> basis_;
  std::unordered_map<std::u16string, int> index_;
  std::unordered_map<std::u16string, SparseVec<S>> act_memo_;
  std::unordered_map<std::u16string, std::map<Word, Rat>> neg_memo_;
};

}  // namespace evk
