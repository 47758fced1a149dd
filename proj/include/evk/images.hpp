#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "evk/pseries.hpp"
#include "evk/seriesop.hpp"

namespace evk {

// Raised when a requested image is not among the printed formulas; the
// index-0 mode-1 generators and everything of mode >= 2 in the
// minimalistic presentation have no published evaluation image.
struct NotInPaper : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class GenKind { H, Xp, Xm };

struct GenId {
  GenKind kind = GenKind::H;
  int i = 0;
  int r = 0;
};

inline std::string gen_name(const GenId& g) {
  std::string k = g.kind == GenKind::H ? "H" : (g.kind == GenKind::Xp ? "X+" : "X-");
  return k + "[" + std::to_string(g.i) + "," + std::to_string(g.r) + "]";
}

enum class Normalization { printed, with_hbar, derived };
enum class Convention { A, B, C };

inline std::string normalization_name(Normalization n) {
  switch (n) {
    case Normalization::printed:
      return "printed";
    case Normalization::with_hbar:
      return "hbar-inserted";
    default:
      return "derived";
  }
}
inline std::string convention_name(Convention c) {
  switch (c) {
    case Convention::A:
      return "A";
    case Convention::B:
      return "B";
    default:
      return "C";
  }
}

// Builders for the operator images of all generator families, shared so
// that equal subexpressions are one node (evaluation memoizes by node).
class ImageLib {
 public:
  explicit ImageLib(int n) : n_(n) {
    if (n < 2) throw std::invalid_argument("ImageLib: rank below 2");
  }

  int n() const { return n_; }

  // Image of the r-th matrix-entry generator of the finite Yangian:
  // chains E[i,x1]t^{-z1-1} ... E[xk,j]t^{zk+1} with complete homogeneous
  // coefficients in the (z+1)c's, summed over all chain lengths.
  OpPtr evT(int i, int j, int r) {
    check(i, j);
    if (r < 0) throw std::invalid_argument("evT: negative mode");
    auto key = std::array<int, 3>{i, j, r};
    auto it = evT_.find(key);
    if (it != evT_.end()) return it->second;
    OpPtr e;
    if (r == 0) {
      e = i == j ? op_identity(Coef{}) : op_zero();
    } else if (r == 1) {
      e = op_template(make_template(n_, {}, 0, {Factor{FIdx::at(i), FIdx::at(j), AffExp{0, {}}}}, Coef{}));
    } else {
      std::vector<OpPtr> parts;
      for (int k = 1; k <= r - 1; ++k) {
        std::vector<XRange> xr(k, XRange{1, n_});
        std::vector<Factor> fs;
        AffExp first{-1, std::vector<int>(k, 0)};
        first.z[0] = -1;
        fs.push_back(Factor{FIdx::at(i), FIdx::var(0), first});
        for (int t = 1; t <= k - 1; ++t) {
          AffExp mid{0, std::vector<int>(k, 0)};
          mid.z[t - 1] = 1;
          mid.z[t] = -1;
          fs.push_back(Factor{FIdx::var(t - 1), FIdx::var(t), mid});
        }
        AffExp last{1, std::vector<int>(k, 0)};
        last.z[k - 1] = 1;
        fs.push_back(Factor{FIdx::var(k - 1), FIdx::at(j), last});
        HCoef h;
        h.deg = r - 1 - k;
        for (int t = 0; t < k; ++t) {
          AffExp a{1, std::vector<int>(k, 0)};
          a.z[t] = 1;
          h.args.push_back(std::move(a));
        }
        parts.push_back(op_template(make_template(n_, std::move(xr), k, std::move(fs),
                                                  Coef{Rat(1), r - 1, std::move(h)})));
      }
      e = op_sum(std::move(parts));
    }
    evT_[key] = e;
    return e;
  }

  // Images of the minimalistic-presentation generators (modes 0 and 1).
  OpPtr ev_min(const GenId& g) {
    if (g.i < 0 || g.i > n_ - 1)
      throw std::invalid_argument("ev_min: node index out of range");
    auto key = std::make_tuple(static_cast<int>(g.kind), g.i, g.r);
    auto it = min_.find(key);
    if (it != min_.end()) return it->second;
    OpPtr e = build_min(g);
    min_[key] = e;
    return e;
  }

  // H~[i,1] = H[i,1] - (hbar/2) H[i,0]^2, evaluated.
  OpPtr ev_min_htilde(int i) {
    auto it = htilde_.find(i);
    if (it != htilde_.end()) return it->second;
    GenId h1{GenKind::H, i, 1};
    OpPtr h0 = ev_min(GenId{GenKind::H, i, 0});
    OpPtr e =
        op_sum({ev_min(h1), op_scale(Coef{Rat(-1) / Rat(2), 1, std::nullopt}, op_compose(h0, h0))});
    htilde_[i] = e;
    return e;
  }

  OpPtr iota_x0(GenKind kind, int i) {
    check_finite(i);
    return kind == GenKind::Xp ? evT(i, i + 1, 1) : evT(i + 1, i, 1);
  }

  OpPtr iota_htilde(int i) {
    check_finite(i);
    auto it = iota_h_.find(i);
    if (it != iota_h_.end()) return it->second;
    const Rat half(Rat(1) / Rat(2));
    const Rat ishift = Rat(i - 1) / Rat(2);
    std::vector<OpPtr> parts;
    parts.push_back(evT(i, i, 2));
    parts.push_back(op_scale(Coef{Rat(-1), 0, std::nullopt}, evT(i + 1, i + 1, 2)));
    if (ishift != 0) {
      parts.push_back(op_scale(Coef{-ishift, 1, std::nullopt}, evT(i, i, 1)));
      parts.push_back(op_scale(Coef{ishift, 1, std::nullopt}, evT(i + 1, i + 1, 1)));
    }
    for (int u = 1; u <= i - 1; ++u)
      parts.push_back(op_scale(Coef{Rat(1), 1, std::nullopt}, op_compose(evT(i, u, 1), evT(u, i, 1))));
    for (int u = 1; u <= i; ++u)
      parts.push_back(
          op_scale(Coef{Rat(-1), 1, std::nullopt}, op_compose(evT(i + 1, u, 1), evT(u, i + 1, 1))));
    parts.push_back(op_scale(Coef{half, 1, std::nullopt}, op_compose(evT(i, i, 1), evT(i, i, 1))));
    parts.push_back(
        op_scale(Coef{-half, 1, std::nullopt}, op_compose(evT(i + 1, i + 1, 1), evT(i + 1, i + 1, 1))));
    OpPtr e = op_sum(std::move(parts));
    iota_h_[i] = e;
    return e;
  }

  // Mode-1 root generators through the degree-1 Cartan bracket
  // (coefficient 2 on the diagonal), not hardcoded.
  OpPtr iota_x1(GenKind kind, int i) {
    check_finite(i);
    auto key = std::make_pair(static_cast<int>(kind), i);
    auto it = iota_x1_.find(key);
    if (it != iota_x1_.end()) return it->second;
    Rat q = kind == GenKind::Xp ? Rat(1) / Rat(2) : Rat(-1) / Rat(2);
    OpPtr e = op_scale(Coef{q, 0, std::nullopt}, op_comm(iota_htilde(i), iota_x0(kind, i)));
    iota_x1_[key] = e;
    return e;
  }

  // Auxiliary Cartan-extension element; the linear-term normalization is
  // probed (the two readings of the source display plus the derived one).
  OpPtr ihat_A(Normalization norm) {
    auto it = ihat_.find(static_cast<int>(norm));
    if (it != ihat_.end()) return it->second;
    Coef beta;
    switch (norm) {
      case Normalization::printed:
        beta = Coef{-Rat(n_ - 2) / Rat(2), 0, std::nullopt};
        break;
      case Normalization::with_hbar:
        beta = Coef{-Rat(n_ - 2) / Rat(2), 1, std::nullopt};
        break;
      case Normalization::derived:
        beta = Coef{-Rat(n_ - 1) / Rat(2), 1, std::nullopt};
        break;
    }
    std::vector<OpPtr> parts;
    parts.push_back(evT(n_, n_, 2));
    if (beta.q != 0) parts.push_back(op_scale(beta, evT(n_, n_, 1)));
    for (int u = 1; u <= n_ - 1; ++u)
      parts.push_back(op_scale(Coef{Rat(1), 1, std::nullopt}, op_compose(evT(n_, u, 1), evT(u, n_, 1))));
    parts.push_back(op_scale(Coef{Rat(1) / Rat(2), 1, std::nullopt},
                             op_compose(evT(n_, n_, 1), evT(n_, n_, 1))));
    OpPtr e = op_sum(std::move(parts));
    ihat_[static_cast<int>(norm)] = e;
    return e;
  }

 private:
  void check(int i, int j) const {
    if (i < 1 || i > n_ || j < 1 || j > n_)
      throw std::invalid_argument("ImageLib: matrix index out of range");
  }
  void check_finite(int i) const {
    if (i < 1 || i > n_ - 1)
      throw std::invalid_argument("ImageLib: node index outside 1..n-1");
  }

  OpPtr zero_mode(int a, int b) {
    return op_template(make_template(n_, {}, 0, {Factor{FIdx::at(a), FIdx::at(b), AffExp{0, {}}}}, Coef{}));
  }
  OpPtr loop_mode(int a, int b, int s) {
    return op_template(make_template(n_, {}, 0, {Factor{FIdx::at(a), FIdx::at(b), AffExp{s, {}}}}, Coef{}));
  }

  // hbar * sum_{s>=0} sum_{x=klo..khi} E[a,x]t^{-s-off} E[x,b]t^{s+off}
  OpPtr pair_sum(int a, int b, int klo, int khi, int off, Rat q) {
    AffExp down{-off, {-1}}, up{off, {1}};
    std::vector<Factor> fs{Factor{FIdx::at(a), FIdx::var(0), down}, Factor{FIdx::var(0), FIdx::at(b), up}};
    return op_template(
        make_template(n_, {XRange{klo, khi}}, 1, std::move(fs), Coef{q, 1, std::nullopt}));
  }

  OpPtr build_min(const GenId& g) {
    const int i = g.i;
    if (g.r >= 2) throw NotInPaper("no printed image for " + gen_name(g));
    if (g.kind == GenKind::Xp && g.r == 0)
      return i == 0 ? loop_mode(n_, 1, 1) : zero_mode(i, i + 1);
    if (g.kind == GenKind::Xm && g.r == 0)
      return i == 0 ? loop_mode(1, n_, -1) : zero_mode(i + 1, i);
    if (g.kind == GenKind::H && g.r == 0)
      return op_comm(ev_min(GenId{GenKind::Xp, i, 0}), ev_min(GenId{GenKind::Xm, i, 0}));
    if (i == 0) throw NotInPaper("no printed image for " + gen_name(g));
    const Rat ishift = Rat(i - 1) / Rat(2);
    if (g.kind == GenKind::H) {
      std::vector<OpPtr> parts;
      if (ishift != 0)
        parts.push_back(op_scale(Coef{-ishift, 1, std::nullopt}, ev_min(GenId{GenKind::H, i, 0})));
      parts.push_back(op_template(make_template(
          n_, {}, 0,
          {Factor{FIdx::at(i), FIdx::at(i), AffExp{0, {}}},
           Factor{FIdx::at(i + 1), FIdx::at(i + 1), AffExp{0, {}}}},
          Coef{Rat(-1), 1, std::nullopt})));
      parts.push_back(pair_sum(i, i, 1, i, 0, Rat(1)));
      parts.push_back(pair_sum(i, i, i + 1, n_, 1, Rat(1)));
      parts.push_back(pair_sum(i + 1, i + 1, 1, i, 0, Rat(-1)));
      parts.push_back(pair_sum(i + 1, i + 1, i + 1, n_, 1, Rat(-1)));
      return op_sum(std::move(parts));
    }
    const bool plus = g.kind == GenKind::Xp;
    const int a = plus ? i : i + 1;
    const int b = plus ? i + 1 : i;
    std::vector<OpPtr> parts;
    if (ishift != 0) parts.push_back(op_scale(Coef{-ishift, 1, std::nullopt}, zero_mode(a, b)));
    parts.push_back(pair_sum(a, b, 1, i, 0, Rat(1)));
    parts.push_back(pair_sum(a, b, i + 1, n_, 1, Rat(1)));
    return op_sum(std::move(parts));
  }

  int n_;
  std::map<std::array<int, 3>, OpPtr> evT_;
  std::map<std::tuple<int, int, int>, OpPtr> min_;
  std::map<int, OpPtr> iota_h_;
  std::map<int, OpPtr> htilde_;
  std::map<std::pair<int, int>, OpPtr> iota_x1_;
  std::map<int, OpPtr> ihat_;
};

// One matrix entry of the generating series, materialized to order R
// under the chosen series convention.
template <class S>
PowerSeries<S> matrix_series(EvalCtx<S>& ec, ImageLib& lib, Convention conv, int a, int b, int R) {
  const int dim = ec.mod().dim();
  const S hbar = ec.params().hbar;
  PowerSeries<S> p = PowerSeries<S>::zero(dim, R);
  for (int m = 0; m <= R; ++m) {
    switch (conv) {
      case Convention::A:
        p.c[m] = ec.closure(lib.evT(a, b, m));
        break;
      case Convention::B:
        p.c[m] = m == 0 ? Closure<S>::identity(dim, a == b ? ScalarOps<S>::from_rat(Rat(1)) : S{})
                        : ec.closure(lib.evT(a, b, m - 1));
        break;
      case Convention::C:
        if (m == 0)
          p.c[m] = Closure<S>::identity(dim, a == b ? ScalarOps<S>::from_rat(Rat(1)) : S{});
        else
          p.c[m] = (ScalarOps<S>::from_rat(Rat(-1)) * hbar) * ec.closure(lib.evT(a, b, m));
        break;
    }
  }
  return p;
}

// Gauss-ratio extraction of the higher root-generator images from
// quantum-minor series.  Under convention C the matrix series is
// delta - hbar*T(u) and the ratio coefficient carries a factor -hbar.
template <class S>
Closure<S> higher_image(EvalCtx<S>& ec, ImageLib& lib, Convention conv, GenKind kind, int i, int r,
                        int R) {
  if (kind == GenKind::H) throw std::invalid_argument("higher_image: root generators only");
  const int n = lib.n();
  if (i < 1 || i > n - 1) throw std::invalid_argument("higher_image: node index outside 1..n-1");
  const int need = conv == Convention::B ? r + 2 : r + 1;
  if (need > R) throw std::invalid_argument("higher_image: series order too small for this mode");
  const int dim = ec.mod().dim();
  const S hbar = ec.params().hbar;

  auto tser = [&](int a, int b) { return matrix_series(ec, lib, conv, a, b, R); };

  std::vector<int> principal;
  for (int a = 1; a <= i; ++a) principal.push_back(a);
  std::vector<int> off = principal;
  off.back() = i + 1;
  for (int a = 1; a < i; ++a) off[a - 1] = a;

  const S unit = hbar;  // inner staircase shift, ascending as printed
  PowerSeries<S> M1 = quantum_minor<S>(principal, principal, tser, unit, dim, R);
  PowerSeries<S> M2 = kind == GenKind::Xp ? quantum_minor<S>(principal, off, tser, unit, dim, R)
                                          : quantum_minor<S>(off, principal, tser, unit, dim, R);

  // Outer argument shift: printed +(i-1)hbar/2 for the printed series
  // conventions; the gauged convention requires the opposite sign.
  Rat oq = Rat(i - 1) / Rat(2);
  if (conv == Convention::C) oq = -oq;
  if (oq != 0) {
    S a = ScalarOps<S>::from_rat(oq) * hbar;
    M1 = series_shift(M1, a);
    M2 = series_shift(M2, a);
  }

  Rat lead(1);
  for (int a = 2; a <= i; ++a) lead *= Rat(a);
  PowerSeries<S> inv = series_invert(M1, lead);
  PowerSeries<S> ratio = kind == GenKind::Xp ? series_mul(inv, M2) : series_mul(M2, inv);

  Closure<S> out = ratio.c[need];
  if (conv == Convention::C) {
    Closure<S> scaled = Closure<S>::zero(dim);
    for (int j = 0; j < dim; ++j)
      for (const auto& [bi, v] : out.cols[j]) {
        S w = ScalarOps<S>::div_param(ScalarOps<S>::from_rat(Rat(-1)) * v, hbar, "hbar");
        if (!ScalarOps<S>::is_zero(w)) scaled.cols[j].emplace_back(bi, std::move(w));
      }
    out = std::move(scaled);
  }
  return out;
}

}  // namespace evk
