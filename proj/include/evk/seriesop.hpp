#pragma once

#include <json.hpp>

#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "evk/closure.hpp"
#include "evk/module.hpp"
#include "evk/params.hpp"
#include "evk/symfun.hpp"

namespace evk {

// Integer affine form in the summation variables z0..z_{nz-1}.
struct AffExp {
  int c0 = 0;
  std::vector<int> z;

  int eval(const std::vector<int>& zval) const {
    int v = c0;
    for (size_t t = 0; t < z.size(); ++t) v += z[t] * zval[t];
    return v;
  }

  friend bool operator==(const AffExp&, const AffExp&) = default;
  friend auto operator<=>(const AffExp&, const AffExp&) = default;

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t t = 0; t < z.size(); ++t) {
      if (!z[t]) continue;
      if (first) {
        if (z[t] == -1)
          os << "-";
        else if (z[t] != 1)
          os << z[t] << "*";
      } else {
        os << (z[t] > 0 ? "+" : "-");
        if (z[t] != 1 && z[t] != -1) os << std::abs(z[t]) << "*";
      }
      os << "z" << t;
      first = false;
    }
    if (c0 != 0 || first) {
      if (!first && c0 > 0) os << "+";
      os << c0;
    }
    return os.str();
  }
};

// Row or column slot of a factor: a fixed 1-based index or a summation
// variable with a declared range.
struct FIdx {
  int fixed = 0;
  int xvar = -1;

  static FIdx at(int i) { return FIdx{i, -1}; }
  static FIdx var(int x) { return FIdx{0, x}; }
  bool is_var() const { return xvar >= 0; }
  friend bool operator==(const FIdx&, const FIdx&) = default;
};

struct Factor {
  FIdx row, col;
  AffExp exp;
  friend bool operator==(const Factor&, const Factor&) = default;
};

struct XRange {
  int lo = 1, hi = 0;
  friend bool operator==(const XRange&, const XRange&) = default;
};

// Symmetric-function coefficient h_deg evaluated at (args * c).
struct HCoef {
  int deg = 0;
  std::vector<AffExp> args;
  friend bool operator==(const HCoef&, const HCoef&) = default;
};

// Scalar prefactor q * hbar^hpow, optionally times an h-coefficient
// whose arguments are affine in the z's.
struct Coef {
  Rat q = Rat(1);
  int hpow = 0;
  std::optional<HCoef> h;
  friend bool operator==(const Coef&, const Coef&) = default;
};

// A finitely-presented operator sum: over the declared x-ranges and all
// nonnegative z's, coefficient times the product of loop letters given
// by the factors.  Factors are listed left to right and applied right to
// left.  Conformance (checked at construction time) guarantees that the
// z-enumeration is finite on every truncated module.
struct SeriesTemplate {
  int n = 0;
  std::vector<XRange> xr;
  int nz = 0;
  std::vector<Factor> factors;
  Coef coef;
};

inline void validate_template(const SeriesTemplate& T) {
  auto fail = [](const std::string& m) { throw std::invalid_argument("SeriesTemplate: " + m); };
  if (T.n < 2) fail("rank below 2");
  if (T.factors.empty()) fail("no factors");
  for (const auto& r : T.xr)
    if (r.lo < 1 || r.hi > T.n || r.lo > r.hi) fail("bad x-range");
  std::vector<char> xused(T.xr.size(), 0), zseen(T.nz, 0), zused(T.nz, 0);
  auto check_idx = [&](const FIdx& f) {
    if (f.is_var()) {
      if (f.xvar >= static_cast<int>(T.xr.size())) fail("x-variable out of range");
      xused[f.xvar] = 1;
    } else if (f.fixed < 1 || f.fixed > T.n) {
      fail("fixed index out of range");
    }
  };
  for (const auto& f : T.factors) {
    check_idx(f.row);
    check_idx(f.col);
    if (static_cast<int>(f.exp.z.size()) != T.nz) fail("exponent width mismatch");
  }
  // Right-to-left: each z must enter through exactly one +1 occurrence,
  // and every proper suffix of exponents must be a nonnegative form.
  AffExp suffix;
  suffix.z.assign(T.nz, 0);
  for (size_t t = T.factors.size(); t-- > 0;) {
    const AffExp& e = T.factors[t].exp;
    int fresh = 0;
    for (int v = 0; v < T.nz; ++v) {
      if (e.z[v] && !zseen[v]) {
        ++fresh;
        if (e.z[v] != 1) fail("summation variable must enter with coefficient +1");
      }
      if (e.z[v]) zused[v] = 1;
    }
    if (fresh > 1) fail("factor introduces more than one summation variable");
    suffix.c0 += e.c0;
    for (int v = 0; v < T.nz; ++v) suffix.z[v] += e.z[v];
    for (int v = 0; v < T.nz; ++v)
      if (e.z[v] && !zseen[v]) zseen[v] = 1;
    if (t > 0) {
      if (suffix.c0 < 0) fail("suffix degree can drop below the input degree");
      for (int v = 0; v < T.nz; ++v)
        if (suffix.z[v] < 0) fail("suffix degree decreasing in a summation variable");
    }
  }
  for (int v = 0; v < T.nz; ++v)
    if (suffix.z[v] != 0) fail("total degree not constant");
  for (int v = 0; v < T.nz; ++v)
    if (!zused[v]) fail("unused summation variable");
  for (size_t x = 0; x < T.xr.size(); ++x)
    if (!xused[x]) fail("unused x-variable");
  if (T.coef.h) {
    if (T.coef.h->deg < 0) fail("negative h-degree");
    if (T.coef.h->args.empty()) fail("empty h-argument list");
    for (const auto& a : T.coef.h->args)
      if (static_cast<int>(a.z.size()) != T.nz) fail("h-argument width mismatch");
  }
}

inline SeriesTemplate make_template(int n, std::vector<XRange> xr, int nz, std::vector<Factor> fs,
                                    Coef coef) {
  SeriesTemplate T{n, std::move(xr), nz, std::move(fs), std::move(coef)};
  validate_template(T);
  return T;
}

// Applies a template to one basis vector.  z-values are solved factor by
// factor from the window [-D, 0] of reachable degrees; z_cap bounds each
// z in addition (any cap >= D is exact, the default; larger caps cannot
// change the result, which the infrastructure suite verifies).
template <class S>
SparseVec<S> apply_template(const SeriesTemplate& T, ModuleContext<S>& ctx, const Params<S>& par,
                            int src, int z_cap) {
  Acc<S> total;
  if (T.coef.q == 0) return {};
  const int D = ctx.depth_bound();
  const int nf = static_cast<int>(T.factors.size());
  std::vector<int> xv(T.xr.size(), 0), zval(T.nz, -1);
  const SparseVec<S> start{{src, ScalarOps<S>::from_rat(Rat(1))}};
  const int d0 = -word_depth(ctx.basis_elt(src).first);

  auto resolve = [&](const FIdx& f) { return f.is_var() ? xv[f.xvar] : f.fixed; };

  auto finish = [&](const SparseVec<S>& v) {
    S coef = ScalarOps<S>::from_rat(T.coef.q) * spow(par.hbar, T.coef.hpow);
    if (T.coef.h) {
      std::vector<S> args;
      args.reserve(T.coef.h->args.size());
      for (const AffExp& a : T.coef.h->args)
        args.push_back(ScalarOps<S>::from_rat(Rat(a.eval(zval))) * par.c);
      coef *= eval_h<S>(T.coef.h->deg, args);
    }
    acc_add_vec(total, v, coef);
  };

  auto walk = [&](auto&& self, int fi, const SparseVec<S>& v, int deg) -> void {
    if (fi < 0) {
      finish(v);
      return;
    }
    const Factor& f = T.factors[fi];
    int fresh = -1, rest = f.exp.c0;
    for (int t = 0; t < T.nz; ++t) {
      if (!f.exp.z[t]) continue;
      if (zval[t] < 0)
        fresh = t;
      else
        rest += f.exp.z[t] * zval[t];
    }
    const LoopGen base = LoopGen::E(resolve(f.row), resolve(f.col), 0);
    auto step = [&](int e) {
      int nd = deg + e;
      if (nd > 0) return;  // no states above the top layer
      if (nd < -D) {
        // The leftmost factor may push below the box: that is ordinary
        // truncation.  An interior dip would mean the suffix invariant
        // was violated, which validate_template rules out.
        if (fi == 0) return;
        throw std::logic_error("apply_template: truncation window violated");
      }
      LoopGen g = base;
      g.deg = e;
      SparseVec<S> v2 = ctx.act(g, v);
      if (!v2.empty()) self(self, fi - 1, v2, nd);
    };
    if (fresh < 0) {
      step(rest);
    } else {
      int hi = std::min(z_cap, -deg - rest);
      for (int zv = 0; zv <= hi; ++zv) {
        zval[fresh] = zv;
        step(rest + zv);
      }
      zval[fresh] = -1;
    }
  };

  auto loop_x = [&](auto&& self, size_t xi) -> void {
    if (xi == T.xr.size()) {
      walk(walk, nf - 1, start, d0);
      return;
    }
    for (int v = T.xr[xi].lo; v <= T.xr[xi].hi; ++v) {
      xv[xi] = v;
      self(self, xi + 1);
    }
  };
  loop_x(loop_x, 0);
  return acc_flatten(total);
}

// ---- operator expressions ------------------------------------------------

struct OpExpr;
using OpPtr = std::shared_ptr<const OpExpr>;

struct OpExpr {
  enum class K { Template, Identity, Sum, Compose, Commutator, Scale };
  K k = K::Identity;
  SeriesTemplate tmpl;    // Template
  Coef coef;              // Identity, Scale
  std::vector<OpPtr> kids;
};

inline OpPtr op_template(SeriesTemplate T) {
  validate_template(T);
  auto e = std::make_shared<OpExpr>();
  e->k = OpExpr::K::Template;
  e->tmpl = std::move(T);
  return e;
}
inline OpPtr op_identity(Coef c) {
  if (c.h) throw std::invalid_argument("op_identity: h-coefficients need summation variables");
  auto e = std::make_shared<OpExpr>();
  e->k = OpExpr::K::Identity;
  e->coef = std::move(c);
  return e;
}
inline OpPtr op_zero() { return op_identity(Coef{Rat(0), 0, std::nullopt}); }
inline OpPtr op_sum(std::vector<OpPtr> kids) {
  auto e = std::make_shared<OpExpr>();
  e->k = OpExpr::K::Sum;
  e->kids = std::move(kids);
  return e;
}
inline OpPtr op_compose(OpPtr a, OpPtr b) {
  auto e = std::make_shared<OpExpr>();
  e->k = OpExpr::K::Compose;
  e->kids = {std::move(a), std::move(b)};
  return e;
}
inline OpPtr op_comm(OpPtr a, OpPtr b) {
  auto e = std::make_shared<OpExpr>();
  e->k = OpExpr::K::Commutator;
  e->kids = {std::move(a), std::move(b)};
  return e;
}
inline OpPtr op_scale(Coef c, OpPtr a) {
  if (c.h) throw std::invalid_argument("op_scale: h-coefficients need summation variables");
  auto e = std::make_shared<OpExpr>();
  e->k = OpExpr::K::Scale;
  e->coef = std::move(c);
  e->kids = {std::move(a)};
  return e;
}

template <class S>
S coef_value(const Coef& c, const Params<S>& par) {
  return ScalarOps<S>::from_rat(c.q) * spow(par.hbar, c.hpow);
}

// Evaluation context: materializes expressions over one module, with
// expression-node and template memoization.
template <class S>
class EvalCtx {
 public:
  EvalCtx(ModuleContext<S>& mod, Params<S> par, int z_cap = -1)
      : mod_(mod), par_(std::move(par)), z_cap_(z_cap < 0 ? mod.depth_bound() : z_cap) {}

  ModuleContext<S>& mod() { return mod_; }
  const Params<S>& params() const { return par_; }
  int z_cap() const { return z_cap_; }

  // The memo pins the expression: keys are node addresses, so the node
  // must stay alive for as long as its entry does.
  const Closure<S>& closure(const OpPtr& e) {
    auto it = memo_.find(e.get());
    if (it != memo_.end()) return it->second.second;
    Closure<S> c = eval(e);
    return memo_.emplace(e.get(), std::make_pair(e, std::move(c))).first->second.second;
  }

 private:
  Closure<S> eval(const OpPtr& e) {
    switch (e->k) {
      case OpExpr::K::Template:
        return closure_from<S>(mod_.dim(), [&](int j) {
          return apply_template(e->tmpl, mod_, par_, j, z_cap_);
        });
      case OpExpr::K::Identity:
        return Closure<S>::identity(mod_.dim(), coef_value(e->coef, par_));
      case OpExpr::K::Sum: {
        Closure<S> r = Closure<S>::zero(mod_.dim());
        for (const auto& kid : e->kids) r = r + closure(kid);
        return r;
      }
      case OpExpr::K::Compose:
        return compose(closure(e->kids[0]), closure(e->kids[1]));
      case OpExpr::K::Commutator:
        return commutator(closure(e->kids[0]), closure(e->kids[1]));
      case OpExpr::K::Scale:
        return coef_value(e->coef, par_) * closure(e->kids[0]);
    }
    throw std::logic_error("EvalCtx: unknown node");
  }

  ModuleContext<S>& mod_;
  Params<S> par_;
  int z_cap_;
  std::map<const OpExpr*, std::pair<OpPtr, Closure<S>>> memo_;
};

// ---- transpose symmetry and canonical form ------------------------------

// Reverses the factor list, transposes each letter and negates each
// exponent; the image of X t^s under the anti-automorphism.
inline SeriesTemplate omega_template(const SeriesTemplate& T) {
  SeriesTemplate R = T;
  R.factors.assign(T.factors.rbegin(), T.factors.rend());
  for (auto& f : R.factors) {
    std::swap(f.row, f.col);
    f.exp.c0 = -f.exp.c0;
    for (int& c : f.exp.z) c = -c;
  }
  return R;
}

// Renames x- and z-variables in order of first appearance (factors left
// to right) and sorts the symmetric h-arguments.
inline SeriesTemplate canonical_template(const SeriesTemplate& T) {
  SeriesTemplate R = T;
  std::vector<int> xmap(T.xr.size(), -1), zmap(T.nz, -1);
  int xn = 0, zn = 0;
  for (const auto& f : R.factors) {
    for (const FIdx* s : {&f.row, &f.col})
      if (s->is_var() && xmap[s->xvar] < 0) xmap[s->xvar] = xn++;
    for (int t = 0; t < T.nz; ++t)
      if (f.exp.z[t] && zmap[t] < 0) zmap[t] = zn++;
  }
  auto remap_exp = [&](AffExp& e) {
    std::vector<int> nz(T.nz, 0);
    for (int t = 0; t < T.nz; ++t)
      if (zmap[t] >= 0) nz[zmap[t]] = e.z[t];
    e.z = std::move(nz);
  };
  for (auto& f : R.factors) {
    for (FIdx* s : {&f.row, &f.col})
      if (s->is_var()) s->xvar = xmap[s->xvar];
    remap_exp(f.exp);
  }
  std::vector<XRange> xr(T.xr.size());
  for (size_t x = 0; x < T.xr.size(); ++x) xr[xmap[x]] = T.xr[x];
  R.xr = std::move(xr);
  if (R.coef.h) {
    for (auto& a : R.coef.h->args) remap_exp(a);
    std::sort(R.coef.h->args.begin(), R.coef.h->args.end());
  }
  return R;
}

inline bool same_template(const SeriesTemplate& a, const SeriesTemplate& b) {
  SeriesTemplate ca = canonical_template(a), cb = canonical_template(b);
  return ca.n == cb.n && ca.xr == cb.xr && ca.nz == cb.nz && ca.factors == cb.factors &&
         ca.coef == cb.coef;
}

inline std::string template_str(const SeriesTemplate& T) {
  std::ostringstream os;
  if (T.coef.q != 1) os << "(" << T.coef.q.str() << ")*";
  if (T.coef.hpow == 1)
    os << "hbar*";
  else if (T.coef.hpow > 1)
    os << "hbar^" << T.coef.hpow << "*";
  if (T.coef.h) {
    os << "h_" << T.coef.h->deg << "(";
    for (size_t a = 0; a < T.coef.h->args.size(); ++a) {
      if (a) os << ",";
      os << "(" << T.coef.h->args[a].str() << ")c";
    }
    os << ")*";
  }
  bool first = true;
  for (const auto& f : T.factors) {
    if (!first) os << " ";
    first = false;
    auto slot = [&](const FIdx& s) {
      std::ostringstream o2;
      if (s.is_var())
        o2 << "x" << s.xvar;
      else
        o2 << s.fixed;
      return o2.str();
    };
    os << "E[" << slot(f.row) << "," << slot(f.col) << "]";
    std::string e = f.exp.str();
    if (e != "0") os << "t^(" << e << ")";
  }
  for (size_t x = 0; x < T.xr.size(); ++x)
    os << "  {x" << x << ":" << T.xr[x].lo << ".." << T.xr[x].hi << "}";
  if (T.nz) os << "  {z>=0}";
  return os.str();
}

// ---- JSON round-trip -----------------------------------------------------

inline nlohmann::json aff_json(const AffExp& e) { return {{"c", e.c0}, {"z", e.z}}; }
inline AffExp aff_from_json(const nlohmann::json& j) {
  AffExp e;
  e.c0 = j.at("c").get<int>();
  e.z = j.at("z").get<std::vector<int>>();
  return e;
}

inline nlohmann::json template_json(const SeriesTemplate& T) {
  nlohmann::json jf = nlohmann::json::array();
  for (const auto& f : T.factors) {
    nlohmann::json s;
    s["row"] = f.row.is_var() ? nlohmann::json{{"x", f.row.xvar}} : nlohmann::json{{"at", f.row.fixed}};
    s["col"] = f.col.is_var() ? nlohmann::json{{"x", f.col.xvar}} : nlohmann::json{{"at", f.col.fixed}};
    s["exp"] = aff_json(f.exp);
    jf.push_back(std::move(s));
  }
  nlohmann::json jx = nlohmann::json::array();
  for (const auto& r : T.xr) jx.push_back({{"lo", r.lo}, {"hi", r.hi}});
  nlohmann::json jc{{"q", T.coef.q.str()}, {"hpow", T.coef.hpow}};
  if (T.coef.h) {
    nlohmann::json ja = nlohmann::json::array();
    for (const auto& a : T.coef.h->args) ja.push_back(aff_json(a));
    jc["h"] = {{"deg", T.coef.h->deg}, {"args", std::move(ja)}};
  }
  return {{"n", T.n}, {"x", std::move(jx)}, {"nz", T.nz}, {"factors", std::move(jf)}, {"coef", std::move(jc)}};
}

inline SeriesTemplate template_from_json(const nlohmann::json& j) {
  SeriesTemplate T;
  T.n = j.at("n").get<int>();
  T.nz = j.at("nz").get<int>();
  for (const auto& r : j.at("x")) T.xr.push_back({r.at("lo").get<int>(), r.at("hi").get<int>()});
  for (const auto& s : j.at("factors")) {
    Factor f;
    auto slot = [](const nlohmann::json& js) {
      return js.contains("x") ? FIdx::var(js.at("x").get<int>()) : FIdx::at(js.at("at").get<int>());
    };
    f.row = slot(s.at("row"));
    f.col = slot(s.at("col"));
    f.exp = aff_from_json(s.at("exp"));
    T.factors.push_back(std::move(f));
  }
  const auto& jc = j.at("coef");
  T.coef.q = Rat(jc.at("q").get<std::string>());
  T.coef.hpow = jc.at("hpow").get<int>();
  if (jc.contains("h")) {
    HCoef h;
    h.deg = jc.at("h").at("deg").get<int>();
    for (const auto& a : jc.at("h").at("args")) h.args.push_back(aff_from_json(a));
    T.coef.h = std::move(h);
  }
  validate_template(T);
  return T;
}

inline nlohmann::json op_json(const OpPtr& e) {
  using K = OpExpr::K;
  nlohmann::json j;
  auto coef_json = [](const Coef& c) { return nlohmann::json{{"q", c.q.str()}, {"hpow", c.hpow}}; };
  switch (e->k) {
    case K::Template:
      j["kind"] = "template";
      j["tmpl"] = template_json(e->tmpl);
      break;
    case K::Identity:
      j["kind"] = "identity";
      j["coef"] = coef_json(e->coef);
      break;
    case K::Sum:
      j["kind"] = "sum";
      break;
    case K::Compose:
      j["kind"] = "compose";
      break;
    case K::Commutator:
      j["kind"] = "commutator";
      break;
    case K::Scale:
      j["kind"] = "scale";
      j["coef"] = coef_json(e->coef);
      break;
  }
  if (!e->kids.empty()) {
    nlohmann::json kids = nlohmann::json::array();
    for (const auto& k : e->kids) kids.push_back(op_json(k));
    j["kids"] = std::move(kids);
  }
  return j;
}

inline OpPtr op_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  auto coef_of = [&](const nlohmann::json& jc) {
    return Coef{Rat(jc.at("q").get<std::string>()), jc.at("hpow").get<int>(), std::nullopt};
  };
  std::vector<OpPtr> kids;
  if (j.contains("kids"))
    for (const auto& k : j.at("kids")) kids.push_back(op_from_json(k));
  if (kind == "template") return op_template(template_from_json(j.at("tmpl")));
  if (kind == "identity") return op_identity(coef_of(j.at("coef")));
  if (kind == "sum") return op_sum(std::move(kids));
  if (kind == "compose") return op_compose(kids.at(0), kids.at(1));
  if (kind == "commutator") return op_comm(kids.at(0), kids.at(1));
  if (kind == "scale") return op_scale(coef_of(j.at("coef")), kids.at(0));
  throw std::invalid_argument("op_from_json: unknown node kind " + kind);
}

}  // namespace evk
