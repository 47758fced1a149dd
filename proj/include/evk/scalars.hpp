#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace evk {

// Exact rational scalar.  Canonical form (lowest terms, positive denominator)
// is maintained by the GMP backend on every operation.
using Rat = boost::multiprecision::mpq_rational;

inline std::string rat_str(const Rat& q) { return q.str(); }

// Declared parameter set for multivariate polynomials.  Shared so that
// every polynomial of one computation points at the same name table;
// combining polynomials over different sets is a usage error.
using VarSet = std::shared_ptr<const std::vector<std::string>>;

inline VarSet make_varset(std::vector<std::string> names) {
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

inline bool same_vars(const VarSet& a, const VarSet& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

// Sparse multivariate polynomial over Rat with exact arithmetic.
// A null variable set marks a constant-only polynomial; those combine
// freely with any set (the embedding of Rat).
class PolyQ {
 public:
  using Mono = std::vector<unsigned>;

  PolyQ() = default;
  explicit PolyQ(VarSet vars) : vars_(std::move(vars)) {}
  PolyQ(VarSet vars, const Rat& c) : vars_(std::move(vars)) {
    if (c != 0) terms_[Mono(width(), 0u)] = c;
  }
  explicit PolyQ(const Rat& c) : PolyQ(VarSet{}, c) {}
  explicit PolyQ(long c) : PolyQ(VarSet{}, Rat(c)) {}

  static PolyQ var(const VarSet& vars, const std::string& name) {
    if (!vars) throw std::invalid_argument("PolyQ::var: null variable set");
    PolyQ p(vars);
    Mono m(vars->size(), 0u);
    m[index_of(vars, name)] = 1u;
    p.terms_[std::move(m)] = Rat(1);
    return p;
  }

  const VarSet& vars() const { return vars_; }
  const std::map<Mono, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const Mono& m = terms_.begin()->first;
    for (unsigned e : m)
      if (e) return false;
    return true;
  }

  Rat constant_value() const {
    if (terms_.empty()) return Rat(0);
    if (!is_constant()) throw std::invalid_argument("PolyQ: not a constant");
    return terms_.begin()->second;
  }

  PolyQ operator-() const {
    PolyQ r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  friend PolyQ operator+(const PolyQ& a, const PolyQ& b) {
    auto [x, y] = joined(a, b);
    for (const auto& [m, c] : y.terms_) x.add_term(m, c);
    return x;
  }
  friend PolyQ operator-(const PolyQ& a, const PolyQ& b) { return a + (-b); }

  friend PolyQ operator*(const PolyQ& a, const PolyQ& b) {
    auto [x, y] = joined(a, b);
    PolyQ r(x.vars_);
    for (const auto& [ma, ca] : x.terms_)
      for (const auto& [mb, cb] : y.terms_) {
        Mono m(ma);
        for (size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
        r.add_term(m, ca * cb);
      }
    return r;
  }

  PolyQ& operator+=(const PolyQ& b) { return *this = *this + b; }
  PolyQ& operator-=(const PolyQ& b) { return *this = *this - b; }
  PolyQ& operator*=(const PolyQ& b) { return *this = *this * b; }

  friend PolyQ operator*(const Rat& c, const PolyQ& a) {
    PolyQ r(a);
    if (c == 0) {
      r.terms_.clear();
      return r;
    }
    for (auto& [m, v] : r.terms_) v *= c;
    return r;
  }

  PolyQ div(const Rat& c) const {
    if (c == 0) throw std::invalid_argument("PolyQ: division by zero");
    return Rat(Rat(1) / c) * *this;
  }

  // Exact division by one variable; every monomial must contain it.
  PolyQ div_var(const std::string& name) const {
    if (is_zero()) return *this;
    if (!vars_) throw std::invalid_argument("PolyQ::div_var: constant not divisible by " + name);
    size_t vi = index_of(vars_, name);
    PolyQ r(vars_);
    for (const auto& [m, c] : terms_) {
      if (m[vi] == 0) throw std::invalid_argument("PolyQ::div_var: not divisible by " + name);
      Mono m2(m);
      --m2[vi];
      r.terms_[std::move(m2)] = c;
    }
    return r;
  }

  friend bool operator==(const PolyQ& a, const PolyQ& b) {
    if (a.is_zero() && b.is_zero()) return true;
    auto [x, y] = joined(a, b);
    return x.terms_ == y.terms_;
  }
  friend bool operator!=(const PolyQ& a, const PolyQ& b) { return !(a == b); }

  // Full evaluation; every variable occurring with a positive exponent
  // must be assigned.
  Rat specialize(const std::map<std::string, Rat>& assign) const {
    Rat total(0);
    for (const auto& [m, c] : terms_) {
      Rat t(c);
      for (size_t i = 0; i < m.size(); ++i) {
        if (!m[i]) continue;
        auto it = assign.find((*vars_)[i]);
        if (it == assign.end())
          throw std::invalid_argument("PolyQ::specialize: unassigned parameter " + (*vars_)[i]);
        for (unsigned e = 0; e < m[i]; ++e) t *= it->second;
      }
      total += t;
    }
    return total;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      Rat a = c;
      if (first) {
        if (a < 0) {
          os << "-";
          a = -a;
        }
      } else {
        os << (a < 0 ? " - " : " + ");
        if (a < 0) a = -a;
      }
      first = false;
      bool has_var = false;
      std::ostringstream vs;
      for (size_t i = 0; i < m.size(); ++i) {
        if (!m[i]) continue;
        if (has_var) vs << "*";
        vs << (*vars_)[i];
        if (m[i] > 1) vs << "^" << m[i];
        has_var = true;
      }
      if (!has_var) {
        os << a.str();
      } else {
        if (a != 1) os << a.str() << "*";
        os << vs.str();
      }
    }
    return os.str();
  }

 private:
  size_t width() const { return vars_ ? vars_->size() : 0; }

  static size_t index_of(const VarSet& vars, const std::string& name) {
    for (size_t i = 0; i < vars->size(); ++i)
      if ((*vars)[i] == name) return i;
    throw std::invalid_argument("PolyQ: unknown parameter " + name);
  }

  void add_term(const Mono& m, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_[m] = c;
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  // Lifts both operands to a common variable set (constants widen to the
  // other side's set); distinct non-null sets are rejected.
  static std::pair<PolyQ, PolyQ> joined(const PolyQ& a, const PolyQ& b) {
    if (same_vars(a.vars_, b.vars_)) return {a, b};
    if (!a.vars_) return {a.widened(b.vars_), b};
    if (!b.vars_) return {a, b.widened(a.vars_)};
    throw std::invalid_argument("PolyQ: mixed parameter sets");
  }

  PolyQ widened(const VarSet& vars) const {
    PolyQ r(vars);
    for (const auto& [m, c] : terms_) r.terms_[Mono(vars->size(), 0u)] = c;
    return r;
  }

  VarSet vars_;
  std::map<Mono, Rat> terms_;
};

// Uniform scalar interface for the templated operator engine.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Rat> {
  static Rat from_rat(const Rat& q) { return q; }
  static bool is_zero(const Rat& a) { return a == 0; }
  static Rat div_rat(const Rat& a, const Rat& q) { return Rat(a / q); }
  // Division by a drawn parameter value (exactness is automatic here).
  static Rat div_param(const Rat& a, const Rat& value, const char*) { return Rat(a / value); }
  static std::string str(const Rat& a) { return a.str(); }
};

template <>
struct ScalarOps<PolyQ> {
  static PolyQ from_rat(const Rat& q) { return PolyQ(q); }
  static bool is_zero(const PolyQ& a) { return a.is_zero(); }
  static PolyQ div_rat(const PolyQ& a, const Rat& q) { return a.div(q); }
  // Exact division by the named parameter variable.
  static PolyQ div_param(const PolyQ& a, const PolyQ&, const char* name) { return a.div_var(name); }
  static std::string str(const PolyQ& a) { return a.str(); }
};

}  // namespace evk
