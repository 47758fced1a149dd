#include <doctest.h>

#include <vector>

#include "evk/symfun.hpp"

using namespace evk;

namespace {
VarSet vs3 = make_varset({"z1", "z2", "z3", "c"});
PolyQ Z(int k) { return PolyQ::var(vs3, "z" + std::to_string(k)); }
PolyQ C() { return PolyQ::var(vs3, "c"); }
}  // namespace

TEST_CASE("complete homogeneous sums match the brute-force expansion") {
  for (int arity = 1; arity <= 3; ++arity) {
    std::vector<PolyQ> args;
    for (int k = 1; k <= arity; ++k) args.push_back(Z(k));
    for (int m = 0; m <= 4; ++m) CHECK(eval_h(m, args) == eval_h_brute(m, args));
  }
}

TEST_CASE("monomial counts at the all-ones specialization") {
  // h_m in k variables has C(m+k-1, m) monomials, all with coefficient 1
  auto binom = [](long n, long k) {
    long r = 1;
    for (long t = 1; t <= k; ++t) r = r * (n - k + t) / t;
    return r;
  };
  for (int k = 1; k <= 4; ++k)
    for (int m = 0; m <= 5; ++m) {
      std::vector<Rat> ones(k, Rat(1));
      CHECK(eval_h(m, ones) == Rat(binom(m + k - 1, m)));
    }
}

TEST_CASE("degenerate and boundary values of the f family") {
  std::vector<PolyQ> z12{Z(1), Z(2)};
  std::vector<PolyQ> z123{Z(1), Z(2), Z(3)};
  CHECK(eval_f(2, 2, z12, C()) == PolyQ(Rat(1)));
  // f^3_2 = h_1((z1+1)c, (z2+1)c) = c*(z1+z2+2)
  CHECK(eval_f(3, 2, z12, C()) == C() * (Z(1) + Z(2) + PolyQ(Rat(2))));
  CHECK(eval_f(3, 4, {Z(1), Z(2), Z(3), C()}, C()).is_zero());  // arity above degree
  CHECK(eval_f(5, 1, {Z(1)}, C()).is_zero());                   // arity below two
  CHECK(eval_f(0, 2, z12, C()).is_zero());
}

TEST_CASE("degree labels of the insertion recurrence") {
  // At degree 4 and arity 2 the like-degree labels fail while the
  // shifted labels hold, with every referenced value inside the
  // support window.
  std::vector<PolyQ> z12{Z(1), Z(2)};
  std::vector<PolyQ> z123{Z(1), Z(2), Z(3)};
  PolyQ lhs = eval_f(4, 3, z123, C());
  PolyQ like = eval_f(4, 2, z12, C()) + (Z(3) + PolyQ(Rat(1))) * C() * eval_f(3, 3, z123, C());
  PolyQ shifted = eval_f(3, 2, z12, C()) + (Z(3) + PolyQ(Rat(1))) * C() * eval_f(3, 3, z123, C());
  CHECK_FALSE(eval_f(4, 2, z12, C()).is_zero());
  CHECK_FALSE(eval_f(3, 3, z123, C()).is_zero());
  CHECK(lhs != like);
  CHECK(lhs == shifted);
}

TEST_CASE("argument-shift recurrence at a concrete instance") {
  // f^4_2(z1, z2+a) - f^4_2(z1, z2) = a*c*f^4_3(z1, z2, z2+a)
  VarSet vs = make_varset({"z1", "z2", "a", "c"});
  PolyQ z1 = PolyQ::var(vs, "z1"), z2 = PolyQ::var(vs, "z2");
  PolyQ a = PolyQ::var(vs, "a"), c = PolyQ::var(vs, "c");
  PolyQ lhs = eval_f(4, 2, {z1, z2 + a}, c) - eval_f(4, 2, {z1, z2}, c);
  PolyQ rhs = a * c * eval_f(4, 3, {z1, z2, z2 + a}, c);
  CHECK(lhs == rhs);
}

TEST_CASE("input validation") {
  CHECK_THROWS(eval_h(-1, std::vector<Rat>{Rat(1)}));
  CHECK_THROWS(eval_h(2, std::vector<Rat>{}));
  CHECK_THROWS(eval_f(3, 2, std::vector<Rat>{Rat(1)}, Rat(1)));  // arity mismatch
}
