#include <doctest.h>

#include "evk/seriesop.hpp"

using namespace evk;

namespace {

// hbar * sum_{z>=0} sum_x E[1,x]t^{-z-1} E[x,2]t^{z+1}, the degree-2
// entry image at n = 3.
SeriesTemplate entry12_mode2() {
  std::vector<Factor> fs;
  fs.push_back({FIdx::at(1), FIdx::var(0), AffExp{-1, {-1}}});
  fs.push_back({FIdx::var(0), FIdx::at(2), AffExp{1, {1}}});
  Coef coef;
  coef.hpow = 1;
  coef.h = HCoef{0, {AffExp{1, {1}}}};
  return make_template(3, {XRange{1, 3}}, 1, std::move(fs), coef);
}

}  // namespace

TEST_CASE("template application reproduces the hand computation") {
  // on E[2,1]t^-1 vac the only surviving branch is x=1, z=0, giving
  // hbar*c0 * E[1,1]t^-1 vac
  ModuleContext<Rat> mod(3, 2, WRep<Rat>::trivial(3, Rat(7)), Rat(5));
  Params<Rat> par{Rat(2), Rat(5)};
  int src = -1, dst = -1;
  for (int b = 0; b < mod.dim(); ++b) {
    if (mod.basis_str(b) == "E[2,1]t^-1.vac") src = b;
    if (mod.basis_str(b) == "E[1,1]t^-1.vac") dst = b;
  }
  REQUIRE(src >= 0);
  REQUIRE(dst >= 0);
  SparseVec<Rat> out = apply_template<Rat>(entry12_mode2(), mod, par, src, 2);
  REQUIRE(out.size() == 1);
  CHECK(out.front().first == dst);
  CHECK(out.front().second == Rat(2) * Rat(5));
}

TEST_CASE("nonconforming templates are rejected") {
  // total degree depends on the summation variable
  std::vector<Factor> fs;
  fs.push_back({FIdx::at(1), FIdx::at(2), AffExp{0, {1}}});
  CHECK_THROWS_AS(make_template(3, {}, 1, fs, Coef{}), std::invalid_argument);

  // unused position variable
  std::vector<Factor> f2;
  f2.push_back({FIdx::at(1), FIdx::at(2), AffExp{0, {}}});
  CHECK_THROWS_AS(make_template(3, {XRange{1, 3}}, 0, f2, Coef{}), std::invalid_argument);

  // interior suffix with negative constant degree
  std::vector<Factor> f3;
  f3.push_back({FIdx::at(1), FIdx::at(2), AffExp{2, {}}});
  f3.push_back({FIdx::at(2), FIdx::at(3), AffExp{-2, {}}});
  CHECK_THROWS_AS(make_template(3, {}, 0, f3, Coef{}), std::invalid_argument);

  // a final factor of negative total degree is legitimate
  std::vector<Factor> f4;
  f4.push_back({FIdx::at(1), FIdx::at(3), AffExp{-1, {}}});
  CHECK_NOTHROW(make_template(3, {}, 0, f4, Coef{}));
}

TEST_CASE("expression trees and their JSON serialization round-trip") {
  OpPtr a = op_template(entry12_mode2());
  OpPtr tree = op_sum({op_scale(Coef{Rat(-1) / Rat(2), 1, std::nullopt}, op_compose(a, a)),
                       op_comm(a, op_identity(Coef{Rat(3), 0, std::nullopt}))});
  nlohmann::json j = op_json(tree);
  OpPtr back = op_from_json(j);

  ModuleContext<Rat> mod(3, 2, WRep<Rat>::trivial(3, Rat(2)), Rat(3));
  Params<Rat> par{Rat(4), Rat(3)};
  EvalCtx<Rat> e1(mod, par), e2(mod, par);
  CHECK(e1.closure(tree) == e2.closure(back));
  // identity with a scalar h-coefficient is rejected
  Coef hc;
  hc.h = HCoef{1, {AffExp{1, {}}}};
  CHECK_THROWS_AS(op_identity(hc), std::invalid_argument);
}

TEST_CASE("template JSON keeps the shape") {
  SeriesTemplate t = entry12_mode2();
  nlohmann::json j = template_json(t);
  SeriesTemplate back = template_from_json(j);
  CHECK(same_template(t, back));
}

TEST_CASE("transpose of a chain template") {
  SeriesTemplate t = entry12_mode2();
  SeriesTemplate w = omega_template(t);
  // reversed, transposed, with negated exponents: E[2,x]t^{-z-1} E[x,1]t^{z+1}
  std::vector<Factor> fs;
  fs.push_back({FIdx::at(2), FIdx::var(0), AffExp{-1, {-1}}});
  fs.push_back({FIdx::var(0), FIdx::at(1), AffExp{1, {1}}});
  Coef coef;
  coef.hpow = 1;
  coef.h = HCoef{0, {AffExp{1, {1}}}};
  SeriesTemplate want = make_template(3, {XRange{1, 3}}, 1, std::move(fs), coef);
  CHECK(same_template(w, want));
  CHECK_FALSE(same_template(w, t));
}

TEST_CASE("evaluation caches by node identity") {
  ModuleContext<Rat> mod(3, 1, WRep<Rat>::trivial(3, Rat(1)), Rat(1));
  Params<Rat> par{Rat(1), Rat(1)};
  EvalCtx<Rat> ec(mod, par);
  OpPtr a = op_template(entry12_mode2());
  const Closure<Rat>* p1 = &ec.closure(a);
  const Closure<Rat>* p2 = &ec.closure(a);
  CHECK(p1 == p2);
}
