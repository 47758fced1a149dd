#include <doctest.h>

#include "evk/module.hpp"
#include "evk/params.hpp"

using namespace evk;

TEST_CASE("basis enumeration counts") {
  for (auto [D, want] : {std::pair{0, 1}, {1, 5}, {2, 19}}) {
    ModuleContext<Rat> m(2, D, WRep<Rat>::trivial(2, Rat(1)), Rat(0));
    CHECK(m.dim() == want);
  }
  ModuleContext<Rat> m2(3, 2, WRep<Rat>::trivial(3, Rat(1)), Rat(0));
  CHECK(m2.dim() == 64);
  ModuleContext<Rat> m3(3, 3, WRep<Rat>::trivial(3, Rat(1)), Rat(0));
  CHECK(m3.dim() == 319);
  // the natural module multiplies the count by its dimension
  ModuleContext<Rat> mn(2, 1, WRep<Rat>::natural(2), Rat(0));
  CHECK(mn.dim() == 2 * 5);
}

TEST_CASE("finite-part presets satisfy the matrix-unit relations") {
  CHECK(WRep<Rat>::trivial(3, Rat(7)).satisfies_gln());
  CHECK(WRep<Rat>::natural(3).satisfies_gln());
  CHECK(WRep<Rat>::natural2(3).satisfies_gln());
  // a rep with E11 = 1 and everything else 0 breaks [E12, E21] = E11 - E22
  WRep<Rat> bad = WRep<Rat>::blank(2, 1, "bad");
  bad.entry(1, 1, 0, 0) = Rat(1);
  CHECK_FALSE(bad.satisfies_gln());
}

TEST_CASE("action on the lowest-weight line") {
  Rat lam(5), c0(3);
  ModuleContext<Rat> m(3, 2, WRep<Rat>::trivial(3, lam), c0);
  SparseVec<Rat> vac = m.vacuum();
  REQUIRE(vac.size() == 1);

  // diagonal zero modes act by the weight
  SparseVec<Rat> dv = m.act(LoopGen::E(1, 1, 0), vac);
  REQUIRE(dv.size() == 1);
  CHECK(dv.front().first == vac.front().first);
  CHECK(dv.front().second == lam);

  // positive modes annihilate the vacuum
  CHECK(m.act(LoopGen::E(2, 1, 1), vac).empty());
  CHECK(m.act(LoopGen::E(1, 2, 2), vac).empty());

  // raising a single lowered letter picks up the level
  SparseVec<Rat> low = m.act(LoopGen::E(2, 1, -1), vac);
  REQUIRE(low.size() == 1);
  SparseVec<Rat> back = m.act(LoopGen::E(1, 2, 1), low);
  // [E12 t, E21 t^-1] = E11 - E22 + c acts by (lam - lam + c0)
  REQUIRE(back.size() == 1);
  CHECK(back.front().first == vac.front().first);
  CHECK(back.front().second == c0);

  // weight dependence below the top layer
  SparseVec<Rat> diag = m.act(LoopGen::E(1, 1, 0), low);
  REQUIRE(diag.size() == 1);
  CHECK(diag.front().first == low.front().first);
  CHECK(diag.front().second == lam - Rat(1));
}

TEST_CASE("module axiom away from the truncation boundary") {
  Rat lam(2), c0(4);
  ModuleContext<Rat> m(3, 3, WRep<Rat>::trivial(3, lam), c0);
  LieElt<Rat> a = LieElt<Rat>::gen(LoopGen::E(1, 2, 1), Rat(2)) +
                  LieElt<Rat>::gen(LoopGen::E(2, 2, 0), Rat(1));
  LieElt<Rat> b = LieElt<Rat>::gen(LoopGen::E(2, 1, -1), Rat(3)) +
                  LieElt<Rat>::gen(LoopGen::E(3, 1, 0), Rat(-1));
  // depth <= 2 sources stay exact under one raise and one lower
  for (int bi = 0; bi < m.dim(); ++bi) {
    if (word_depth(m.basis_elt(bi).first) > 2) continue;
    SparseVec<Rat> v{{bi, Rat(1)}};
    Acc<Rat> acc;
    acc_add_vec(acc, m.act_elt(bracket(a, b), v), Rat(1));
    acc_add_vec(acc, m.act_elt(a, m.act_elt(b, v)), Rat(-1));
    acc_add_vec(acc, m.act_elt(b, m.act_elt(a, v)), Rat(1));
    CHECK(acc_flatten(acc).empty());
  }
}

TEST_CASE("central letters act by the level and the quotient value") {
  ModuleContext<Rat> m(2, 1, WRep<Rat>::trivial(2, Rat(0)), Rat(9));
  SparseVec<Rat> vac = m.vacuum();
  SparseVec<Rat> cv = m.act(LoopGen::C(), vac);
  REQUIRE(cv.size() == 1);
  CHECK(cv.front().second == Rat(9));
  SparseVec<Rat> zv = m.act(LoopGen::Z(), vac);
  REQUIRE(zv.size() == 1);
  CHECK(zv.front().second == Rat(1));
}

TEST_CASE("basis lookup round-trips") {
  ModuleContext<Rat> m(2, 2, WRep<Rat>::natural(2), Rat(1));
  for (int i = 0; i < m.dim(); ++i) {
    const auto& [w, widx] = m.basis_elt(i);
    CHECK(m.basis_index(w, widx) == i);
  }
}
