#include <doctest.h>

#include "evk/images.hpp"

using namespace evk;

TEST_CASE("entry images at modes zero and one") {
  ImageLib lib(3);
  ModuleContext<Rat> mod(3, 2, WRep<Rat>::trivial(3, Rat(3)), Rat(2));
  Params<Rat> par{Rat(5), Rat(2)};
  EvalCtx<Rat> ec(mod, par);
  // mode 0 is the Kronecker delta
  CHECK(ec.closure(lib.evT(1, 1, 0)) == Closure<Rat>::identity(mod.dim(), Rat(1)));
  CHECK(ec.closure(lib.evT(1, 2, 0)).is_zero());
  // mode 1 is the zero loop mode of the matrix unit
  SparseVec<Rat> vac = mod.vacuum();
  SparseVec<Rat> dv = ec.closure(lib.evT(2, 2, 1)).apply(vac);
  REQUIRE(dv.size() == 1);
  CHECK(dv.front().second == Rat(3));
  CHECK(ec.closure(lib.evT(1, 3, 1)).apply(vac).empty());
}

TEST_CASE("images missing from the source are reported") {
  ImageLib lib(3);
  CHECK_THROWS_AS(lib.ev_min(GenId{GenKind::H, 0, 1}), NotInPaper);
  CHECK_THROWS_AS(lib.ev_min(GenId{GenKind::Xp, 0, 1}), NotInPaper);
  CHECK_THROWS_AS(lib.ev_min(GenId{GenKind::Xm, 0, 1}), NotInPaper);
  CHECK_THROWS_AS(lib.ev_min(GenId{GenKind::H, 1, 2}), NotInPaper);
  CHECK_THROWS_AS(lib.ev_min(GenId{GenKind::Xp, 2, 5}), NotInPaper);
  CHECK_NOTHROW(lib.ev_min(GenId{GenKind::H, 1, 1}));
  CHECK_NOTHROW(lib.ev_min(GenId{GenKind::Xm, 0, 0}));
}

TEST_CASE("index-0 root modes move along the loop") {
  ImageLib lib(3);
  ModuleContext<Rat> mod(3, 2, WRep<Rat>::trivial(3, Rat(1)), Rat(4));
  Params<Rat> par{Rat(1), Rat(4)};
  EvalCtx<Rat> ec(mod, par);
  SparseVec<Rat> vac = mod.vacuum();
  // the lowering index-0 generator takes the vacuum one layer down
  SparseVec<Rat> low = ec.closure(lib.ev_min(GenId{GenKind::Xm, 0, 0})).apply(vac);
  REQUIRE(low.size() == 1);
  CHECK(mod.basis_str(low.front().first) == "E[1,3]t^-1.vac");
  // the raising one annihilates it
  CHECK(ec.closure(lib.ev_min(GenId{GenKind::Xp, 0, 0})).apply(vac).empty());
}

TEST_CASE("higher root images annihilate the vacuum of the character module") {
  ImageLib lib(3);
  ModuleContext<Rat> mod(3, 2, WRep<Rat>::trivial(3, Rat(2)), Rat(3));
  Params<Rat> par{Rat(2), Rat(3)};
  EvalCtx<Rat> ec(mod, par);
  SparseVec<Rat> vac = mod.vacuum();
  CHECK(ec.closure(lib.ev_min(GenId{GenKind::Xp, 1, 1})).apply(vac).empty());
  CHECK(ec.closure(lib.ev_min(GenId{GenKind::Xp, 2, 1})).apply(vac).empty());
  // the Cartan mode-1 image acts diagonally on the vacuum
  SparseVec<Rat> hv = ec.closure(lib.ev_min(GenId{GenKind::H, 1, 1})).apply(vac);
  for (const auto& [i, v] : hv) CHECK(i == vac.front().first);
}

TEST_CASE("ratio extraction validates its inputs") {
  ImageLib lib(3);
  ModuleContext<Rat> mod(3, 1, WRep<Rat>::trivial(3, Rat(1)), Rat(1));
  Params<Rat> par{Rat(1), Rat(1)};
  EvalCtx<Rat> ec(mod, par);
  CHECK_THROWS_AS(higher_image(ec, lib, Convention::C, GenKind::H, 1, 1, 6),
                  std::invalid_argument);
  CHECK_THROWS_AS(higher_image(ec, lib, Convention::C, GenKind::Xp, 0, 1, 6),
                  std::invalid_argument);
  CHECK_THROWS_AS(higher_image(ec, lib, Convention::C, GenKind::Xp, 3, 1, 6),
                  std::invalid_argument);
  CHECK_THROWS_AS(higher_image(ec, lib, Convention::C, GenKind::Xp, 1, 6, 6),
                  std::invalid_argument);
}

TEST_CASE("expression structure of the entry images") {
  ImageLib lib(3);
  // mode r >= 2 is a sum over chain lengths 1..r-1
  CHECK(lib.evT(1, 2, 2)->k == OpExpr::K::Sum);
  CHECK(lib.evT(1, 2, 2)->kids.size() == 1);
  CHECK(lib.evT(1, 2, 3)->kids.size() == 2);
  CHECK(lib.evT(1, 2, 4)->kids.size() == 3);
  // node identity is cached
  CHECK(lib.evT(2, 3, 3).get() == lib.evT(2, 3, 3).get());
  CHECK(lib.ev_min(GenId{GenKind::H, 1, 1}).get() == lib.ev_min(GenId{GenKind::H, 1, 1}).get());
}
