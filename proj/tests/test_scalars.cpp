#include <doctest.h>

#include "evk/scalars.hpp"

using namespace evk;

TEST_CASE("rational arithmetic is exact") {
  Rat a(2), b(3);
  CHECK(a / b + Rat(1) / Rat(6) == Rat(5) / Rat(6));
  CHECK(rat_str(Rat(-7) / Rat(2)) == "-7/2");
  CHECK(Rat("5/10") == Rat(1) / Rat(2));
}

TEST_CASE("polynomial ring identities") {
  VarSet vs = make_varset({"hbar", "c"});
  PolyQ h = PolyQ::var(vs, "hbar"), c = PolyQ::var(vs, "c");
  PolyQ one(Rat(1));
  CHECK((h + one) * (h - one) == h * h - one);
  CHECK((h * c - c * h).is_zero());
  CHECK((h - h).is_zero());
  PolyQ p = h * c;
  Rat v = p.specialize({{"hbar", Rat(2) / Rat(3)}, {"c", Rat(3) / Rat(2)}});
  CHECK(v == Rat(1));
  CHECK(PolyQ(Rat(4)).is_constant());
  CHECK(PolyQ(Rat(4)).constant_value() == Rat(4));
  CHECK_FALSE(h.is_constant());
}

TEST_CASE("exact division by a parameter") {
  VarSet vs = make_varset({"hbar", "c"});
  PolyQ h = PolyQ::var(vs, "hbar"), c = PolyQ::var(vs, "c");
  PolyQ p = h * h * c + h * PolyQ(Rat(3));
  PolyQ q = p.div_var("hbar");
  CHECK(q == h * c + PolyQ(Rat(3)));
  CHECK_THROWS((p + c).div_var("hbar"));
  CHECK(ScalarOps<Rat>::div_param(Rat(6), Rat(3), "hbar") == Rat(2));
  CHECK(ScalarOps<PolyQ>::div_param(h * c, h, "hbar") == c);
}

TEST_CASE("scalar operations agree across instantiations") {
  CHECK(ScalarOps<Rat>::from_rat(Rat(5) / Rat(3)) == Rat(5) / Rat(3));
  CHECK(ScalarOps<Rat>::is_zero(Rat(0)));
  CHECK_FALSE(ScalarOps<Rat>::is_zero(Rat(1)));
  CHECK(ScalarOps<PolyQ>::from_rat(Rat(2)) == PolyQ(Rat(2)));
  CHECK(ScalarOps<PolyQ>::is_zero(PolyQ(Rat(0))));
  CHECK(ScalarOps<Rat>::str(Rat(1) / Rat(2)) == "1/2");
}
