#include <doctest.h>

#include "evk/loop.hpp"
#include "evk/scalars.hpp"

using namespace evk;

namespace {
LieElt<Rat> gen1(LoopGen g) { return LieElt<Rat>::gen(g, Rat(1)); }
}  // namespace

TEST_CASE("bracket of opposite loop modes produces the central term") {
  // [E12 t, E21 t^-1] = E11 - E22 + c
  LieElt<Rat> b = bracket(gen1(LoopGen::E(1, 2, 1)), gen1(LoopGen::E(2, 1, -1)));
  LieElt<Rat> want = gen1(LoopGen::E(1, 1, 0)) - gen1(LoopGen::E(2, 2, 0)) + gen1(LoopGen::C());
  CHECK(b == want);
}

TEST_CASE("diagonal modes meet only through the auxiliary center") {
  // [E11 t, E22 t^-1] = z
  LieElt<Rat> b = bracket(gen1(LoopGen::E(1, 1, 1)), gen1(LoopGen::E(2, 2, -1)));
  CHECK(b == gen1(LoopGen::Z()));
  // and the auxiliary center scales with the mode
  LieElt<Rat> b2 = bracket(gen1(LoopGen::E(1, 1, 2)), gen1(LoopGen::E(2, 2, -2)));
  CHECK(b2 == Rat(2) * gen1(LoopGen::Z()));
}

TEST_CASE("no central term off the resonance") {
  LieElt<Rat> b = bracket(gen1(LoopGen::E(1, 2, 1)), gen1(LoopGen::E(2, 1, 1)));
  CHECK(b == gen1(LoopGen::E(1, 1, 2)) - gen1(LoopGen::E(2, 2, 2)));
}

TEST_CASE("central elements are inert") {
  LieElt<Rat> c = gen1(LoopGen::C()), z = gen1(LoopGen::Z());
  LieElt<Rat> e = gen1(LoopGen::E(1, 3, -2));
  CHECK(bracket(c, e).is_zero());
  CHECK(bracket(z, e).is_zero());
  CHECK(bracket(c, z).is_zero());
}

TEST_CASE("antisymmetry and Jacobi on a concrete triple") {
  LieElt<Rat> a = gen1(LoopGen::E(1, 2, 2)) + Rat(3) * gen1(LoopGen::E(2, 3, -1));
  LieElt<Rat> b = gen1(LoopGen::E(2, 1, -2)) - Rat(2) * gen1(LoopGen::E(3, 3, 1));
  LieElt<Rat> c = gen1(LoopGen::E(3, 1, 0)) + gen1(LoopGen::C());
  CHECK((bracket(a, b) + bracket(b, a)).is_zero());
  LieElt<Rat> jac = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b));
  CHECK(jac.is_zero());
}

TEST_CASE("transpose antiautomorphism") {
  CHECK(omega_gen(LoopGen::E(1, 2, 3)) == LoopGen::E(2, 1, -3));
  CHECK(omega_gen(LoopGen::C()) == LoopGen::C());
  CHECK(omega_gen(LoopGen::Z()) == LoopGen::Z());
  LieElt<Rat> a = gen1(LoopGen::E(1, 2, 1)) + Rat(5) * gen1(LoopGen::E(3, 2, -1));
  LieElt<Rat> b = gen1(LoopGen::E(2, 1, -1)) - gen1(LoopGen::E(1, 1, 0));
  CHECK(omega(bracket(a, b)) == bracket(omega(b), omega(a)));
}

TEST_CASE("rank validation") {
  CHECK_THROWS(check_rank(LoopGen::E(0, 1, 0), 3));
  CHECK_THROWS(check_rank(LoopGen::E(1, 4, 0), 3));
  CHECK_NOTHROW(check_rank(LoopGen::E(3, 1, -5), 3));
}
