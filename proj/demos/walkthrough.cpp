// Walkthrough: build the evaluation images, act on a lowest-weight
// module, and check one defining relation by hand.
#include <iostream>

#include "evk/images.hpp"

using namespace evk;

int main() {
  const int n = 3, D = 2;
  ImageLib lib(n);

  std::cout << "== image of T[1,2] at mode 2 ==\n";
  for (const auto& kid : lib.evT(1, 2, 2)->kids) std::cout << template_str(kid->tmpl) << "\n";

  VarSet vs = symbolic_varset();
  Params<PolyQ> par = symbolic_params(vs);
  ModuleContext<PolyQ> mod(n, D, WRep<PolyQ>::trivial(n, PolyQ::var(vs, "lam")), par.c);
  EvalCtx<PolyQ> ec(mod, par);

  std::cout << "\n== action of T[1,2] mode 2 on E[2,1]t^-1 |vac> ==\n";
  int src = -1;
  for (int b = 0; b < mod.dim(); ++b)
    if (mod.basis_str(b) == "E[2,1]t^-1.vac") src = b;
  if (src < 0) {
    std::cerr << "basis vector not found\n";
    return 1;
  }
  const Closure<PolyQ>& c = ec.closure(lib.evT(1, 2, 2));
  for (const auto& [i, v] : c.cols[src])
    std::cout << "(" << v.str() << ") * " << mod.basis_str(i) << "\n";

  std::cout << "\n== one entry-bracket relation: [T1[1,2], T2[2,1]] ==\n";
  auto T = [&](int i, int j, int r) { return ec.closure(lib.evT(i, j, r)); };
  Closure<PolyQ> diff = commutator(T(1, 2, 1), T(2, 1, 2)) - (T(1, 1, 2) - T(2, 2, 2));
  std::cout << (diff.is_zero() ? "holds on the whole box" : "FAILS") << "\n";

  std::cout << "\n== root-generator image X+[1,1] applied to |vac> ==\n";
  const Closure<PolyQ>& x = ec.closure(lib.ev_min(GenId{GenKind::Xp, 1, 1}));
  if (x.cols[mod.vacuum().front().first].empty())
    std::cout << "annihilates the vacuum\n";
  else
    for (const auto& [i, v] : x.cols[mod.vacuum().front().first])
      std::cout << "(" << v.str() << ") * " << mod.basis_str(i) << "\n";
  return 0;
}
