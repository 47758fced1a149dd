#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "evk/verify.hpp"

namespace {

using namespace evk;

// Indented rendering of an operator expression tree.
void print_op(std::ostream& os, const OpPtr& op, int indent) {
  std::string pad(2 * indent, ' ');
  switch (op->k) {
    case OpExpr::K::Template:
      os << pad << template_str(op->tmpl) << "\n";
      break;
    case OpExpr::K::Identity:
      os << pad << "identity * " << rat_str(op->coef.q);
      if (op->coef.hpow) os << " * hbar^" << op->coef.hpow;
      os << "\n";
      break;
    case OpExpr::K::Sum:
      os << pad << "sum\n";
      for (const auto& kid : op->kids) print_op(os, kid, indent + 1);
      break;
    case OpExpr::K::Compose:
      os << pad << "compose\n";
      for (const auto& kid : op->kids) print_op(os, kid, indent + 1);
      break;
    case OpExpr::K::Commutator:
      os << pad << "commutator\n";
      for (const auto& kid : op->kids) print_op(os, kid, indent + 1);
      break;
    case OpExpr::K::Scale:
      os << pad << "scale " << rat_str(op->coef.q);
      if (op->coef.hpow) os << " * hbar^" << op->coef.hpow;
      os << "\n";
      print_op(os, op->kids[0], indent + 1);
      break;
  }
}

struct ExpandOpts {
  std::string gen = "T";
  int i = 1, j = 1, r = 1;
  int n = 3, D = 2;
  std::string format = "template";
  std::string params = "symbolic";
  bool as_json = false;
};

int do_expand(const ExpandOpts& o) {
  if (o.n < 2) {
    std::cerr << "error: rank must be at least 2\n";
    return 2;
  }
  ImageLib lib(o.n);
  OpPtr op;
  try {
    if (o.gen == "T") {
      op = lib.evT(o.i, o.j, o.r);
    } else {
      GenKind k = o.gen == "H" ? GenKind::H : o.gen == "X+" ? GenKind::Xp : GenKind::Xm;
      op = lib.ev_min(GenId{k, o.i, o.r});
    }
  } catch (const NotInPaper& e) {
    std::cout << "not-in-paper: " << e.what() << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (o.format == "template") {
    if (o.as_json) {
      std::cout << op_json(op).dump(2) << "\n";
    } else {
      print_op(std::cout, op, 0);
    }
    return 0;
  }

  // matrix: evaluate the closure over a small module
  if (o.params == "symbolic") {
    VarSet vs = symbolic_varset();
    Params<PolyQ> par = symbolic_params(vs);
    ModuleContext<PolyQ> mod(o.n, o.D, WRep<PolyQ>::trivial(o.n, PolyQ::var(vs, "lam")), par.c);
    EvalCtx<PolyQ> ec(mod, par);
    Closure<PolyQ> c = ec.closure(op);
    nlohmann::json cols = nlohmann::json::array();
    for (int b = 0; b < mod.dim(); ++b) {
      if (c.cols[b].empty()) continue;
      if (o.as_json) {
        nlohmann::json ent = nlohmann::json::array();
        for (const auto& [ii, v] : c.cols[b])
          ent.push_back({{"to", mod.basis_str(ii)}, {"coeff", v.str()}});
        cols.push_back({{"from", mod.basis_str(b)}, {"entries", std::move(ent)}});
      } else {
        std::cout << mod.basis_str(b) << " ->";
        bool first = true;
        for (const auto& [ii, v] : c.cols[b]) {
          std::cout << (first ? " " : " + ") << "(" << v.str() << ")*" << mod.basis_str(ii);
          first = false;
        }
        std::cout << "\n";
      }
    }
    if (o.as_json) std::cout << nlohmann::json{{"columns", std::move(cols)}}.dump(2) << "\n";
    return 0;
  }
  std::mt19937_64 rng(1);
  Draw d = draw_params(rng);
  ModuleContext<Rat> mod(o.n, o.D, WRep<Rat>::trivial(o.n, d.lam), d.c0);
  EvalCtx<Rat> ec(mod, numeric_params(d));
  Closure<Rat> c = ec.closure(op);
  std::cout << "draw: " << describe_draw(d) << "\n";
  for (int b = 0; b < mod.dim(); ++b) {
    if (c.cols[b].empty()) continue;
    std::cout << mod.basis_str(b) << " ->";
    bool first = true;
    for (const auto& [ii, v] : c.cols[b]) {
      std::cout << (first ? " " : " + ") << "(" << rat_str(v) << ")*" << mod.basis_str(ii);
      first = false;
    }
    std::cout << "\n";
  }
  return 0;
}

struct VerifyOpts {
  std::string suite = "all";
  RunConfig cfg;
  std::string module_spec = "trivial";
  std::string hbar, cpar;
  std::string out;
};

int do_verify(VerifyOpts& o) {
  try {
    auto pos = o.module_spec.find(':');
    if (pos == std::string::npos) {
      o.cfg.module_preset = o.module_spec;
    } else {
      o.cfg.module_preset = o.module_spec.substr(0, pos);
      o.cfg.fixed.lam = Rat(o.module_spec.substr(pos + 1));
    }
    if (!o.hbar.empty()) o.cfg.fixed.hbar = Rat(o.hbar);
    if (!o.cpar.empty()) {
      o.cfg.fixed.c = Rat(o.cpar);
      o.cfg.fixed.c0 = o.cfg.fixed.c;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: bad rational literal: " << e.what() << "\n";
    return 2;
  }

  std::vector<std::string> suites =
      o.suite == "all" ? suite_names() : std::vector<std::string>{o.suite};
  std::vector<Report> reports;
  try {
    for (const auto& s : suites) reports.push_back(run_suite(s, o.cfg));
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  bool ok = true;
  for (const auto& rep : reports) {
    std::cout << rep.table() << "\n";
    ok = ok && rep.ok();
  }
  if (!o.out.empty()) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& rep : reports) arr.push_back(rep.to_json(o.cfg.timing));
    std::ofstream f(o.out);
    if (!f) {
      std::cerr << "error: cannot open " << o.out << "\n";
      return 2;
    }
    f << arr.dump(2) << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact evaluation-map kernel for the affine Yangian of type A"};
  app.require_subcommand(1);

  VerifyOpts vo;
  bool no_timing = false;
  auto* ver = app.add_subcommand("verify", "run a relation-verification suite");
  auto names = evk::suite_names();
  names.push_back("all");
  ver->add_option("--suite", vo.suite, "suite to run")
      ->check(CLI::IsMember(names))
      ->capture_default_str();
  ver->add_option("--n", vo.cfg.n, "matrix rank")->capture_default_str();
  ver->add_option("--depth", vo.cfg.D, "module depth bound")->capture_default_str();
  ver->add_option("--order", vo.cfg.R, "series truncation order")->capture_default_str();
  ver->add_option("--rmax", vo.cfg.rmax, "highest generator mode exercised")->capture_default_str();
  ver->add_option("--trials", vo.cfg.trials, "random parameter draws")->capture_default_str();
  ver->add_option("--seed", vo.cfg.seed, "random seed")->capture_default_str();
  ver->add_option("--module", vo.module_spec,
                  "module preset: trivial[:lam] | natural | natural2")
      ->capture_default_str();
  ver->add_option("--params", vo.cfg.params_mode, "parameter mode: random | fixed | symbolic")
      ->check(CLI::IsMember({"random", "fixed", "symbolic"}))
      ->capture_default_str();
  ver->add_option("--hbar", vo.hbar, "fixed-mode deformation parameter (rational)");
  ver->add_option("--c", vo.cpar, "fixed-mode central parameter (rational)");
  ver->add_option("--zcap", vo.cfg.z_cap, "summation cap override (-1: depth bound)");
  ver->add_flag("--no-timing", no_timing, "zero out per-row timings in the JSON report");
  ver->add_option("--out", vo.out, "write a JSON report to this path");

  ExpandOpts eo;
  auto* exp = app.add_subcommand("expand", "print the image of one generator");
  exp->add_option("--gen", eo.gen, "generator family: T | H | X+ | X-")
      ->check(CLI::IsMember({"T", "H", "X+", "X-"}))
      ->capture_default_str();
  exp->add_option("--i", eo.i, "first index")->capture_default_str();
  exp->add_option("--j", eo.j, "second index (T only)")->capture_default_str();
  exp->add_option("--r", eo.r, "mode")->capture_default_str();
  exp->add_option("--n", eo.n, "matrix rank")->capture_default_str();
  exp->add_option("--depth", eo.D, "module depth bound (matrix format)")->capture_default_str();
  exp->add_option("--format", eo.format, "template | matrix")
      ->check(CLI::IsMember({"template", "matrix"}))
      ->capture_default_str();
  exp->add_option("--params", eo.params, "matrix-format coefficients: symbolic | random")
      ->check(CLI::IsMember({"symbolic", "random"}))
      ->capture_default_str();
  exp->add_flag("--json", eo.as_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  vo.cfg.timing = !no_timing;
  if (ver->parsed()) return do_verify(vo);
  return do_expand(eo);
}
