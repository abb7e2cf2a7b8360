// modp-gl2 <suite|cind|quotient|diagram> [flags] --out report.json
// Exit codes: 0 pass, 1 check failure, 2 configuration error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "modp_gl2.h"

namespace {

struct Options {
  std::string backend = "equal", weight, poly = "T", rel = "none", format = "json", out;
  unsigned p = 3, f = 1, prec = 0, m = 0, radius = 5, slack = 0, samples = 1000;
  uint64_t seed = 1;
  // command arguments
  std::string element, g;
  int n = -1, bound = -1;
};

nlohmann::json scenario_json(const Options& o) {
  nlohmann::json j{{"backend", o.backend}, {"p", o.p},         {"f", o.f},         {"prec", o.prec},
                   {"m", o.m},             {"poly", o.poly},   {"rel", o.rel},     {"N", o.radius},
                   {"slack", o.slack},     {"seed", o.seed},   {"samples", o.samples}};
  if (!o.weight.empty()) j["weight"] = o.weight;
  return j;
}

// Inline JSON, or @path to read it from a file.
std::string load_arg(const std::string& s) {
  if (s.empty() || s[0] != '@') return s;
  std::ifstream in(s.substr(1));
  if (!in) throw std::runtime_error("cannot read " + s.substr(1));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int status_exit(modp_status st) {
  switch (st) {
    case MODP_OK:
      return 0;
    case MODP_ERR_ARGUMENT:
    case MODP_ERR_CONFIG:
    case MODP_ERR_DOMAIN:
      return 2;
    default:
      return 1;
  }
}

int fail(modp_status st) {
  std::cerr << "modp-gl2: " << modp_last_error() << "\n";
  return status_exit(st);
}

int run(const Options& o, const std::string& cmd, const std::string& op) {
  modp_session* s = nullptr;
  modp_status st = modp_session_create(scenario_json(o).dump().c_str(), &s);
  if (st != MODP_OK) return fail(st);

  modp_report* r = nullptr;
  if (cmd == "suite") {
    st = modp_run_suite(s, op.c_str(), &r);
  } else {
    nlohmann::json args = nlohmann::json::object();
    try {
      if (!o.element.empty()) args["element"] = nlohmann::json::parse(load_arg(o.element));
    } catch (const std::exception& e) {
      modp_session_destroy(s);
      std::cerr << "modp-gl2: bad --element: " << e.what() << "\n";
      return 2;
    }
    if (!o.g.empty()) args["g"] = o.g;
    if (o.n >= 0) args["n"] = o.n;
    if (o.bound >= 0) args["bound"] = o.bound;
    st = modp_run_command(s, cmd.c_str(), op.c_str(), args.dump().c_str(), &r);
  }
  modp_session_destroy(s);
  if (st != MODP_OK) return fail(st);

  char* text = nullptr;
  st = modp_report_emit(r, o.format.c_str(), &text);
  int passed = modp_report_passed(r);
  modp_report_destroy(r);
  if (st != MODP_OK) return fail(st);
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out);
    f << text;
    if (!f) {
      modp_string_free(text);
      std::cerr << "modp-gl2: cannot write " << o.out << "\n";
      return 2;
    }
  }
  modp_string_free(text);
  return passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with mod-p representations of GL2 over a local field."};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--backend", o.backend, "equal (F_q((w))) or mixed (Q_p)")->check(CLI::IsMember({"equal", "mixed"}));
    sub->add_option("--p", o.p, "residue characteristic");
    sub->add_option("--f", o.f, "residue degree");
    sub->add_option("--prec", o.prec, "precision of O/w^prec; 0 picks a default");
    sub->add_option("--m", o.m, "coefficient field degree over F_p; 0 means f");
    sub->add_option("--weight,--sigma", o.weight, "weight descriptor, e.g. r=2,a=0,z=1 (r=1:2 when f=2)");
    sub->add_option("--poly", o.poly, "polynomial in T, e.g. T-1");
    sub->add_option("--rel", o.rel, "relation preset")->check(CLI::IsMember({"none", "special"}));
    sub->add_option("--radius,-N", o.radius, "truncation radius");
    sub->add_option("--slack", o.slack, "extra radius for relation translates");
    sub->add_option("--seed", o.seed, "seed for sampled checks");
    sub->add_option("--samples", o.samples, "number of random samples");
    sub->add_option("--format", o.format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
    sub->add_option("--out", o.out, "output file (default stdout)");
  };
  std::string suite, cind_op, quotient_op, diagram_op;

  auto* s_suite = app.add_subcommand("suite", "run a verification suite");
  s_suite->add_option("name", suite, "suite name")
      ->required()
      ->check(CLI::IsMember({"decompositions", "hecke", "s-operator", "d1-dims", "invariants", "char-p-nilpotence",
                             "presentation", "all"}));
  common(s_suite);

  auto* s_cind = app.add_subcommand("cind", "act on an element of the compact induction");
  s_cind->add_option("op", cind_op, "act, T or S")->required()->check(CLI::IsMember({"act", "T", "S"}));
  s_cind->add_option("--element", o.element, "element JSON [{side,n,b,vector}] or @file")->required();
  s_cind->add_option("--g", o.g, "group element [[a,b],[c,d]] * w^-e (for act)");
  common(s_cind);

  auto* s_quot = app.add_subcommand("quotient", "build a truncated quotient");
  s_quot->add_option("op", quotient_op, "make")->required()->check(CLI::IsMember({"make"}));
  common(s_quot);

  auto* s_diag = app.add_subcommand("diagram", "canonical diagram computations");
  s_diag->add_option("op", diagram_op, "d1, d0, level or r0")->required()->check(CLI::IsMember({"d1", "d0", "level", "r0"}));
  s_diag->add_option("--n", o.n, "radius for D1/D0 (default radius - 1)");
  s_diag->add_option("--bound", o.bound, "number of level layers (default radius - 2)");
  s_diag->add_option("--element", o.element, "element whose level is computed");
  common(s_diag);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (*s_suite) return run(o, "suite", suite);
    if (*s_cind) return run(o, "cind", cind_op);
    if (*s_quot) return run(o, "quotient", quotient_op);
    return run(o, "diagram", diagram_op);
  } catch (const std::exception& e) {
    std::cerr << "modp-gl2: " << e.what() << "\n";
    return 2;
  }
}
