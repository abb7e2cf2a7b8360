// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance [criterion numbers...]

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "parallel.hpp"
#include "report.hpp"

using namespace modp;

namespace {

struct Field {
  Backend backend;
  unsigned p, f;
};

const std::vector<Field> kFields{{Backend::Equal, 2, 1}, {Backend::Equal, 2, 2}, {Backend::Equal, 3, 1},
                                 {Backend::Equal, 3, 2}, {Backend::Equal, 5, 1}, {Backend::Equal, 5, 2},
                                 {Backend::Mixed, 2, 1}, {Backend::Mixed, 3, 1}, {Backend::Mixed, 5, 1}};

std::vector<std::vector<unsigned>> weight_grid(unsigned p, unsigned f) {
  std::vector<std::vector<unsigned>> out{{}};
  for (unsigned i = 0; i < f; ++i) {
    std::vector<std::vector<unsigned>> next;
    for (const auto& r : out)
      for (unsigned k = 0; k < p; ++k) {
        auto t = r;
        t.push_back(k);
        next.push_back(t);
      }
    out.swap(next);
  }
  return out;
}

Scenario scenario(const Field& F, std::vector<unsigned> r, const std::string& poly, unsigned N) {
  Scenario s;
  s.backend = F.backend;
  s.p = F.p;
  s.f = F.f;
  s.weight.p = F.p;
  s.weight.f = F.f;
  s.weight.r = std::move(r);
  s.poly = poly;
  s.N = N;
  return s;
}

std::string label(const Scenario& s) {
  return std::string(s.backend == Backend::Equal ? "equal" : "mixed") + " " + weight_str(s.weight) + " P=" + s.poly +
         (s.rel == RelPreset::Special ? " +special" : "") + " N=" + std::to_string(s.N);
}

struct Case {
  Scenario s;
  std::string tag;
};

struct CaseResult {
  bool pass = true;
  std::string why;
  double secs = 0;
  Report rep;
};

using CaseFn = std::function<void(const Model&, Report&)>;

// Runs fn on every case; a case passes when every check whose id starts with one
// of the prefixes passes and at least one such check exists.
std::vector<CaseResult> run_cases(const std::vector<Case>& cases, const CaseFn& fn, const std::vector<std::string>& prefixes) {
  std::vector<CaseResult> out(cases.size());
  parallel_for(cases.size(), [&](size_t i) {
    auto t0 = std::chrono::steady_clock::now();
    CaseResult& res = out[i];
    try {
      Model M(cases[i].s);
      fn(M, res.rep);
      size_t seen = 0;
      for (const auto& c : res.rep.checks)
        for (const auto& p : prefixes)
          if (c.id.rfind(p, 0) == 0) {
            ++seen;
            if (!c.pass) {
              res.pass = false;
              if (res.why.empty()) res.why = c.id + " expected " + c.expected + " got " + c.got;
            }
            break;
          }
      if (!seen) {
        res.pass = false;
        res.why = "no matching checks";
      }
    } catch (const std::exception& e) {
      res.pass = false;
      res.why = e.what();
    }
    res.secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  });
  return out;
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Summary over cases: counts, slowest case, first failure.
Outcome summarize(const std::vector<Case>& cases, const std::vector<CaseResult>& res, double limit_secs) {
  size_t ok = 0, slow = 0;
  double worst = 0;
  std::string first;
  for (size_t i = 0; i < res.size(); ++i) {
    if (res[i].pass) ++ok;
    else if (first.empty()) first = label(cases[i].s) + ": " + res[i].why;
    worst = std::max(worst, res[i].secs);
    if (limit_secs > 0 && res[i].secs > limit_secs) ++slow;
  }
  std::ostringstream os;
  os << ok << "/" << res.size() << " cases";
  char buf[64];
  std::snprintf(buf, sizeof buf, ", slowest %.1f s", worst);
  os << buf;
  if (slow) os << ", " << slow << " over " << limit_secs << " s";
  if (!first.empty()) os << "; first failure: " << first;
  return Outcome{ok == res.size() && slow == 0, os.str()};
}

std::vector<Case> linear_grid(unsigned N) {
  std::vector<Case> cases;
  for (const auto& F : kFields)
    for (const auto& r : weight_grid(F.p, F.f))
      for (const char* poly : {"T", "T-1"}) cases.push_back({scenario(F, r, poly, N), ""});
  return cases;
}

std::vector<Case> special_grid(unsigned N) {
  std::vector<Case> cases;
  for (const auto& F : kFields) {
    if (F.f != 1 || F.p > 3) continue;
    Scenario s = scenario(F, {F.p - 1}, "T-1", N);
    s.rel = RelPreset::Special;
    s.slack = 1;
    cases.push_back({s, ""});
  }
  return cases;
}

// ------------------------------------------------------------------ criteria

Outcome c1() {
  auto cases = linear_grid(6);
  return summarize(cases, run_cases(cases, suite_d1, {"d1."}), 60);
}

Outcome c2() {
  auto cases = special_grid(4);
  auto fn = [](const Model& M, Report& R) {
    suite_d1(M, R);
    suite_invariants(M, R);
  };
  return summarize(cases, run_cases(cases, fn, {"d1.dim", "d1.basis", "inv.i1.dim", "inv.d0"}), 120);
}

Outcome c3() {
  std::vector<Case> cases;
  for (const auto& F : kFields) {
    if (F.f != 1 || (F.p != 3 && F.p != 5)) continue;
    for (unsigned r = 1; r < F.p; ++r)
      for (unsigned l = 1; l < F.p; ++l) cases.push_back({scenario(F, {r}, "T-" + std::to_string(l), 5), ""});
  }
  auto fn = [](const Model& M, Report& R) {
    suite_d1(M, R);
    suite_invariants(M, R);
  };
  return summarize(cases, run_cases(cases, fn, {"d1.stable", "d1.dim", "inv.i1.dim", "inv.i1-equals-d1"}), 0);
}

Outcome c4() {
  std::vector<Case> cases;
  for (const auto& F : kFields)
    if (F.backend == Backend::Mixed)
      for (const auto& r : weight_grid(F.p, F.f)) cases.push_back({scenario(F, r, "T", 5), ""});
  auto fn = [](const Model& M, Report& R) {
    suite_d1(M, R);
    suite_invariants(M, R);
  };
  return summarize(cases, run_cases(cases, fn, {"d1.dim", "inv.i1.dim", "inv.i1-equals-d1"}), 0);
}

// Criteria 5 and 6 share one pass over the weight grid.
std::vector<Case> sop_cases;
std::vector<CaseResult> sop_results;

void run_sop() {
  if (!sop_results.empty()) return;
  for (const auto& F : kFields)
    for (const auto& r : weight_grid(F.p, F.f)) sop_cases.push_back({scenario(F, r, "T", 5), ""});
  auto fn = [](const Model& M, Report& R) { suite_s_operator(M, R, 4); };
  sop_results = run_cases(sop_cases, fn, {"sop."});
}

Outcome select(const std::vector<Case>& cases, const std::vector<CaseResult>& all, const std::string& prefix,
               double limit) {
  std::vector<Case> cs;
  std::vector<CaseResult> rs;
  for (size_t i = 0; i < cases.size(); ++i) {
    CaseResult r;
    r.secs = all[i].secs;
    size_t seen = 0;
    for (const auto& c : all[i].rep.checks)
      if (c.id.rfind(prefix, 0) == 0) {
        ++seen;
        if (!c.pass && r.pass) {
          r.pass = false;
          r.why = c.id + " expected " + c.expected + " got " + c.got;
        }
      }
    if (!all[i].why.empty() && all[i].rep.checks.empty()) {
      r.pass = false;
      r.why = all[i].why;
    }
    if (!seen && r.pass) continue;  // no checks of this kind for the case
    cs.push_back(cases[i]);
    rs.push_back(r);
  }
  return summarize(cs, rs, limit);
}

Outcome c5() {
  run_sop();
  return select(sop_cases, sop_results, "sop.rplus", 30);
}

Outcome c6() {
  run_sop();
  return select(sop_cases, sop_results, "sop.mplus", 0);
}

// Criteria 7, 8, 9 and 14 share the Hecke suite on two weights per field.
std::vector<Case> hecke_cases;
std::vector<CaseResult> hecke_results;

void run_hecke() {
  if (!hecke_results.empty()) return;
  for (const auto& F : kFields)
    for (unsigned r : {0u, F.p - 1}) {
      Scenario s = scenario(F, std::vector<unsigned>(F.f, r), "T", 5);
      s.samples = 1000;
      hecke_cases.push_back({s, ""});
    }
  hecke_results = run_cases(hecke_cases, suite_hecke, {"hecke."});
}

Outcome c7() {
  run_hecke();
  auto a = select(hecke_cases, hecke_results, "hecke.t-v0", 0);
  auto b = select(hecke_cases, hecke_results, "hecke.equivariance", 0);
  return {a.pass && b.pass, "formula " + a.detail + " | equivariance " + b.detail};
}

Outcome c8() {
  run_hecke();
  return select(hecke_cases, hecke_results, "hecke.t-split", 0);
}

Outcome c9() {
  run_hecke();
  return select(hecke_cases, hecke_results, "hecke.s-S-identity", 0);
}

Outcome c14() {
  run_hecke();
  Outcome o = select(hecke_cases, hecke_results, "hecke.pt-correction", 0);
  size_t skipped = 0;
  for (const auto& r : hecke_results)
    for (const auto& w : r.rep.warnings)
      if (w.rfind("hecke.pt-correction", 0) == 0) ++skipped;
  if (skipped) o.detail += "; " + std::to_string(skipped) + " degree checks over the cost cap skipped";
  return o;
}

Outcome c10() {
  std::vector<Case> cases;
  for (unsigned p : {2u, 3u})
    for (unsigned r = 0; r < p; ++r)
      for (const char* poly : {"T", "T^2"}) cases.push_back({scenario({Backend::Equal, p, 1}, {r}, poly, 8), ""});
  auto t0 = std::chrono::steady_clock::now();
  auto res = run_cases(cases, [](const Model& M, Report& R) { suite_nilpotence(M, R, 5); }, {"nil."});
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Outcome o = summarize(cases, res, 0);
  if (secs > 600) {
    o.pass = false;
    o.detail += ", total over 600 s";
  }
  return o;
}

Outcome c11() {
  // Char-p models: strict growth of D1 from radius 2 to 5 is expected.
  std::vector<std::string> flat;
  size_t grow = 0, total = 0;
  for (unsigned p : {2u, 3u})
    for (unsigned r = 0; r < p; ++r)
      for (const char* poly : {"T", "T^2"}) {
        Model M(scenario({Backend::Equal, p, 1}, {r}, poly, 6));
        auto Q = M.quotient();
        D1Result d1 = d1_compute(*Q, 5);
        ++total;
        const auto& g = d1.growth;
        if (g[2].dim < g[3].dim && g[3].dim < g[4].dim && g[4].dim < g[5].dim) {
          ++grow;
        } else if (flat.size() < 2) {
          // Independent ball-level meet of the two halves, for the record.
          std::string meets;
          for (unsigned N = 3; N <= 6; ++N) {
            Model M2(scenario({Backend::Equal, p, 1}, {r}, poly, N));
            auto Q2 = M2.quotient();
            auto pm = i_pm_images(*Q2, N);
            meets += (meets.empty() ? "" : ",") + std::to_string(intersect(M2.V->F(), pm.plus, pm.minus).dim());
          }
          flat.push_back("p=" + std::to_string(p) + " r=" + std::to_string(r) + " P=" + poly + " dims r2..r5 " +
                         std::to_string(g[2].dim) + "," + std::to_string(g[3].dim) + "," + std::to_string(g[4].dim) + "," +
                         std::to_string(g[5].dim) + " (ball meet N=3..6: " + meets + ")");
        }
      }
  // Cases 1 to 4: stable by radius 4.
  auto cases = linear_grid(6);
  for (auto& c : special_grid(6)) cases.push_back(c);
  size_t stable = 0;
  for (const auto& c : cases) {
    Model M(c.s);
    auto Q = M.quotient();
    D1Result d1 = d1_compute(*Q, 5);
    if (d1.growth[4].dim == d1.growth[5].dim) ++stable;
  }
  std::ostringstream os;
  os << "char-p growth " << grow << "/" << total << " strictly increasing";
  for (const auto& f : flat) os << "; " << f;
  os << " | stable by radius 4: " << stable << "/" << cases.size();
  return {grow == total && stable == cases.size(), os.str()};
}

Outcome c12() {
  std::vector<Case> cases;
  auto radius = [](unsigned q) { return q <= 3 ? 4u : q <= 5 ? 3u : q <= 9 ? 2u : 1u; };
  for (const auto& F : kFields) {
    unsigned q = 1;
    for (unsigned i = 0; i < F.f; ++i) q *= F.p;
    for (const auto& r : weight_grid(F.p, F.f))
      for (const char* poly : {"T", "T-1"}) cases.push_back({scenario(F, r, poly, radius(q)), ""});
  }
  for (auto& c : special_grid(3)) cases.push_back(c);
  auto fn = [](const Model& M, Report& R) {
    auto Q = M.quotient();
    unsigned N = Q->N();
    unsigned R0 = M.ctx->ring.q() == 2 ? N + 2 : N + 1;
    auto ref = oracle::kernel_dims(*M.H, M.P, M.relations(), N, R0);
    for (unsigned n = 0; n <= N; ++n) R.add_eq("oracle.kernel.n" + std::to_string(n), ref[n], Q->kernel_dim(n));
  };
  return summarize(cases, run_cases(cases, fn, {"oracle."}), 0);
}

Outcome c13() {
  std::vector<Case> cases;
  for (const auto& F : kFields) {
    Scenario s = scenario(F, std::vector<unsigned>(F.f, 0), "T", 5);
    s.samples = 10000;
    cases.push_back({s, ""});
  }
  return summarize(cases, run_cases(cases, suite_decompositions, {"decomp."}), 30);
}

Outcome c15() {
  auto cases = linear_grid(5);
  auto fn = [](const Model& M, Report& R) { suite_presentation(M, R, 3); };
  return summarize(cases, run_cases(cases, fn, {"pres."}), 0);
}

struct Criterion {
  int id;
  const char* what;
  Outcome (*run)();
};

const std::vector<Criterion> kCriteria{
    {1, "D1 of cInd/(T-lambda) is 2-dimensional on [Id,v0], [Pi,v0]", c1},
    {2, "special series: D1 = 1, I1-invariants = 1, D0 = image of sigma", c2},
    {3, "principal series: D1 = I1-invariants, dimension 2, stable", c3},
    {4, "mixed characteristic cInd/T: D1 = I1-invariants = 2", c4},
    {5, "R_n^+ fixed by upper unipotents is spanned by S^n[Id,v0], n <= 4", c5},
    {6, "M_n^+: rank q^n, fixed by (1,p^n;0,1), one-dimensional socle", c6},
    {7, "T[Id,v0] formula and G-equivariance of T", c7},
    {8, "T on R_n^-: injective up, surjective down, n = 1, 2", c8},
    {9, "s S = Pi + R on random elements", c9},
    {10, "char p: Plus ball_2 basis is S-nilpotent of order <= 5", c10},
    {11, "D1 growth: strict in char p, stable by radius 4 otherwise", c11},
    {12, "quotient kernel dimensions match the span-closure oracle", c12},
    {13, "decomposition round trips on 10^4 elements", c13},
    {14, "P(T) correction lands in the required grades", c14},
    {15, "G-span of edge relations equals the boundary image in ball_3", c15},
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  bool all_pass = true;
  for (const auto& c : kCriteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = Outcome{false, std::string("error: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all_pass &= o.pass;
    std::printf("criterion %2d %s  %s [%s] (%.1f s)\n", c.id, o.pass ? "PASS" : "FAIL", c.what, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
