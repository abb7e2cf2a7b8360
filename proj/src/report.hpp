#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "diagram.hpp"

namespace modp {

constexpr int kSchemaVersion = 1;

struct Scenario {
  Backend backend = Backend::Equal;
  unsigned p = 3, f = 1;
  unsigned prec = 0;  // 0: max(12, N + slack + 6)
  unsigned m = 0;     // coefficient degree; 0: same as f
  WeightSpec weight;
  std::string poly = "T";
  RelPreset rel = RelPreset::None;
  unsigned N = 5, slack = 0;
  uint64_t seed = 1;
  unsigned samples = 1000;

  unsigned coeff_degree() const { return m ? m : f; }
  unsigned precision() const;
  // Throws ConfigError on inconsistent fields.
  void validate() const;
  nlohmann::json to_json() const;
  static Scenario from_json(const nlohmann::json& j);
};

// Everything one scenario computes with. Not movable (members point at each other).
struct Model {
  explicit Model(const Scenario& s);
  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;

  Scenario scenario;
  std::unique_ptr<Context> ctx;
  std::unique_ptr<Weight> weight;
  std::unique_ptr<CInd> V;
  std::unique_ptr<Hecke> H;
  Poly P;

  // Builds the quotient of the scenario at radius N (or the given radius).
  std::unique_ptr<Quotient> quotient(int radius = -1) const;
  std::vector<Induced> relations() const;
  // lambda when P = T - lambda and no extra relation is imposed.
  bool linear(Fe* lambda = nullptr) const;
};

struct Check {
  std::string id, expected, got;
  bool pass = false;
};

struct Report {
  std::string suite;
  nlohmann::json scenario;
  std::vector<Check> checks;
  std::vector<std::string> warnings;
  std::map<std::string, std::vector<std::pair<unsigned, uint64_t>>> series;
  nlohmann::json data = nlohmann::json::object();

  void add(std::string id, const std::string& expected, const std::string& got, bool pass);
  void add_eq(std::string id, uint64_t expected, uint64_t got) {
    add(std::move(id), std::to_string(expected), std::to_string(got), expected == got);
  }
  void add_true(std::string id, bool ok, const std::string& got = "") {
    add(std::move(id), "true", got.empty() ? (ok ? "true" : "false") : got, ok);
  }
  void merge(const Report& other, const std::string& prefix = "");
  bool passed() const;
  bool empty() const { return checks.empty() && series.empty() && warnings.empty() && data.empty(); }
  // Sorts checks by id.
  void finalize();
};

const std::vector<std::string>& suite_names();
Report run_suite(const std::string& name, const Scenario& s);

// Individual suites, reusable by the acceptance runner.
void suite_decompositions(const Model& M, Report& R);
void suite_hecke(const Model& M, Report& R);
void suite_s_operator(const Model& M, Report& R, unsigned max_n);
void suite_d1(const Model& M, Report& R);
void suite_invariants(const Model& M, Report& R);
void suite_nilpotence(const Model& M, Report& R, unsigned max_order);
void suite_presentation(const Model& M, Report& R, unsigned radius);

// cind act|T|S, quotient make, diagram d1|d0|level|r0.
Report run_command(const std::string& cmd, const std::string& op, const Scenario& s, const nlohmann::json& args);

nlohmann::json element_to_json(const CInd& V, const Induced& f);
Induced element_from_json(const CInd& V, const nlohmann::json& j);

enum class Format { Json, Csv, Table };
Format parse_format(const std::string& s);
std::string emit(const Report& r, Format fmt);

}  // namespace modp
