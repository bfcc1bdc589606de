#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "nj/pipeline.hpp"

namespace nj {

using ojson = nlohmann::ordered_json;

// Exponent vectors of the monomials of a polynomial written with variables
// x1..xn (or x, y, z, w when n <= 4) and the operators + - * ^.
Support parse_polynomial_text(const std::string& text, std::size_t n);

enum class CheckLevel { None, Fast, Full };
CheckLevel parse_check_level(const std::string& s);
std::string to_string(CheckLevel c);
Mode parse_mode(const std::string& s);
std::string to_string(Mode m);

struct PolynomialSpec {
  Support support;
  std::optional<std::string> expr;
  std::optional<ojson> coefficients;  // recorded, never used
};

struct ProblemSpec {
  std::size_t n = 0;
  std::size_t k = 0;
  Mode mode = Mode::Local;
  std::vector<PolynomialSpec> polynomials;
  bool spectrum = false;
  std::vector<EigenvalueClass> eigenvalues;  // empty: every candidate
  CheckLevel check = CheckLevel::None;
  int jobs = 1;
  std::uint64_t seed = 1;

  PipelineInput input() const;
};

// {"n", "k", "mode", "polynomials": [{"support" | "expr", "coefficients"?}]}
ProblemSpec parse_problem(const ojson& j);
ProblemSpec parse_problem_text(const std::string& text);

struct EigenvalueEntry {
  std::string lambda;
  Int order;
  std::vector<Int> beta;  // dense from degree 0
  std::vector<Int> counts_geq;
  std::vector<Int> counts_exact;
  Int max_count;
  std::optional<Int> second_count;
  bool operator==(const EigenvalueEntry&) const = default;
};

struct CheckRow {
  std::string name;
  bool ok = true;
  std::size_t runs = 0;
  std::string detail;  // first failure
  bool operator==(const CheckRow&) const = default;
};

struct ResultDocument {
  std::string tool = "newton_jordan";
  std::string version;
  ojson input;
  std::vector<EigenvalueEntry> eigenvalues;
  std::optional<std::vector<std::pair<std::string, Int>>> spectrum;
  std::vector<CheckRow> checks;
  std::vector<std::string> warnings;
  bool ok = true;
  bool operator==(const ResultDocument&) const = default;
};

ojson to_json(const ResultDocument& d);
ResultDocument document_from_json(const ojson& j);

ResultDocument run(const ProblemSpec& spec);
std::string render_table(const ResultDocument& d);

std::string library_version();

// The oracle suites by name ("ae", "chi", "beta", "jordan", "infinity",
// "corollaries", "weighted", or "all"); count 0 keeps each suite's default size.
struct SuiteRun {
  std::vector<CheckRow> checks;
  ojson reports = ojson::array();
  bool ok = true;
};
SuiteRun run_oracle_suites(const std::vector<std::string>& suites, std::uint64_t seed, std::size_t count,
                           int jobs);
ojson to_json(const SuiteRun& r);

}  // namespace nj
