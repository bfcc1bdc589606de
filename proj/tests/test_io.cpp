#include <gtest/gtest.h>

#include <set>

#include "nj/io.hpp"

using namespace nj;

namespace {

Support sorted(Support s) {
  std::sort(s.begin(), s.end());
  return s;
}

std::string error_of(const std::string& text) {
  try {
    parse_problem_text(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

const char* kBrieskorn = R"({"n": 3, "k": 2, "polynomials": ["z + x^2 + y^3", "x^3 + y^4 + z^5"]})";

}  // namespace

TEST(Parser, Examples) {
  EXPECT_EQ(sorted(parse_polynomial_text("x^2 + y^2", 2)), (Support{{0, 2}, {2, 0}}));
  EXPECT_EQ(sorted(parse_polynomial_text("x1*x2^3 - 5*x1^4", 2)), (Support{{1, 3}, {4, 0}}));
  EXPECT_THROW(parse_polynomial_text("x^-1", 1), ValidationError);
}

TEST(Parser, Variants) {
  EXPECT_EQ(sorted(parse_polynomial_text("3/2 x y^2 + 0*x^5 - z", 3)), (Support{{0, 0, 1}, {1, 2, 0}}));
  EXPECT_EQ(parse_polynomial_text("x3^2", 3), (Support{{0, 0, 2}}));
  EXPECT_EQ(parse_polynomial_text("x^2 + x^2", 1), (Support{{2}}));
  EXPECT_EQ(parse_polynomial_text("x*x", 1), (Support{{2}}));
}

TEST(Parser, Errors) {
  auto msg = [](const std::string& s, std::size_t n) {
    try {
      parse_polynomial_text(s, n);
    } catch (const ValidationError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(msg("x^-1", 1).find("negative exponent"), std::string::npos);
  EXPECT_NE(msg("x + q", 2).find("unknown variable 'q'"), std::string::npos);
  EXPECT_NE(msg("x + q", 2).find("position"), std::string::npos);
  EXPECT_NE(msg("x5", 2), "");
  EXPECT_NE(msg("x +", 2), "");
  EXPECT_EQ(parse_polynomial_text("2", 2), (Support{{0, 0}}));
  EXPECT_NE(error_of(R"({"n": 2, "polynomials": ["x^2+y^2+1", "x+y"]})"), "");
}

TEST(Problem, ParsesAllForms) {
  auto p = parse_problem_text(R"({"n": 2, "k": 2, "mode": "infinity", "seed": 7, "jobs": "auto",
      "polynomials": [{"support": [[2,0],[0,2]], "coefficients": [1, 1]}, {"expr": "x + y"}],
      "eigenvalues": ["1/2"], "spectrum": false, "check": "fast"})");
  EXPECT_EQ(p.n, 2u);
  EXPECT_EQ(p.mode, Mode::Infinity);
  EXPECT_EQ(p.seed, 7u);
  EXPECT_EQ(p.jobs, 0);
  EXPECT_EQ(p.check, CheckLevel::Fast);
  ASSERT_EQ(p.eigenvalues.size(), 1u);
  EXPECT_EQ(sorted(p.input().supports[1]), (Support{{0, 1}, {1, 0}}));
}

TEST(Problem, Rejections) {
  EXPECT_NE(error_of(R"({"n": 2, "polynomials": ["x^2+y^2", "x+y"], "colour": 1})").find("unknown field"), std::string::npos);
  EXPECT_NE(error_of(R"({"n": 2, "k": 3, "polynomials": ["x^2+y^2", "x+y"]})"), "");
  EXPECT_NE(error_of(R"({"n": 2, "polynomials": [{"support": [[1,0]], "expr": "x"}, "x+y"]})").find("exactly one"), std::string::npos);
  EXPECT_NE(error_of(R"({"n": 2, "polynomials": [{"support": [[1,0,0]]}, "x+y"]})"), "");
  EXPECT_NE(error_of(R"({"n": 2, "polynomials": ["x*y", "x+y"]})").find("convenient"), std::string::npos);
  EXPECT_NE(error_of(R"({"n": 2, "polynomials": ["x^2+y^2", "x+y"], "mode": "global"})"), "");
  EXPECT_NE(error_of(R"({"n": 2, "polynomials": ["x^2+y^2"]})"), "");
  EXPECT_NE(error_of("{not json"), "");
  EXPECT_NE(error_of(R"({"n": 2, "polynomials": ["x^2+y^2", "x+y"], "eigenvalues": ["1"]})"), "");
}

TEST(Run, BrieskornDocument) {
  auto doc = run(parse_problem_text(R"({"n": 3, "k": 2, "spectrum": true,
      "polynomials": ["z + x^2 + y^3", "x^3 + y^4 + z^5"]})"));
  EXPECT_TRUE(doc.ok);
  ASSERT_TRUE(doc.spectrum.has_value());
  std::vector<std::string> exps;
  for (auto& [e, c] : *doc.spectrum) exps.push_back(e);
  EXPECT_EQ(exps, (std::vector<std::string>{"7/12", "5/6", "11/12", "13/12", "7/6", "17/12"}));
  ASSERT_FALSE(doc.eigenvalues.empty());
  for (auto& e : doc.eigenvalues) {
    EXPECT_EQ(e.counts_geq.size(), 2u);
    if (e.counts_geq.size() > 1) {
      EXPECT_EQ(e.counts_geq[1], 0);  // quasi-homogeneous
    }
  }
}

TEST(Run, FilteredAndInfinity) {
  auto spec = parse_problem_text(
      R"({"n": 2, "polynomials": ["x^2+y^3", "x^3+y^2"], "eigenvalues": ["1/7", "1/2"]})");
  auto doc = run(spec);
  ASSERT_EQ(doc.eigenvalues.size(), 2u);
  EXPECT_EQ(doc.eigenvalues[0].lambda, "1/7");
  for (auto& b : doc.eigenvalues[0].beta) EXPECT_EQ(b, 0);
  spec.mode = Mode::Infinity;
  auto inf = run(spec);
  EXPECT_EQ(to_json(inf).size(), to_json(doc).size());
  EXPECT_EQ(inf.input["mode"], "infinity");
}

TEST(Run, CheckFullIsOk) {
  auto spec = parse_problem_text(kBrieskorn);
  spec.check = CheckLevel::Full;
  auto doc = run(spec);
  EXPECT_TRUE(doc.ok);
  std::set<std::string> names;
  for (auto& r : doc.checks) {
    EXPECT_TRUE(r.ok) << r.name << ": " << r.detail;
    names.insert(r.name);
  }
  EXPECT_GT(names.size(), 5u);
}

TEST(Run, DeterministicAcrossJobs) {
  auto spec = parse_problem_text(R"({"n": 3, "k": 2, "spectrum": true, "check": "fast",
      "polynomials": ["x^2 + y^3 + z^2 + x*y*z", "x^3 + y^2 + z^4 + y*z"]})");
  std::string ref;
  for (int jobs : {1, 2, 0}) {
    spec.jobs = jobs;
    auto s = to_json(run(spec)).dump(2);
    if (ref.empty()) ref = s;
    EXPECT_EQ(s, ref) << "jobs=" << jobs;
  }
}

TEST(Json, RoundTrip) {
  auto spec = parse_problem_text(kBrieskorn);
  spec.spectrum = true;
  spec.check = CheckLevel::Fast;
  auto doc = run(spec);
  auto back = document_from_json(to_json(doc));
  EXPECT_EQ(back, doc);
  EXPECT_EQ(to_json(back).dump(), to_json(doc).dump());
  EXPECT_THROW(document_from_json(ojson::parse(R"({"tool": 3})")), ValidationError);
}

TEST(Json, Table) {
  auto doc = run(parse_problem_text(kBrieskorn));
  auto t = render_table(doc);
  EXPECT_NE(t.find(doc.eigenvalues[0].lambda), std::string::npos);
}

TEST(Levels, Parse) {
  EXPECT_EQ(parse_check_level("full"), CheckLevel::Full);
  EXPECT_EQ(to_string(CheckLevel::None), "none");
  EXPECT_THROW(parse_check_level("most"), ValidationError);
  EXPECT_EQ(parse_mode("local"), Mode::Local);
  EXPECT_EQ(to_string(Mode::Infinity), "infinity");
}

TEST(Suites, UnknownSuite) {
  EXPECT_THROW(run_oracle_suites({"nope"}, 1, 1, 1), ValidationError);
  auto r = run_oracle_suites({"chi"}, 3, 5, 1);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.reports.size(), 1u);
}
