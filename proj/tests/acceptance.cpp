// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "nj/io.hpp"
#include "nj/oracle.hpp"

using namespace nj;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool ok, double secs, double limit, const std::string& detail) {
  bool in_time = limit <= 0 || secs < limit;
  bool pass = ok && in_time;
  if (!pass) ++failures;
  std::string budget = limit > 0 ? " / " + std::to_string(static_cast<int>(limit)) + "s" : "";
  std::printf("criterion %d %-28s %s  %6.2fs%s  %s%s\n", id, title.c_str(), pass ? "PASS" : "FAIL", secs,
              budget.c_str(), detail.c_str(), in_time ? "" : " (over time)");
  std::fflush(stdout);
}

double timed(const std::function<void()>& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string summary(const oracle::Report& r) {
  std::string s = std::to_string(r.passed) + "/" + std::to_string(r.count) + " instances";
  if (!r.failures.empty()) s += "; first failure " + r.failures[0].dump();
  return s;
}

void suite(int id, const std::string& title, double limit, std::size_t min_count,
           const std::function<oracle::Report()>& run) {
  oracle::Report r;
  double secs = timed([&] { r = run(); });
  report(id, title, r.ok() && r.count >= min_count, secs, limit, summary(r));
}

// Symmetry, support and class sums on seeded instances, plus the
// Brieskorn-Pham curve spectra {i/A + j/B} reached after eliminating z.
std::pair<bool, std::string> spectrum_criterion(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::size_t checked = 0;
  for (std::size_t i = 0; i < 30; ++i) {
    std::size_t n = 2 + i % 3, k = 2 + (i / 3) % 2;
    if (k > n) k = n;
    Pipeline P(oracle::random_instance(rng, n, k, 6));
    P.evaluate(candidate_orders(P.packages()));
    for (const auto& c : P.check_spectrum(P.spectrum()))
      if (!c.ok) return {false, "instance " + std::to_string(i) + ": " + c.name + " " + c.detail};
    ++checked;
  }
  struct Case {
    long a, b, A, B, C;
  };
  for (auto c : {Case{2, 3, 3, 4, 5}, Case{2, 2, 3, 3, 4}, Case{3, 3, 2, 5, 3}, Case{2, 3, 4, 5, 5}}) {
    PipelineInput in;
    in.n = 3;
    in.supports = {{{0, 0, 1}, {c.a, 0, 0}, {0, c.b, 0}}, {{c.A, 0, 0}, {0, c.B, 0}, {0, 0, c.C}}};
    Pipeline P(in);
    PuiseuxPoly want, got;
    for (long i = 1; i < c.A; ++i)
      for (long j = 1; j < c.B; ++j) {
        Rat e = make_rat(i, c.A) + make_rat(j, c.B);
        if (frac(e) != 0) want[e] += 1;
      }
    for (auto& [e, m] : P.spectrum())
      if (m != 0) got[e] = m;
    if (got != want) return {false, "Brieskorn-Pham " + std::to_string(c.A) + "," + std::to_string(c.B)};
    ++checked;
  }
  return {true, std::to_string(checked) + " instances (30 random, 4 Brieskorn-Pham)"};
}

std::pair<bool, std::string> determinism_criterion(std::uint64_t seed) {
  const char* inputs[] = {
      R"({"n": 4, "k": 2, "spectrum": true, "check": "fast",
          "polynomials": ["x^2 + y^3 + z^2 + w^3 + x*y*z", "x^3 + y^2 + z^4 + w^2 + y*w"]})",
      R"({"n": 3, "k": 3, "mode": "infinity", "check": "fast",
          "polynomials": ["x^2 + y^2 + z^3", "x^3 + y + z^2 + x*y", "x + y^3 + z^2"]})",
  };
  int max_threads = omp_get_max_threads();
  std::size_t docs = 0;
  for (const char* text : inputs) {
    auto spec = parse_problem_text(text);
    spec.seed = seed;
    std::string ref;
    for (int jobs : {1, 2, 4, max_threads, 0}) {
      spec.jobs = jobs;
      std::string out = to_json(run(spec)).dump(2);
      if (ref.empty()) ref = out;
      if (out != ref) return {false, "output differs at jobs=" + std::to_string(jobs)};
      ++docs;
    }
  }
  for (int jobs : {2, 4, max_threads}) {
    if (oracle::to_json(oracle::check_chi_routes(seed, 10, 1)).dump() !=
        oracle::to_json(oracle::check_chi_routes(seed, 10, jobs)).dump())
      return {false, "chi report differs at jobs=" + std::to_string(jobs)};
  }
  return {true, std::to_string(docs) + " documents byte-identical at jobs 1, 2, 4, " +
                    std::to_string(max_threads) + " (max), auto"};
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 1;
  int jobs = argc > 2 ? std::stoi(argv[2]) : 0;
  std::printf("seed %llu, %d thread(s)\n", static_cast<unsigned long long>(seed),
              jobs > 0 ? jobs : omp_get_max_threads());

  suite(1, "alternating-sum identity", 10, 100, [&] { return oracle::check_AE(seed, 100, jobs); });
  suite(2, "chi two routes", 10, 50, [&] { return oracle::check_chi_routes(seed, 50, jobs); });
  suite(3, "beta engine", 20, 20, [&] { return oracle::check_beta(seed, 25, jobs); });
  suite(4, "pipeline coherence", 60, 30, [&] { return oracle::check_jordan(seed, 30, jobs, Mode::Local, 4); });
  suite(5, "corollaries", 0, 20, [&] { return oracle::check_corollaries(seed, 20, jobs); });
  {
    std::pair<bool, std::string> r;
    double secs = timed([&] { r = spectrum_criterion(seed); });
    report(6, "spectrum", r.first, secs, 0, r.second);
  }
  suite(7, "weighted homogeneous", 0, 5, [&] { return oracle::check_weighted_homogeneous(jobs); });
  suite(8, "infinity mode", 30, 10, [&] { return oracle::check_jordan(seed, 10, jobs, Mode::Infinity, 3); });
  {
    std::pair<bool, std::string> r;
    double secs = timed([&] { r = determinism_criterion(seed); });
    report(9, "determinism", r.first, secs, 0, r.second);
  }
  std::printf("%s\n", failures ? "ACCEPTANCE FAILED" : "ACCEPTANCE PASSED");
  return failures ? 1 : 0;
}
