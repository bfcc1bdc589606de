#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "nj/io.hpp"

namespace {

int parse_jobs(const std::string& s) {
  if (s == "auto") return 0;
  try {
    std::size_t used = 0;
    int j = std::stoi(s, &used);
    if (used == s.size() && j > 0) return j;
  } catch (const std::exception&) {
  }
  throw nj::ValidationError("--jobs takes a positive integer or 'auto', got '" + s + "'");
}

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) throw nj::ValidationError("cannot open input file '" + path + "'");
    ss << f.rdbuf();
  }
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jordan block counts and spectrum of Newton non-degenerate complete intersections"};
  app.set_version_flag("--version", nj::library_version());

  std::string input = "-", mode, format = "json", check, jobs = "1";
  bool spectrum = false;
  std::vector<std::string> eigenvalues;
  std::uint64_t seed = 0;
  app.add_option("--input", input, "problem JSON file, or - for stdin");
  app.add_option("--mode", mode, "local or infinity (overrides the input)")->check(CLI::IsMember({"local", "infinity"}));
  app.add_flag("--spectrum", spectrum, "also compute the spectrum");
  app.add_option("--eigenvalue", eigenvalues, "restrict to lambda = exp(2 pi i a/d); repeatable")->take_all();
  app.add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--check", check, "none, fast or full")->check(CLI::IsMember({"none", "fast", "full"}));
  app.add_option("--jobs", jobs, "worker threads, or auto");
  auto* seed_opt = app.add_option("--seed", seed, "seed for the randomized oracle instances");

  auto* cmd = app.add_subcommand("check", "run the oracle suites and print their report");
  std::vector<std::string> suites = {"all"};
  std::size_t count = 0;
  std::uint64_t check_seed = 1;
  std::string check_jobs = "auto";
  cmd->add_option("--suite", suites, "ae, chi, beta, jordan, infinity, corollaries, weighted or all")->take_all();
  cmd->add_option("--count", count, "instances per suite (0: default sizes)");
  cmd->add_option("--seed", check_seed, "generator seed");
  cmd->add_option("--jobs", check_jobs, "worker threads, or auto");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd->parsed()) {
      auto r = nj::run_oracle_suites(suites, check_seed, count, parse_jobs(check_jobs));
      std::cout << nj::to_json(r).dump(2) << "\n";
      return r.ok ? 0 : 2;
    }
    nj::ProblemSpec spec;
    {
      auto j = nj::ojson::parse(read_input(input), nullptr, false);
      if (j.is_discarded()) throw nj::ValidationError("input is not valid JSON");
      if (!mode.empty()) j["mode"] = mode;
      if (spectrum) j["spectrum"] = true;
      if (!eigenvalues.empty()) j["eigenvalues"] = eigenvalues;
      if (!check.empty()) j["check"] = check;
      if (*seed_opt) j["seed"] = seed;
      j["jobs"] = parse_jobs(jobs);
      spec = nj::parse_problem(j);
    }
    nj::ResultDocument doc = nj::run(spec);
    if (format == "table")
      std::cout << nj::render_table(doc);
    else
      std::cout << nj::to_json(doc).dump(2) << "\n";
    return doc.ok ? 0 : 2;
  } catch (const nj::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
