#include "nj/io.hpp"

#include <algorithm>
#include <cctype>
#include <iomanip>
#include <set>
#include <sstream>

#include "nj/oracle.hpp"

namespace nj {

namespace {

class PolyParser {
 public:
  PolyParser(const std::string& text, std::size_t n) : s_(text), n_(n) {
    for (std::size_t i = 0; i < n; ++i) names_["x" + std::to_string(i + 1)] = i;
    if (n <= 4) {
      const char* short_names[] = {"x", "y", "z", "w"};
      for (std::size_t i = 0; i < n; ++i) names_[short_names[i]] = i;
    }
  }

  Support parse() {
    std::set<IntVec> out;
    skip();
    if (done()) error("empty polynomial");
    bool first = true;
    while (!done()) {
      if (peek() == '+' || peek() == '-') {
        ++i_;
        skip();
      } else if (!first) {
        error("expected '+' or '-'");
      }
      first = false;
      auto [e, zero] = term();
      if (!zero) out.insert(e);
      skip();
    }
    return {out.begin(), out.end()};
  }

 private:
  const std::string& s_;
  std::size_t n_;
  std::size_t i_ = 0;
  std::map<std::string, std::size_t> names_;

  bool done() const { return i_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[i_]; }
  void skip() {
    while (!done() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  [[noreturn]] void error(const std::string& what) const {
    throw ValidationError("polynomial \"" + s_ + "\": " + what + " at position " + std::to_string(i_ + 1));
  }

  std::string digits() {
    std::size_t start = i_;
    while (!done() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    return s_.substr(start, i_ - start);
  }

  std::pair<IntVec, bool> term() {
    IntVec e(n_, 0);
    bool zero = false;
    bool any = false;
    while (true) {
      skip();
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        Int num(digits());
        if (peek() == '/') {
          ++i_;
          std::string den = digits();
          if (den.empty() || Int(den) == 0) error("bad denominator");
        }
        if (num == 0) zero = true;
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        std::size_t start = i_;
        while (!done() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
        std::string name = s_.substr(start, i_ - start);
        auto it = names_.find(name);
        if (it == names_.end()) {
          i_ = start;
          error("unknown variable '" + name + "'");
        }
        skip();
        Int power = 1;
        if (peek() == '^') {
          ++i_;
          skip();
          if (peek() == '-') error("negative exponent");
          std::string d = digits();
          if (d.empty()) error("expected an exponent");
          power = Int(d);
        }
        e[it->second] += power;
      } else {
        error(done() ? "unexpected end of input" : std::string("unexpected '") + c + "'");
      }
      any = true;
      skip();
      if (peek() == '*') {
        ++i_;
        continue;
      }
      if (std::isalnum(static_cast<unsigned char>(peek()))) continue;  // 3x, x y
      break;
    }
    if (!any) error("empty term");
    return {e, zero};
  }
};

ojson int_json(const Int& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

Int int_from_json(const ojson& j) {
  if (j.is_string()) return Int(j.get<std::string>());
  if (j.is_number_integer()) return Int(j.get<long>());
  throw ValidationError("expected an integer, got " + j.dump());
}

ojson ints_json(const std::vector<Int>& v) {
  ojson a = ojson::array();
  for (const auto& x : v) a.push_back(int_json(x));
  return a;
}

std::vector<Int> ints_from_json(const ojson& j) {
  std::vector<Int> v;
  for (const auto& x : j) v.push_back(int_from_json(x));
  return v;
}

ojson support_json(const Support& s) {
  ojson a = ojson::array();
  for (const auto& v : s) a.push_back(ints_json(v));
  return a;
}

ojson echo(const ProblemSpec& spec) {
  ojson j;
  j["n"] = spec.n;
  j["k"] = spec.k;
  j["mode"] = to_string(spec.mode);
  ojson polys = ojson::array();
  for (const auto& p : spec.polynomials) {
    ojson q;
    q["support"] = support_json(p.support);
    if (p.expr) q["expr"] = *p.expr;
    if (p.coefficients) q["coefficients"] = *p.coefficients;
    polys.push_back(q);
  }
  j["polynomials"] = polys;
  j["spectrum"] = spec.spectrum;
  ojson ev = ojson::array();
  for (const auto& e : spec.eigenvalues) ev.push_back(e.str());
  j["eigenvalues"] = ev;
  j["check"] = to_string(spec.check);
  j["seed"] = spec.seed;
  return j;
}

// Per-name aggregation, first failure kept.
class CheckTable {
 public:
  void add(const std::string& name, bool ok, const std::string& detail) {
    auto it = index_.find(name);
    if (it == index_.end()) {
      index_[name] = rows_.size();
      rows_.push_back(CheckRow{name, true, 0, ""});
      it = index_.find(name);
    }
    CheckRow& r = rows_[it->second];
    ++r.runs;
    if (!ok && r.ok) {
      r.ok = false;
      r.detail = detail;
    }
  }
  void add(const std::vector<CheckOutcome>& outs, const std::string& where) {
    for (const auto& o : outs) add(o.name, o.ok, where.empty() ? o.detail : where + ": " + o.detail);
  }
  std::vector<CheckRow> rows() const { return rows_; }

 private:
  std::vector<CheckRow> rows_;
  std::map<std::string, std::size_t> index_;
};

CheckRow report_row(const oracle::Report& r) {
  CheckRow row{"oracle_" + r.name, r.ok(), r.count, ""};
  if (!r.failures.empty())
    row.detail = r.failures.front().dump();
  else if (r.passed != r.count)
    row.detail = std::to_string(r.passed) + " of " + std::to_string(r.count) + " passed";
  return row;
}

}  // namespace

std::string library_version() { return "1.0.0"; }

Support parse_polynomial_text(const std::string& text, std::size_t n) {
  if (n == 0) throw ValidationError("n must be positive");
  return PolyParser(text, n).parse();
}

CheckLevel parse_check_level(const std::string& s) {
  if (s == "none") return CheckLevel::None;
  if (s == "fast") return CheckLevel::Fast;
  if (s == "full") return CheckLevel::Full;
  throw ValidationError("check level must be none, fast or full, got '" + s + "'");
}

std::string to_string(CheckLevel c) {
  switch (c) {
    case CheckLevel::None:
      return "none";
    case CheckLevel::Fast:
      return "fast";
    case CheckLevel::Full:
      return "full";
  }
  return "none";
}

Mode parse_mode(const std::string& s) {
  if (s == "local") return Mode::Local;
  if (s == "infinity") return Mode::Infinity;
  throw ValidationError("mode must be local or infinity, got '" + s + "'");
}

std::string to_string(Mode m) { return m == Mode::Local ? "local" : "infinity"; }

PipelineInput ProblemSpec::input() const {
  PipelineInput in;
  in.n = n;
  in.mode = mode;
  for (const auto& p : polynomials) in.supports.push_back(p.support);
  return in;
}

ProblemSpec parse_problem(const ojson& j) {
  if (!j.is_object()) throw ValidationError("input must be a JSON object");
  static const std::set<std::string> known = {"n",        "k",           "mode",  "polynomials", "spectrum",
                                              "eigenvalues", "check", "jobs",  "seed"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key))
      throw ValidationError("unknown field '" + key +
                            "'; expected n, k, mode, polynomials, spectrum, eigenvalues, check, jobs, seed");
  ProblemSpec spec;
  try {
    if (!j.contains("n")) throw ValidationError("missing field 'n'");
    long n = j.at("n").get<long>();
    if (n <= 0) throw ValidationError("n must be positive");
    spec.n = static_cast<std::size_t>(n);
    if (j.contains("mode")) spec.mode = parse_mode(j.at("mode").get<std::string>());
    if (!j.contains("polynomials") || !j.at("polynomials").is_array())
      throw ValidationError("missing array 'polynomials'");
    for (const auto& p : j.at("polynomials")) {
      PolynomialSpec ps;
      ojson obj = p.is_string() ? ojson{{"expr", p}} : p;
      if (!obj.is_object()) throw ValidationError("each polynomial is an object or an expression string");
      for (const auto& [key, value] : obj.items())
        if (key != "support" && key != "expr" && key != "coefficients")
          throw ValidationError("unknown polynomial field '" + key + "'; expected support, expr, coefficients");
      if (obj.contains("support") == obj.contains("expr"))
        throw ValidationError("give exactly one of 'support' and 'expr' per polynomial");
      if (obj.contains("expr")) {
        ps.expr = obj.at("expr").get<std::string>();
        ps.support = parse_polynomial_text(*ps.expr, spec.n);
      } else {
        for (const auto& v : obj.at("support")) {
          if (!v.is_array() || v.size() != spec.n)
            throw ValidationError("support vector " + v.dump() + " must have " + std::to_string(spec.n) +
                                  " entries");
          ps.support.push_back(ints_from_json(v));
        }
        std::sort(ps.support.begin(), ps.support.end());
        ps.support.erase(std::unique(ps.support.begin(), ps.support.end()), ps.support.end());
      }
      if (obj.contains("coefficients")) ps.coefficients = obj.at("coefficients");
      spec.polynomials.push_back(std::move(ps));
    }
    spec.k = spec.polynomials.size();
    if (j.contains("k") && j.at("k").get<long>() != static_cast<long>(spec.k))
      throw ValidationError("k = " + j.at("k").dump() + " but " + std::to_string(spec.k) +
                            " polynomials were given");
    if (j.contains("spectrum")) spec.spectrum = j.at("spectrum").get<bool>();
    if (j.contains("eigenvalues"))
      for (const auto& e : j.at("eigenvalues")) spec.eigenvalues.push_back(EigenvalueClass::parse(e.get<std::string>()));
    if (j.contains("check")) spec.check = parse_check_level(j.at("check").get<std::string>());
    if (j.contains("jobs")) {
      const auto& jb = j.at("jobs");
      spec.jobs = jb.is_string() && jb.get<std::string>() == "auto" ? 0 : jb.get<int>();
      if (spec.jobs < 0) throw ValidationError("jobs must be a positive integer or \"auto\"");
    }
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed input: ") + e.what());
  }
  validate_input(spec.input());
  return spec;
}

ProblemSpec parse_problem_text(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
  return parse_problem(j);
}

ojson to_json(const ResultDocument& d) {
  ojson j;
  j["tool"] = d.tool;
  j["version"] = d.version;
  j["input"] = d.input;
  ojson ev = ojson::array();
  for (const auto& e : d.eigenvalues) {
    ojson x;
    x["lambda"] = e.lambda;
    x["order"] = int_json(e.order);
    x["beta"] = ints_json(e.beta);
    x["counts_geq"] = ints_json(e.counts_geq);
    x["counts_exact"] = ints_json(e.counts_exact);
    x["max_count"] = int_json(e.max_count);
    x["second_count"] = e.second_count ? int_json(*e.second_count) : ojson(nullptr);
    ev.push_back(x);
  }
  j["eigenvalues"] = ev;
  if (d.spectrum) {
    ojson sp = ojson::array();
    for (const auto& [e, c] : *d.spectrum) sp.push_back(ojson::array({e, int_json(c)}));
    j["spectrum"] = sp;
  } else {
    j["spectrum"] = nullptr;
  }
  ojson checks = ojson::array();
  for (const auto& c : d.checks) checks.push_back(ojson{{"name", c.name}, {"ok", c.ok}, {"runs", c.runs}, {"detail", c.detail}});
  j["checks"] = checks;
  j["warnings"] = d.warnings;
  j["ok"] = d.ok;
  return j;
}

ResultDocument document_from_json(const ojson& j) {
  try {
    ResultDocument d;
    d.tool = j.at("tool").get<std::string>();
    d.version = j.at("version").get<std::string>();
    d.input = j.at("input");
    for (const auto& x : j.at("eigenvalues")) {
      EigenvalueEntry e;
      e.lambda = x.at("lambda").get<std::string>();
      e.order = int_from_json(x.at("order"));
      e.beta = ints_from_json(x.at("beta"));
      e.counts_geq = ints_from_json(x.at("counts_geq"));
      e.counts_exact = ints_from_json(x.at("counts_exact"));
      e.max_count = int_from_json(x.at("max_count"));
      if (!x.at("second_count").is_null()) e.second_count = int_from_json(x.at("second_count"));
      d.eigenvalues.push_back(std::move(e));
    }
    if (!j.at("spectrum").is_null()) {
      d.spectrum.emplace();
      for (const auto& p : j.at("spectrum")) d.spectrum->emplace_back(p.at(0).get<std::string>(), int_from_json(p.at(1)));
    }
    for (const auto& c : j.at("checks"))
      d.checks.push_back(CheckRow{c.at("name").get<std::string>(), c.at("ok").get<bool>(),
                                  c.at("runs").get<std::size_t>(), c.at("detail").get<std::string>()});
    d.warnings = j.at("warnings").get<std::vector<std::string>>();
    d.ok = j.at("ok").get<bool>();
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed result document: ") + e.what());
  }
}

SuiteRun run_oracle_suites(const std::vector<std::string>& suites, std::uint64_t seed, std::size_t count, int jobs) {
  static const std::vector<std::string> all = {"ae", "chi", "beta", "jordan", "infinity", "corollaries", "weighted"};
  std::vector<std::string> names;
  for (const auto& s : suites) {
    if (s == "all") {
      names.insert(names.end(), all.begin(), all.end());
    } else if (std::find(all.begin(), all.end(), s) != all.end()) {
      names.push_back(s);
    } else {
      throw ValidationError("unknown oracle suite '" + s + "'; expected ae, chi, beta, jordan, infinity, corollaries, weighted or all");
    }
  }
  auto size = [&](std::size_t def) { return count ? count : def; };
  SuiteRun out;
  for (const auto& s : names) {
    oracle::Report r;
    if (s == "ae") r = oracle::check_AE(seed, size(100), jobs);
    if (s == "chi") r = oracle::check_chi_routes(seed, size(50), jobs);
    if (s == "beta") r = oracle::check_beta(seed, size(25), jobs);
    if (s == "jordan") r = oracle::check_jordan(seed, size(30), jobs);
    if (s == "infinity") r = oracle::check_jordan(seed, size(10), jobs, Mode::Infinity, 3);
    if (s == "corollaries") r = oracle::check_corollaries(seed, size(20), jobs);
    if (s == "weighted") r = oracle::check_weighted_homogeneous(jobs);
    out.checks.push_back(report_row(r));
    out.reports.push_back(oracle::to_json(r));
    out.ok = out.ok && r.ok();
  }
  return out;
}

ojson to_json(const SuiteRun& r) {
  ojson j;
  j["tool"] = "newton_jordan";
  j["version"] = library_version();
  ojson checks = ojson::array();
  for (const auto& c : r.checks) checks.push_back(ojson{{"name", c.name}, {"ok", c.ok}, {"runs", c.runs}, {"detail", c.detail}});
  j["checks"] = checks;
  j["reports"] = r.reports;
  j["ok"] = r.ok;
  return j;
}

ResultDocument run(const ProblemSpec& spec) {
  ResultDocument doc;
  doc.version = library_version();
  doc.input = echo(spec);
  const PipelineInput in = spec.input();
  PipelineOptions opts;
  opts.jobs = spec.jobs;
  Pipeline P(in, opts);
  if (P.packages().empty())
    doc.warnings.push_back(in.mode == Mode::Local ? "no compact face of the Newton polyhedron contributes"
                                                  : "no face at infinity contributes");

  std::vector<EigenvalueClass> classes = spec.eigenvalues;
  const bool filtered = !classes.empty();
  if (!filtered) classes = eigenvalue_candidates(P.packages());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  std::set<Int> order_set;
  for (const auto& c : classes) order_set.insert(c.order());
  std::vector<Int> orders(order_set.begin(), order_set.end());
  if (spec.check != CheckLevel::None)
    for (const auto& o : candidate_orders(P.packages())) order_set.insert(o);
  P.evaluate({order_set.begin(), order_set.end()});

  for (const auto& c : classes) {
    JordanReport rep = P.jordan_blocks(c);
    if (!filtered && rep.beta.is_zero()) continue;
    EigenvalueEntry e;
    e.lambda = c.str();
    e.order = c.order();
    if (!rep.beta.is_zero()) e.beta = rep.beta.dense(0, rep.beta.high());
    e.counts_geq = rep.counts_geq;
    e.counts_exact = rep.counts_exact;
    e.max_count = rep.max_count;
    e.second_count = rep.second_count;
    doc.eigenvalues.push_back(std::move(e));
  }

  std::optional<PuiseuxPoly> sp;
  if (spec.spectrum || spec.check != CheckLevel::None) sp = P.spectrum();
  if (spec.spectrum) {
    doc.spectrum.emplace();
    for (const auto& [e, c] : *sp) doc.spectrum->emplace_back(to_string(e), c);
  }

  if (spec.check != CheckLevel::None) {
    const bool full = spec.check == CheckLevel::Full;
    CheckTable table;
    for (const auto& o : candidate_orders(P.packages())) {
      EigenvalueClass c(make_rat(1, o));
      std::string where = "order " + o.get_str();
      table.add(P.check_eigenvalue(c, full), where);
      if (full) table.add(P.check_beta_routes(o), where);
    }
    table.add(P.check_spectrum(*sp), "");
    if (full) {
      PipelineOptions alt = opts;
      alt.kappa = KappaChoice::LexMax;
      Pipeline Q(in, alt);
      const auto all_orders = candidate_orders(P.packages());
      for (const auto& o : all_orders)
        table.add("kappa_choice", Q.motivic_beta(o) == P.motivic_beta(o), "order " + o.get_str());
      if (in.n <= 3) {
        if (auto nb = oracle::naive_motivic_betas(in, all_orders))
          for (const auto& o : all_orders)
            table.add("brute_force_beta", nb->at(o) == P.motivic_beta(o),
                      "order " + o.get_str() + ": " + nb->at(o).str() + " vs " + P.motivic_beta(o).str());
        else
          doc.warnings.push_back("brute-force beta skipped: a join is not simple");
      }
    }
    doc.checks = table.rows();
    if (full) {
      auto suites = run_oracle_suites({"ae", "chi", "beta"}, spec.seed, 10, spec.jobs);
      for (auto& r : suites.checks) doc.checks.push_back(std::move(r));
    }
  }
  doc.ok = std::all_of(doc.checks.begin(), doc.checks.end(), [](const CheckRow& r) { return r.ok; });
  return doc;
}

std::string render_table(const ResultDocument& d) {
  auto list = [](const std::vector<Int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i].get_str();
    return s;
  };
  std::ostringstream os;
  os << d.tool << " " << d.version << "  n=" << d.input.value("n", 0) << " k=" << d.input.value("k", 0)
     << " mode=" << d.input.value("mode", std::string("local")) << "\n\n";
  os << std::left << std::setw(10) << "lambda" << std::setw(7) << "order" << std::setw(6) << "max" << std::setw(8)
     << "second" << std::setw(18) << "blocks >= 1.." << "beta (from t^0)\n";
  for (const auto& e : d.eigenvalues)
    os << std::left << std::setw(10) << e.lambda << std::setw(7) << e.order.get_str() << std::setw(6)
       << e.max_count.get_str() << std::setw(8) << (e.second_count ? e.second_count->get_str() : "-")
       << std::setw(18) << list(e.counts_geq) << list(e.beta) << "\n";
  if (d.eigenvalues.empty()) os << "(no eigenvalue other than 1 contributes)\n";
  if (d.spectrum) {
    os << "\nspectrum:";
    for (const auto& [e, c] : *d.spectrum) os << " " << e << (c == 1 ? "" : "x" + c.get_str());
    if (d.spectrum->empty()) os << " (empty)";
    os << "\n";
  }
  if (!d.checks.empty()) {
    os << "\n";
    for (const auto& c : d.checks)
      os << (c.ok ? "ok    " : "FAIL  ") << std::left << std::setw(30) << c.name << c.runs << (c.ok ? "" : "  " + c.detail)
         << "\n";
  }
  for (const auto& w : d.warnings) os << "warning: " << w << "\n";
  return os.str();
}

}  // namespace nj
