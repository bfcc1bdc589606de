#pragma once

#include <json.hpp>
#include <optional>
#include <random>

#include "nj/pipeline.hpp"

namespace nj::oracle {

using ojson = nlohmann::ordered_json;

struct Report {
  std::string name;
  std::uint64_t seed = 0;
  std::size_t count = 0;
  std::size_t passed = 0;
  std::size_t skipped = 0;  // sub-checks that did not apply
  std::vector<ojson> failures;
  bool ok() const { return failures.empty() && passed == count; }
};

ojson to_json(const Report& r);

// Random convenient supports: pure powers of every variable plus a few mixed
// monomials, at most `max_monomials` per polynomial.
PipelineInput random_instance(std::mt19937_64& rng, std::size_t n, std::size_t k,
                              std::size_t max_monomials, Mode mode = Mode::Local);
// Same Newton polyhedron shape dilated per polynomial.
PipelineInput majorizing_instance(std::mt19937_64& rng, std::size_t n, std::size_t k);
// Polynomials that are weighted homogeneous for one common weight vector.
std::vector<PipelineInput> weighted_homogeneous_families();

ojson describe(const PipelineInput& in);

// Motivic β re-derived from scratch (brute-force faces, minors for volumes
// and distances, the face-sum formula for simple joins). nullopt when some
// join is not simple.
std::optional<LaurentPoly> naive_motivic_beta(const PipelineInput& in, const Int& order);
std::optional<std::map<Int, LaurentPoly>> naive_motivic_betas(const PipelineInput& in, const std::vector<Int>& orders);

Report check_AE(std::uint64_t seed, std::size_t count, int jobs = 1);
Report check_chi_routes(std::uint64_t seed, std::size_t count, int jobs = 1);
Report check_beta(std::uint64_t seed, std::size_t count, int jobs = 1);
// Instances with n <= deep_max_n also get the deep checks of AuditOptions.
Report check_jordan(std::uint64_t seed, std::size_t count, int jobs = 1, Mode mode = Mode::Local,
                    std::size_t deep_max_n = 4);
Report check_weighted_homogeneous(int jobs = 1);
Report check_corollaries(std::uint64_t seed, std::size_t count, int jobs = 1);

struct AuditOptions {
  bool full = true;      // corollaries where their hypotheses hold
  bool spectrum = true;
  bool deep = false;     // closed form and second pulling order per join, κ choice, brute force for n <= 3
  int jobs = 1;
};
// All pipeline invariants on one instance; failures carry the check name.
std::vector<ojson> audit_instance(const PipelineInput& in, const AuditOptions& opt);

}  // namespace nj::oracle
