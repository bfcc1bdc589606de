#pragma once

#include <memory>
#include <optional>

#include "nj/beta.hpp"
#include "nj/lattice_tools.hpp"

namespace nj {

struct PipelineInput {
  std::size_t n = 0;
  Mode mode = Mode::Local;
  std::vector<Support> supports;  // f_1..f_k
  std::size_t k() const { return supports.size(); }
};

void validate_input(const PipelineInput& in);

struct JoinData {
  unsigned mask = 0;          // bit j set <=> j+1 in J
  std::vector<int> members;   // 0-based summand indices in J
  std::vector<IntVec> vertices;  // Θ_J ⊂ Z^{n+|J|}
  int dim = 0;                // dim Θ_J
  int sum_dim = 0;            // dim(γ_k + Σ_{j∈J} κ_j)
  int delta = 0;              // sum_dim - |J|
  int c = 0;                  // dim Θ - sum_dim
  Int distance;               // d_{Θ,J}
  std::vector<Int> face_distances;  // d(γ) over faces γ of Θ_J
  std::shared_ptr<const BasedPolytope> body;

  // Order-independent pieces of the E and F closed forms.
  Rat mv_kappa;      // δ = 0: MV(κ_j, j ∈ J)
  Rat mv_kappa_sum;  // δ = 1: MV(κ_j (j ∈ J), γ_k + Σ κ_j)
  struct FacetTerm {
    Rat mv;        // MV(Γ_j, j ∈ J)
    Int distance;  // d^Γ_{Θ,J}
  };
  std::vector<FacetTerm> facets;  // δ = 1, facets Γ of γ_k + Σ κ_j
};

struct ThetaPackage {
  std::vector<IntVec> vertices;  // Θ
  int dim = 0;
  int s = 0;  // size of the minimal coordinate subspace containing Θ
  int m = 0;  // s - dim - 1
  std::vector<std::vector<IntVec>> gamma;  // γ_1..γ_k
  std::vector<int> gamma_dim;
  std::vector<std::vector<IntVec>> kappa;  // κ_1..κ_{k-1}
  IntVec anchor;                           // the point p of γ_k
  Int distance;                            // d_Θ
  std::vector<JoinData> joins;             // indexed by mask
};

enum class KappaChoice { LexMin, LexMax };

std::vector<ThetaPackage> enumerate_theta_packages(const PipelineInput& in,
                                                   KappaChoice choice = KappaChoice::LexMin);
// Γ(f_1), ..., Γ(f_k) have a common normal fan.
bool mutually_majorizing(const PipelineInput& in);

struct DeltaCombinatorics {
  int min_delta = 0;
  std::optional<unsigned> j0;  // when min δ = 0
  std::vector<unsigned> j1;    // maximal δ=1 sets (min 0: containing J0; min 1: the unique one)
};
DeltaCombinatorics delta_combinatorics(const ThetaPackage& pkg);

// Lattice distances occurring anywhere; every order-dependent predicate is
// "order | d" for one of these.
// Orders > 1 dividing one of them, and the classes a/order with gcd(a, order) = 1.
std::vector<Int> candidate_orders(const std::vector<ThetaPackage>& pkgs);
std::vector<EigenvalueClass> eigenvalue_candidates(const std::vector<ThetaPackage>& pkgs);
Int distance_lcm(const std::vector<ThetaPackage>& pkgs);

struct PipelineOptions {
  int jobs = 1;  // <= 0 means all available threads
  bool parallel = true;
  BetaOptions beta;
  KappaChoice kappa = KappaChoice::LexMin;
};

struct JordanReport {
  EigenvalueClass lambda;
  LaurentPoly beta;
  std::vector<Int> counts_geq;    // i = 1..n-k+1
  std::vector<Int> counts_exact;  // s = 1..n-k+1
  Int max_count;
  std::optional<Int> second_count;  // absent when k = n
};

struct CheckOutcome {
  std::string name;
  bool ok = true;
  std::string detail;
};

class Pipeline {
 public:
  Pipeline(PipelineInput in, PipelineOptions opts = {});

  const PipelineInput& input() const { return in_; }
  const std::vector<ThetaPackage>& packages() const { return pkgs_; }
  long n() const { return static_cast<long>(in_.n); }
  long k() const { return static_cast<long>(in_.k()); }

  // β(Θ_J)_order for every package and join, for the given orders. Runs over
  // the (Θ, J, order) grid either serially or with OpenMP.
  void evaluate(const std::vector<Int>& orders);
  void evaluate_serial(const std::vector<Int>& orders);
  LaurentPoly join_beta(std::size_t theta, unsigned mask, const Int& order) const;

  // Σ_J β(Θ_J, s+|J|-1), before the division by t^{2k-2}.
  LaurentPoly theta_inner_sum(std::size_t theta, const Int& order) const;
  LaurentPoly motivic_beta(const Int& order) const;
  JordanReport jordan_blocks(const EigenvalueClass& lambda) const;
  std::vector<Int> counts_geq_binomial(const Int& order) const;

  Int jordan_max_count(const Int& order) const;
  Int jordan_second_count(const Int& order) const;
  Int max_count_corollary_k2(const Int& order) const;
  Int max_count_corollary_majorizing(const Int& order) const;
  Int second_count_corollary_k2(const Int& order) const;
  Int second_count_corollary_majorizing(const Int& order) const;
  bool mutually_majorizing() const;
  Rat E(const ThetaPackage& p, const Int& order) const;
  Rat F(const ThetaPackage& p, const Int& order) const;

  // Non-integral spectrum as an exact finite Puiseux polynomial.
  PuiseuxPoly spectrum() const;

  // Invariant checks for one eigenvalue (divisibility, degree bound, E/F
  // closed forms, binomial route, emptiness; corollaries when `full`).
  std::vector<CheckOutcome> check_eigenvalue(const EigenvalueClass& lambda, bool full) const;
  std::vector<CheckOutcome> check_spectrum(const PuiseuxPoly& sp) const;
  // β(Θ_J) against the closed form (pseudo-prime pyramids) and against a
  // second pulling order of the majorizer (dim >= 3).
  std::vector<CheckOutcome> check_beta_routes(const Int& order) const;

 private:
  PipelineInput in_;
  PipelineOptions opts_;
  std::vector<ThetaPackage> pkgs_;
  mutable BetaEngine engine_;
  mutable BetaEngine alt_engine_;  // second pulling order, for checks
  mutable std::mutex closed_mu_;
  mutable std::map<std::pair<std::size_t, unsigned>, std::optional<ClosedFormTable>> closed_;
  std::map<Int, std::vector<std::vector<LaurentPoly>>> table_;

  LaurentPoly compute_join_beta(std::size_t theta, unsigned mask, const Int& order) const;
  Rat F_term(const JoinData& j, const Int& order) const;
  const std::optional<ClosedFormTable>& closed_table(std::size_t theta, unsigned mask) const;
};

}  // namespace nj
