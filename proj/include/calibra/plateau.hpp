#pragma once

// Discrete oriented Plateau problem: minimize mass over integral k-chains with
// a prescribed boundary, certificates from closed cochains of comass at most
// one, and detection of non-unique minimizers.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "calibra/currents.hpp"

namespace calibra {

struct PlateauInstance {
  ComplexPtr complex;
  int k = 1;
  Chain boundary;                              // degree k - 1
  std::optional<Chain> candidate{};            // degree k
  std::optional<DiscreteCochain> certificate{};  // degree k
};

enum class Verdict { unique, multiple, unknown, not_probed };
std::string to_string(Verdict v);

struct SolverDiagnostics {
  long lp_solves = 0;
  long branch_nodes = 0;
  long pivots = 0;
  bool root_integral = false;
  double root_objective = 0.0;
  bool node_limit_hit = false;
};

struct PlateauSolution {
  Chain chain;
  double mass = 0.0;
  Verdict verdict = Verdict::not_probed;
  std::vector<Chain> minimizers;  // distinct minimizers known so far, chain first
  SolverDiagnostics diagnostics{};
  // False when the node limit stopped branch-and-bound after an integral
  // chain was found; the chain is then the best one seen and the verdict is
  // unknown.
  bool proven = true;
};

struct SolveOptions {
  long node_limit = 100000;
  double integrality_tolerance = 1e-9;
};

// Throws Error(infeasible) when the boundary bounds nothing in the complex and
// Error(resource_limit) when the node budget runs out before any integral
// chain is found.
PlateauSolution solve(const PlateauInstance& instance, const SolveOptions& options = {});

struct ProbeResult {
  Verdict verdict = Verdict::unknown;
  std::vector<Chain> minimizers;  // canonical order, includes the input chain
  int perturbation_trials = 0;
  int forced_deviations = 0;
  long lp_solves = 0;
};

inline constexpr double kMassTieTolerance = 1e-9;

// Looks for an integral chain S != T with boundary b and mass(S) = mass(T):
// `trials` re-solves with random relative cost perturbations of size 1e-7,
// then, for every k-simplex sigma, re-solves with S(sigma) <= T(sigma) - 1 and
// with S(sigma) >= T(sigma) + 1. Every competitor differs from T on some
// simplex, so the second stage decides uniqueness unless a budget runs out.
ProbeResult uniqueness_probe(const PlateauInstance& instance, const PlateauSolution& solution, int trials,
                             std::uint64_t seed = 0, const SolveOptions& options = {});

struct CertificateReport {
  bool bounded = false;  // |alpha(sigma)| <= vol(sigma)
  bool closed = false;   // alpha(boundary tau) = 0
  bool tight = false;    // alpha(T) = mass(T)
  bool pass = false;
  double max_excess = 0.0;
  int worst_simplex = -1;
  double max_closure = 0.0;
  int worst_coface = -1;
  double alpha_T = 0.0;
  double mass_T = 0.0;
  double gap = 0.0;  // mass(T) - alpha(T)
  // (simplex, alpha, volume) for k-simplices touching the support of b.
  std::vector<std::tuple<int, double, double>> near_boundary;
};

inline constexpr double kCertificateTolerance = 1e-9;

CertificateReport verify_certificate(const PlateauInstance& instance, const Chain& t, const DiscreteCochain& alpha,
                                     double tolerance = kCertificateTolerance);

struct InducedCochain {
  DiscreteCochain cochain;
  double max_excess;  // max |alpha(sigma)| - vol(sigma)
};

InducedCochain induced_cochain(const FormField& phi, const ComplexPtr& complex, int degree,
                               int quad_order = kDefaultQuadratureOrder);

struct OracleLimits {
  int max_simplices = 14;
  int max_bound = 2;
  long node_limit = 50'000'000;
};

struct OracleResult {
  bool feasible = false;
  double mass = 0.0;
  std::vector<Chain> minimizers;  // all minimizers with |coefficients| <= bound
  long nodes = 0;
};

// Exhaustive search over coefficient vectors in [-bound, bound]^N with
// constraint propagation on the boundary rows.
OracleResult brute_force_oracle(const PlateauInstance& instance, int coeff_bound = 2, const OracleLimits& limits = {});

// Canonical order on chains of one complex: lexicographic on dense vectors.
bool chain_less(const Chain& a, const Chain& b);

}  // namespace calibra
