#pragma once

// Seeded experiments built on the solver: deformation stability of product
// games and randomized scans of the per-face cumulative bounds.

#include "nashcount/candidates.hpp"
#include "nashcount/game.hpp"
#include "nashcount/solver.hpp"

#include "json.hpp"

#include <cstdint>
#include <vector>

namespace nashcount {

/// Splits a master seed into independent per-trial seeds.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t attempt = 0);

/// Exact equilibria as float profiles.
std::vector<std::vector<double>> equilibrium_points(const std::vector<EquilibriumCandidate>& eqs);
std::vector<std::vector<double>> equilibrium_points(const std::vector<SolverEquilibrium>& eqs);

struct DeformationTrial {
  int trial = 0;
  std::uint64_t seed = 0;
  std::uint64_t count = 0;
  std::vector<std::uint64_t> per_l;
  bool census_stable = false;  // total and every per-face count unchanged
  std::size_t untracked = 0;   // unperturbed equilibria without a nearby partner
  double max_drift = 0;
  double min_boundary_margin = 0;  // +inf when no boundary equilibria
  bool strict_inequalities = false;
};

struct DeformationReport {
  int m = 0;
  double epsilon = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  double tracking_tol = 0;
  SolverConfig config;
  std::uint64_t expected_count = 0;
  std::vector<std::uint64_t> expected_per_l;
  bool baseline_matches_exact = false;
  std::vector<DeformationTrial> results;

  int stable_trials() const;
  int tracking_failures() const;
  double max_drift() const;
  bool pass() const;
};

/// Tracking tolerance used when none is given: a quarter of the smallest
/// gap 1/(m+1) between default coefficients.
double default_tracking_tol(int m);

/// Solves the unperturbed tensor (seeded at the exact equilibria), then for
/// every trial perturbs it by uniform noise in [-epsilon, epsilon], re-solves
/// with the exact equilibria as extra starts, and compares count, per-face
/// census and positions. Drift is measured against the unperturbed solve.
DeformationReport verify_deformation(const ProductTwoActionGame& game, double epsilon, int trials,
                                     std::uint64_t seed, SolverConfig config,
                                     double tracking_tol = 0);

/// I.i.d. uniform [-1,1] utilities.
FloatGame random_game(int m, std::uint64_t seed);
/// True when some lambda^i at a vertex is smaller than `tol` in magnitude.
bool is_vertex_degenerate(const FloatGame& game, double tol);

struct ScanConfig {
  int m = 3;
  int trials = 1000;
  std::uint64_t seed = 0;
  int max_regenerations = 3;
  double degeneracy_tol = 1e-8;
  SolverConfig solver;
};

struct ScanFinding {
  int trial = 0;
  std::uint64_t game_seed = 0;
  std::vector<std::uint64_t> per_l;
  std::vector<int> violated_d;
  std::string kind;  // "cumulative", "face-bound", "persistent-even"
};

struct ScanReport {
  ScanConfig config;
  int completed = 0;
  std::vector<std::uint64_t> total_histogram;  // index = equilibrium count
  std::vector<std::uint64_t> max_per_l;
  std::uint64_t degenerate_regenerations = 0;
  std::uint64_t even_regenerations = 0;
  std::uint64_t near_degenerate_equilibria = 0;
  std::vector<ScanFinding> findings;

  std::size_t cumulative_violations() const;
  std::size_t failures() const;
  bool pass() const { return failures() == 0; }
};

/// Scans random generic games: solves each, checks the per-face bounds, and
/// regenerates games that are vertex-degenerate or return an even
/// equilibrium count. A cumulative-bound violation is a failure for m <= 3
/// and a reported counterexample candidate otherwise.
ScanReport scan_inequalities(const ScanConfig& config);

nlohmann::json to_json(const DeformationReport& report);
nlohmann::json to_json(const ScanReport& report);

}  // namespace nashcount
