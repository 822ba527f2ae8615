#pragma once

// General two-action Nash solver used as an independent oracle.
//
// For each of the 3^m support profiles (every player either pure 0, pure 1,
// or fully mixed) the boundary coordinates are fixed and the square system
// {lambda^i(gamma^-i) = 0 : i free} is solved by damped Newton from
// quasi-random interior starts. A root is kept when its free coordinates
// lie strictly inside (0,1) and every boundary player's pure action is a
// best reply with a positive margin.

#include "nashcount/combinatorics.hpp"
#include "nashcount/game.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nashcount {

enum class SupportKind : std::uint8_t { only_zero, only_one, full };

struct SupportProfile {
  std::vector<SupportKind> kinds;  // kinds[i-1] for player i

  int players() const { return static_cast<int>(kinds.size()); }
  std::vector<int> free_players() const;
  /// Number of boundary players, l = m - |free|.
  int face_class() const;
  /// One character per player: '0', '1' or '*'.
  std::string to_string() const;

  /// Support number `index` in base 3 (player 1 most significant digit,
  /// digit 0 = only_zero, 1 = only_one, 2 = full).
  static SupportProfile from_index(int m, std::size_t index);
  static std::size_t count(int m);

  friend bool operator==(const SupportProfile&, const SupportProfile&) = default;
};

struct SolverConfig {
  /// Newton starts per support; 0 selects 50 · 2^|free|.
  int starts = 0;
  double residual_tol = 1e-10;
  double dedup_tol = 1e-6;
  double margin_tol = 1e-12;
  /// Equilibria whose margin is below this are flagged near-degenerate.
  double near_degenerate_tol = 1e-8;
  int max_iterations = 100;
  std::uint64_t seed = 0;
  int threads = 1;
  /// Extra full profiles used as starts on the support they lie on.
  std::vector<std::vector<double>> seeded_starts;
};

int default_start_count(int free_players);

struct SolverEquilibrium {
  std::vector<double> gamma;
  SupportProfile support;
  double residual = 0;  // max |lambda^i| over free players
  double margin = 0;    // min signed lambda over boundary players; +inf at none
  bool near_degenerate = false;

  int face_class() const { return support.face_class(); }
};

struct ConvergenceStats {
  std::uint64_t starts = 0;
  std::uint64_t converged = 0;
  std::uint64_t singular = 0;
  std::uint64_t not_converged = 0;
  std::uint64_t rejected_outside = 0;
  std::uint64_t rejected_sign = 0;
  std::uint64_t duplicates = 0;

  void merge(const ConvergenceStats& other);
};

std::vector<SolverEquilibrium> solve_support(const FloatGame& game, const SupportProfile& support,
                                             const SolverConfig& config,
                                             ConvergenceStats* stats = nullptr);

struct SolverReport {
  int m = 0;
  SolverConfig config;
  std::vector<SolverEquilibrium> equilibria;  // sorted by face class, then gamma
  std::vector<std::uint64_t> per_l;           // l = 0..m
  ConvergenceStats stats;

  std::uint64_t total() const { return equilibria.size(); }
};

SolverReport solve_all(const FloatGame& game, const SolverConfig& config);

struct InequalityRow {
  int d = 0;
  std::uint64_t lhs = 0;  // sum_{l <= d} |N ∩ C_l|
  BigInt rhs;             // !m + sum_{l=1..d} C(m,l) 2^(l-1) !(m-l)
  bool holds = true;
};

struct InequalityReport {
  int m = 0;
  std::vector<InequalityRow> rows;
  bool interior_bound = true;     // |N ∩ C_0| <= !m
  bool near_vertex_empty = true;  // |N ∩ C_{m-1}| = 0
  bool vertex_bound = true;       // |N ∩ C_m| <= 2^(m-1)
  std::vector<int> violated_d;
  /// True when the cumulative bounds are established for this m (m <= 3),
  /// so a violated row is an error rather than a counterexample candidate.
  bool cumulative_bounds_proven = false;

  bool cumulative_holds() const { return violated_d.empty(); }
  /// Everything that must hold for a generic game of this size.
  bool proven_parts_hold() const;
};

InequalityReport check_inequalities(const std::vector<std::uint64_t>& per_l, int m);

/// For each a[k], the index of its partner in b under a maximum-cardinality
/// bipartite matching where a pair is admissible when the max-norm distance
/// is at most `tol`; kUnmatched where none.
inline constexpr std::size_t kUnmatched = static_cast<std::size_t>(-1);
std::vector<std::size_t> maximum_matching(const std::vector<std::vector<double>>& a,
                                          const std::vector<std::vector<double>>& b, double tol);

/// Maximum-cardinality bipartite matching between `a` and `b` where a pair is
/// admissible when its max-norm distance is at most `tol`. Returns
/// match[k] = index into b for each a[k] if a perfect one-to-one matching
/// exists, std::nullopt otherwise.
std::optional<std::vector<std::size_t>> match_one_to_one(
    const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b,
    double tol);

double max_norm_distance(const std::vector<double>& x, const std::vector<double>& y);

nlohmann::json config_to_json(const SolverConfig& config);
nlohmann::json to_json(const SolverEquilibrium& eq);
nlohmann::json to_json(const ConvergenceStats& stats);
nlohmann::json to_json(const InequalityReport& report);
nlohmann::json to_json(const SolverReport& report);

}  // namespace nashcount
