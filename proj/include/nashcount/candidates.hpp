#pragma once

// Equilibrium candidates of product two-action games and their
// classification.
//
// Every candidate belongs to exactly one permutation pi: its boundary
// coordinates are the fixed points F(pi) (each set to 0 or 1) and every
// other coordinate is gamma^j = a^{pi(j)}_j. A bucket with |F(pi)| = l holds
// 2^l candidates, all on faces with l boundary coordinates.
//
// Two classifiers are provided and are kept independent of each other:
// the increment map reads only integer data (v, sigma, pi, the boundary
// bits), while the sign classifier evaluates the factored payoff
// differences in exact rational arithmetic.

#include "nashcount/combinatorics.hpp"
#include "nashcount/game.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nashcount {

struct EquilibriumCandidate {
  Permutation pi;
  std::vector<int> fixed;     // F(pi), increasing
  std::vector<int> boundary;  // boundary[k] = gamma^{fixed[k]} in {0,1}
  std::vector<Rational> gamma;

  int face_class() const { return static_cast<int>(fixed.size()); }
  /// Value of gamma^i for a fixed point i.
  int boundary_value(int i) const;
  /// |L_0(g)|, the number of boundary coordinates equal to 0.
  int zero_count() const;
  MixedProfile<Rational> profile() const { return {gamma}; }
};

/// The 2^|F(pi)| candidates of the bucket EC(pi), boundary assignments in
/// increasing binary order (all-zeros first, the all-ones candidate last).
std::vector<EquilibriumCandidate> bucket_candidates(const ProductTwoActionGame& game,
                                                    const Permutation& pi);

/// Visits every candidate, bucket by bucket in lexicographic order of pi.
template <class Fn>
void for_each_candidate(const ProductTwoActionGame& game, Fn&& fn) {
  for_each_permutation(game.players(), [&](const Permutation& pi) {
    for (const auto& candidate : bucket_candidates(game, pi)) fn(candidate);
  });
}

std::vector<EquilibriumCandidate> enumerate_candidates(const ProductTwoActionGame& game);

/// Inc(g, i) = (1 + gamma^i + v_i + |L_0(g) - {i}|
///              + sum_{j not in F(pi)} chi(sigma^j(pi(j)), sigma^j(i))) mod 2.
/// Throws std::invalid_argument unless i is a fixed point of pi.
int increment(const CharacteristicTuple& tuple, const EquilibriumCandidate& candidate, int i);

enum class Classification { equilibrium, not_equilibrium };

/// Equilibrium iff F(pi) is empty or every increment vanishes.
Classification classify_by_increment(const CharacteristicTuple& tuple,
                                     const EquilibriumCandidate& candidate);
inline Classification classify_by_increment(const ProductTwoActionGame& game,
                                            const EquilibriumCandidate& candidate) {
  return classify_by_increment(game.tuple(), candidate);
}

/// Equilibrium iff, for every boundary player i, lambda^i has sign +1 when
/// gamma^i = 1 and -1 when gamma^i = 0. Also checks lambda^j = 0 for the
/// interior players and throws std::logic_error if that fails.
Classification classify_by_sign(const ProductTwoActionGame& game,
                                const EquilibriumCandidate& candidate);

enum class ClassificationMethod { increment, sign, both };

std::string to_string(ClassificationMethod method);
ClassificationMethod parse_classification_method(const std::string& name);

struct FaceCensus {
  int l = 0;
  std::uint64_t candidates = 0;
  std::uint64_t equilibria = 0;
};

struct CensusReport {
  int m = 0;
  ClassificationMethod method = ClassificationMethod::increment;
  std::vector<FaceCensus> per_l;  // l = 0..m
  std::uint64_t total_candidates = 0;
  std::uint64_t total_equilibria = 0;
  BigInt expected_lower_bound;
  bool matches_expected = false;
  /// Candidates on which the two classifiers differ (method = both only).
  std::uint64_t disagreements = 0;
  std::vector<std::string> disagreement_samples;
};

/// Streams all candidates (buckets split across `threads` workers by the
/// image of player 1) and tallies candidates and equilibria per face class.
/// With method = both, the sign classifier's verdict is counted and every
/// disagreement is recorded.
CensusReport census(const ProductTwoActionGame& game, ClassificationMethod method,
                    int threads = 1);

/// All equilibria, classified by exact sign evaluation.
std::vector<EquilibriumCandidate> exact_equilibria(const ProductTwoActionGame& game);

nlohmann::json to_json(const CensusReport& report);
std::string to_csv(const CensusReport& report);
std::string to_text(const CensusReport& report);
nlohmann::json candidate_to_json(const EquilibriumCandidate& candidate);

struct DeltaChiViolation {
  Permutation pi;
  int i = 0;   // fixed point (first one for pair checks)
  int i2 = 0;  // second fixed point for the pair table, 0 otherwise
  int j = 0;   // moved point
  std::string detail;
};

struct DeltaChiResult {
  bool pass = true;
  std::uint64_t single_checks = 0;
  std::uint64_t pair_checks = 0;
  std::optional<DeltaChiViolation> violation;
};

/// Exhaustively checks, for every non-derangement pi of {1..m}, every fixed
/// point i and every moved point j, that chi(delta^j(pi(j)), delta^j(i)) is
/// given by the four-case rule on (j, i, pi(j)); and, for fixed points
/// i1 < i2, that the nine-way split of moved points j yields the tabulated
/// pair (chi[i1], chi[i2]) with as many j in the "(1,0)" cases as in the
/// "(0,1)" case. Stops at the first violation.
DeltaChiResult verify_delta_chi_cases(int m);

}  // namespace nashcount
