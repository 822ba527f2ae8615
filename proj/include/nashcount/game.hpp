#pragma once

// Two-action games as payoff tensors, their multilinear extension, and the
// product games whose payoff differences factor as signed products.
//
// A game with m players stores, for every player i, a table U^i over the
// 2^m pure profiles (j_1, ..., j_m) in {0,1}^m. Profiles are ordered
// lexicographically with player 1 as the most significant bit, so profile
// index = sum_k j_k · 2^(m-k). A mixed profile is the vector gamma with
// gamma^i the probability that player i plays action 1.

#include "nashcount/combinatorics.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nashcount {

using Rational = boost::multiprecision::cpp_rational;

enum class ArithmeticMode { exact, floating };

std::string to_string(ArithmeticMode mode);

template <class Scalar>
constexpr ArithmeticMode arithmetic_mode_of() {
  if constexpr (std::is_floating_point_v<Scalar>)
    return ArithmeticMode::floating;
  else
    return ArithmeticMode::exact;
}

inline std::size_t profile_count(int m) { return std::size_t{1} << m; }

/// Action (0 or 1) of 1-based `player` in the profile with index `profile`.
inline int action_in_profile(std::size_t profile, int player, int m) {
  return static_cast<int>((profile >> (m - player)) & 1U);
}

std::size_t profile_index(std::span<const int> actions);

template <class Scalar>
class TwoActionGame {
 public:
  using scalar_type = Scalar;

  TwoActionGame() = default;

  /// Throws std::invalid_argument unless there are exactly m tables of
  /// exactly 2^m entries.
  TwoActionGame(int m, std::vector<std::vector<Scalar>> utilities)
      : m_(m), utilities_(std::move(utilities)) {
    if (m < 1 || m > 24) throw std::invalid_argument("player count must be in 1..24");
    if (utilities_.size() != static_cast<std::size_t>(m))
      throw std::invalid_argument("expected " + std::to_string(m) + " utility tables, got " +
                                  std::to_string(utilities_.size()));
    for (std::size_t i = 0; i < utilities_.size(); ++i) {
      if (utilities_[i].size() != profile_count(m))
        throw std::invalid_argument("utility table of player " + std::to_string(i + 1) +
                                    " has " + std::to_string(utilities_[i].size()) +
                                    " entries, expected " + std::to_string(profile_count(m)));
    }
  }

  int players() const { return m_; }
  std::size_t profiles() const { return profile_count(m_); }

  const Scalar& utility(int player, std::size_t profile) const {
    return utilities_[static_cast<std::size_t>(player - 1)][profile];
  }
  const std::vector<Scalar>& table(int player) const {
    return utilities_[static_cast<std::size_t>(player - 1)];
  }
  const std::vector<std::vector<Scalar>>& tables() const { return utilities_; }

  friend bool operator==(const TwoActionGame&, const TwoActionGame&) = default;

 private:
  int m_ = 0;
  std::vector<std::vector<Scalar>> utilities_;
};

using ExactGame = TwoActionGame<Rational>;
using FloatGame = TwoActionGame<double>;

template <class Scalar>
struct MixedProfile {
  std::vector<Scalar> gamma;

  int players() const { return static_cast<int>(gamma.size()); }
  const Scalar& operator[](int player) const { return gamma[static_cast<std::size_t>(player - 1)]; }

  std::vector<int> players_at_zero() const { return players_at(Scalar(0)); }
  std::vector<int> players_at_one() const { return players_at(Scalar(1)); }
  std::vector<int> boundary_players() const {
    std::vector<int> out;
    for (int i = 1; i <= players(); ++i)
      if ((*this)[i] == Scalar(0) || (*this)[i] == Scalar(1)) out.push_back(i);
    return out;
  }

 private:
  std::vector<int> players_at(const Scalar& value) const {
    std::vector<int> out;
    for (int i = 1; i <= players(); ++i)
      if ((*this)[i] == value) out.push_back(i);
    return out;
  }
};

/// Contracts a table over {0,1}^n (first variable most significant) against
/// per-variable weights: sum_s prod_k w_k(s_k) · table[s], where
/// w_k(0) = weight0[k] and w_k(1) = weight1[k].
template <class Scalar>
Scalar contract(std::span<const Scalar> table, std::span<const Scalar> weight0,
                std::span<const Scalar> weight1) {
  const std::size_t n = weight0.size();
  if (weight1.size() != n || table.size() != (std::size_t{1} << n))
    throw std::invalid_argument("contract: dimension mismatch");
  std::vector<Scalar> work(table.begin(), table.end());
  std::size_t len = work.size();
  // Fold the least significant (last) variable first.
  for (std::size_t k = n; k-- > 0;) {
    len /= 2;
    for (std::size_t s = 0; s < len; ++s)
      work[s] = weight0[k] * work[2 * s] + weight1[k] * work[2 * s + 1];
  }
  return work[0];
}

/// Multilinear extension V^i(g) of player i's utility.
template <class Scalar>
Scalar payoff(const TwoActionGame<Scalar>& game, int player, std::span<const Scalar> gamma) {
  const int m = game.players();
  if (static_cast<int>(gamma.size()) != m)
    throw std::invalid_argument("payoff: expected " + std::to_string(m) + " coordinates");
  if (player < 1 || player > m) throw std::invalid_argument("payoff: player out of range");
  std::vector<Scalar> w0(gamma.size()), w1(gamma.begin(), gamma.end());
  for (std::size_t k = 0; k < gamma.size(); ++k) w0[k] = Scalar(1) - gamma[k];
  return contract<Scalar>(game.table(player), w0, w1);
}

/// Table of U^i(1, s^-i) - U^i(0, s^-i) over the 2^(m-1) profiles of the
/// other players (same lexicographic order with player i removed).
template <class Scalar>
std::vector<Scalar> difference_table(const TwoActionGame<Scalar>& game, int player) {
  const int m = game.players();
  const std::size_t n = profile_count(m - 1);
  const std::size_t low_bits = m - player;
  const std::size_t low_mask = (std::size_t{1} << low_bits) - 1;
  std::vector<Scalar> diff(n);
  const auto& u = game.table(player);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t high = (r >> low_bits) << (low_bits + 1);
    const std::size_t low = r & low_mask;
    const std::size_t with0 = high | low;
    const std::size_t with1 = with0 | (std::size_t{1} << low_bits);
    diff[r] = u[with1] - u[with0];
  }
  return diff;
}

/// lambda^i(gamma^-i) = V^i(s^i_1, gamma^-i) - V^i(s^i_0, gamma^-i), with the
/// m-1 coordinates of the other players in increasing player order.
template <class Scalar>
Scalar lambda(const TwoActionGame<Scalar>& game, int player, std::span<const Scalar> others) {
  const int m = game.players();
  if (player < 1 || player > m) throw std::invalid_argument("lambda: player out of range");
  if (static_cast<int>(others.size()) != m - 1)
    throw std::invalid_argument("lambda: expected " + std::to_string(m - 1) + " coordinates");
  std::vector<Scalar> w0(others.size()), w1(others.begin(), others.end());
  for (std::size_t k = 0; k < others.size(); ++k) w0[k] = Scalar(1) - others[k];
  return contract<Scalar>(difference_table(game, player), w0, w1);
}

/// lambda^i evaluated at a full profile; gamma^i itself is ignored.
template <class Scalar>
Scalar lambda_at(const TwoActionGame<Scalar>& game, int player, std::span<const Scalar> gamma) {
  if (static_cast<int>(gamma.size()) != game.players())
    throw std::invalid_argument("lambda_at: dimension mismatch");
  std::vector<Scalar> others;
  others.reserve(gamma.size());
  for (int k = 1; k <= game.players(); ++k)
    if (k != player) others.push_back(gamma[static_cast<std::size_t>(k - 1)]);
  return lambda(game, player, std::span<const Scalar>(others));
}

/// (v, sigma): sign vector and the m associated permutations of a product game.
struct CharacteristicTuple {
  std::vector<int> v;
  std::vector<Permutation> sigma;

  int players() const { return static_cast<int>(v.size()); }
  /// Throws std::invalid_argument naming the offending index when v is not
  /// a 0/1 vector, sizes disagree, or sigma^j(j) != j.
  void validate() const;

  friend bool operator==(const CharacteristicTuple&, const CharacteristicTuple&) = default;
};

/// Off-diagonal thresholds a^i_j in (0,1), stored densely; (i, j) is 1-based.
class CoefficientMatrix {
 public:
  CoefficientMatrix() = default;
  explicit CoefficientMatrix(int m);

  int players() const { return m_; }
  const Rational& operator()(int i, int j) const { return a_[index(i, j)]; }
  void set(int i, int j, Rational value);

  /// Throws std::invalid_argument unless every a^i_j lies strictly in (0,1)
  /// and, for each j, the a^i_j (i != j) are pairwise distinct.
  void validate() const;
  /// The permutation sigma^j obtained by ranking {a^i_j : i != j} from the
  /// largest down, skipping rank j.
  Permutation recover_sigma(int j) const;

  friend bool operator==(const CoefficientMatrix&, const CoefficientMatrix&) = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(m_) +
           static_cast<std::size_t>(j - 1);
  }
  int m_ = 0;
  std::vector<Rational> a_;
};

/// a^i_j = (m + 1 - sigma^j(i)) / (m + 1).
CoefficientMatrix default_coefficients(const CharacteristicTuple& tuple);

class ProductTwoActionGame {
 public:
  ProductTwoActionGame(CharacteristicTuple tuple, CoefficientMatrix coeffs, ExactGame tensor);

  int players() const { return tuple_.players(); }
  const CharacteristicTuple& tuple() const { return tuple_; }
  const CoefficientMatrix& coefficients() const { return coeffs_; }
  const ExactGame& tensor() const { return tensor_; }

  /// (-1)^(v_i) · prod_{j != i} (gamma^j - a^i_j), from the coefficients
  /// rather than the tensor.
  Rational factored_lambda(int player, std::span<const Rational> gamma) const;

 private:
  CharacteristicTuple tuple_;
  CoefficientMatrix coeffs_;
  ExactGame tensor_;
};

/// Materializes U^i(s) = 0 when s_i = 0 and (-1)^(v_i) prod_{j != i}(s_j - a^i_j)
/// when s_i = 1. Throws std::invalid_argument when the coefficients do not
/// realize the tuple's permutations.
ProductTwoActionGame build_product_game(const CharacteristicTuple& tuple,
                                        const CoefficientMatrix& coeffs);

/// ((0,...,0), (delta^1, ..., delta^m)).
CharacteristicTuple maximal_tuple(int m);
ProductTwoActionGame maximal_game(int m);

FloatGame to_float(const ExactGame& game);

/// Adds independent uniform draws from [-epsilon, epsilon] to every utility.
/// Deterministic in `seed`; epsilon = 0 returns the input unchanged.
FloatGame perturb(const FloatGame& game, double epsilon, std::uint64_t seed);
FloatGame perturb(const ExactGame& game, double epsilon, std::uint64_t seed);

}  // namespace nashcount
