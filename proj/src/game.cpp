#include "nashcount/game.hpp"

#include <algorithm>
#include <random>

namespace nashcount {

std::string to_string(ArithmeticMode mode) {
  return mode == ArithmeticMode::exact ? "exact" : "float";
}

std::size_t profile_index(std::span<const int> actions) {
  std::size_t index = 0;
  for (int a : actions) {
    if (a != 0 && a != 1) throw std::invalid_argument("profile_index: actions must be 0 or 1");
    index = (index << 1) | static_cast<std::size_t>(a);
  }
  return index;
}

void CharacteristicTuple::validate() const {
  const int m = players();
  if (m < 1) throw std::invalid_argument("characteristic tuple needs at least one player");
  if (static_cast<int>(sigma.size()) != m)
    throw std::invalid_argument("expected " + std::to_string(m) + " permutations, got " +
                                std::to_string(sigma.size()));
  for (int i = 1; i <= m; ++i) {
    const int vi = v[static_cast<std::size_t>(i - 1)];
    if (vi != 0 && vi != 1)
      throw std::invalid_argument("v_" + std::to_string(i) + " must be 0 or 1");
  }
  for (int j = 1; j <= m; ++j) {
    const Permutation& s = sigma[static_cast<std::size_t>(j - 1)];
    if (s.size() != m)
      throw std::invalid_argument("sigma^" + std::to_string(j) + " is not a permutation of {1.." +
                                  std::to_string(m) + "}");
    if (s(j) != j)
      throw std::invalid_argument("sigma^" + std::to_string(j) + " must fix " +
                                  std::to_string(j) + " but maps it to " + std::to_string(s(j)));
  }
}

CoefficientMatrix::CoefficientMatrix(int m)
    : m_(m), a_(static_cast<std::size_t>(m) * static_cast<std::size_t>(m)) {
  if (m < 1) throw std::invalid_argument("CoefficientMatrix: need at least one player");
}

void CoefficientMatrix::set(int i, int j, Rational value) {
  if (i < 1 || j < 1 || i > m_ || j > m_ || i == j)
    throw std::invalid_argument("coefficient a^" + std::to_string(i) + "_" + std::to_string(j) +
                                " is not an off-diagonal entry");
  a_[index(i, j)] = std::move(value);
}

void CoefficientMatrix::validate() const {
  for (int j = 1; j <= m_; ++j) {
    std::vector<Rational> column;
    for (int i = 1; i <= m_; ++i) {
      if (i == j) continue;
      const Rational& a = (*this)(i, j);
      if (a <= 0 || a >= 1)
        throw std::invalid_argument("coefficient a^" + std::to_string(i) + "_" +
                                    std::to_string(j) + " not in (0,1)");
      column.push_back(a);
    }
    std::sort(column.begin(), column.end());
    if (std::adjacent_find(column.begin(), column.end()) != column.end())
      throw std::invalid_argument("coefficients a^i_" + std::to_string(j) +
                                  " are not pairwise distinct");
  }
}

Permutation CoefficientMatrix::recover_sigma(int j) const {
  std::vector<int> others;
  for (int i = 1; i <= m_; ++i)
    if (i != j) others.push_back(i);
  std::sort(others.begin(), others.end(),
            [&](int x, int y) { return (*this)(x, j) > (*this)(y, j); });
  std::vector<int> images(static_cast<std::size_t>(m_));
  images[static_cast<std::size_t>(j - 1)] = j;
  for (std::size_t k = 0; k < others.size(); ++k) {
    const int rank = static_cast<int>(k) + 1;
    images[static_cast<std::size_t>(others[k] - 1)] = rank < j ? rank : rank + 1;
  }
  return Permutation(std::move(images));
}

CoefficientMatrix default_coefficients(const CharacteristicTuple& tuple) {
  tuple.validate();
  const int m = tuple.players();
  CoefficientMatrix a(m);
  for (int j = 1; j <= m; ++j) {
    const Permutation& s = tuple.sigma[static_cast<std::size_t>(j - 1)];
    for (int i = 1; i <= m; ++i)
      if (i != j) a.set(i, j, Rational(m + 1 - s(i), m + 1));
  }
  return a;
}

ProductTwoActionGame::ProductTwoActionGame(CharacteristicTuple tuple, CoefficientMatrix coeffs,
                                           ExactGame tensor)
    : tuple_(std::move(tuple)), coeffs_(std::move(coeffs)), tensor_(std::move(tensor)) {}

Rational ProductTwoActionGame::factored_lambda(int player, std::span<const Rational> gamma) const {
  const int m = players();
  if (static_cast<int>(gamma.size()) != m)
    throw std::invalid_argument("factored_lambda: dimension mismatch");
  Rational value = tuple_.v[static_cast<std::size_t>(player - 1)] ? -1 : 1;
  for (int j = 1; j <= m; ++j)
    if (j != player) value *= gamma[static_cast<std::size_t>(j - 1)] - coeffs_(player, j);
  return value;
}

ProductTwoActionGame build_product_game(const CharacteristicTuple& tuple,
                                        const CoefficientMatrix& coeffs) {
  tuple.validate();
  const int m = tuple.players();
  if (coeffs.players() != m)
    throw std::invalid_argument("coefficient matrix has " + std::to_string(coeffs.players()) +
                                " players, tuple has " + std::to_string(m));
  coeffs.validate();
  for (int j = 1; j <= m; ++j) {
    if (coeffs.recover_sigma(j) != tuple.sigma[static_cast<std::size_t>(j - 1)])
      throw std::invalid_argument("coefficients a^i_" + std::to_string(j) +
                                  " do not realize sigma^" + std::to_string(j));
  }

  std::vector<std::vector<Rational>> utilities(static_cast<std::size_t>(m),
                                               std::vector<Rational>(profile_count(m)));
  for (int i = 1; i <= m; ++i) {
    auto& u = utilities[static_cast<std::size_t>(i - 1)];
    for (std::size_t s = 0; s < u.size(); ++s) {
      if (action_in_profile(s, i, m) == 0) continue;  // stays 0
      Rational value = tuple.v[static_cast<std::size_t>(i - 1)] ? -1 : 1;
      for (int j = 1; j <= m; ++j)
        if (j != i) value *= action_in_profile(s, j, m) - coeffs(i, j);
      u[s] = std::move(value);
    }
  }
  return ProductTwoActionGame(tuple, coeffs, ExactGame(m, std::move(utilities)));
}

CharacteristicTuple maximal_tuple(int m) {
  if (m < 1) throw std::invalid_argument("maximal_tuple: need at least one player");
  CharacteristicTuple tuple;
  tuple.v.assign(static_cast<std::size_t>(m), 0);
  for (int i = 1; i <= m; ++i) tuple.sigma.push_back(delta_permutation(m, i));
  return tuple;
}

ProductTwoActionGame maximal_game(int m) {
  const CharacteristicTuple tuple = maximal_tuple(m);
  return build_product_game(tuple, default_coefficients(tuple));
}

FloatGame to_float(const ExactGame& game) {
  std::vector<std::vector<double>> utilities;
  utilities.reserve(game.tables().size());
  for (const auto& table : game.tables()) {
    std::vector<double> row;
    row.reserve(table.size());
    for (const auto& u : table) row.push_back(static_cast<double>(u));
    utilities.push_back(std::move(row));
  }
  return FloatGame(game.players(), std::move(utilities));
}

FloatGame perturb(const FloatGame& game, double epsilon, std::uint64_t seed) {
  if (!(epsilon >= 0)) throw std::invalid_argument("perturb: epsilon must be non-negative");
  if (epsilon == 0) return game;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    0x70657274u};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> noise(-epsilon, epsilon);
  std::vector<std::vector<double>> utilities = game.tables();
  for (auto& table : utilities)
    for (auto& u : table) u += noise(rng);
  return FloatGame(game.players(), std::move(utilities));
}

FloatGame perturb(const ExactGame& game, double epsilon, std::uint64_t seed) {
  return perturb(to_float(game), epsilon, seed);
}

}  // namespace nashcount
