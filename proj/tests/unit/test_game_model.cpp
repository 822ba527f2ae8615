#include "doctest.h"
#include "oracles.hpp"

#include "nashcount/game.hpp"

#include <random>

using namespace nashcount;

namespace {

ExactGame random_exact_game(int m, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-50, 50);
  std::vector<std::vector<Rational>> u(static_cast<std::size_t>(m));
  for (auto& table : u)
    for (std::size_t s = 0; s < profile_count(m); ++s) table.emplace_back(num(rng), 7);
  return ExactGame(m, std::move(u));
}

std::vector<Rational> random_profile(int m, std::mt19937_64& rng) {
  std::vector<Rational> g;
  for (int k = 0; k < m; ++k) g.push_back(oracle::random_rational(rng));
  return g;
}

Rational factored(const ProductTwoActionGame& game, int i, const std::vector<Rational>& g) {
  Rational product = game.tuple().v[static_cast<std::size_t>(i - 1)] ? -1 : 1;
  for (int j = 1; j <= game.players(); ++j)
    if (j != i) product *= g[static_cast<std::size_t>(j - 1)] - game.coefficients()(i, j);
  return product;
}

}  // namespace

TEST_CASE("profile indexing: player 1 is the most significant bit") {
  CHECK(action_in_profile(0b100, 1, 3) == 1);
  CHECK(action_in_profile(0b100, 3, 3) == 0);
  const std::vector<int> actions{1, 0, 1};
  CHECK(profile_index(actions) == 0b101);
}

TEST_CASE("game construction validates shapes") {
  CHECK_THROWS_AS(ExactGame(2, {{1, 2, 3, 4}}), std::invalid_argument);
  CHECK_THROWS_AS(ExactGame(2, {{1, 2, 3, 4}, {1, 2, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(ExactGame(0, {}), std::invalid_argument);
}

TEST_CASE("payoff: contraction equals the explicit profile sum") {
  std::mt19937_64 rng(11);
  for (int m = 1; m <= 5; ++m) {
    const ExactGame game = random_exact_game(m, rng);
    for (int trial = 0; trial < 10; ++trial) {
      const auto g = random_profile(m, rng);
      for (int i = 1; i <= m; ++i) CHECK(payoff<Rational>(game, i, g) == oracle::payoff_by_sum(game, i, g));
    }
    // Vertex and uniform mixture.
    const std::vector<Rational> ones(static_cast<std::size_t>(m), 1), halves(static_cast<std::size_t>(m), Rational(1, 2));
    for (int i = 1; i <= m; ++i) {
      CHECK(payoff<Rational>(game, i, ones) == game.utility(i, profile_count(m) - 1));
      Rational mean = 0;
      for (const auto& u : game.table(i)) mean += u;
      CHECK(payoff<Rational>(game, i, halves) == mean / profile_count(m));
    }
  }
  const ExactGame game = random_exact_game(3, rng);
  const std::vector<Rational> short_profile{1, 0};
  CHECK_THROWS_AS(payoff<Rational>(game, 1, short_profile), std::invalid_argument);
}

TEST_CASE("payoff is affine in each coordinate") {
  std::mt19937_64 rng(12);
  for (int m = 2; m <= 5; ++m) {
    const ExactGame game = random_exact_game(m, rng);
    for (int trial = 0; trial < 20; ++trial) {
      auto g = random_profile(m, rng);
      const int k = static_cast<int>(rng() % static_cast<std::uint64_t>(m));
      const int i = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(m));
      const Rational t = g[static_cast<std::size_t>(k)];
      g[static_cast<std::size_t>(k)] = 0;
      const Rational at0 = payoff<Rational>(game, i, g);
      g[static_cast<std::size_t>(k)] = 1;
      const Rational at1 = payoff<Rational>(game, i, g);
      g[static_cast<std::size_t>(k)] = t;
      CHECK(payoff<Rational>(game, i, g) == (1 - t) * at0 + t * at1);
    }
  }
}

TEST_CASE("lambda: difference-table contraction equals two payoff evaluations") {
  std::mt19937_64 rng(13);
  for (int m = 1; m <= 5; ++m) {
    const ExactGame game = random_exact_game(m, rng);
    for (int trial = 0; trial < 10; ++trial) {
      const auto g = random_profile(m, rng);
      for (int i = 1; i <= m; ++i) CHECK(lambda_at<Rational>(game, i, g) == oracle::lambda_by_payoffs(game, i, g));
    }
  }
  const ExactGame game = random_exact_game(3, rng);
  const std::vector<Rational> wrong{1, 0, 1};
  CHECK_THROWS_AS(lambda<Rational>(game, 1, wrong), std::invalid_argument);
}

TEST_CASE("non-product game with a shifted saddle: lambda^3 at the centre is -1/12") {
  // Player 3's difference table realises (g1 - 1/2)(g2 - 1/2) - 1/12.
  std::vector<std::vector<Rational>> u(3, std::vector<Rational>(8, 0));
  const Rational d00(1, 6), d01(-1, 3), d10(-1, 3), d11(1, 6);
  u[2][0b001] = d00;
  u[2][0b011] = d01;
  u[2][0b101] = d10;
  u[2][0b111] = d11;
  const ExactGame game(3, u);
  const std::vector<Rational> centre{Rational(1, 2), Rational(1, 2)};
  CHECK(lambda<Rational>(game, 3, centre) == Rational(-1, 12));
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    const Rational a = oracle::random_rational(rng), b = oracle::random_rational(rng);
    const std::vector<Rational> others{a, b};
    CHECK(lambda<Rational>(game, 3, others) == (a - Rational(1, 2)) * (b - Rational(1, 2)) - Rational(1, 12));
  }
}

TEST_CASE("characteristic tuple validation names the offending index") {
  CharacteristicTuple tuple{{0, 0, 0}, {Permutation::identity(3), Permutation({2, 1, 3}), Permutation::identity(3)}};
  try {
    tuple.validate();
    FAIL("expected rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("sigma^2") != std::string::npos);
  }
  CharacteristicTuple bad_v{{0, 2}, {Permutation::identity(2), Permutation::identity(2)}};
  CHECK_THROWS_AS(bad_v.validate(), std::invalid_argument);
  CharacteristicTuple short_sigma{{0, 0}, {Permutation::identity(2)}};
  CHECK_THROWS_AS(short_sigma.validate(), std::invalid_argument);
}

TEST_CASE("default coefficients") {
  const CharacteristicTuple tuple = maximal_tuple(3);
  CHECK(tuple.sigma[1].images() == std::vector<int>{3, 2, 1});
  const CoefficientMatrix a = default_coefficients(tuple);
  CHECK(a(1, 2) == Rational(1, 4));
  CHECK(a(3, 2) == Rational(3, 4));
  CHECK(a(2, 1) == Rational(1, 2));
  CHECK(a(3, 1) == Rational(1, 4));
  CHECK(a(1, 3) == Rational(3, 4));
  CHECK(a(2, 3) == Rational(1, 2));

  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 7);
    const auto t = oracle::random_tuple(m, rng);
    const CoefficientMatrix coeffs = default_coefficients(t);
    CHECK_NOTHROW(coeffs.validate());
    for (int j = 1; j <= m; ++j) CHECK(coeffs.recover_sigma(j) == t.sigma[static_cast<std::size_t>(j - 1)]);
    const CoefficientMatrix random = oracle::random_coefficients(t, rng);
    for (int j = 1; j <= m; ++j) CHECK(random.recover_sigma(j) == t.sigma[static_cast<std::size_t>(j - 1)]);
  }
}

TEST_CASE("coefficient matrix rejects invalid entries") {
  CoefficientMatrix a(3);
  CHECK_THROWS_AS(a.set(1, 1, Rational(1, 2)), std::invalid_argument);
  a.set(1, 2, Rational(1, 2));
  a.set(3, 2, Rational(1, 2));
  a.set(2, 1, Rational(1, 3));
  a.set(3, 1, Rational(2, 3));
  a.set(1, 3, Rational(1, 3));
  a.set(2, 3, Rational(2, 3));
  CHECK_THROWS_AS(a.validate(), std::invalid_argument);
  a.set(3, 2, Rational(1));
  CHECK_THROWS_AS(a.validate(), std::invalid_argument);
  a.set(3, 2, Rational(1, 5));
  CHECK_NOTHROW(a.validate());
}

TEST_CASE("product game: tensor lambda equals the factored form") {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 1 + trial % 5;
    const auto tuple = oracle::random_tuple(m, rng);
    const auto coeffs = trial % 2 ? default_coefficients(tuple) : oracle::random_coefficients(tuple, rng);
    const ProductTwoActionGame game = build_product_game(tuple, coeffs);
    for (int k = 0; k < 20; ++k) {
      const auto g = random_profile(m, rng);
      for (int i = 1; i <= m; ++i) {
        const Rational expected = factored(game, i, g);
        CHECK(lambda_at<Rational>(game.tensor(), i, g) == expected);
        CHECK(oracle::lambda_by_payoffs(game.tensor(), i, g) == expected);
        CHECK(game.factored_lambda(i, g) == expected);
      }
    }
  }
}

TEST_CASE("product game: lambda vanishes on the walls") {
  const ProductTwoActionGame game = maximal_game(4);
  std::mt19937_64 rng(17);
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      if (i == j) continue;
      auto g = random_profile(4, rng);
      g[static_cast<std::size_t>(j - 1)] = game.coefficients()(i, j);
      CHECK(lambda_at<Rational>(game.tensor(), i, g) == 0);
    }
}

TEST_CASE("product game: coefficients recovered as roots on a line") {
  // lambda^i restricted to the line where every other coordinate is 1 (never
  // a root, since a < 1) is affine in gamma^j; its root is a^i_j.
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 2 + trial % 4;
    const auto tuple = oracle::random_tuple(m, rng);
    const ProductTwoActionGame game = build_product_game(tuple, oracle::random_coefficients(tuple, rng));
    for (int i = 1; i <= m; ++i)
      for (int j = 1; j <= m; ++j) {
        if (i == j) continue;
        std::vector<Rational> g(static_cast<std::size_t>(m), 1);
        g[static_cast<std::size_t>(j - 1)] = 0;
        const Rational at0 = lambda_at<Rational>(game.tensor(), i, g);
        g[static_cast<std::size_t>(j - 1)] = 1;
        const Rational at1 = lambda_at<Rational>(game.tensor(), i, g);
        REQUIRE(at1 != at0);
        CHECK(at0 / (at0 - at1) == game.coefficients()(i, j));
      }
  }
}

TEST_CASE("product game: tensor entries vanish when the player takes action 0") {
  const ProductTwoActionGame game = maximal_game(3);
  for (int i = 1; i <= 3; ++i)
    for (std::size_t s = 0; s < 8; ++s)
      if (action_in_profile(s, i, 3) == 0) CHECK(game.tensor().utility(i, s) == 0);
}

TEST_CASE("product game: small cases") {
  const CharacteristicTuple two{{0, 0}, {Permutation::identity(2), Permutation::identity(2)}};
  const ProductTwoActionGame game = build_product_game(two, default_coefficients(two));
  const std::vector<Rational> g2{Rational(1, 5)}, g1{Rational(4, 5)};
  CHECK(lambda<Rational>(game.tensor(), 1, g2) == Rational(1, 5) - game.coefficients()(1, 2));
  CHECK(lambda<Rational>(game.tensor(), 2, g1) == Rational(4, 5) - game.coefficients()(2, 1));

  const ProductTwoActionGame one = maximal_game(1);
  CHECK(lambda<Rational>(one.tensor(), 1, std::vector<Rational>{}) == 1);

  const ProductTwoActionGame three = maximal_game(3);
  CHECK(three.tuple().v == std::vector<int>{0, 0, 0});
  CHECK(three.tuple().sigma[0].is_identity());
  CHECK(three.tuple().sigma[1].images() == std::vector<int>{3, 2, 1});
  CHECK(three.tuple().sigma[2].is_identity());
}

TEST_CASE("sign pattern of lambda at the cube vertices, m = 3 maximal game") {
  // lambda^i at a vertex is (-1)^{v_i} prod (gamma^j - a^i_j); each factor is
  // negative at gamma^j = 0 and positive at 1, so the sign is (-1)^{#zeros}.
  const ProductTwoActionGame game = maximal_game(3);
  for (std::size_t s = 0; s < 8; ++s) {
    std::vector<Rational> g;
    for (int k = 1; k <= 3; ++k) g.emplace_back(action_in_profile(s, k, 3));
    for (int i = 1; i <= 3; ++i) {
      int zeros = 0;
      for (int k = 1; k <= 3; ++k)
        if (k != i && action_in_profile(s, k, 3) == 0) ++zeros;
      const Rational value = lambda_at<Rational>(game.tensor(), i, g);
      CHECK((value > 0) == (zeros % 2 == 0));
    }
  }
}

TEST_CASE("build_product_game rejects coefficients that realise another tuple") {
  const CharacteristicTuple tuple = maximal_tuple(3);
  const CharacteristicTuple other{{0, 0, 0}, {Permutation::identity(3), Permutation::identity(3), Permutation::identity(3)}};
  CHECK_THROWS_AS(build_product_game(tuple, default_coefficients(other)), std::invalid_argument);
}

TEST_CASE("perturbation") {
  const FloatGame base = to_float(maximal_game(3).tensor());
  CHECK(perturb(base, 0.0, 5) == base);
  const FloatGame a = perturb(base, 1e-3, 5), b = perturb(base, 1e-3, 5), c = perturb(base, 1e-3, 6);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  double max_shift = 0;
  for (int i = 1; i <= 3; ++i)
    for (std::size_t s = 0; s < 8; ++s) max_shift = std::max(max_shift, std::abs(a.utility(i, s) - base.utility(i, s)));
  CHECK(max_shift <= 1e-3);
  CHECK(max_shift > 0);
  CHECK(perturb(maximal_game(3).tensor(), 1e-3, 5) == a);
  CHECK_THROWS_AS(perturb(base, -1.0, 5), std::invalid_argument);
}
