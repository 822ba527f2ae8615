#include "doctest.h"

#include "cli_support.hpp"

using namespace nashcount;
using namespace nashcount::cli;

TEST_CASE("sign vectors") {
  CHECK(parse_sign_vector("010", 3) == std::vector<int>{0, 1, 0});
  CHECK_THROWS_AS(parse_sign_vector("01", 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_sign_vector("012", 3), std::invalid_argument);
}

TEST_CASE("permutation notation") {
  CHECK(parse_permutation("id", 3).is_identity());
  CHECK(parse_permutation("()", 3).is_identity());
  CHECK(parse_permutation("(1 3)", 3).images() == std::vector<int>{3, 2, 1});
  CHECK(parse_permutation("(1 2)(3 4)", 4).images() == std::vector<int>{2, 1, 4, 3});
  CHECK(parse_permutation("(1 2 3)", 3).images() == std::vector<int>{2, 3, 1});
  CHECK(parse_permutation("3,2,1", 3).images() == std::vector<int>{3, 2, 1});
  CHECK(parse_permutation("[2, 1, 3]", 3).images() == std::vector<int>{2, 1, 3});
  CHECK_THROWS_AS(parse_permutation("(1 4)", 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_permutation("(1 2)(2 3)", 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_permutation("1,1,2", 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_permutation("1,2", 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_permutation("(1 x)", 3), std::invalid_argument);
}

TEST_CASE("sigma lists and tuples") {
  const auto delta = parse_sigma("delta", 3);
  CHECK(delta[1].images() == std::vector<int>{3, 2, 1});
  CHECK(parse_sigma("id", 2) == std::vector<Permutation>(2, Permutation::identity(2)));
  CHECK(parse_sigma("id; (1 3); id", 3) == delta);
  CHECK_THROWS_AS(parse_sigma("id;id", 3), std::invalid_argument);

  const CharacteristicTuple tuple = parse_tuple("", "", 3);
  CHECK(tuple == maximal_tuple(3));
  CHECK(parse_tuple("11", "id", 2).v == std::vector<int>{1, 1});
  try {
    parse_tuple("000", "id;(1 2);id", 3);
    FAIL("expected rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("sigma^2") != std::string::npos);
  }
}
