#pragma once

// Argument parsing shared by the nashcount subcommands.

#include "nashcount/game.hpp"

#include <string>
#include <vector>

namespace nashcount::cli {

/// "010" -> {0,1,0}; throws std::invalid_argument unless it has m bits.
std::vector<int> parse_sign_vector(const std::string& bits, int m);

/// A permutation of {1..m} in cycle notation ("(1 3)(2 4)", "()" or "id")
/// or as an image list ("3,2,1" or "[3,2,1]").
Permutation parse_permutation(const std::string& text, int m);

/// "delta", "id", or m permutations separated by ';'.
std::vector<Permutation> parse_sigma(const std::string& text, int m);

/// Builds and validates a characteristic tuple from --v/--sigma style input.
CharacteristicTuple parse_tuple(const std::string& v, const std::string& sigma, int m);

}  // namespace nashcount::cli
