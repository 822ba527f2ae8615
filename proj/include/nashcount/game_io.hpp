#pragma once

// Game file format shared by the CLI subcommands:
//
//   { "m": 3, "mode": "exact" | "float",
//     "utilities": [[u(0..0), ..., u(1..1)] per player],
//     "product": { "v": [0,0,0], "sigma": [[1,2,3], ...], "a": {"i,j": "p/q", ...} } }
//
// Exact values are "p/q" strings (reduced, positive denominator); float
// values are JSON numbers. "product" is optional and only valid in exact mode.

#include "nashcount/game.hpp"

#include "json.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace nashcount {

class GameFormatError : public std::runtime_error {
 public:
  GameFormatError(const std::string& message, int line = 0, int column = 0);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

std::string format_rational(const Rational& value);
/// Accepts "p/q" or "p"; throws std::invalid_argument on malformed input or q = 0.
Rational parse_rational(std::string_view text);

struct GameDocument {
  std::variant<ExactGame, FloatGame> game;
  std::optional<ProductTwoActionGame> product;

  ArithmeticMode mode() const;
  int players() const;
  FloatGame as_float() const;
};

nlohmann::json game_to_json(const ExactGame& game);
nlohmann::json game_to_json(const FloatGame& game);
nlohmann::json game_to_json(const ProductTwoActionGame& game);
nlohmann::json tuple_to_json(const CharacteristicTuple& tuple);

GameDocument game_from_json(const nlohmann::json& doc);
/// Parses a game file; syntax errors carry line and column.
GameDocument parse_game_document(std::string_view text);
GameDocument read_game_file(const std::filesystem::path& path);

}  // namespace nashcount
