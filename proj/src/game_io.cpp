#include "nashcount/game_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace nashcount {

using nlohmann::json;

GameFormatError::GameFormatError(const std::string& message, int line, int column)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " +
                                        std::to_string(column) + ": " + message
                                  : message),
      line_(line),
      column_(column) {}

std::string format_rational(const Rational& value) {
  return boost::multiprecision::numerator(value).str() + "/" +
         boost::multiprecision::denominator(value).str();
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::size_t k = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (k == s.size()) throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    for (std::size_t p = k; p < s.size(); ++p)
      if (s[p] < '0' || s[p] > '9')
        throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  BigInt num = parse_int(text.substr(0, slash));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  return Rational(num, den);
}

ArithmeticMode GameDocument::mode() const {
  return std::holds_alternative<ExactGame>(game) ? ArithmeticMode::exact : ArithmeticMode::floating;
}

int GameDocument::players() const {
  return std::visit([](const auto& g) { return g.players(); }, game);
}

FloatGame GameDocument::as_float() const {
  if (const auto* exact = std::get_if<ExactGame>(&game)) return to_float(*exact);
  return std::get<FloatGame>(game);
}

json game_to_json(const ExactGame& game) {
  json utilities = json::array();
  for (const auto& table : game.tables()) {
    json row = json::array();
    for (const auto& u : table) row.push_back(format_rational(u));
    utilities.push_back(std::move(row));
  }
  return json{{"m", game.players()}, {"mode", "exact"}, {"utilities", std::move(utilities)}};
}

json game_to_json(const FloatGame& game) {
  return json{{"m", game.players()}, {"mode", "float"}, {"utilities", game.tables()}};
}

json tuple_to_json(const CharacteristicTuple& tuple) {
  json sigma = json::array();
  for (const auto& s : tuple.sigma) sigma.push_back(s.images());
  return json{{"v", tuple.v}, {"sigma", std::move(sigma)}};
}

json game_to_json(const ProductTwoActionGame& game) {
  json doc = game_to_json(game.tensor());
  json product = tuple_to_json(game.tuple());
  json a = json::object();
  const int m = game.players();
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j)
      if (i != j)
        a[std::to_string(i) + "," + std::to_string(j)] = format_rational(game.coefficients()(i, j));
  product["a"] = std::move(a);
  doc["product"] = std::move(product);
  return doc;
}

namespace {

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw GameFormatError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw GameFormatError(where + ": missing field '" + key + "'");
  return *it;
}

int as_int(const json& value, const std::string& where) {
  if (!value.is_number_integer()) throw GameFormatError(where + ": expected an integer");
  return value.get<int>();
}

Rational as_rational(const json& value, const std::string& where) {
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw GameFormatError(where + ": " + e.what());
    }
  }
  if (value.is_number_integer()) return Rational(value.get<long long>());
  throw GameFormatError(where + ": expected a rational string \"p/q\"");
}

double as_double(const json& value, const std::string& where) {
  if (!value.is_number()) throw GameFormatError(where + ": expected a number");
  return value.get<double>();
}

template <class Scalar, class Convert>
std::vector<std::vector<Scalar>> read_utilities(const json& utilities, int m, Convert convert) {
  if (!utilities.is_array() || utilities.size() != static_cast<std::size_t>(m))
    throw GameFormatError("utilities: expected " + std::to_string(m) + " tables");
  std::vector<std::vector<Scalar>> out;
  for (std::size_t i = 0; i < utilities.size(); ++i) {
    const json& row = utilities[i];
    const std::string where = "utilities[" + std::to_string(i) + "]";
    if (!row.is_array() || row.size() != profile_count(m))
      throw GameFormatError(where + ": expected " + std::to_string(profile_count(m)) + " entries");
    std::vector<Scalar> table;
    for (std::size_t s = 0; s < row.size(); ++s)
      table.push_back(convert(row[s], where + "[" + std::to_string(s) + "]"));
    out.push_back(std::move(table));
  }
  return out;
}

ProductTwoActionGame read_product(const json& product, int m) {
  CharacteristicTuple tuple;
  const json& v = member(product, "v", "product");
  if (!v.is_array() || v.size() != static_cast<std::size_t>(m))
    throw GameFormatError("product.v: expected " + std::to_string(m) + " entries");
  for (std::size_t i = 0; i < v.size(); ++i)
    tuple.v.push_back(as_int(v[i], "product.v[" + std::to_string(i) + "]"));
  const json& sigma = member(product, "sigma", "product");
  if (!sigma.is_array() || sigma.size() != static_cast<std::size_t>(m))
    throw GameFormatError("product.sigma: expected " + std::to_string(m) + " permutations");
  for (std::size_t j = 0; j < sigma.size(); ++j) {
    const std::string where = "product.sigma[" + std::to_string(j) + "]";
    if (!sigma[j].is_array()) throw GameFormatError(where + ": expected an image array");
    std::vector<int> images;
    for (std::size_t k = 0; k < sigma[j].size(); ++k)
      images.push_back(as_int(sigma[j][k], where + "[" + std::to_string(k) + "]"));
    try {
      tuple.sigma.emplace_back(std::move(images));
    } catch (const std::invalid_argument& e) {
      throw GameFormatError(where + ": " + e.what());
    }
  }
  const json& a = member(product, "a", "product");
  CoefficientMatrix coeffs(m);
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= m; ++j) {
      if (i == j) continue;
      const std::string key = std::to_string(i) + "," + std::to_string(j);
      coeffs.set(i, j, as_rational(member(a, key.c_str(), "product.a"), "product.a[" + key + "]"));
    }
  }
  try {
    return build_product_game(tuple, coeffs);
  } catch (const std::invalid_argument& e) {
    throw GameFormatError(std::string("product: ") + e.what());
  }
}

}  // namespace

GameDocument game_from_json(const json& doc) {
  const int m = as_int(member(doc, "m", "game"), "m");
  if (m < 1 || m > 24) throw GameFormatError("m: must be in 1..24");
  const json& mode_value = member(doc, "mode", "game");
  const std::string mode = mode_value.is_string() ? mode_value.get<std::string>() : "";
  const json& utilities = member(doc, "utilities", "game");

  if (mode == "float") {
    if (doc.contains("product")) throw GameFormatError("product: only allowed in exact mode");
    return GameDocument{FloatGame(m, read_utilities<double>(utilities, m, as_double)), std::nullopt};
  }
  if (mode != "exact") throw GameFormatError("mode: expected \"exact\" or \"float\"");

  ExactGame game(m, read_utilities<Rational>(utilities, m, as_rational));
  std::optional<ProductTwoActionGame> product;
  if (doc.contains("product")) {
    product = read_product(doc["product"], m);
    if (!(product->tensor() == game))
      throw GameFormatError("utilities do not match the product-game description");
  }
  return GameDocument{std::move(game), std::move(product)};
}

GameDocument parse_game_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    int line = 1, column = 1;
    const std::size_t limit = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t k = 0; k < limit; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw GameFormatError("malformed JSON", line, column);
  }
  try {
    return game_from_json(doc);
  } catch (const GameFormatError& e) {
    // Point at the line of the top-level field the message starts with.
    const std::string message = e.what();
    const std::string field = message.substr(0, message.find_first_of(".[: "));
    const std::size_t at = text.find("\"" + field + "\"");
    if (field.empty() || at == std::string_view::npos) throw;
    const auto line = static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(at), '\n')) + 1;
    const std::size_t line_start = text.rfind('\n', at);
    const int column = static_cast<int>(at - (line_start == std::string_view::npos ? 0 : line_start + 1)) + 1;
    throw GameFormatError(message, line, column);
  }
}

GameDocument read_game_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GameFormatError("cannot open game file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_game_document(buffer.str());
}

}  // namespace nashcount
