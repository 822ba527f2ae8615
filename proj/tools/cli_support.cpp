#include "cli_support.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace nashcount::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

int parse_index(const std::string& token, int m, const std::string& context) {
  if (token.empty() || !std::all_of(token.begin(), token.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw std::invalid_argument("malformed entry '" + token + "' in '" + context + "'");
  const int value = std::stoi(token);
  if (value < 1 || value > m)
    throw std::invalid_argument("entry " + token + " outside {1.." + std::to_string(m) + "} in '" +
                                context + "'");
  return value;
}

}  // namespace

std::vector<int> parse_sign_vector(const std::string& bits, int m) {
  if (static_cast<int>(bits.size()) != m)
    throw std::invalid_argument("--v must have exactly " + std::to_string(m) + " bits, got '" +
                                bits + "'");
  std::vector<int> v;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("--v must be a bit string, got '" + bits + "'");
    v.push_back(c - '0');
  }
  return v;
}

Permutation parse_permutation(const std::string& raw, int m) {
  const std::string text = trim(raw);
  if (text == "id" || text == "()" || text.empty()) return Permutation::identity(m);

  if (text.front() == '(') {
    std::vector<int> images(static_cast<std::size_t>(m));
    for (int i = 1; i <= m; ++i) images[static_cast<std::size_t>(i - 1)] = i;
    std::vector<bool> used(static_cast<std::size_t>(m) + 1, false);
    std::size_t pos = 0;
    while (pos < text.size()) {
      if (text[pos] == ' ') {
        ++pos;
        continue;
      }
      if (text[pos] != '(') throw std::invalid_argument("malformed cycle notation '" + text + "'");
      const auto close = text.find(')', pos);
      if (close == std::string::npos) throw std::invalid_argument("unbalanced '(' in '" + text + "'");
      std::istringstream cycle(text.substr(pos + 1, close - pos - 1));
      std::vector<int> elems;
      std::string token;
      while (cycle >> token) {
        std::string cleaned;
        for (char c : token)
          if (c != ',') cleaned += c;
        if (cleaned.empty()) continue;
        const int e = parse_index(cleaned, m, text);
        if (used[static_cast<std::size_t>(e)])
          throw std::invalid_argument(std::to_string(e) + " appears twice in '" + text + "'");
        used[static_cast<std::size_t>(e)] = true;
        elems.push_back(e);
      }
      for (std::size_t k = 0; k < elems.size(); ++k)
        images[static_cast<std::size_t>(elems[k] - 1)] = elems[(k + 1) % elems.size()];
      pos = close + 1;
    }
    return Permutation(std::move(images));
  }

  std::string body = text;
  if (body.front() == '[') {
    if (body.back() != ']') throw std::invalid_argument("unbalanced '[' in '" + text + "'");
    body = body.substr(1, body.size() - 2);
  }
  std::vector<int> images;
  std::istringstream in(body);
  std::string token;
  while (std::getline(in, token, ',')) images.push_back(parse_index(trim(token), m, text));
  if (static_cast<int>(images.size()) != m)
    throw std::invalid_argument("image list '" + text + "' must have " + std::to_string(m) + " entries");
  return Permutation(std::move(images));
}

std::vector<Permutation> parse_sigma(const std::string& raw, int m) {
  const std::string text = trim(raw);
  std::vector<Permutation> sigma;
  if (text == "delta") {
    for (int j = 1; j <= m; ++j) sigma.push_back(delta_permutation(m, j));
    return sigma;
  }
  if (text == "id") {
    sigma.assign(static_cast<std::size_t>(m), Permutation::identity(m));
    return sigma;
  }
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ';')) sigma.push_back(parse_permutation(part, m));
  if (static_cast<int>(sigma.size()) != m)
    throw std::invalid_argument("--sigma must list " + std::to_string(m) +
                                " permutations separated by ';', got " + std::to_string(sigma.size()));
  return sigma;
}

CharacteristicTuple parse_tuple(const std::string& v, const std::string& sigma, int m) {
  if (m < 1) throw std::invalid_argument("--m must be at least 1");
  CharacteristicTuple tuple;
  tuple.v = v.empty() ? std::vector<int>(static_cast<std::size_t>(m), 0) : parse_sign_vector(v, m);
  tuple.sigma = parse_sigma(sigma.empty() ? "delta" : sigma, m);
  tuple.validate();
  return tuple;
}

}  // namespace nashcount::cli
