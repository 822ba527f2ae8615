#include "nashcount/combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nashcount {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int m = size();
  std::vector<bool> seen(static_cast<std::size_t>(m) + 1, false);
  for (int image : images_) {
    if (image < 1 || image > m || seen[static_cast<std::size_t>(image)]) {
      throw std::invalid_argument("not a permutation of {1.." + std::to_string(m) +
                                  "}: " + to_string());
    }
    seen[static_cast<std::size_t>(image)] = true;
  }
}

Permutation Permutation::identity(int m) {
  std::vector<int> images(static_cast<std::size_t>(m));
  std::iota(images.begin(), images.end(), 1);
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 1; i <= size(); ++i) inv[static_cast<std::size_t>((*this)(i) - 1)] = i;
  return Permutation(std::move(inv));
}

std::vector<int> Permutation::fixed_points() const {
  std::vector<int> out;
  for (int i = 1; i <= size(); ++i)
    if (is_fixed(i)) out.push_back(i);
  return out;
}

std::vector<int> Permutation::moved_points() const {
  std::vector<int> out;
  for (int i = 1; i <= size(); ++i)
    if (!is_fixed(i)) out.push_back(i);
  return out;
}

bool Permutation::is_derangement() const {
  for (int i = 1; i <= size(); ++i)
    if (is_fixed(i)) return false;
  return true;
}

bool Permutation::is_identity() const {
  for (int i = 1; i <= size(); ++i)
    if (!is_fixed(i)) return false;
  return true;
}

std::string Permutation::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t k = 0; k < images_.size(); ++k) out << (k ? "," : "") << images_[k];
  out << ')';
  return out.str();
}

std::string Permutation::to_cycle_string() const {
  std::ostringstream out;
  std::vector<bool> visited(images_.size() + 1, false);
  for (int start = 1; start <= size(); ++start) {
    if (visited[static_cast<std::size_t>(start)] || is_fixed(start)) continue;
    out << '(';
    int k = start;
    bool first = true;
    while (!visited[static_cast<std::size_t>(k)]) {
      visited[static_cast<std::size_t>(k)] = true;
      out << (first ? "" : " ") << k;
      first = false;
      k = (*this)(k);
    }
    out << ')';
  }
  const std::string s = out.str();
  return s.empty() ? "id" : s;
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  if (outer.size() != inner.size()) throw std::invalid_argument("compose: size mismatch");
  std::vector<int> images(static_cast<std::size_t>(inner.size()));
  for (int i = 1; i <= inner.size(); ++i) images[static_cast<std::size_t>(i - 1)] = outer(inner(i));
  return Permutation(std::move(images));
}

PermutationStream::PermutationStream(int m, bool derangements_only,
                                     std::optional<int> first_image)
    : derangements_only_(derangements_only), first_image_(first_image) {
  if (m < 0) throw std::invalid_argument("PermutationStream: negative size");
  current_ = Permutation::identity(m);
  if (first_image_) {
    const int f = *first_image_;
    if (f < 1 || f > m) throw std::invalid_argument("PermutationStream: first image out of range");
    auto& img = current_.images_;
    std::rotate(img.begin(), img.begin() + (f - 1), img.begin() + f);
  }
}

bool PermutationStream::accept() const {
  return !derangements_only_ || current_.is_derangement();
}

const Permutation* PermutationStream::next() {
  auto& img = current_.images_;
  while (!done_) {
    if (!started_) {
      started_ = true;
    } else if (!std::next_permutation(img.begin(), img.end()) ||
               (first_image_ && img.front() != *first_image_)) {
      done_ = true;
      break;
    }
    if (accept()) return &current_;
  }
  return nullptr;
}

std::vector<Permutation> all_permutations(int m) {
  std::vector<Permutation> out;
  for_each_permutation(m, [&](const Permutation& p) { out.push_back(p); });
  return out;
}

std::vector<Permutation> all_derangements(int m) {
  std::vector<Permutation> out;
  for_each_derangement(m, [&](const Permutation& p) { out.push_back(p); });
  return out;
}

BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return f;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt c = 1;
  for (unsigned j = 1; j <= k; ++j) c = c * (n - k + j) / j;
  return c;
}

BigInt subfactorial(unsigned n) { return subfactorial_two_term_recursion(n); }

BigInt subfactorial_linear_recursion(unsigned n) {
  BigInt d = 1;
  for (unsigned k = 1; k <= n; ++k) {
    d = k * d;
    d += (k % 2 == 0) ? 1 : -1;
  }
  return d;
}

BigInt subfactorial_two_term_recursion(unsigned n) {
  if (n == 0) return 1;
  BigInt prev = 1;  // !0
  BigInt cur = 0;   // !1
  for (unsigned k = 2; k <= n; ++k) {
    BigInt next = (k - 1) * (cur + prev);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

BigInt subfactorial_alternating_sum(unsigned n) {
  BigInt sum = 0;
  BigInt term = factorial(n);  // n!/j! for j = 0
  for (unsigned j = 0; j <= n; ++j) {
    if (j > 0) term /= j;
    if (j % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  return sum;
}

BigInt vidunas_bound(unsigned m) {
  BigInt sum = 0;
  BigInt term = 1;  // m!/m!
  for (unsigned l = m + 1; l-- > 0;) {
    sum += term;
    term *= l;
  }
  return sum;
}

BigInt vidunas_bound_by_faces(unsigned m) {
  BigInt sum = 0;
  for (unsigned l = 0; l <= m; ++l) sum += face_candidate_count(m, l);
  return sum;
}

BigInt lower_bound(unsigned m) {
  BigInt total = vidunas_bound(m) + subfactorial(m);
  if (total % 2 != 0) throw std::logic_error("V(m) + !m is odd");
  return total / 2;
}

BigInt face_candidate_count(unsigned m, unsigned l) {
  if (l > m) return 0;
  return binomial(m, l) * (BigInt(1) << l) * subfactorial(m - l);
}

BigInt face_equilibrium_bound(unsigned m, unsigned l) {
  if (l > m) return 0;
  if (l == 0) return subfactorial(m);
  return binomial(m, l) * (BigInt(1) << (l - 1)) * subfactorial(m - l);
}

namespace {

void check_player(int m, int i) {
  if (m < 1 || i < 1 || i > m) {
    throw std::invalid_argument("player index " + std::to_string(i) + " outside {1.." +
                                std::to_string(m) + "}");
  }
}

}  // namespace

Permutation alpha_permutation(int m, int i) {
  check_player(m, i);
  std::vector<int> images(static_cast<std::size_t>(m));
  for (int j = 1; j <= m; ++j)
    images[static_cast<std::size_t>(j - 1)] = j < i ? j : (j == i ? m : j - 1);
  return Permutation(std::move(images));
}

Permutation beta_permutation(int m, int i) {
  check_player(m, i);
  std::vector<int> images(static_cast<std::size_t>(m));
  for (int j = 1; j <= m; ++j)
    images[static_cast<std::size_t>(j - 1)] = j < i ? m - i + j : (j < m ? j - i + 1 : m);
  return Permutation(std::move(images));
}

Permutation delta_permutation(int m, int i) {
  check_player(m, i);
  std::vector<int> images(static_cast<std::size_t>(m));
  for (int j = 1; j <= m; ++j) {
    int image = i;
    if (j < i)
      image = m - i + j + chi(m - i + j, i);
    else if (j > i)
      image = j - i + chi(j - i, i);
    images[static_cast<std::size_t>(j - 1)] = image;
  }
  return Permutation(std::move(images));
}

bool has_delta_inversion_property(const Permutation& p, int i) {
  const int m = p.size();
  if (i < 1 || i > m || p(i) != i) return false;
  for (int j1 = 1; j1 <= m; ++j1) {
    for (int j2 = j1 + 1; j2 <= m; ++j2) {
      if (j1 == i || j2 == i) continue;
      const bool inverted = p(j1) > p(j2);
      const bool straddles = j1 < i && j2 > i;
      if (inverted != straddles) return false;
    }
  }
  return true;
}

}  // namespace nashcount
