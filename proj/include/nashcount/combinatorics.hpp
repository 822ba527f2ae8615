#pragma once

// Permutation, derangement and counting primitives for two-action games.
//
// Player indices are 1-based everywhere in this library: a permutation of
// {1..m} is stored as its dense image array, images()[k] == p(k + 1).

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nashcount {

using BigInt = boost::multiprecision::cpp_int;

class Permutation {
 public:
  Permutation() = default;

  /// Throws std::invalid_argument unless `images` is a bijection of {1..m}.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int m);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;
  std::vector<int> fixed_points() const;
  std::vector<int> moved_points() const;
  bool is_fixed(int i) const { return (*this)(i) == i; }
  bool is_derangement() const;
  bool is_identity() const;

  /// Image sequence, e.g. "(2,3,1)".
  std::string to_string() const;
  /// Disjoint cycle notation without 1-cycles, e.g. "(1 3)"; "id" for the identity.
  std::string to_cycle_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  friend class PermutationStream;
  std::vector<int> images_;
};

/// (outer ∘ inner)(i) = outer(inner(i)).
Permutation compose(const Permutation& outer, const Permutation& inner);

/// Lexicographic stream over S_m (or over Der_m), optionally restricted to
/// the permutations whose image of 1 is `first_image`. Streams over disjoint
/// `first_image` values partition the full stream, which is how callers
/// split the work across threads.
class PermutationStream {
 public:
  explicit PermutationStream(int m, bool derangements_only = false,
                             std::optional<int> first_image = std::nullopt);

  /// Advances to the next element; returns nullptr once exhausted.
  const Permutation* next();

 private:
  bool accept() const;

  Permutation current_;
  bool derangements_only_;
  std::optional<int> first_image_;
  bool started_ = false;
  bool done_ = false;
};

template <class Fn>
void for_each_permutation(int m, Fn&& fn) {
  PermutationStream stream(m);
  while (const Permutation* p = stream.next()) fn(*p);
}

template <class Fn>
void for_each_derangement(int m, Fn&& fn) {
  PermutationStream stream(m, true);
  while (const Permutation* p = stream.next()) fn(*p);
}

std::vector<Permutation> all_permutations(int m);
std::vector<Permutation> all_derangements(int m);

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);

/// !n, the number of derangements of n elements.
BigInt subfactorial(unsigned n);
/// !0 = 1, !n = n·!(n-1) + (-1)^n.
BigInt subfactorial_linear_recursion(unsigned n);
/// !0 = 1, !1 = 0, !n = (n-1)(!(n-1) + !(n-2)).
BigInt subfactorial_two_term_recursion(unsigned n);
/// !n = sum_{j=0}^{n} (-1)^j n!/j!.
BigInt subfactorial_alternating_sum(unsigned n);

/// V(m) = sum_{l=0}^{m} m!/l!, the upper bound on equilibria of generic
/// m-player two-action games.
BigInt vidunas_bound(unsigned m);
/// sum_{l=0}^{m} C(m,l)·2^l·!(m-l); equal to vidunas_bound(m).
BigInt vidunas_bound_by_faces(unsigned m);
/// (V(m) + !m) / 2, the equilibrium count achieved by maximal product games.
BigInt lower_bound(unsigned m);

/// Number of equilibrium candidates of a product game on faces with
/// exactly l boundary coordinates: C(m,l)·2^l·!(m-l).
BigInt face_candidate_count(unsigned m, unsigned l);
/// !m for l = 0, C(m,l)·2^(l-1)·!(m-l) for l >= 1.
BigInt face_equilibrium_bound(unsigned m, unsigned l);

template <class T>
constexpr int chi(const T& a, const T& b) {
  return a >= b ? 1 : 0;
}

/// alpha^i: j -> j (j < i), i -> m, j -> j-1 (j > i).
Permutation alpha_permutation(int m, int i);
/// beta^i: j -> m-i+j (j < i), j -> j-i+1 (i <= j < m), m -> m.
Permutation beta_permutation(int m, int i);
/// delta^i = (alpha^i)^-1 ∘ beta^i ∘ alpha^i, evaluated by its closed form.
/// Throws std::invalid_argument unless 1 <= i <= m.
Permutation delta_permutation(int m, int i);

/// True iff p(i) = i and, for j1 < j2 both different from i,
/// p(j1) > p(j2) exactly when j1 < i < j2.
bool has_delta_inversion_property(const Permutation& p, int i);

}  // namespace nashcount
