#include "nashcount/halton.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace nashcount {

namespace {

std::vector<unsigned> first_primes(int count) {
  std::vector<unsigned> primes;
  for (unsigned n = 2; static_cast<int>(primes.size()) < count; ++n) {
    bool prime = true;
    for (unsigned p : primes) {
      if (p * p > n) break;
      if (n % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(n);
  }
  return primes;
}

}  // namespace

double radical_inverse(unsigned base, std::uint64_t index) {
  const double inv_base = 1.0 / base;
  double inv = inv_base;
  double result = 0.0;
  while (index > 0) {
    result += static_cast<double>(index % base) * inv;
    index /= base;
    inv *= inv_base;
  }
  return result;
}

HaltonSequence::HaltonSequence(int dimensions, std::uint64_t seed)
    : bases_(first_primes(dimensions)), shift_(static_cast<std::size_t>(dimensions), 0.0) {
  if (dimensions < 0) throw std::invalid_argument("HaltonSequence: negative dimension");
  if (seed != 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      0x68616c74u};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto& s : shift_) s = unit(rng);
  }
}

std::vector<double> HaltonSequence::point(std::uint64_t index) const {
  std::vector<double> x(bases_.size());
  for (std::size_t d = 0; d < bases_.size(); ++d) {
    const double v = radical_inverse(bases_[d], index) + shift_[d];
    x[d] = v - std::floor(v);
  }
  return x;
}

}  // namespace nashcount
