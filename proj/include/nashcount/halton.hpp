#pragma once

#include <cstdint>
#include <vector>

namespace nashcount {

double radical_inverse(unsigned base, std::uint64_t index);

/// Halton points in [0,1)^d (prime bases 2, 3, 5, ...), optionally shifted
/// modulo 1 by a seed-derived random vector (Cranley-Patterson rotation).
/// Seed 0 means no shift.
class HaltonSequence {
 public:
  HaltonSequence(int dimensions, std::uint64_t seed = 0);

  int dimensions() const { return static_cast<int>(bases_.size()); }
  /// Point number `index` (index 0 is skipped by callers that want to avoid
  /// the origin).
  std::vector<double> point(std::uint64_t index) const;

 private:
  std::vector<unsigned> bases_;
  std::vector<double> shift_;
};

}  // namespace nashcount
