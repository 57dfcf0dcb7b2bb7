#pragma once

// Brute-force references used only by tests: definitional, slow, and kept
// deliberately independent of the library's closed forms.

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "kpm/codes.hpp"

namespace kpm::testing {

// Weight histogram of {u in F_2^N : sum u_i v_i = 0} by walking all 2^N
// subsets in Gray-code order.
inline std::vector<BigInt> brute_weight_distribution(const DefiningVector& vec) {
  const std::size_t n = vec.entries.size();
  if (n > 24) throw std::runtime_error("brute force capped at 24 coordinates");
  std::vector<BigInt> hist(n + 1, 0);
  FqElem s = 0;
  ++hist[0];
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << n); ++i) {
    s ^= vec.entries[std::countr_zero(i)];
    if (s == 0) ++hist[static_cast<std::size_t>(std::popcount(i ^ (i >> 1)))];
  }
  return hist;
}

// Histogram of popcounts of the q dual codewords, materialized bit by bit.
inline std::vector<BigInt> brute_dual_distribution(const DefiningVector& vec) {
  const auto& f = *vec.spec.field;
  std::vector<BigInt> hist(vec.entries.size() + 1, 0);
  for (FqElem a = 0; a < f.q(); ++a) {
    std::size_t w = 0;
    for (auto bit : dual_codeword(vec, a)) w += bit;
    ++hist[w];
  }
  return hist;
}

}  // namespace kpm::testing
