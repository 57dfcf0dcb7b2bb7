#pragma once

#include <cstdint>
#include <vector>

#include "kpm/bigint.hpp"
#include "kpm/char_sums.hpp"
#include "kpm/field.hpp"

namespace kpm {

// MD: tuples scored by alpha_1 + ... + alpha_k + (alpha_1...alpha_k)^-1.
// POW: tuples scored by sum of alpha_i + alpha_i^-1 over the coordinates.
enum class CodeKind { MD, POW };

// Histogram of a defining vector's entries: counts[beta] = number of
// coordinates holding beta. Total mass is (q-1)^param.
struct CountTable {
  CodeKind kind = CodeKind::MD;
  unsigned param = 1;
  std::vector<BigInt> counts;
  BigInt total() const;
};

// Number of param-tuples of nonzero elements whose MD score is beta, for
// every beta, by direct enumeration of all (q-1)^param tuples.
CountTable delta_direct(const FieldCtx& f, unsigned param,
                        std::uint64_t budget = kDefaultEnumBudget);

// Same table without enumerating tuples. When param+1 is a power of two the
// count is ((q-1)^param + 1)/q plus K_{param-1} at beta^-1 (and exactly the
// quotient at beta = 0). Otherwise character inversion over the K_param
// table gives delta(beta) = [(q-1)^param + sum over a != 0 of
// lambda(a beta) K_param(a^{param+1})] / q; the division is exact.
CountTable delta_formula(const FieldCtx& f, unsigned param);

// Number of param-tuples of nonzero elements whose POW score is beta, by
// direct enumeration.
CountTable sigma_direct(const FieldCtx& f, unsigned param,
                        std::uint64_t budget = kDefaultEnumBudget);

// Same table via param-fold additive convolution of the single-coordinate
// character profile, plus the constant ((q-1)^param + (-1)^(param+1))/q,
// again an exact division.
CountTable sigma_formula(const FieldCtx& f, unsigned param);

}  // namespace kpm
