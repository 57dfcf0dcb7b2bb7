#pragma once

#include <cstdint>
#include <vector>

#include "kpm/field.hpp"

namespace kpm {

inline constexpr std::uint64_t kDefaultEnumBudget = 1'000'000'000;

// Values of an m-dimensional Kloosterman sum for every a in F_q, as signed
// integers. values[0] holds the degenerate completed sum (-1)^m; entries
// 1 .. q-1 are the K_m(a). m = 0 stores the additive character itself.
struct KsumTable {
  unsigned m = 1;
  std::vector<std::int64_t> values;
};

// K(psi; a) = sum over nonzero alpha of psi(alpha + a/alpha), where psi is
// the canonical character twisted by c (default c = 1, the canonical one).
// Requires a != 0 and twist != 0.
std::int64_t kloosterman(const FieldCtx& f, FqElem a, FqElem twist = 1);

// m-dimensional sum over independent nonzero alpha_1..alpha_m of
// lambda(alpha_1 + ... + alpha_m + a/(alpha_1...alpha_m)), by direct
// enumeration of all (q-1)^m tuples. Throws BudgetExceeded when that count
// exceeds the budget. Requires m >= 1 and a != 0.
std::int64_t kloosterman_md_direct(const FieldCtx& f, unsigned m, FqElem a,
                                   std::uint64_t budget = kDefaultEnumBudget);

// All K_m values at once via m rounds of the multiplicative convolution
// K_j(a) = sum over nonzero alpha of lambda(alpha) K_{j-1}(a/alpha),
// O(m q^2) integer ops instead of (q-1)^m tuple work.
KsumTable kloosterman_md_all(const FieldCtx& f, unsigned m);

// Sum over alpha outside {0,1} of lambda(beta / (alpha^2 + alpha)).
// Requires beta != 0.
std::int64_t artin_schreier_sum(const FieldCtx& f, FqElem beta);

struct ValueRangeEntry {
  long long t = 0;
  std::uint64_t multiplicity = 0;
  // Candidate discriminant arguments associated with the value t. Reported
  // for inspection only; neither is asserted to drive the multiplicity.
  long long disc_q = 0;   // t^2 - q
  long long disc_4q = 0;  // t^2 - 4q
};

struct ValueRangeReport {
  std::vector<long long> predicted;        // t with t^2 < 4q, t = 3 (mod 4)
  std::vector<ValueRangeEntry> observed;   // ascending by t, with counts
  std::vector<long long> missing;          // predicted but never attained
  std::vector<long long> unexpected;       // attained but not predicted
  bool exact_match() const { return missing.empty() && unexpected.empty(); }
};

// Tabulates every value of K(lambda; a) over a in F_q* and compares the
// attained set against the congruence prediction.
ValueRangeReport value_range(const FieldCtx& f);

}  // namespace kpm
