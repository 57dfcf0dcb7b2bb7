#pragma once

#include <cstdint>
#include <vector>

#include "kpm/bigint.hpp"
#include "kpm/codes.hpp"

namespace kpm {

enum class MomentKind { MD, POW, K2 };

// values[h] = sum over a in F_q* of X(a)^h, where X is K_{n-1} (MD, param
// n), K^m (POW, param m), or the two-dimensional sum K_2 (K2). values[0] is
// always q-1.
struct MomentSequence {
  MomentKind kind = MomentKind::MD;
  unsigned param = 0;
  std::vector<BigInt> values;
};

// Stirling numbers of the second kind via the additive triangle.
class StirlingCache {
 public:
  explicit StirlingCache(unsigned h_max);
  const BigInt& at(unsigned h, unsigned t) const;  // 0 when t > h
  unsigned h_max() const { return h_max_; }

 private:
  unsigned h_max_;
  std::vector<std::vector<BigInt>> rows_;
  BigInt zero_;
};

BigInt stirling2(unsigned h, unsigned t);

// Same number by inclusion-exclusion over surjections; cross-checks the
// triangle through a completely different computation.
BigInt stirling2_by_inclusion(unsigned h, unsigned t);

// Moment straight from a Kloosterman table: builds the width-(param-1) or
// width-1 or width-2 table and sums h-th powers over nonzero a.
BigInt moment_oracle(const FieldCtx& f, MomentKind kind, unsigned param, unsigned h);

// Both sides of the binary power-moment identity for h = 0 .. h_max,
// scaled by 2^h so everything stays integral:
//   2^h sum_i i^h B_i =
//   sum_{i <= min(n,h)} (-1)^i A_i sum_{t=i}^{h} t! S(h,t) 2^(k+h-t) C(n-i, t-i)
// with B the dual distribution (dimension k) and A the code distribution.
struct PlessReport {
  std::vector<BigInt> lhs;
  std::vector<BigInt> rhs;
};

// Verifies the identity order by order; the first mismatch throws
// IdentityViolation carrying h and both sides. code may be truncated as
// long as it reaches weight min(n, h_max).
PlessReport pless_check(const WeightEnumerator& dual, const WeightEnumerator& code,
                        const BigInt& n, unsigned k, unsigned h_max);

// The recursive route: moments from the code distribution alone.
// MK^h = sum_{l<h} (-1)^(h+l+1) C(h,l) N_eff^(h-l) MK^l
//      + q sum_{i<=h} (-1)^(h+i) A_i sum_{t=i}^h t! S(h,t) 2^(h-t) C(N-i, t-i)
// where N_eff = N for MD/POW and q^2-3q+1 for K2 (the length with the
// K^2 = K_2 + q shift folded in).
MomentSequence recursive_moments_md(const FieldCtx& f, unsigned n, unsigned h_max);
MomentSequence recursive_moments_power(const FieldCtx& f, unsigned m, unsigned h_max);
MomentSequence recursive_moments_k2(const FieldCtx& f, unsigned h_max);

// K_2 = K^2 - q turns width-2 POW moments into K2 moments binomially:
// MK2^h = sum_i C(h,i) (-q)^(h-i) * POW2[i]. Input must be the POW
// sequence of width 2.
MomentSequence k2_from_power_moments(const MomentSequence& pow2, std::uint32_t q);

}  // namespace kpm
