#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kpm/bigint.hpp"
#include "kpm/fiber_counts.hpp"

namespace kpm {

// Dense weight arrays (the DP and both enumerators) refuse to materialize
// past this many coordinates unless the caller raises the budget.
inline constexpr std::uint64_t kDefaultDpBudget = 5000;

// Cap on explicitly materialized defining vectors.
inline constexpr std::uint64_t kDefaultVectorBudget = 10'000'000;

// One member of the two code families, over a fixed field. Coordinates are
// indexed by param-tuples of nonzero elements; the binary code C is cut out
// by the defining vector v (u in C iff sum of u_i v_i vanishes), and its
// dual is the q-word code {(tr(a v_i))_i : a in F_q}.
struct CodeSpec {
  const FieldCtx* field = nullptr;
  CodeKind kind = CodeKind::MD;
  unsigned param = 1;

  // MD family indexed by dimension n >= 2; the tuple width is n-1. The
  // closed forms downstream need n to be a power of two; pass allow_any_n
  // only for experiments that stay on the enumeration paths.
  static CodeSpec md(const FieldCtx& f, unsigned n, bool allow_any_n = false);

  // POW family of width m >= 1.
  static CodeSpec pow(const FieldCtx& f, unsigned m);

  BigInt length() const;  // (q-1)^param
  std::uint64_t length_u64(std::uint64_t cap) const;
};

struct DefiningVector {
  CodeSpec spec;
  std::vector<FqElem> entries;
};

// Materializes v: coordinate index decoded in base q-1, low digit first,
// digit d standing for the nonzero element d+1.
DefiningVector build_defining_vector(const CodeSpec& spec,
                                     std::uint64_t budget = kDefaultVectorBudget);

// Bits of the dual codeword attached to a: (tr(a v_i))_i.
std::vector<std::uint8_t> dual_codeword(const DefiningVector& vec, FqElem a);

// Weight of that codeword through the closed form (N minus the matching
// Kloosterman value, halved), never through the vector. The halving must be
// exact; a remainder throws ParityViolation.
BigInt dual_weight(const CodeSpec& spec, FqElem a);

// Same, reusing a table from kloosterman_md_all (width param for MD, width
// 1 for POW) so sweeps over a do not rebuild it.
BigInt dual_weight_with(const CodeSpec& spec, const KsumTable& table, FqElem a);

struct WeightEnumerator {
  BigInt n = 0;               // code length
  std::vector<BigInt> freq;   // freq[w], w = 0 .. tracked maximum
  bool truncated = false;     // true when freq stops short of w = n
  BigInt total() const;
};

struct InjectivityReport {
  // The provable sufficient condition: (q-1)^param beats the worst-case
  // Kloosterman magnitude, compared exactly via squares.
  bool sufficient = false;
  // Direct check that no nonzero a yields the zero dual word.
  bool injective = false;
  std::vector<FqElem> kernel;  // nonzero a with zero dual weight, if any
};

InjectivityReport injectivity_check(const CodeSpec& spec);

// Weight distribution of the q-word dual code as a dense enumerator.
// Requires r >= 3 (the families below GF(8) degenerate) unless allow_r2,
// and an injective a -> codeword map unless force.
WeightEnumerator dual_weight_enumerator(const CodeSpec& spec, bool allow_r2 = false,
                                        bool force = false,
                                        std::uint64_t dp_budget = kDefaultDpBudget);

// Weight distribution of the big code C from the entry histogram alone.
// Dynamic program over (partial field sum, weight) states: each entry value
// beta with multiplicity m contributes a choose(m, nu) transfer that flips
// the partial sum by beta when nu is odd. Passing max_weight truncates every
// row at that weight, which keeps the table polynomial in q even when N is
// astronomically large; the full table is budget-gated instead.
WeightEnumerator weight_distribution(const FieldCtx& f, const CountTable& counts,
                                     std::optional<std::uint64_t> max_weight = {},
                                     std::uint64_t dp_budget = kDefaultDpBudget);

// Weight distribution of C from the dual enumerator:
// A_j = (1/|dual|) sum_i D_i [x^j] (1+x)^(N-i) (1-x)^i.
// dual_size must equal the enumerator's total mass.
WeightEnumerator macwilliams_transform(const WeightEnumerator& dual, const BigInt& n,
                                       const BigInt& dual_size);

}  // namespace kpm
