#pragma once

#include <cstdint>
#include <vector>

#include "kpm/errors.hpp"

namespace kpm {

// Element of GF(2^r) in a polynomial basis: bit i holds the coefficient of
// x^i, so codes run 0 .. 2^r-1 and addition is XOR.
using FqElem = std::uint32_t;

inline constexpr unsigned kMinDegree = 2;
inline constexpr unsigned kMaxDegree = 20;

// All tables for one concrete GF(2^r): multiplication, inversion via a
// discrete log pair, the absolute trace, and the canonical additive
// character x -> (-1)^tr(x).
class FieldCtx {
 public:
  // modulus = 0 picks the lexicographically smallest irreducible of degree r
  // (bitmask including the leading x^r term, e.g. r=3 -> 0xb = x^3+x+1).
  static FieldCtx build(unsigned r, std::uint32_t modulus = 0);

  // Degree-r polynomial bitmasks only; irreducibility by trial division.
  static bool is_irreducible(std::uint32_t poly, unsigned r);
  static std::uint32_t default_modulus(unsigned r);

  unsigned r() const { return r_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t modulus() const { return modulus_; }

  FqElem add(FqElem a, FqElem b) const { return a ^ b; }
  FqElem mul(FqElem a, FqElem b) const;
  FqElem inv(FqElem a) const;          // throws ZeroInverse on a = 0
  FqElem pow(FqElem a, std::uint64_t e) const;

  // Absolute trace tr(x) = x + x^2 + ... + x^(2^(r-1)), values in {0,1}.
  unsigned trace(FqElem x) const { return trace_table_[x]; }

  // Canonical additive character lambda(x) = (-1)^tr(x).
  int character(FqElem x) const { return char_table_[x]; }

  // Twisted character psi_c(x) = lambda(c x) for c != 0.
  int character(FqElem c, FqElem x) const;

  // Number of x in F_q with tr(x) = 0; always q/2.
  std::uint32_t trace_zero_count() const { return trace_zero_count_; }

  // A fixed multiplicative generator (smallest element code that works).
  FqElem generator() const { return generator_; }

 private:
  FieldCtx() = default;

  unsigned r_ = 0;
  std::uint32_t q_ = 0;
  std::uint32_t modulus_ = 0;
  std::uint32_t trace_mask_ = 0;  // bit i = tr(x^i); trace is a parity over it
  std::uint32_t trace_zero_count_ = 0;
  FqElem generator_ = 0;
  std::vector<std::uint8_t> trace_table_;
  std::vector<std::int8_t> char_table_;
  std::vector<FqElem> inv_table_;
  std::vector<std::uint32_t> log_table_;   // log_table_[g^i] = i
  std::vector<FqElem> alog_table_;         // alog_table_[i] = g^i, i < q-1
};

}  // namespace kpm
