#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace kpm {

// Exact arbitrary-precision integer. Everything downstream (weight
// distributions, moments, identity checks) is integer-exact; no floating
// point appears anywhere in the library.
using BigInt = boost::multiprecision::cpp_int;

// base^exp with 0^0 = 1.
BigInt big_pow(const BigInt& base, unsigned exp);

BigInt factorial(unsigned n);

// Binomial coefficient with an arbitrarily large top argument. Returns 0
// when k > n. Requires n >= 0.
BigInt binomial(const BigInt& n, std::uint64_t k);

// Quotient num/den, throwing NonIntegralCount unless den divides num.
// Used wherever a formula promises an integer (fiber counts, MacWilliams).
BigInt exact_div(const BigInt& num, const BigInt& den);

// (-1)^e as a BigInt-friendly int.
inline int sign_pm(std::uint64_t e) { return (e & 1) ? -1 : 1; }

}  // namespace kpm
