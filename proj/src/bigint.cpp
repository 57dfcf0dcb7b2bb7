#include "kpm/bigint.hpp"

#include "kpm/errors.hpp"

namespace kpm {

BigInt big_pow(const BigInt& base, unsigned exp) {
  BigInt result = 1;
  BigInt b = base;
  unsigned e = exp;
  while (e) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

BigInt factorial(unsigned n) {
  BigInt result = 1;
  for (unsigned i = 2; i <= n; ++i) result *= i;
  return result;
}

BigInt binomial(const BigInt& n, std::uint64_t k) {
  if (n < 0) throw PreconditionError("binomial: negative top argument");
  if (n < k) return 0;
  // C(n,i) = C(n,i-1) * (n-i+1) / i stays integral at every step.
  BigInt result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= n - i + 1;
    result /= i;
  }
  return result;
}

BigInt exact_div(const BigInt& num, const BigInt& den) {
  BigInt q, r;
  boost::multiprecision::divide_qr(num, den, q, r);
  if (r != 0) {
    throw NonIntegralCount("exact_div: " + num.str() + " not divisible by " + den.str());
  }
  return q;
}

}  // namespace kpm
