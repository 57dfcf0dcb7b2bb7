#include "kpm/field.hpp"

#include <bit>

namespace kpm {
namespace {

// Degree of a nonzero polynomial bitmask.
unsigned poly_degree(std::uint32_t p) { return 31u - static_cast<unsigned>(std::countl_zero(p)); }

// Remainder of a mod b over GF(2), both nonzero bitmasks.
std::uint32_t poly_mod(std::uint64_t a, std::uint32_t b) {
  const unsigned db = poly_degree(b);
  while (a >> db) {
    const unsigned da = 63u - static_cast<unsigned>(std::countl_zero(a));
    a ^= static_cast<std::uint64_t>(b) << (da - db);
  }
  return static_cast<std::uint32_t>(a);
}

// Prime factors of n without multiplicity; n < 2^21 here.
std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool FieldCtx::is_irreducible(std::uint32_t poly, unsigned r) {
  if (poly == 0 || poly_degree(poly) != r) return false;
  if ((poly & 1) == 0) return false;  // divisible by x
  // Trial division by every polynomial of degree 1 .. r/2. At r <= 20 that
  // is at most ~2^11 candidates, each reduced in O(r) steps.
  for (unsigned d = 1; 2 * d <= r; ++d) {
    for (std::uint32_t c = (1u << d); c < (2u << d); ++c) {
      if (poly_mod(poly, c) == 0) return false;
    }
  }
  return true;
}

std::uint32_t FieldCtx::default_modulus(unsigned r) {
  if (r < kMinDegree || r > kMaxDegree) {
    throw UnsupportedDegree("extension degree " + std::to_string(r) + " outside [" +
                            std::to_string(kMinDegree) + "," + std::to_string(kMaxDegree) + "]");
  }
  for (std::uint32_t p = (1u << r) | 1u; p < (2u << r); p += 2) {
    if (is_irreducible(p, r)) return p;
  }
  throw ReducibleModulus("no irreducible of degree " + std::to_string(r));  // unreachable
}

FqElem FieldCtx::mul(FqElem a, FqElem b) const {
  std::uint32_t acc = 0;
  while (b) {
    if (b & 1u) acc ^= a;
    b >>= 1;
    a <<= 1;
    if (a & q_) a ^= modulus_;
  }
  return acc;
}

FqElem FieldCtx::inv(FqElem a) const {
  if (a == 0) throw ZeroInverse("inverse of 0");
  return inv_table_[a];
}

FqElem FieldCtx::pow(FqElem a, std::uint64_t e) const {
  FqElem acc = 1;
  while (e) {
    if (e & 1u) acc = mul(acc, a);
    a = mul(a, a);
    e >>= 1;
  }
  return acc;
}

int FieldCtx::character(FqElem c, FqElem x) const {
  if (c == 0) throw ZeroParameter("twist parameter must be nonzero");
  return char_table_[mul(c, x)];
}

FieldCtx FieldCtx::build(unsigned r, std::uint32_t modulus) {
  if (r < kMinDegree || r > kMaxDegree) {
    throw UnsupportedDegree("extension degree " + std::to_string(r) + " outside [" +
                            std::to_string(kMinDegree) + "," + std::to_string(kMaxDegree) + "]");
  }
  if (modulus == 0) {
    modulus = default_modulus(r);
  } else {
    if (poly_degree(modulus) != r) {
      throw DegreeMismatch("modulus degree != " + std::to_string(r));
    }
    if (!is_irreducible(modulus, r)) {
      throw ReducibleModulus("modulus is reducible");
    }
  }

  FieldCtx f;
  f.r_ = r;
  f.q_ = 1u << r;
  f.modulus_ = modulus;

  // tr(x^i) for each basis monomial; trace of arbitrary x is then the
  // parity of popcount(x & trace_mask).
  for (unsigned i = 0; i < r; ++i) {
    FqElem t = 0, p = FqElem{1} << i;
    for (unsigned k = 0; k < r; ++k) {
      t ^= p;
      p = f.mul(p, p);
    }
    if (t > 1) throw VerificationError("trace of basis element not in {0,1}");
    f.trace_mask_ |= t << i;
  }

  f.trace_table_.resize(f.q_);
  f.char_table_.resize(f.q_);
  for (std::uint32_t x = 0; x < f.q_; ++x) {
    const unsigned t = static_cast<unsigned>(std::popcount(x & f.trace_mask_)) & 1u;
    f.trace_table_[x] = static_cast<std::uint8_t>(t);
    f.char_table_[x] = t ? -1 : 1;
    f.trace_zero_count_ += (t == 0);
  }
  if (f.trace_zero_count_ != f.q_ / 2) {
    throw VerificationError("trace is not balanced");
  }

  // Discrete log pair over a multiplicative generator; order checked
  // against the prime factors of q-1.
  const std::uint32_t order = f.q_ - 1;
  const auto factors = prime_factors(order);
  for (FqElem g = 2; g < f.q_; ++g) {
    bool ok = true;
    for (auto p : factors) {
      if (f.pow(g, order / p) == 1u) {
        ok = false;
        break;
      }
    }
    if (ok) {
      f.generator_ = g;
      break;
    }
  }
  if (f.generator_ == 0) throw VerificationError("no multiplicative generator found");

  f.alog_table_.resize(order);
  f.log_table_.assign(f.q_, 0);
  FqElem cur = 1;
  for (std::uint32_t i = 0; i < order; ++i) {
    f.alog_table_[i] = cur;
    f.log_table_[cur] = i;
    cur = f.mul(cur, f.generator_);
  }
  if (cur != 1u) throw VerificationError("generator order mismatch");

  f.inv_table_.assign(f.q_, 0);
  for (std::uint32_t x = 1; x < f.q_; ++x) {
    f.inv_table_[x] = f.alog_table_[(order - f.log_table_[x]) % order];
  }
  return f;
}

}  // namespace kpm
