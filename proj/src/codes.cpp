#include "kpm/codes.hpp"

#include <algorithm>
#include <limits>

#include "kpm/errors.hpp"

namespace kpm {
namespace {

void require_field(const CodeSpec& spec) {
  if (spec.field == nullptr) throw PreconditionError("code spec has no field");
}

// Kloosterman value driving the closed-form weight of the dual word at a.
BigInt dual_ksum_value(const CodeSpec& spec, const KsumTable& table, FqElem a) {
  if (spec.kind == CodeKind::MD) {
    if (table.m != spec.param) throw PreconditionError("ksum table width mismatch");
    return table.values[a];
  }
  if (table.m != 1) throw PreconditionError("ksum table width mismatch");
  return big_pow(table.values[a], spec.param);
}

KsumTable dual_table(const CodeSpec& spec) {
  return kloosterman_md_all(*spec.field, spec.kind == CodeKind::MD ? spec.param : 1);
}

}  // namespace

CodeSpec CodeSpec::md(const FieldCtx& f, unsigned n, bool allow_any_n) {
  if (n < 2) throw ZeroParameter("MD code dimension must be >= 2");
  if (!allow_any_n && (n & (n - 1)) != 0) {
    throw NotPowerOfTwo("MD code dimension " + std::to_string(n) +
                        " is not a power of two; closed forms do not apply");
  }
  return CodeSpec{&f, CodeKind::MD, n - 1};
}

CodeSpec CodeSpec::pow(const FieldCtx& f, unsigned m) {
  if (m == 0) throw ZeroParameter("POW code width must be >= 1");
  return CodeSpec{&f, CodeKind::POW, m};
}

BigInt CodeSpec::length() const {
  require_field(*this);
  return big_pow(field->q() - 1, param);
}

std::uint64_t CodeSpec::length_u64(std::uint64_t cap) const {
  require_field(*this);
  const std::uint32_t base = field->q() - 1;
  std::uint64_t n = 1;
  for (unsigned i = 0; i < param; ++i) {
    if (n > cap / base) {
      throw BudgetExceeded("code length (q-1)^" + std::to_string(param) + " exceeds " +
                           std::to_string(cap));
    }
    n *= base;
  }
  if (n > cap) {
    throw BudgetExceeded("code length (q-1)^" + std::to_string(param) + " exceeds " +
                         std::to_string(cap));
  }
  return n;
}

DefiningVector build_defining_vector(const CodeSpec& spec, std::uint64_t budget) {
  require_field(spec);
  const FieldCtx& f = *spec.field;
  const std::uint64_t n = spec.length_u64(budget);
  const std::uint32_t base = f.q() - 1;

  DefiningVector vec{spec, std::vector<FqElem>(n)};
  for (std::uint64_t i = 0; i < n; ++i) {
    std::uint64_t rest = i;
    FqElem score = 0;
    FqElem prod = 1;
    for (unsigned j = 0; j < spec.param; ++j) {
      const FqElem alpha = static_cast<FqElem>(rest % base) + 1;
      rest /= base;
      if (spec.kind == CodeKind::MD) {
        score ^= alpha;
        prod = f.mul(prod, alpha);
      } else {
        score ^= alpha ^ f.inv(alpha);
      }
    }
    vec.entries[i] = spec.kind == CodeKind::MD ? score ^ f.inv(prod) : score;
  }
  return vec;
}

std::vector<std::uint8_t> dual_codeword(const DefiningVector& vec, FqElem a) {
  const FieldCtx& f = *vec.spec.field;
  std::vector<std::uint8_t> bits(vec.entries.size());
  for (std::size_t i = 0; i < vec.entries.size(); ++i) {
    bits[i] = static_cast<std::uint8_t>(f.trace(f.mul(a, vec.entries[i])));
  }
  return bits;
}

BigInt dual_weight_with(const CodeSpec& spec, const KsumTable& table, FqElem a) {
  require_field(spec);
  if (a == 0) return 0;
  const BigInt doubled = spec.length() - dual_ksum_value(spec, table, a);
  if (boost::multiprecision::bit_test(doubled, 0)) {
    throw ParityViolation("dual weight numerator is odd at a=" + std::to_string(a));
  }
  return doubled >> 1;
}

BigInt dual_weight(const CodeSpec& spec, FqElem a) {
  require_field(spec);
  if (a == 0) return 0;
  return dual_weight_with(spec, dual_table(spec), a);
}

BigInt WeightEnumerator::total() const {
  BigInt t = 0;
  for (const auto& c : freq) t += c;
  return t;
}

InjectivityReport injectivity_check(const CodeSpec& spec) {
  require_field(spec);
  const FieldCtx& f = *spec.field;
  InjectivityReport report;

  // (q-1)^param > bound * q^(param/2) with bound = param+1 (MD) or 2^param
  // (POW), compared exactly by squaring both sides.
  const BigInt lhs2 = big_pow(f.q() - 1, 2 * spec.param);
  const BigInt bound = spec.kind == CodeKind::MD ? BigInt(spec.param + 1)
                                                 : big_pow(2, spec.param);
  const BigInt rhs2 = bound * bound * big_pow(f.q(), spec.param);
  report.sufficient = lhs2 > rhs2;

  const auto table = dual_table(spec);
  for (FqElem a = 1; a < f.q(); ++a) {
    if (dual_weight_with(spec, table, a) == 0) report.kernel.push_back(a);
  }
  report.injective = report.kernel.empty();
  return report;
}

WeightEnumerator dual_weight_enumerator(const CodeSpec& spec, bool allow_r2, bool force,
                                        std::uint64_t dp_budget) {
  require_field(spec);
  const FieldCtx& f = *spec.field;
  if (f.r() < 3 && !allow_r2) {
    throw UnsupportedDegree("dual weight enumerator needs r >= 3 (override to explore GF(4))");
  }
  if (!force) {
    const auto report = injectivity_check(spec);
    if (!report.injective) {
      throw InjectivityFailure("dual words collide; a=" + std::to_string(report.kernel.front()) +
                               " maps to the zero word");
    }
  }

  const std::uint64_t n = spec.length_u64(dp_budget);
  WeightEnumerator enumr;
  enumr.n = n;
  enumr.freq.assign(n + 1, 0);
  const auto table = dual_table(spec);
  ++enumr.freq[0];  // a = 0
  for (FqElem a = 1; a < f.q(); ++a) {
    const BigInt w = dual_weight_with(spec, table, a);
    enumr.freq[static_cast<std::size_t>(static_cast<std::uint64_t>(w))] += 1;
  }
  return enumr;
}

WeightEnumerator weight_distribution(const FieldCtx& f, const CountTable& counts,
                                     std::optional<std::uint64_t> max_weight,
                                     std::uint64_t dp_budget) {
  const std::uint32_t q = f.q();
  if (counts.counts.size() != q) throw PreconditionError("count table size != q");
  const BigInt n = counts.total();

  std::uint64_t track;  // rows carry weights 0 .. track
  if (max_weight) {
    track = *max_weight;
    if (n <= track) track = static_cast<std::uint64_t>(n);
  } else {
    if (n > dp_budget) {
      throw BudgetExceeded("full weight table over " + n.str() + " coordinates exceeds budget " +
                           std::to_string(dp_budget));
    }
    track = static_cast<std::uint64_t>(n);
  }
  const std::size_t width = static_cast<std::size_t>(track) + 1;

  // dp[s][j]: subsets of the processed coordinates with field-sum s and
  // size j (sizes above `track` are irrelevant downstream and dropped).
  std::vector<std::vector<BigInt>> dp(q, std::vector<BigInt>(width, 0));
  dp[0][0] = 1;

  std::vector<BigInt> binom_row(width), out_a(width), out_b(width);
  for (std::uint32_t beta = 0; beta < q; ++beta) {
    if (counts.counts[beta] == 0) continue;
    const BigInt& mult = counts.counts[beta];
    const std::uint64_t top = mult > track ? track : static_cast<std::uint64_t>(mult);
    for (std::uint64_t nu = 0; nu <= top; ++nu) binom_row[nu] = binomial(mult, nu);

    if (beta == 0) {
      // Zero entries never move the field sum; plain size convolution.
      for (std::uint32_t s = 0; s < q; ++s) {
        auto& row = dp[s];
        std::fill(out_a.begin(), out_a.end(), 0);
        for (std::size_t j = 0; j < width; ++j) {
          if (row[j] == 0) continue;
          const std::uint64_t cap = std::min<std::uint64_t>(top, track - j);
          for (std::uint64_t nu = 0; nu <= cap; ++nu) out_a[j + nu] += row[j] * binom_row[nu];
        }
        row.swap(out_a);
      }
      continue;
    }

    for (std::uint32_t s = 0; s < q; ++s) {
      const std::uint32_t t = s ^ beta;
      if (t < s) continue;  // each pair once
      auto& row_s = dp[s];
      auto& row_t = dp[t];
      std::fill(out_a.begin(), out_a.end(), 0);
      std::fill(out_b.begin(), out_b.end(), 0);
      for (std::size_t j = 0; j < width; ++j) {
        const bool live_s = row_s[j] != 0;
        const bool live_t = row_t[j] != 0;
        if (!live_s && !live_t) continue;
        const std::uint64_t cap = std::min<std::uint64_t>(top, track - j);
        for (std::uint64_t nu = 0; nu <= cap; ++nu) {
          // Odd picks of beta flip the partial sum between s and t.
          if (nu & 1) {
            if (live_s) out_b[j + nu] += row_s[j] * binom_row[nu];
            if (live_t) out_a[j + nu] += row_t[j] * binom_row[nu];
          } else {
            if (live_s) out_a[j + nu] += row_s[j] * binom_row[nu];
            if (live_t) out_b[j + nu] += row_t[j] * binom_row[nu];
          }
        }
      }
      row_s.swap(out_a);
      row_t.swap(out_b);
    }
  }

  WeightEnumerator enumr;
  enumr.n = n;
  enumr.freq = std::move(dp[0]);
  enumr.truncated = BigInt(track) < n;
  return enumr;
}

WeightEnumerator macwilliams_transform(const WeightEnumerator& dual, const BigInt& n,
                                       const BigInt& dual_size) {
  if (dual.truncated) throw PreconditionError("MacWilliams needs the full dual enumerator");
  if (dual.total() != dual_size) throw PreconditionError("dual size mismatch");
  if (n != dual.n) throw PreconditionError("length mismatch");
  if (n < 0 || n > BigInt(std::numeric_limits<std::uint64_t>::max())) {
    throw BudgetExceeded("cannot materialize transform of length " + n.str());
  }
  const std::uint64_t len = static_cast<std::uint64_t>(n);
  const std::size_t width = static_cast<std::size_t>(len) + 1;

  WeightEnumerator out;
  out.n = n;
  out.freq.assign(width, 0);

  // Coefficients of (1+x)^(n-i) (1-x)^i satisfy
  //   (j+1) c_{j+1} = (n-2i) c_j + (j-1-n) c_{j-1},
  // from (1-x^2) P' = ((n-2i) - n x) P; every division is exact.
  std::vector<BigInt> coeff(width);
  for (std::size_t i = 0; i < dual.freq.size(); ++i) {
    if (dual.freq[i] == 0) continue;
    coeff.assign(width, 0);
    coeff[0] = 1;
    const BigInt lead = n - BigInt(2) * BigInt(static_cast<std::uint64_t>(i));
    for (std::size_t j = 0; j + 1 < width; ++j) {
      BigInt next = lead * coeff[j];
      if (j > 0) next += (BigInt(static_cast<std::uint64_t>(j)) - 1 - n) * coeff[j - 1];
      coeff[j + 1] = exact_div(next, BigInt(static_cast<std::uint64_t>(j)) + 1);
    }
    for (std::size_t j = 0; j < width; ++j) {
      if (coeff[j] != 0) out.freq[j] += dual.freq[i] * coeff[j];
    }
  }

  for (auto& c : out.freq) c = exact_div(c, dual_size);
  return out;
}

}  // namespace kpm
