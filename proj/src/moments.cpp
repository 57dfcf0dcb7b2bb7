#include "kpm/moments.hpp"

#include <algorithm>

#include "kpm/errors.hpp"
#include "kpm/fiber_counts.hpp"

namespace kpm {

StirlingCache::StirlingCache(unsigned h_max) : h_max_(h_max), zero_(0) {
  rows_.resize(h_max + 1);
  rows_[0] = {1};
  for (unsigned h = 1; h <= h_max; ++h) {
    rows_[h].assign(h + 1, 0);
    // S(h,t) = t S(h-1,t) + S(h-1,t-1); the t = h column has no first term.
    for (unsigned t = 1; t <= h; ++t) {
      BigInt v = rows_[h - 1][t - 1];
      if (t < h) v += BigInt(t) * rows_[h - 1][t];
      rows_[h][t] = std::move(v);
    }
  }
}

const BigInt& StirlingCache::at(unsigned h, unsigned t) const {
  if (h > h_max_) throw PreconditionError("Stirling cache is too small");
  if (t > h) return zero_;
  return rows_[h][t];
}

BigInt stirling2(unsigned h, unsigned t) {
  StirlingCache cache(h);
  return cache.at(h, t);
}

BigInt stirling2_by_inclusion(unsigned h, unsigned t) {
  if (t > h) return 0;
  BigInt acc = 0;
  for (unsigned j = 0; j <= t; ++j) {
    acc += sign_pm(t - j) * binomial(t, j) * big_pow(j, h);
  }
  return exact_div(acc, factorial(t));
}

BigInt moment_oracle(const FieldCtx& f, MomentKind kind, unsigned param, unsigned h) {
  unsigned width = 0;
  switch (kind) {
    case MomentKind::MD:
      if (param < 2) throw ZeroParameter("MD moments need dimension >= 2");
      width = param - 1;
      break;
    case MomentKind::POW:
      if (param == 0) throw ZeroParameter("POW moments need width >= 1");
      width = 1;
      break;
    case MomentKind::K2:
      width = 2;
      break;
  }
  const auto table = kloosterman_md_all(f, width);
  BigInt acc = 0;
  for (FqElem a = 1; a < f.q(); ++a) {
    const BigInt base = kind == MomentKind::POW ? big_pow(table.values[a], param)
                                                : BigInt(table.values[a]);
    acc += big_pow(base, h);
  }
  return acc;
}

namespace {

// Shared core of the Pless right-hand side: for the identity the full
// q * 2^(h-t) scale comes in as 2^(k+h-t); the recursions pull the same sum
// with an explicit factor q instead.
BigInt pless_rhs(const WeightEnumerator& code, const BigInt& n, unsigned pow2_shift,
                 unsigned h, const StirlingCache& stirling) {
  BigInt acc = 0;
  const std::uint64_t i_top =
      std::min<std::uint64_t>(h, static_cast<std::uint64_t>(code.freq.size()) - 1);
  for (std::uint64_t i = 0; i <= i_top; ++i) {
    if (code.freq[static_cast<std::size_t>(i)] == 0) continue;
    BigInt inner = 0;
    for (unsigned t = static_cast<unsigned>(i); t <= h; ++t) {
      inner += factorial(t) * stirling.at(h, t) * (BigInt(1) << (pow2_shift + h - t)) *
               binomial(n - i, t - i);
    }
    acc += sign_pm(i) * code.freq[static_cast<std::size_t>(i)] * inner;
  }
  return acc;
}

void require_code_reach(const WeightEnumerator& code, const BigInt& n, unsigned h_max) {
  const BigInt needed = n < h_max ? n : BigInt(h_max);
  if (BigInt(code.freq.size()) <= needed) {
    throw PreconditionError("code distribution truncated below weight " + needed.str());
  }
}

MomentSequence run_recursion(MomentKind kind, unsigned param, const FieldCtx& f,
                             const WeightEnumerator& dist, const BigInt& n,
                             const BigInt& n_eff, unsigned h_max) {
  require_code_reach(dist, n, h_max);
  const StirlingCache stirling(h_max);

  MomentSequence seq{kind, param, {}};
  seq.values.reserve(h_max + 1);
  seq.values.push_back(f.q() - 1);
  for (unsigned h = 1; h <= h_max; ++h) {
    BigInt acc = f.q() * (sign_pm(h) * pless_rhs(dist, n, 0, h, stirling));
    for (unsigned l = 0; l < h; ++l) {
      acc += sign_pm(h + l + 1) * binomial(h, l) * big_pow(n_eff, h - l) * seq.values[l];
    }
    seq.values.push_back(std::move(acc));
  }
  return seq;
}

void require_degree(const FieldCtx& f) {
  if (f.r() < 3) {
    throw UnsupportedDegree("moment recursions need r >= 3; the code families degenerate below GF(8)");
  }
}

}  // namespace

PlessReport pless_check(const WeightEnumerator& dual, const WeightEnumerator& code,
                        const BigInt& n, unsigned k, unsigned h_max) {
  if (dual.truncated) throw PreconditionError("Pless check needs the full dual distribution");
  require_code_reach(code, n, h_max);
  const StirlingCache stirling(h_max);

  PlessReport report;
  for (unsigned h = 0; h <= h_max; ++h) {
    BigInt lhs = 0;
    for (std::size_t i = 0; i < dual.freq.size(); ++i) {
      if (dual.freq[i] != 0) {
        lhs += dual.freq[i] * big_pow(BigInt(static_cast<std::uint64_t>(i)), h);
      }
    }
    lhs <<= h;
    BigInt rhs = pless_rhs(code, n, k, h, stirling);
    if (lhs != rhs) throw IdentityViolation(h, lhs.str(), rhs.str());
    report.lhs.push_back(std::move(lhs));
    report.rhs.push_back(std::move(rhs));
  }
  return report;
}

MomentSequence recursive_moments_md(const FieldCtx& f, unsigned n, unsigned h_max) {
  require_degree(f);
  const auto spec = CodeSpec::md(f, n);  // gates n >= 2 and n = 2^s
  const auto dist = weight_distribution(f, delta_formula(f, spec.param), h_max);
  const BigInt len = spec.length();
  return run_recursion(MomentKind::MD, n, f, dist, len, len, h_max);
}

MomentSequence recursive_moments_power(const FieldCtx& f, unsigned m, unsigned h_max) {
  require_degree(f);
  const auto spec = CodeSpec::pow(f, m);
  const auto dist = weight_distribution(f, sigma_formula(f, spec.param), h_max);
  const BigInt len = spec.length();
  return run_recursion(MomentKind::POW, m, f, dist, len, len, h_max);
}

MomentSequence recursive_moments_k2(const FieldCtx& f, unsigned h_max) {
  require_degree(f);
  const auto spec = CodeSpec::pow(f, 2);
  const auto dist = weight_distribution(f, sigma_formula(f, 2), h_max);
  const BigInt q = f.q();
  // Substituting K^2 = K_2 + q into (N - K^2)/2 turns the length into
  // q^2 - 3q + 1 while the true length keeps feeding the binomials.
  return run_recursion(MomentKind::K2, 2, f, dist, spec.length(), q * q - 3 * q + 1, h_max);
}

MomentSequence k2_from_power_moments(const MomentSequence& pow2, std::uint32_t q) {
  if (pow2.kind != MomentKind::POW || pow2.param != 2) {
    throw PreconditionError("binomial bridge needs width-2 POW moments");
  }
  MomentSequence seq{MomentKind::K2, 2, {}};
  seq.values.reserve(pow2.values.size());
  for (unsigned h = 0; h < pow2.values.size(); ++h) {
    BigInt acc = 0;
    for (unsigned i = 0; i <= h; ++i) {
      acc += binomial(h, i) * big_pow(-BigInt(q), h - i) * pow2.values[i];
    }
    seq.values.push_back(std::move(acc));
  }
  return seq;
}

}  // namespace kpm
