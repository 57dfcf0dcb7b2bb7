#include "kpm/verify.hpp"

#include <bit>
#include <chrono>
#include <functional>
#include <optional>

#include "kpm/codes.hpp"
#include "kpm/errors.hpp"
#include "kpm/fiber_counts.hpp"
#include "kpm/moments.hpp"

namespace kpm {
namespace {

struct Skip {
  std::string reason;
};

// A check either passes (nullopt), fails (detail string), or throws Skip.
using CheckFn = std::function<std::optional<std::string>()>;

void run_check(VerifyReport& report, const std::string& name, const CheckFn& fn) {
  CheckResult result;
  result.name = name;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (auto detail = fn()) {
      result.status = CheckStatus::Fail;
      result.detail = *detail;
    } else {
      result.status = CheckStatus::Pass;
    }
  } catch (const Skip& s) {
    result.status = CheckStatus::Skipped;
    result.detail = s.reason;
  } catch (const std::exception& e) {
    result.status = CheckStatus::Fail;
    result.detail = e.what();
  }
  const auto t1 = std::chrono::steady_clock::now();
  result.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  report.checks.push_back(std::move(result));
}

std::uint64_t pow_u64_capped(std::uint64_t base, unsigned e, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (v > cap / base) return cap + 1;
    v *= base;
  }
  return v;
}


void need_square(std::uint32_t q, std::uint64_t budget) {
  if (static_cast<std::uint64_t>(q) * q > budget) {
    throw Skip{"q^2 work exceeds budget"};
  }
}

std::string at_a(FqElem a) { return "a=" + std::to_string(a); }

// Deterministic nonzero sample: powers of the generator, spread over the
// whole multiplicative group.
std::vector<FqElem> sample_units(const FieldCtx& f, std::size_t count) {
  std::vector<FqElem> out;
  const std::uint64_t order = f.q() - 1;
  if (order <= count) {
    for (FqElem a = 1; a < f.q(); ++a) out.push_back(a);
    return out;
  }
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(f.pow(f.generator(), 1 + (order * i) / count));
  }
  return out;
}

// Code grid shared by the distribution checks: every family member whose
// length fits the cap.
std::vector<CodeSpec> code_grid(const FieldCtx& f, std::uint64_t cap) {
  std::vector<CodeSpec> grid;
  for (unsigned n : {2u, 4u}) {
    const auto spec = CodeSpec::md(f, n);
    if (pow_u64_capped(f.q() - 1, spec.param, cap) <= cap) grid.push_back(spec);
  }
  for (unsigned m : {1u, 2u, 3u}) {
    const auto spec = CodeSpec::pow(f, m);
    if (pow_u64_capped(f.q() - 1, spec.param, cap) <= cap) grid.push_back(spec);
  }
  return grid;
}

std::string spec_name(const CodeSpec& spec) {
  return spec.kind == CodeKind::MD ? "md(n=" + std::to_string(spec.param + 1) + ")"
                                   : "pow(m=" + std::to_string(spec.param) + ")";
}

std::vector<BigInt> brute_weights(const DefiningVector& vec) {
  const std::size_t n = vec.entries.size();
  std::vector<BigInt> hist(n + 1, 0);
  FqElem s = 0;
  ++hist[0];
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << n); ++i) {
    s ^= vec.entries[std::countr_zero(i)];
    if (s == 0) ++hist[static_cast<std::size_t>(std::popcount(i ^ (i >> 1)))];
  }
  return hist;
}

}  // namespace

bool VerifyReport::ok() const {
  for (const auto& c : checks) {
    if (c.status == CheckStatus::Fail) return false;
  }
  return true;
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

const char* to_string(VerifyLevel l) { return l == VerifyLevel::Fast ? "fast" : "full"; }

VerifyReport run_verification(const FieldCtx& f, VerifyLevel level, std::uint64_t budget) {
  VerifyReport report;
  report.r = f.r();
  report.q = f.q();
  report.level = level;

  const bool full = level == VerifyLevel::Full;
  const std::uint32_t q = f.q();
  const std::uint64_t dp_cap = full ? kDefaultDpBudget : 400;
  const unsigned pless_hmax = full ? 8 : 6;
  const unsigned md_hmax = full ? 6 : 4;
  const unsigned pow_hmax = full ? 5 : 3;
  const unsigned k2_hmax = full ? 5 : 4;

  run_check(report, "field_axioms", [&]() -> std::optional<std::string> {
    const bool exhaustive = q <= 64;
    const auto elems = [&]() {
      std::vector<FqElem> v;
      if (exhaustive) {
        for (FqElem a = 0; a < q; ++a) v.push_back(a);
      } else {
        v = sample_units(f, 24);
        v.push_back(0);
        v.push_back(1);
      }
      return v;
    }();
    for (FqElem a : elems) {
      if (f.mul(a, 1) != a) return "unit law fails at " + at_a(a);
      if (a != 0 && f.mul(a, f.inv(a)) != 1) return "inverse fails at " + at_a(a);
      for (FqElem b : elems) {
        if (f.mul(a, b) != f.mul(b, a)) return "commutativity fails";
        for (FqElem c : elems) {
          if (f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c))) return "associativity fails";
          if (f.mul(a, b ^ c) != (f.mul(a, b) ^ f.mul(a, c))) return "distributivity fails";
        }
      }
    }
    long long char_sum = 0;
    for (FqElem x = 0; x < q; ++x) char_sum += f.character(x);
    if (char_sum != 0) return "character does not sum to zero";
    if (f.trace_zero_count() != q / 2) return "trace is unbalanced";
    return std::nullopt;
  });

  run_check(report, "value_range", [&]() -> std::optional<std::string> {
    need_square(q, budget);
    const auto vr = value_range(f);
    if (!vr.missing.empty()) {
      return "predicted value " + std::to_string(vr.missing.front()) + " never attained";
    }
    if (!vr.unexpected.empty()) {
      return "value " + std::to_string(vr.unexpected.front()) + " outside prediction";
    }
    return std::nullopt;
  });

  run_check(report, "k2_identity", [&]() -> std::optional<std::string> {
    need_square(q, budget);
    const auto k1 = kloosterman_md_all(f, 1);
    const auto k2 = kloosterman_md_all(f, 2);
    for (FqElem a = 1; a < q; ++a) {
      if (k2.values[a] != k1.values[a] * k1.values[a] - static_cast<std::int64_t>(q)) {
        return "K_2 != K^2 - q at " + at_a(a);
      }
    }
    return std::nullopt;
  });

  run_check(report, "artin_schreier", [&]() -> std::optional<std::string> {
    need_square(q, budget);
    for (FqElem beta = 1; beta < q; ++beta) {
      if (artin_schreier_sum(f, beta) != kloosterman(f, beta) - 1) {
        return "quadratic sum != K - 1 at beta=" + std::to_string(beta);
      }
    }
    return std::nullopt;
  });

  run_check(report, "twist_law", [&]() -> std::optional<std::string> {
    need_square(q, budget);
    const auto cs = q <= 64 && !(!full && q > 16) ? sample_units(f, q) : sample_units(f, full ? 64 : 8);
    for (FqElem c : cs) {
      for (FqElem a = 1; a < q; ++a) {
        if (kloosterman(f, a, c) != kloosterman(f, f.mul(f.mul(c, c), a))) {
          return "twist law fails at c=" + std::to_string(c) + ", " + at_a(a);
        }
      }
    }
    return std::nullopt;
  });

  run_check(report, "deligne_bound", [&]() -> std::optional<std::string> {
    need_square(q, budget);
    for (unsigned m = 1; m <= 3; ++m) {
      const auto table = kloosterman_md_all(f, m);
      const BigInt cap = BigInt((m + 1)) * (m + 1) * big_pow(q, m);
      for (FqElem a = 1; a < q; ++a) {
        if (BigInt(table.values[a]) * table.values[a] > cap) {
          return "bound fails at m=" + std::to_string(m) + ", " + at_a(a);
        }
        if (m == 1 && ((table.values[a] % 4) + 4) % 4 != 3) {
          return "K not 3 mod 4 at " + at_a(a);
        }
      }
    }
    return std::nullopt;
  });

  run_check(report, "fiber_md", [&]() -> std::optional<std::string> {
    bool ran = false;
    for (unsigned param = 1; param <= 3; ++param) {
      if (pow_u64_capped(q - 1, param, budget) > budget) continue;
      ran = true;
      const auto direct = delta_direct(f, param, budget);
      const auto formula = delta_formula(f, param);
      for (std::uint32_t beta = 0; beta < q; ++beta) {
        if (direct.counts[beta] != formula.counts[beta]) {
          return "delta mismatch at param=" + std::to_string(param) +
                 ", beta=" + std::to_string(beta);
        }
      }
      if (formula.total() != big_pow(q - 1, param)) return "delta total mass off";
    }
    if (!ran) throw Skip{"all tuple counts exceed budget"};
    return std::nullopt;
  });

  run_check(report, "fiber_pow", [&]() -> std::optional<std::string> {
    bool ran = false;
    for (unsigned param = 1; param <= 3; ++param) {
      if (pow_u64_capped(q - 1, param, budget) > budget) continue;
      ran = true;
      const auto direct = sigma_direct(f, param, budget);
      const auto formula = sigma_formula(f, param);
      for (std::uint32_t beta = 0; beta < q; ++beta) {
        if (direct.counts[beta] != formula.counts[beta]) {
          return "sigma mismatch at param=" + std::to_string(param) +
                 ", beta=" + std::to_string(beta);
        }
      }
      if (formula.total() != big_pow(q - 1, param)) return "sigma total mass off";
    }
    if (!ran) throw Skip{"all tuple counts exceed budget"};
    return std::nullopt;
  });

  run_check(report, "char_reconstruction", [&]() -> std::optional<std::string> {
    need_square(q, budget);
    for (unsigned param = 1; param <= 3; ++param) {
      const auto delta = delta_formula(f, param);
      const auto sigma = sigma_formula(f, param);
      const auto ktab = kloosterman_md_all(f, param);
      const auto k1 = kloosterman_md_all(f, 1);
      for (FqElem a = 1; a < q; ++a) {
        BigInt dsum = 0, ssum = 0;
        for (FqElem beta = 0; beta < q; ++beta) {
          const int chi = f.character(f.mul(a, beta));
          dsum += delta.counts[beta] * chi;
          ssum += sigma.counts[beta] * chi;
        }
        if (dsum != ktab.values[f.pow(a, param + 1)]) {
          return "delta transform misses K at param=" + std::to_string(param) + ", " + at_a(a);
        }
        if (ssum != big_pow(k1.values[a], param)) {
          return "sigma transform misses K^m at param=" + std::to_string(param) + ", " + at_a(a);
        }
      }
    }
    return std::nullopt;
  });

  run_check(report, "dual_weights", [&]() -> std::optional<std::string> {
    if (f.r() < 3) throw Skip{"code families need r >= 3"};
    const auto grid = code_grid(f, std::min<std::uint64_t>(dp_cap, budget));
    if (grid.empty()) throw Skip{"no family member fits the cap"};
    for (const auto& spec : grid) {
      const auto vec = build_defining_vector(spec);
      const auto table = kloosterman_md_all(f, spec.kind == CodeKind::MD ? spec.param : 1);
      for (FqElem a = 0; a < q; ++a) {
        std::size_t pop = 0;
        for (auto bit : dual_codeword(vec, a)) pop += bit;
        if (dual_weight_with(spec, table, a) != pop) {
          return spec_name(spec) + ": closed-form weight != popcount at " + at_a(a);
        }
      }
    }
    return std::nullopt;
  });

  run_check(report, "weight_dist_brute", [&]() -> std::optional<std::string> {
    if (f.r() < 3) throw Skip{"code families need r >= 3"};
    const auto grid = code_grid(f, 20);
    if (grid.empty()) throw Skip{"no family member has <= 20 coordinates"};
    for (const auto& spec : grid) {
      const auto vec = build_defining_vector(spec);
      const auto brute = brute_weights(vec);
      const auto counts = spec.kind == CodeKind::MD ? delta_formula(f, spec.param)
                                                    : sigma_formula(f, spec.param);
      const auto dp = weight_distribution(f, counts);
      for (std::size_t j = 0; j < brute.size(); ++j) {
        if (dp.freq[j] != brute[j]) {
          return spec_name(spec) + ": DP != exhaustive at weight " + std::to_string(j);
        }
      }
    }
    return std::nullopt;
  });

  run_check(report, "macwilliams", [&]() -> std::optional<std::string> {
    if (f.r() < 3) throw Skip{"code families need r >= 3"};
    const auto grid = code_grid(f, dp_cap);
    if (grid.empty()) throw Skip{"no family member fits the cap"};
    for (const auto& spec : grid) {
      const auto dual = dual_weight_enumerator(spec, false, false, dp_cap);
      const auto counts = spec.kind == CodeKind::MD ? delta_formula(f, spec.param)
                                                    : sigma_formula(f, spec.param);
      const auto dp = weight_distribution(f, counts, {}, dp_cap);
      const auto mw = macwilliams_transform(dual, spec.length(), q);
      for (std::size_t j = 0; j < dp.freq.size(); ++j) {
        if (dp.freq[j] != mw.freq[j]) {
          return spec_name(spec) + ": DP != MacWilliams at weight " + std::to_string(j);
        }
      }
      if (dp.total() != BigInt(1) << (static_cast<unsigned>(spec.length_u64(dp_cap)) - f.r())) {
        return spec_name(spec) + ": code size != 2^(N-r)";
      }
    }
    return std::nullopt;
  });

  run_check(report, "pless_identity", [&]() -> std::optional<std::string> {
    if (f.r() < 3) throw Skip{"code families need r >= 3"};
    const auto grid = code_grid(f, dp_cap);
    if (grid.empty()) throw Skip{"no family member fits the cap"};
    for (const auto& spec : grid) {
      const auto dual = dual_weight_enumerator(spec, false, false, dp_cap);
      const auto counts = spec.kind == CodeKind::MD ? delta_formula(f, spec.param)
                                                    : sigma_formula(f, spec.param);
      const auto code = weight_distribution(f, counts, {}, dp_cap);
      pless_check(dual, code, spec.length(), f.r(), pless_hmax);  // throws on violation
    }
    return std::nullopt;
  });

  run_check(report, "injectivity", [&]() -> std::optional<std::string> {
    if (f.r() < 3) throw Skip{"code families need r >= 3"};
    for (unsigned n : {2u, 4u}) {
      const auto report_md = injectivity_check(CodeSpec::md(f, n));
      if (report_md.sufficient && !report_md.injective) {
        return "md(n=" + std::to_string(n) + "): inequality holds but words collide";
      }
      if (!report_md.injective) return "md(n=" + std::to_string(n) + ") not injective";
    }
    for (unsigned m : {1u, 2u, 3u}) {
      const auto report_pw = injectivity_check(CodeSpec::pow(f, m));
      if (report_pw.sufficient && !report_pw.injective) {
        return "pow(m=" + std::to_string(m) + "): inequality holds but words collide";
      }
      if (!report_pw.injective) return "pow(m=" + std::to_string(m) + ") not injective";
    }
    return std::nullopt;
  });

  run_check(report, "moments_md", [&]() -> std::optional<std::string> {
    if (f.r() < 3) throw Skip{"moment recursions need r >= 3"};
    need_square(q, budget);
    for (unsigned n : {2u, 4u}) {
      const auto seq = recursive_moments_md(f, n, md_hmax);
      for (unsigned h = 0; h <= md_hmax; ++h) {
        if (seq.values[h] != moment_oracle(f, MomentKind::MD, n, h)) {
          return "n=" + std::to_string(n) + ": recursion != oracle at h=" + std::to_string(h);
        }
      }
    }
    return std::nullopt;
  });

  run_check(report, "moments_pow", [&]() -> std::optional<std::string> {
    if (f.r() < 3) throw Skip{"moment recursions need r >= 3"};
    need_square(q, budget);
    for (unsigned m : {1u, 2u, 3u}) {
      const auto seq = recursive_moments_power(f, m, pow_hmax);
      for (unsigned h = 0; h <= pow_hmax; ++h) {
        if (seq.values[h] != moment_oracle(f, MomentKind::POW, m, h)) {
          return "m=" + std::to_string(m) + ": recursion != oracle at h=" + std::to_string(h);
        }
      }
    }
    return std::nullopt;
  });

  run_check(report, "moments_k2", [&]() -> std::optional<std::string> {
    if (f.r() < 3) throw Skip{"moment recursions need r >= 3"};
    need_square(q, budget);
    const auto seq = recursive_moments_k2(f, k2_hmax);
    const auto bridged = k2_from_power_moments(recursive_moments_power(f, 2, k2_hmax), q);
    for (unsigned h = 0; h <= k2_hmax; ++h) {
      const BigInt want = moment_oracle(f, MomentKind::K2, 2, h);
      if (seq.values[h] != want) return "recursion != oracle at h=" + std::to_string(h);
      if (bridged.values[h] != want) return "bridge != oracle at h=" + std::to_string(h);
    }
    return std::nullopt;
  });

  return report;
}

}  // namespace kpm
