#include "kpm/char_sums.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>

#include "kpm/errors.hpp"

namespace kpm {
namespace {

// (q-1)^m if it fits the budget, else throws.
std::uint64_t tuple_count_within(std::uint32_t q, unsigned m, std::uint64_t budget) {
  std::uint64_t count = 1;
  for (unsigned i = 0; i < m; ++i) {
    if (count > budget / (q - 1)) {
      throw BudgetExceeded("direct enumeration of (q-1)^" + std::to_string(m) +
                           " tuples exceeds budget " + std::to_string(budget));
    }
    count *= q - 1;
  }
  if (count > budget) {
    throw BudgetExceeded("direct enumeration of (q-1)^" + std::to_string(m) +
                         " tuples exceeds budget " + std::to_string(budget));
  }
  return count;
}

// Depth-first over nonzero tuples, carrying the running sum and product.
std::int64_t md_enumerate(const FieldCtx& f, unsigned levels_left, FqElem a, FqElem sum,
                          FqElem prod) {
  if (levels_left == 0) {
    return f.character(sum ^ f.mul(a, f.inv(prod)));
  }
  std::int64_t acc = 0;
  for (FqElem alpha = 1; alpha < f.q(); ++alpha) {
    acc += md_enumerate(f, levels_left - 1, a, sum ^ alpha, f.mul(prod, alpha));
  }
  return acc;
}

// Largest s with s^2 < n, by exact integer search (n is small here).
long long strict_isqrt(std::uint64_t n) {
  long long s = 0;
  while (static_cast<std::uint64_t>((s + 1)) * (s + 1) < n) ++s;
  return s;
}

}  // namespace

std::int64_t kloosterman(const FieldCtx& f, FqElem a, FqElem twist) {
  if (a == 0) throw ZeroParameter("kloosterman: a must be nonzero");
  if (twist == 0) throw ZeroParameter("kloosterman: twist must be nonzero");
  std::int64_t acc = 0;
  for (FqElem alpha = 1; alpha < f.q(); ++alpha) {
    acc += f.character(twist, alpha ^ f.mul(a, f.inv(alpha)));
  }
  return acc;
}

std::int64_t kloosterman_md_direct(const FieldCtx& f, unsigned m, FqElem a,
                                   std::uint64_t budget) {
  if (m == 0) throw ZeroParameter("kloosterman_md_direct: m must be >= 1");
  if (a == 0) throw ZeroParameter("kloosterman_md_direct: a must be nonzero");
  tuple_count_within(f.q(), m, budget);
  return md_enumerate(f, m, a, 0, 1);
}

KsumTable kloosterman_md_all(const FieldCtx& f, unsigned m) {
  const std::uint32_t q = f.q();
  KsumTable table;
  table.m = m;
  table.values.resize(q);
  for (std::uint32_t a = 0; a < q; ++a) table.values[a] = f.character(a);

  std::vector<std::int64_t> next(q);
  for (unsigned step = 0; step < m; ++step) {
    // One convolution multiplies magnitudes by at most q-1; refuse the step
    // if that could leave int64 range (far beyond any |K_m| <= (m+1)q^{m/2}
    // that desk-scale parameters produce, but cheap to keep airtight).
    std::int64_t max_abs = 0;
    for (auto v : table.values) max_abs = std::max(max_abs, std::abs(v));
    if (max_abs > std::numeric_limits<std::int64_t>::max() / q) {
      throw BudgetExceeded("kloosterman_md_all: values would overflow 64-bit range");
    }
    for (std::uint32_t a = 0; a < q; ++a) {
      std::int64_t acc = 0;
      for (FqElem alpha = 1; alpha < q; ++alpha) {
        acc += f.character(alpha) * table.values[f.mul(a, f.inv(alpha))];
      }
      next[a] = acc;
    }
    table.values.swap(next);
  }
  return table;
}

std::int64_t artin_schreier_sum(const FieldCtx& f, FqElem beta) {
  if (beta == 0) throw ZeroParameter("artin_schreier_sum: beta must be nonzero");
  std::int64_t acc = 0;
  for (FqElem alpha = 2; alpha < f.q(); ++alpha) {
    const FqElem denom = f.mul(alpha, alpha) ^ alpha;  // alpha(alpha+1) != 0
    acc += f.character(f.mul(beta, f.inv(denom)));
  }
  return acc;
}

ValueRangeReport value_range(const FieldCtx& f) {
  ValueRangeReport report;

  const long long tmax = strict_isqrt(4ull * f.q());
  for (long long t = -tmax; t <= tmax; ++t) {
    if (((t % 4) + 4) % 4 == 3) report.predicted.push_back(t);
  }

  std::map<long long, std::uint64_t> counts;
  for (FqElem a = 1; a < f.q(); ++a) ++counts[kloosterman(f, a)];
  for (const auto& [t, mult] : counts) {
    report.observed.push_back({t, mult, t * t - static_cast<long long>(f.q()),
                               t * t - 4ll * static_cast<long long>(f.q())});
  }

  for (long long t : report.predicted) {
    if (!counts.count(t)) report.missing.push_back(t);
  }
  for (const auto& e : report.observed) {
    if (!std::binary_search(report.predicted.begin(), report.predicted.end(), e.t)) {
      report.unexpected.push_back(e.t);
    }
  }
  return report;
}

}  // namespace kpm
