#include "kpm/fiber_counts.hpp"

#include "kpm/errors.hpp"

namespace kpm {
namespace {

void require_param(unsigned param) {
  if (param == 0) throw ZeroParameter("fiber counts need param >= 1");
}

std::uint64_t tuple_budget(std::uint32_t q, unsigned param, std::uint64_t budget) {
  std::uint64_t count = 1;
  for (unsigned i = 0; i < param; ++i) {
    if (count > budget / (q - 1)) {
      throw BudgetExceeded("enumerating (q-1)^" + std::to_string(param) +
                           " tuples exceeds budget " + std::to_string(budget));
    }
    count *= q - 1;
  }
  return count;
}

// Walks all tuples depth-first, carrying (sum, prod) for the MD score.
void md_walk(const FieldCtx& f, unsigned left, FqElem sum, FqElem prod,
             std::vector<BigInt>& hist) {
  if (left == 0) {
    ++hist[sum ^ f.inv(prod)];
    return;
  }
  for (FqElem alpha = 1; alpha < f.q(); ++alpha) {
    md_walk(f, left - 1, sum ^ alpha, f.mul(prod, alpha), hist);
  }
}

// Same walk with the POW score alpha + alpha^-1 accumulated per coordinate.
void pow_walk(const FieldCtx& f, unsigned left, FqElem score, std::vector<BigInt>& hist) {
  if (left == 0) {
    ++hist[score];
    return;
  }
  for (FqElem alpha = 1; alpha < f.q(); ++alpha) {
    pow_walk(f, left - 1, score ^ alpha ^ f.inv(alpha), hist);
  }
}

}  // namespace

BigInt CountTable::total() const {
  BigInt t = 0;
  for (const auto& c : counts) t += c;
  return t;
}

CountTable delta_direct(const FieldCtx& f, unsigned param, std::uint64_t budget) {
  require_param(param);
  tuple_budget(f.q(), param, budget);
  CountTable table{CodeKind::MD, param, std::vector<BigInt>(f.q(), 0)};
  md_walk(f, param, 0, 1, table.counts);
  return table;
}

CountTable delta_formula(const FieldCtx& f, unsigned param) {
  require_param(param);
  const std::uint32_t q = f.q();
  CountTable table{CodeKind::MD, param, std::vector<BigInt>(q, 0)};

  const bool closed_form = ((param + 1) & param) == 0;  // param+1 = 2^s
  if (closed_form) {
    const BigInt base = exact_div(big_pow(q - 1, param) + 1, q);
    const auto ktab = kloosterman_md_all(f, param - 1);
    table.counts[0] = base;
    for (FqElem beta = 1; beta < q; ++beta) {
      table.counts[beta] = base + ktab.values[f.inv(beta)];
    }
    return table;
  }

  const auto ktab = kloosterman_md_all(f, param);
  const BigInt lead = big_pow(q - 1, param);
  for (FqElem beta = 0; beta < q; ++beta) {
    BigInt acc = lead;
    for (FqElem a = 1; a < q; ++a) {
      acc += f.character(f.mul(a, beta)) * BigInt(ktab.values[f.pow(a, param + 1)]);
    }
    table.counts[beta] = exact_div(acc, q);
  }
  return table;
}

CountTable sigma_direct(const FieldCtx& f, unsigned param, std::uint64_t budget) {
  require_param(param);
  tuple_budget(f.q(), param, budget);
  CountTable table{CodeKind::POW, param, std::vector<BigInt>(f.q(), 0)};
  pow_walk(f, param, 0, table.counts);
  return table;
}

CountTable sigma_formula(const FieldCtx& f, unsigned param) {
  require_param(param);
  const std::uint32_t q = f.q();

  // Character profile of one coordinate: lambda(beta^-1) off zero.
  std::vector<BigInt> profile(q, 0);
  for (FqElem beta = 1; beta < q; ++beta) profile[beta] = f.character(f.inv(beta));

  std::vector<BigInt> acc = profile;
  for (unsigned step = 1; step < param; ++step) {
    std::vector<BigInt> next(q, 0);
    for (std::uint32_t x = 0; x < q; ++x) {
      if (acc[x] == 0) continue;
      for (std::uint32_t y = 0; y < q; ++y) {
        if (profile[y] != 0) next[x ^ y] += acc[x] * profile[y];
      }
    }
    acc.swap(next);
  }

  const int parity = (param & 1) ? 1 : -1;  // (-1)^(param+1)
  const BigInt shift = exact_div(big_pow(q - 1, param) + parity, q);
  CountTable table{CodeKind::POW, param, std::move(acc)};
  for (auto& c : table.counts) c += shift;
  return table;
}

}  // namespace kpm
