#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <vector>

#include "kpm/moments.hpp"

using namespace kpm;

TEST_CASE("Stirling triangle against inclusion-exclusion") {
  const StirlingCache cache(30);
  for (unsigned h = 0; h <= 30; ++h) {
    for (unsigned t = 0; t <= h; ++t) {
      CHECK(cache.at(h, t) == stirling2_by_inclusion(h, t));
    }
  }
  CHECK(stirling2(4, 2) == 7);
  CHECK(stirling2(5, 5) == 1);
  CHECK(stirling2(6, 1) == 1);
  CHECK(cache.at(7, 0) == 0);
  CHECK(cache.at(3, 7) == 0);
  CHECK_THROWS_AS(cache.at(31, 1), PreconditionError);
}

TEST_CASE("oracle moments on GF(8) match the reference") {
  const auto f = FieldCtx::build(3);
  const std::array<long long, 7> mk1 = {7, 1, 55, -47, 871, -2399, 17815};
  const std::array<long long, 7> mk3 = {7, 1, 3511, -10031, 2013799, -9971039, 1176647191};
  const std::array<long long, 6> pw2 = {7, 55, 871, 17815, 410311, 9942775};
  const std::array<long long, 6> mk2 = {7, -1, 439, 3887, 90727, 1369439};
  for (unsigned h = 0; h <= 6; ++h) {
    CHECK(moment_oracle(f, MomentKind::MD, 2, h) == mk1[h]);
    CHECK(moment_oracle(f, MomentKind::MD, 4, h) == mk3[h]);
  }
  for (unsigned h = 0; h <= 5; ++h) {
    CHECK(moment_oracle(f, MomentKind::POW, 2, h) == pw2[h]);
    CHECK(moment_oracle(f, MomentKind::K2, 2, h) == mk2[h]);
  }
  // Width-1 POW moments coincide with dimension-2 MD moments.
  for (unsigned h = 0; h <= 6; ++h) {
    CHECK(moment_oracle(f, MomentKind::POW, 1, h) == mk1[h]);
  }
}

TEST_CASE("recursion reproduces the oracle for MD dimensions") {
  for (unsigned r : {3u, 4u}) {
    const auto f = FieldCtx::build(r);
    for (unsigned n : {2u, 4u}) {
      const auto seq = recursive_moments_md(f, n, 6);
      REQUIRE(seq.values.size() == 7);
      for (unsigned h = 0; h <= 6; ++h) {
        CHECK(seq.values[h] == moment_oracle(f, MomentKind::MD, n, h));
      }
    }
  }
}

TEST_CASE("recursion reproduces the oracle for POW widths") {
  for (unsigned r : {3u, 4u}) {
    const auto f = FieldCtx::build(r);
    for (unsigned m : {1u, 2u, 3u}) {
      const auto seq = recursive_moments_power(f, m, 5);
      REQUIRE(seq.values.size() == 6);
      for (unsigned h = 0; h <= 5; ++h) {
        CHECK(seq.values[h] == moment_oracle(f, MomentKind::POW, m, h));
      }
    }
  }
}

TEST_CASE("K2 recursion, oracle, and binomial bridge agree") {
  for (unsigned r : {3u, 4u}) {
    const auto f = FieldCtx::build(r);
    const auto direct = recursive_moments_k2(f, 5);
    const auto pow2 = recursive_moments_power(f, 2, 5);
    const auto bridged = k2_from_power_moments(pow2, f.q());
    REQUIRE(direct.values.size() == 6);
    REQUIRE(bridged.values.size() == 6);
    for (unsigned h = 0; h <= 5; ++h) {
      const BigInt want = moment_oracle(f, MomentKind::K2, 2, h);
      CHECK(direct.values[h] == want);
      CHECK(bridged.values[h] == want);
    }
  }
}

TEST_CASE("bridge input is validated") {
  const auto f = FieldCtx::build(3);
  const auto md = recursive_moments_md(f, 2, 3);
  CHECK_THROWS_AS(k2_from_power_moments(md, f.q()), PreconditionError);
  const auto pow3 = recursive_moments_power(f, 3, 3);
  CHECK_THROWS_AS(k2_from_power_moments(pow3, f.q()), PreconditionError);
}

TEST_CASE("moment gates") {
  const auto f4 = FieldCtx::build(2);
  CHECK_THROWS_AS(recursive_moments_md(f4, 2, 3), UnsupportedDegree);
  CHECK_THROWS_AS(recursive_moments_power(f4, 1, 3), UnsupportedDegree);
  CHECK_THROWS_AS(recursive_moments_k2(f4, 3), UnsupportedDegree);
  const auto f8 = FieldCtx::build(3);
  CHECK_THROWS_AS(recursive_moments_md(f8, 3, 3), NotPowerOfTwo);
  CHECK_THROWS_AS(recursive_moments_md(f8, 1, 3), ZeroParameter);
  CHECK_THROWS_AS(recursive_moments_power(f8, 0, 3), ZeroParameter);
  CHECK_THROWS_AS(moment_oracle(f8, MomentKind::MD, 1, 2), ZeroParameter);
  CHECK_THROWS_AS(moment_oracle(f8, MomentKind::POW, 0, 2), ZeroParameter);
}

TEST_CASE("power-moment identity holds for the desk-scale code pairs") {
  const auto f8 = FieldCtx::build(3);
  const auto f16 = FieldCtx::build(4);
  const std::vector<CodeSpec> grid = {
      CodeSpec::md(f8, 2),  CodeSpec::md(f8, 4),   CodeSpec::pow(f8, 2),
      CodeSpec::pow(f8, 3), CodeSpec::md(f16, 2),  CodeSpec::pow(f16, 2),
  };
  for (const auto& spec : grid) {
    const auto dual = dual_weight_enumerator(spec);
    const auto counts = spec.kind == CodeKind::MD ? delta_formula(*spec.field, spec.param)
                                                  : sigma_formula(*spec.field, spec.param);
    const auto code = weight_distribution(*spec.field, counts);
    const auto report = pless_check(dual, code, spec.length(), spec.field->r(), 8);
    REQUIRE(report.lhs.size() == 9);
    for (unsigned h = 0; h <= 8; ++h) CHECK(report.lhs[h] == report.rhs[h]);
  }
}

TEST_CASE("identity check works from a truncated code distribution") {
  const auto f = FieldCtx::build(4);
  const auto spec = CodeSpec::md(f, 4);  // N = 3375: full table is slow, prefix is not
  const auto dual = dual_weight_enumerator(spec);
  const auto code = weight_distribution(f, delta_formula(f, 3), 6);
  CHECK_NOTHROW(pless_check(dual, code, spec.length(), f.r(), 6));
  CHECK_THROWS_AS(pless_check(dual, code, spec.length(), f.r(), 7), PreconditionError);
}

TEST_CASE("a corrupted distribution is pinpointed at its weight") {
  const auto f = FieldCtx::build(3);
  const auto spec = CodeSpec::md(f, 2);
  const auto dual = dual_weight_enumerator(spec);
  auto code = weight_distribution(f, delta_formula(f, 1));

  code.freq[3] += 1;
  try {
    pless_check(dual, code, spec.length(), f.r(), 8);
    FAIL("corruption went unnoticed");
  } catch (const IdentityViolation& e) {
    CHECK(e.order == 3);  // weights below 3 cannot see the bad entry
    CHECK(e.lhs != e.rhs);
  }

  code.freq[3] -= 1;
  code.freq[1] -= 1;
  try {
    pless_check(dual, code, spec.length(), f.r(), 8);
    FAIL("corruption went unnoticed");
  } catch (const IdentityViolation& e) {
    CHECK(e.order == 1);
  }
}

TEST_CASE("corrupted dual distributions also fail") {
  const auto f = FieldCtx::build(3);
  const auto spec = CodeSpec::pow(f, 2);
  auto dual = dual_weight_enumerator(spec);
  const auto code = weight_distribution(f, sigma_formula(f, 2));
  // Move one dual word up a weight class; h = 0 still balances.
  std::size_t w = 1;
  while (dual.freq[w] == 0) ++w;
  dual.freq[w] -= 1;
  dual.freq[w + 1] += 1;
  CHECK_THROWS_AS(pless_check(dual, code, spec.length(), f.r(), 4), IdentityViolation);
}
