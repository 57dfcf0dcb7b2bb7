#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <vector>

#include "kpm/codes.hpp"
#include "oracles.hpp"

using namespace kpm;

TEST_CASE("defining vector for width 1 lists alpha + alpha^-1 in order") {
  const auto f = FieldCtx::build(3);
  const auto vec = build_defining_vector(CodeSpec::md(f, 2));
  const std::vector<FqElem> want = {0, 7, 5, 3, 7, 5, 3};
  CHECK(vec.entries == want);
  // Width 1 is the one place the two families coincide.
  CHECK(build_defining_vector(CodeSpec::pow(f, 1)).entries == want);
}

TEST_CASE("spec construction guards") {
  const auto f = FieldCtx::build(3);
  CHECK_THROWS_AS(CodeSpec::md(f, 1), ZeroParameter);
  CHECK_THROWS_AS(CodeSpec::md(f, 3), NotPowerOfTwo);
  CHECK_NOTHROW(CodeSpec::md(f, 3, true));
  CHECK_THROWS_AS(CodeSpec::pow(f, 0), ZeroParameter);
  CHECK(CodeSpec::md(f, 4).length() == 343);
  CHECK(CodeSpec::pow(f, 2).length() == 49);
  CHECK_THROWS_AS(CodeSpec::pow(f, 2).length_u64(10), BudgetExceeded);
}

TEST_CASE("closed-form dual weights equal popcounts of materialized words") {
  struct Config {
    unsigned r;
    CodeKind kind;
    unsigned dim_or_width;
  };
  const Config grid[] = {
      {3, CodeKind::MD, 2},  {3, CodeKind::MD, 4},  {4, CodeKind::MD, 2},
      {3, CodeKind::POW, 1}, {3, CodeKind::POW, 2}, {4, CodeKind::POW, 2},
  };
  for (const auto& cfg : grid) {
    const auto f = FieldCtx::build(cfg.r);
    const auto spec = cfg.kind == CodeKind::MD ? CodeSpec::md(f, cfg.dim_or_width)
                                               : CodeSpec::pow(f, cfg.dim_or_width);
    const auto vec = build_defining_vector(spec);
    for (FqElem a = 0; a < f.q(); ++a) {
      std::size_t pop = 0;
      for (auto bit : dual_codeword(vec, a)) pop += bit;
      CHECK(dual_weight(spec, a) == pop);
    }
  }
}

TEST_CASE("dual enumerator of the dimension-2 family on GF(8)") {
  const auto f = FieldCtx::build(3);
  const auto enumr = dual_weight_enumerator(CodeSpec::md(f, 2));
  REQUIRE(enumr.freq.size() == 8);
  const std::array<long long, 8> want = {1, 0, 3, 0, 3, 0, 1, 0};
  for (std::size_t i = 0; i < 8; ++i) CHECK(enumr.freq[i] == want[i]);
  CHECK(enumr.total() == 8);
}

TEST_CASE("DP distribution matches exhaustive subset enumeration") {
  const auto f8 = FieldCtx::build(3);
  const auto f16 = FieldCtx::build(4);
  const auto f4 = FieldCtx::build(2);
  const std::vector<CodeSpec> grid = {
      CodeSpec::md(f8, 2),  CodeSpec::pow(f8, 1), CodeSpec::md(f16, 2),
      CodeSpec::pow(f16, 1), CodeSpec::pow(f4, 2),
  };
  for (const auto& spec : grid) {
    const auto vec = build_defining_vector(spec);
    const auto brute = kpm::testing::brute_weight_distribution(vec);
    const auto counts = spec.kind == CodeKind::MD ? delta_direct(*spec.field, spec.param)
                                                  : sigma_direct(*spec.field, spec.param);
    const auto dp = weight_distribution(*spec.field, counts);
    REQUIRE(dp.freq.size() == brute.size());
    for (std::size_t j = 0; j < brute.size(); ++j) CHECK(dp.freq[j] == brute[j]);
  }
}

TEST_CASE("big-code distribution on GF(8) dimension 2 matches the reference") {
  const auto f = FieldCtx::build(3);
  const auto dist = weight_distribution(f, delta_formula(f, 1));
  const std::array<long long, 8> want = {1, 1, 3, 3, 3, 3, 1, 1};
  REQUIRE(dist.freq.size() == 8);
  for (std::size_t j = 0; j < 8; ++j) CHECK(dist.freq[j] == want[j]);
  CHECK(dist.total() == 16);  // 2^(N-r) = 2^4
}

TEST_CASE("big-code distribution on GF(16) dimension 2 matches the reference") {
  const auto f = FieldCtx::build(4);
  const auto dist = weight_distribution(f, delta_formula(f, 1));
  const std::array<long long, 16> want = {1,  1,  7,   31,  77,  181, 323, 403,
                                          403, 323, 181, 77,  31,  7,   1,   1};
  REQUIRE(dist.freq.size() == 16);
  for (std::size_t j = 0; j < 16; ++j) CHECK(dist.freq[j] == want[j]);
  CHECK(dist.total() == BigInt(1) << 11);
}

TEST_CASE("MacWilliams transform of the dual equals the DP distribution") {
  const auto f8 = FieldCtx::build(3);
  const auto f16 = FieldCtx::build(4);
  const std::vector<CodeSpec> grid = {
      CodeSpec::md(f8, 2), CodeSpec::md(f8, 4),  CodeSpec::pow(f8, 2),
      CodeSpec::pow(f8, 3), CodeSpec::md(f16, 2), CodeSpec::pow(f16, 2),
  };
  for (const auto& spec : grid) {
    const auto dual = dual_weight_enumerator(spec);
    const auto via_transform = macwilliams_transform(dual, spec.length(), spec.field->q());
    const auto counts = spec.kind == CodeKind::MD ? delta_formula(*spec.field, spec.param)
                                                  : sigma_formula(*spec.field, spec.param);
    const auto dp = weight_distribution(*spec.field, counts);
    REQUIRE(via_transform.freq.size() == dp.freq.size());
    for (std::size_t j = 0; j < dp.freq.size(); ++j) {
      CHECK(via_transform.freq[j] == dp.freq[j]);
    }
    CHECK(dp.total() == BigInt(1) << (static_cast<unsigned>(spec.length_u64(5000)) - spec.field->r()));

    // Transforming back with the big code's size recovers the dual table.
    const auto back = macwilliams_transform(dp, spec.length(), dp.total());
    for (std::size_t j = 0; j < dual.freq.size(); ++j) CHECK(back.freq[j] == dual.freq[j]);
  }
}

TEST_CASE("truncated DP rows are a prefix of the full table") {
  const auto f = FieldCtx::build(3);
  const auto counts = delta_formula(f, 3);
  const auto full = weight_distribution(f, counts);
  const auto head = weight_distribution(f, counts, 6);
  CHECK(head.truncated);
  CHECK_FALSE(full.truncated);
  REQUIRE(head.freq.size() == 7);
  for (std::size_t j = 0; j <= 6; ++j) CHECK(head.freq[j] == full.freq[j]);
  CHECK(head.n == full.n);
}

TEST_CASE("truncation keeps huge lengths tractable") {
  // Width 3 over GF(32): N = 29791 coordinates, far past the dense budget,
  // but a truncated table stays polynomial in q.
  const auto f = FieldCtx::build(5);
  const auto counts = sigma_formula(f, 3);
  CHECK_THROWS_AS(weight_distribution(f, counts), BudgetExceeded);
  const auto head = weight_distribution(f, counts, 4);
  CHECK(head.truncated);
  CHECK(head.n == 29791);
  CHECK(head.freq[0] == 1);
  CHECK(head.freq.size() == 5);
}

TEST_CASE("injectivity analysis across the families") {
  const auto f8 = FieldCtx::build(3);
  for (const auto& spec : {CodeSpec::md(f8, 2), CodeSpec::md(f8, 4), CodeSpec::pow(f8, 2),
                           CodeSpec::pow(f8, 3)}) {
    const auto report = injectivity_check(spec);
    CHECK(report.sufficient);
    CHECK(report.injective);
    CHECK(report.kernel.empty());
  }

  // GF(4), width 1: K attains the length, so a nonzero word collapses.
  const auto f4 = FieldCtx::build(2);
  const auto degenerate = injectivity_check(CodeSpec::md(f4, 2));
  CHECK_FALSE(degenerate.sufficient);
  CHECK_FALSE(degenerate.injective);
  REQUIRE(degenerate.kernel.size() == 1);
  CHECK(degenerate.kernel[0] == 1);
  CHECK_THROWS_AS(dual_weight_enumerator(CodeSpec::md(f4, 2), true), InjectivityFailure);
  const auto forced = dual_weight_enumerator(CodeSpec::md(f4, 2), true, true);
  CHECK(forced.freq[0] == 2);  // a = 0 and the kernel element
  CHECK(forced.total() == 4);
}

TEST_CASE("degree gate on the dual enumerator") {
  const auto f4 = FieldCtx::build(2);
  // Without the override GF(4) is refused outright; with it, the collapse
  // is still detected (every entry lies in the prime field, so a = 1 traces
  // to the zero word) unless diagnostics force their way through.
  CHECK_THROWS_AS(dual_weight_enumerator(CodeSpec::pow(f4, 2)), UnsupportedDegree);
  CHECK_THROWS_AS(dual_weight_enumerator(CodeSpec::pow(f4, 2), true), InjectivityFailure);
  CHECK_NOTHROW(dual_weight_enumerator(CodeSpec::pow(f4, 2), true, true));
}

TEST_CASE("budget gates") {
  const auto f16 = FieldCtx::build(4);
  const auto counts = delta_formula(f16, 3);
  CHECK_THROWS_AS(weight_distribution(f16, counts, {}, 100), BudgetExceeded);
  CHECK_THROWS_AS(dual_weight_enumerator(CodeSpec::md(f16, 4), false, false, 100),
                  BudgetExceeded);
}

TEST_CASE("table width mismatches are rejected") {
  const auto f = FieldCtx::build(3);
  const auto wrong = kloosterman_md_all(f, 2);
  CHECK_THROWS_AS(dual_weight_with(CodeSpec::md(f, 2), wrong, 1), PreconditionError);
  CHECK_THROWS_AS(dual_weight_with(CodeSpec::pow(f, 2), wrong, 1), PreconditionError);
}

TEST_CASE("materialized dual histogram agrees with the closed-form enumerator") {
  const auto f = FieldCtx::build(4);
  for (const auto& spec : {CodeSpec::md(f, 2), CodeSpec::pow(f, 2)}) {
    const auto vec = build_defining_vector(spec);
    const auto brute = kpm::testing::brute_dual_distribution(vec);
    const auto enumr = dual_weight_enumerator(spec);
    REQUIRE(enumr.freq.size() == brute.size());
    for (std::size_t j = 0; j < brute.size(); ++j) CHECK(enumr.freq[j] == brute[j]);
  }
}
