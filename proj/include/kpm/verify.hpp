#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kpm/char_sums.hpp"
#include "kpm/field.hpp"

namespace kpm {

enum class VerifyLevel { Fast, Full };
enum class CheckStatus { Pass, Fail, Skipped };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Skipped;
  double elapsed_ms = 0.0;
  std::string detail;  // first counterexample, or the reason for a skip
};

struct VerifyReport {
  unsigned r = 0;
  std::uint32_t q = 0;
  VerifyLevel level = VerifyLevel::Fast;
  std::vector<CheckResult> checks;
  bool ok() const;  // true when nothing failed (skips are fine)
};

// Runs every identity the library stands on against one field: field
// axioms, character sums, fiber counts, dual weights, distributions, the
// power-moment identity, and the moment recursions. Fast keeps each check
// comfortably sub-second at desk scale; Full widens grids and caps.
// Enumeration-bound checks skip themselves when (q-1)^k would pass budget.
VerifyReport run_verification(const FieldCtx& f, VerifyLevel level = VerifyLevel::Fast,
                              std::uint64_t budget = kDefaultEnumBudget);

const char* to_string(CheckStatus s);
const char* to_string(VerifyLevel l);

}  // namespace kpm
