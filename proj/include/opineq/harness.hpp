#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "opineq/io.hpp"
#include "opineq/tolerance.hpp"

namespace opineq {

/// Exit-code contract shared by every front end:
///   0 inequality holds / bound computed, 1 violated, 2 invalid input,
///   3 precondition unmet, 4 falsification budget exhausted.
inline constexpr int kExitHolds = 0;
inline constexpr int kExitViolated = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitPreconditionUnmet = 3;
inline constexpr int kExitNotFound = 4;

/// Malformed-input kinds map to 2; every other failure is a structurally
/// valid instance whose hypotheses do not hold, which maps to 3.
int exit_code_for(ErrorKind kind);

/// {"error": {"kind", "message"}, "exit_code"} — the report emitted when an
/// operation raises instead of producing a verdict.
Json error_report(const Error& e);

/// One verdict row in the schema-stable report format.
Json verdict_row(const std::string& theorem_id, const ComparisonVerdict& v,
                 std::uint64_t seed, const std::string& paper_eq_tag);

/// Result of running one instance: the full JSON report plus the
/// conjunction of all verdict rows.
struct RunOutcome {
  Json report;
  bool holds = true;
};

/// Dispatch on inst.kind (jensen | converse | rev0 | rev3 | lm | sub1 |
/// sub3 | dk1 | dk11 | slater) and verify the corresponding inequality.
/// tol_override replaces each kind's default tolerance when present
/// (--tol / OPINEQ_TOL); seed is recorded in every verdict row. Raises
/// Error for invalid or hypothesis-violating instances.
RunOutcome run_instance(const Instance& inst,
                        const std::optional<TolerancePolicy>& tol_override,
                        std::uint64_t seed);

/// Aggregate result of a corpus run.
struct SuiteOutcome {
  Json report;
  int exit_code = 0;
};

/// Run every *.json case under corpus_dir (parallel execution, report
/// assembly ordered by case name). Exit 0 iff all cases hold, 1 when any
/// case is violated or errors, 2 when the corpus is missing or empty.
SuiteOutcome run_suite(const std::string& corpus_dir,
                       const std::optional<TolerancePolicy>& tol_override,
                       std::uint64_t seed);

}  // namespace opineq
