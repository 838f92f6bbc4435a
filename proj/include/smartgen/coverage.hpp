//===-- coverage.hpp - statement/branch/MC-DC measurement ------------------===//
#pragma once

#include "smartgen/engine.hpp"
#include "smartgen/replay.hpp"

#include <optional>
#include <string>
#include <vector>

namespace smartgen {

enum class Bin { NA, B0_10, B10_50, B50_90, B90_100, B100 };
const char* binLabel(Bin b);
// half-open bins; 100 is exact
Bin binOf(double pct);

// unique-cause MC/DC pair: two test cases whose atom vectors differ only at
// `atom` (positions unevaluated on either side count as agreement elsewhere,
// never as the required difference) with differing decision outcomes
struct McdcPair {
  DecisionId decision = -1;
  int atom = -1;
  int caseA = -1;
  int caseB = -1;
};

struct McdcResult {
  bool applicable = false; // false: fewer than 2 atoms (reported N/A)
  int coveredAtoms = 0;
  int totalAtoms = 0;
  std::vector<McdcPair> pairs; // one per covered atom
};

// evaluations of one decision across the suite, tagged with test-case ids
struct TaggedEval {
  int caseId = -1;
  const DecisionEval* eval = nullptr;
};

McdcResult mcdcMeasure(const Decision& decision,
                       const std::vector<TaggedEval>& evals);

struct UncoveredItem {
  EdgeId edge = -1;
  UncoveredReason reason = UncoveredReason::Budget;
};

struct CoverageReport {
  std::string function;
  double statementPct = 0.0;
  double branchPct = 0.0;
  std::optional<double> mcdcPct; // nullopt = N/A
  Bin stmtBin = Bin::NA;
  Bin branchBin = Bin::NA;
  Bin mcdcBin = Bin::NA;
  int testCaseCount = 0;
  double generationSeconds = 0.0;
  std::vector<UncoveredItem> uncovered;

  // raw counts behind the percentages
  size_t statementsCovered = 0, statementsTotal = 0;
  size_t branchesCovered = 0, branchesTotal = 0;
  int mcdcCoveredAtoms = 0, mcdcTotalAtoms = 0;
  std::vector<McdcPair> mcdcPairs;
  std::vector<std::string> notes;
};

// Counts statement blocks and labeled edges exercised by the traces. Bins
// follow the N/A rules: zero test cases bin as N/A, MC/DC is N/A unless some
// non-switch decision has at least two atoms. caseIds tags traces for MC/DC
// pair reporting; defaults to 0..n-1.
CoverageReport measure(const std::vector<ReplayTrace>& traces, const Cfg& cfg,
                       const std::vector<int>& caseIds = {});

// Extra test cases at the solver-computed minimum and maximum of each input
// symbol under the case's own path constraint, deduplicated against
// `existing`. Undecidable bounds are skipped and counted in *skipped.
std::vector<TestCase> boundaryCases(const TestCase& base,
                                    const ConstraintBackend& backend,
                                    const std::vector<TestCase>& existing,
                                    int* nextCaseId, int* skipped);

} // namespace smartgen
