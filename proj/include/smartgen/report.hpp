//===-- report.hpp - artifact serialization and batch reporting ------------===//
//
// Formats:
//   json — one canonical document per function:
//          {"cases":[{id, inputs{name:value}, stubReturns[], expectedReturn,
//            exception, coveredEdges[]}], "function": name}
//          keys sorted, integers decimal.
//   tcf  — line-oriented text: a "#TCF v1" header then one
//          "CASE id | var=val,... | expect=val | exc=kind" line per case
//          (expect/exc segments present only when applicable).
//   csv  — function counts per coverage bin, six columns per criterion in
//          the order statement, branch, MC/DC.
//   dot  — the per-function control-flow graph.
//
//===----------------------------------------------------------------------===//
#pragma once

#include "smartgen/coverage.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace smartgen {

// renders a bit pattern at the symbol's declared type (signed decimal for
// signed symbols)
std::string renderValue(uint32_t bits, VType type);

struct CaseDoc {
  int id = 0;
  std::map<std::string, int64_t> inputs;
  std::vector<int64_t> stubReturns;
  std::optional<int64_t> expectedReturn;
  std::optional<std::string> exception;
  std::vector<int> coveredEdges;
};

struct TestCaseDoc {
  std::string function;
  std::vector<CaseDoc> cases;
};

TestCaseDoc buildDoc(const std::string& function,
                     const std::vector<TestCase>& cases,
                     const std::map<std::string, SymbolInfo>& symbols);

std::string writeTestCasesJson(const TestCaseDoc& doc);
// parses a document written by writeTestCasesJson; throws std::runtime_error
// on malformed input
TestCaseDoc readTestCasesJson(const std::string& text);

std::string writeTcf(const std::string& function,
                     const std::vector<TestCase>& cases,
                     const std::map<std::string, SymbolInfo>& symbols);

//===----------------------------------------------------------------------===//
// batch report
//===----------------------------------------------------------------------===//

struct FunctionRow {
  std::string file; // source stem
  CoverageReport coverage;
  size_t pathCases = 0, exceptionCases = 0, boundaryCases = 0;
  std::map<std::string, int> exceptionCounts; // kind name -> count
};

struct BatchReport {
  std::vector<FunctionRow> rows;
  size_t functionCount = 0;
  size_t totalTestCases = 0;
  double totalSeconds = 0.0;
  double averageSeconds = 0.0; // totalSeconds / functionCount
  std::map<std::string, int> exceptionTotals;

  void finalize(); // recomputes totals from rows
};

// bin counts per criterion for a set of rows (csv + summary)
struct BinCounts {
  std::array<int, 6> statement{};
  std::array<int, 6> branch{};
  std::array<int, 6> mcdc{};
};
BinCounts countBins(const std::vector<FunctionRow>& rows);

// csv with exactly N/A,0-10,10-50,50-90,90-100,100 per criterion
std::string writeCoverageCsv(const BatchReport& report);

// human-readable run summary (stdout)
std::string formatSummary(const BatchReport& report);

// machine-readable run report (timings live here, not in case files)
std::string writeReportJson(const BatchReport& report);

} // namespace smartgen
