//===-- runner.hpp - batch driver ------------------------------------------===//
#pragma once

#include "smartgen/report.hpp"

#include <set>
#include <string>

namespace smartgen {

struct RunConfig {
  std::string sourceDir;
  std::string functionFilter; // glob over function names; empty = all
  Budgets budgets;            // wallClockMs 10000, maxStates 10000, loopBound 2,
                              // solverMs 500 by default
  bool symbolicLocals = false;
  int inlineDepth = 0;
  std::string externalSolver;
  std::string outputDir;
  std::set<std::string> formats = {"json", "tcf", "csv"}; // + "dot"
  int jobs = 1;
  bool strict = false;
  bool compareDfs = false;
};

// simple glob: '*' and '?' wildcards
bool globMatch(const std::string& pattern, const std::string& text);

// the whole pipeline for one function: explore, boundary cases, replay every
// case (filling expected outputs and decision vectors), measure coverage
struct FunctionOutcome {
  std::string file; // source stem
  std::string function;
  GenerationResult generation;
  std::vector<TestCase> cases;
  std::vector<ReplayTrace> traces; // parallel to cases
  CoverageReport coverage;
  bool oracleMismatch = false; // claimed coverage or exception != replay
  std::vector<std::string> oracleNotes;
  std::optional<double> dfsBranchPct; // --compare-dfs
  int boundarySkipped = 0;
};

FunctionOutcome processFunction(const Program& program, const FunctionDef& fn,
                                const RunConfig& config,
                                const std::string& fileStem);

struct BatchResult {
  BatchReport report;
  std::vector<FunctionOutcome> outcomes;
  std::vector<std::string> parseErrors;
  std::vector<std::string> ioErrors;
  int exitCode = 0;
};

// Parses every .mc file under sourceDir (sorted), generates tests for each
// function passing the filter, writes the requested artifact formats into
// outputDir, and returns the assembled report. Coverage shortfalls never
// change the exit status; parse errors do only under strict, I/O failures
// always do.
BatchResult runBatch(const RunConfig& config);

} // namespace smartgen
