//===-- replay.hpp - concrete replay interpreter ---------------------------===//
//
// Executes a test case's inputs concretely over the CFG and records the
// trace: nodes, edges, per-decision atom truth vectors (short-circuit skips
// marked unevaluated), the return value, and any runtime exception. This is
// the coverage and expected-output oracle; it shares the language definition
// with the symbolic executor but none of its evaluation machinery.
//
//===----------------------------------------------------------------------===//
#pragma once

#include "smartgen/engine.hpp"

#include <optional>
#include <set>
#include <vector>

namespace smartgen {

struct ReplayOptions {
  uint64_t stepLimit = 1u << 20; // node executions before giving up
  bool symbolicLocals = false;   // locals read initial values from inputs
};

struct ReplayTrace {
  std::vector<std::pair<NodeId, EdgeId>> steps; // edge -1 on the final node
  std::vector<DecisionEval> decisions;
  std::optional<int64_t> returnValue;
  std::optional<ExceptionInfo> exception;
  bool stepLimitHit = false;

  std::set<EdgeId> edgeSet() const;
  std::set<NodeId> nodeSet() const;
};

ReplayTrace replay(const TestCase& testcase, const Program& program,
                   const FunctionDef& fn, const Cfg& cfg,
                   const ReplayOptions& options = {});

} // namespace smartgen
