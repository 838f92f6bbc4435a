//===-- engine.hpp - symbolic executor and flood-search scheduler ----------===//
//
// Explores a function's CFG by advancing execution states along
// shortest-to-exit paths. At a branch the running state keeps the
// minimum-distance edge (preferring unvisited edges on ties) and forks one
// copy per remaining edge with that edge's condition appended; copies whose
// pending edge is unvisited queue on the open list, already-visited ones on
// the close list. When open drains, close states are discharged: advanced
// one edge and requeued, except states whose pending edge was already taken
// more than loopBound times, which are dropped. A state reaching the exit
// node hands its path constraint to the solver; Sat models become test
// cases, Unsat paths are pruned, Unknown paths are reported so coverage
// shortfalls stay attributable.
//
// Runtime checks fire along the way: division/remainder with a feasible zero
// divisor, out-of-bounds pointer offsets, null and fixed-address
// dereferences, and void* reads with no recorded alias each produce an
// exception test case with a concrete witness.
//
//===----------------------------------------------------------------------===//
#pragma once

#include "smartgen/cfg.hpp"
#include "smartgen/memory.hpp"
#include "smartgen/smtlib.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace smartgen {

struct Budgets {
  uint64_t wallClockMs = 10000;
  uint32_t maxStates = 10000;
  uint32_t loopBound = 2;
  uint64_t solverMs = 500;
};

enum class SearchPolicy { Flood, DepthFirst };

struct EngineOptions {
  bool symbolicLocals = false;
  SearchPolicy search = SearchPolicy::Flood;
  std::string externalSolver; // command; empty = built-in solver
};

struct ExceptionInfo {
  ExceptionKind kind = ExceptionKind::DividedByZero;
  NodeId node = -1;
  int stmtIndex = -1; // -1 when raised by a decision expression

  bool operator==(const ExceptionInfo& o) const {
    return kind == o.kind && node == o.node && stmtIndex == o.stmtIndex;
  }
};

// one concrete evaluation of a decision (recorded during replay)
struct DecisionEval {
  DecisionId decision = -1;
  std::vector<int> atoms; // 1 true, 0 false, -1 not evaluated (short-circuit)
  int outcome = 0;        // taken edge value
};

enum class CaseOrigin { Path, Exception, Boundary };

struct TestCase {
  int id = 0;
  std::string function;
  std::map<std::string, uint32_t> inputs; // symbol -> bits
  std::vector<std::pair<std::string, uint32_t>> stubReturns; // call order
  std::optional<int64_t> expectedReturn; // filled by replay
  std::set<EdgeId> coveredEdges;         // engine claim: edges on the trace
  std::optional<ExceptionInfo> exception;
  std::vector<std::pair<NodeId, EdgeId>> generationPath; // edge -1 at the end
  std::vector<DecisionEval> decisionOutcomes;            // filled by replay
  CaseOrigin origin = CaseOrigin::Path;
  std::string boundaryNote; // Boundary: "<symbol>:min" / "<symbol>:max"

  // the path constraint this case was solved from (not serialized; used for
  // boundary-value probing)
  std::vector<SymRef> pathConjuncts;
};

enum class UncoveredReason { Infeasible, Unknown, Budget };
const char* uncoveredReasonName(UncoveredReason r);

struct UncoveredEdge {
  EdgeId edge = -1;
  UncoveredReason reason = UncoveredReason::Budget;
};

enum class SymbolRole { Param, Global, Local, Stub };

struct SymbolInfo {
  VType type;
  SymbolRole role = SymbolRole::Param;
  int order = 0; // stable presentation order
};

struct GenerationResult {
  std::vector<TestCase> cases;
  std::vector<UncoveredEdge> uncovered; // labeled edges never covered
  std::map<std::string, SymbolInfo> symbols;

  uint64_t nodeExecutions = 0;
  uint32_t statesCreated = 0;
  uint32_t statesDropped = 0;
  uint64_t solveCalls = 0;
  uint32_t unknownSolves = 0;
  bool budgetExhausted = false;
  double seconds = 0.0;
  std::vector<std::string> diagnostics;

  size_t countByOrigin(CaseOrigin origin) const;
};

// static stub table: how calls to undefined functions are replaced
struct StubPlan {
  std::string callee;
  TypeRef returnType;            // Void: calls yield no value symbol
  std::vector<ParamDecl> params; // pointer params are havocked per call
};
std::vector<StubPlan> generateStubs(const Program& program);

// path constraint bookkeeping
struct Provenance {
  enum class Source { Branch, DivisorGuard, BoundsGuard, Concretization };
  Source source = Source::Branch;
  EdgeId edge = -1;
  DecisionId decision = -1;
  int atom = -1; // reserved: whole-decision conjuncts use -1
  int value = -1;
};

struct Conjunct {
  SymRef expr;
  Provenance prov;
};

class Explorer {
public:
  Explorer(const Program& program, const FunctionDef& fn, const Cfg& cfg,
           const Budgets& budgets, const EngineOptions& options);
  ~Explorer();

  GenerationResult run();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

GenerationResult explore(const Program& program, const FunctionDef& fn,
                         const Cfg& cfg, const Budgets& budgets,
                         const EngineOptions& options = {});

} // namespace smartgen
