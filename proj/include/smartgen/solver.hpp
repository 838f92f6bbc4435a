//===-- solver.hpp - integer constraint solving ----------------------------===//
//
// Decides conjunctions of integer constraints over the shared wraparound
// semantics. Method: interval propagation to fixpoint, then backtracking
// search splitting the first-appearing unfixed variable at its interval
// midpoint (lower half first). Interval narrowing only fires where the
// arithmetic provably cannot wrap, so no feasible value is ever pruned;
// candidate assignments are decided by exact evaluation.
//
// Conjuncts containing variable*variable, variable/variable, or
// variable%variable are routed to an exhaustive fallback when the remaining
// domain product is at most 2^12, and report Unknown("nonlinear") otherwise.
//
// Budgets are deterministic step counts derived from the millisecond budget,
// so identical queries at the same budget always answer identically, and a
// verdict reached at some budget is reached at every larger one.
//
//===----------------------------------------------------------------------===//
#pragma once

#include "smartgen/symvalue.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace smartgen {

struct Domain {
  int64_t lo = 0;
  int64_t hi = 0;
};
using DomainMap = std::map<std::string, Domain>;

Domain fullDomain(VType t);

struct SolveResult {
  enum class Verdict { Sat, Unsat, Unknown };
  Verdict verdict = Verdict::Unknown;
  Model model;        // Sat: assigns every symbol in the conjuncts
  std::string reason; // Unknown: "budget" | "nonlinear" | ...
  std::optional<size_t> coreHint; // Unsat: first conjunct that emptied a domain

  bool sat() const { return verdict == Verdict::Sat; }
  bool unsat() const { return verdict == Verdict::Unsat; }
  bool unknown() const { return verdict == Verdict::Unknown; }
};

class Solver {
public:
  // deterministic steps per budget millisecond
  static constexpr uint64_t kStepsPerMs = 20000;

  SolveResult solve(const std::vector<SymRef>& conjuncts,
                    const DomainMap& domains, uint64_t budgetMs) const;

  // Least (or greatest) value of `symbol` for which the conjunction stays
  // satisfiable, by binary probing with solve() as the oracle. Each probe
  // runs under budgetMs. Returns nullopt and fills unknownReason when any
  // probe is undecided.
  struct BoundResult {
    std::optional<int64_t> value;
    Model model; // a witness with symbol == value
    std::string unknownReason;
  };
  // `probe` overrides the solve oracle (used to route probes through an
  // external solver); defaults to this solver
  using SolveFn = std::function<SolveResult(const std::vector<SymRef>&,
                                            const DomainMap&, uint64_t)>;
  BoundResult bound(const std::vector<SymRef>& conjuncts,
                    const DomainMap& domains, const std::string& symbol,
                    bool maximize, uint64_t budgetMs,
                    const SolveFn& probe = nullptr) const;

  // statistics for reports
  mutable uint64_t solveCalls = 0;
};

} // namespace smartgen
