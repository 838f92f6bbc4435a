//===-- smtlib.hpp - SMT-LIB2 bridge ---------------------------------------===//
//
// Renders constraint conjunctions as QF_BV SMT-LIB2 text whose satisfiability
// matches the internal semantics, including division definedness: a conjunct
// only counts as satisfied when no demanded division/remainder hits a zero
// divisor, mirroring the evaluator's absorption rules for && and ||.
//
// The client side writes the text to a temp file, runs a configured command
// on it, and parses `sat`/`unsat`/`unknown` plus `(model ...)` answers. A
// reader for the emitted subset is included, so any build of this tool can
// itself serve as the external solver process.
//
//===----------------------------------------------------------------------===//
#pragma once

#include "smartgen/solver.hpp"

#include <string>
#include <vector>

namespace smartgen {

std::string emitSmtlib(const std::vector<SymRef>& conjuncts,
                       const DomainMap& domains);

// parses "sat\n(model ...)" / "unsat" / "unknown" text from a solver process
SolveResult parseSolverOutput(const std::string& text);

// runs `command <tempfile>` and parses the answer; Unknown("external: ...")
// on process or parse failure
SolveResult solveViaExternalCommand(const std::string& command,
                                    const std::string& smtText);

// Reads the emitted subset back into conjuncts + domains. Returns false with
// a message for anything outside the subset.
struct ParsedSmtQuery {
  std::vector<SymRef> conjuncts;
  DomainMap domains;
  bool wantModel = false;
};
bool parseSmtlibSubset(const std::string& text, ParsedSmtQuery& out,
                       std::string& error);

// `smartgen smt FILE` entry: solve an emitted query, print the answer
int runSmtSolveFile(const std::string& path, uint64_t budgetMs);

// Routes solve/bound through the external command when configured, else the
// built-in procedure.
class ConstraintBackend {
public:
  explicit ConstraintBackend(std::string externalCmd = {}, uint64_t budgetMs = 500)
      : externalCmd_(std::move(externalCmd)), budgetMs_(budgetMs) {}

  SolveResult solve(const std::vector<SymRef>& conjuncts,
                    const DomainMap& domains) const;
  Solver::BoundResult bound(const std::vector<SymRef>& conjuncts,
                            const DomainMap& domains, const std::string& symbol,
                            bool maximize) const;

  uint64_t budgetMs() const { return budgetMs_; }
  uint64_t calls() const { return solver_.solveCalls; }

private:
  Solver solver_;
  std::string externalCmd_;
  uint64_t budgetMs_ = 500;
};

} // namespace smartgen
