//===-- coverage.cpp ------------------------------------------------------------===//

#include "smartgen/coverage.hpp"

#include <algorithm>
#include <cassert>

namespace smartgen {

const char* binLabel(Bin b) {
  switch (b) {
  case Bin::NA: return "N/A";
  case Bin::B0_10: return "0-10";
  case Bin::B10_50: return "10-50";
  case Bin::B50_90: return "50-90";
  case Bin::B90_100: return "90-100";
  case Bin::B100: return "100";
  }
  return "?";
}

Bin binOf(double pct) {
  if (pct >= 100.0) return Bin::B100;
  if (pct >= 90.0) return Bin::B90_100;
  if (pct >= 50.0) return Bin::B50_90;
  if (pct >= 10.0) return Bin::B10_50;
  return Bin::B0_10;
}

namespace {

// positions other than the distinguished one agree when equal or when either
// side was never evaluated; the distinguished position needs two concrete,
// differing values
bool uniqueCausePair(const std::vector<int>& a, const std::vector<int>& b,
                     size_t atom) {
  if (a.size() != b.size()) return false;
  if (a[atom] < 0 || b[atom] < 0 || a[atom] == b[atom]) return false;
  for (size_t j = 0; j < a.size(); ++j) {
    if (j == atom) continue;
    if (a[j] < 0 || b[j] < 0) continue;
    if (a[j] != b[j]) return false;
  }
  return true;
}

} // namespace

McdcResult mcdcMeasure(const Decision& decision,
                       const std::vector<TaggedEval>& evals) {
  McdcResult out;
  out.totalAtoms = static_cast<int>(decision.atoms.size());
  if (decision.isSwitch || out.totalAtoms < 2) {
    out.applicable = false;
    return out;
  }
  out.applicable = true;

  for (size_t atom = 0; atom < decision.atoms.size(); ++atom) {
    bool found = false;
    for (size_t i = 0; i < evals.size() && !found; ++i) {
      for (size_t j = i + 1; j < evals.size() && !found; ++j) {
        const DecisionEval& a = *evals[i].eval;
        const DecisionEval& b = *evals[j].eval;
        if (a.outcome == b.outcome) continue;
        if (!uniqueCausePair(a.atoms, b.atoms, atom)) continue;
        McdcPair pair;
        pair.decision = decision.id;
        pair.atom = static_cast<int>(atom);
        pair.caseA = evals[i].caseId;
        pair.caseB = evals[j].caseId;
        out.pairs.push_back(pair);
        found = true;
      }
    }
    if (found) ++out.coveredAtoms;
  }
  return out;
}

CoverageReport measure(const std::vector<ReplayTrace>& traces, const Cfg& cfg,
                       const std::vector<int>& caseIds) {
  CoverageReport report;
  report.function = cfg.function;
  report.testCaseCount = static_cast<int>(traces.size());

  // statement blocks
  std::set<NodeId> visitedNodes;
  std::set<EdgeId> visitedEdges;
  for (const auto& t : traces) {
    auto nodes = t.nodeSet();
    visitedNodes.insert(nodes.begin(), nodes.end());
    auto edges = t.edgeSet();
    visitedEdges.insert(edges.begin(), edges.end());
  }

  auto blocks = cfg.statementBlocks();
  report.statementsTotal = blocks.size();
  for (NodeId n : blocks)
    if (visitedNodes.count(n)) ++report.statementsCovered;
  report.statementPct =
      report.statementsTotal == 0
          ? 100.0
          : 100.0 * static_cast<double>(report.statementsCovered) /
                static_cast<double>(report.statementsTotal);

  report.branchesTotal = cfg.labeledEdgeCount();
  for (const auto& e : cfg.edges)
    if (e.labeled() && visitedEdges.count(e.id)) ++report.branchesCovered;
  report.branchPct = report.branchesTotal == 0
                         ? 100.0
                         : 100.0 * static_cast<double>(report.branchesCovered) /
                               static_cast<double>(report.branchesTotal);

  // MC/DC over multi-atom decisions
  std::map<DecisionId, std::vector<TaggedEval>> byDecision;
  for (size_t t = 0; t < traces.size(); ++t) {
    int id = t < caseIds.size() ? caseIds[t] : static_cast<int>(t);
    for (const auto& eval : traces[t].decisions)
      byDecision[eval.decision].push_back(TaggedEval{id, &eval});
  }
  for (const auto& dec : cfg.decisions) {
    if (dec.isSwitch || dec.atoms.size() < 2) continue;
    static const std::vector<TaggedEval> kNone;
    auto it = byDecision.find(dec.id);
    McdcResult r = mcdcMeasure(dec, it == byDecision.end() ? kNone : it->second);
    report.mcdcCoveredAtoms += r.coveredAtoms;
    report.mcdcTotalAtoms += r.totalAtoms;
    for (const auto& p : r.pairs) report.mcdcPairs.push_back(p);
  }
  if (report.mcdcTotalAtoms > 0)
    report.mcdcPct = 100.0 * report.mcdcCoveredAtoms / report.mcdcTotalAtoms;

  // bins: empty suites report N/A rather than zero
  if (report.testCaseCount == 0) {
    report.stmtBin = Bin::NA;
    report.branchBin = Bin::NA;
  } else {
    report.stmtBin = binOf(report.statementPct);
    report.branchBin = binOf(report.branchPct);
  }
  report.mcdcBin = report.mcdcPct && report.testCaseCount > 0
                       ? binOf(*report.mcdcPct)
                       : Bin::NA;
  return report;
}

std::vector<TestCase> boundaryCases(const TestCase& base,
                                    const ConstraintBackend& backend,
                                    const std::vector<TestCase>& existing,
                                    int* nextCaseId, int* skipped) {
  std::vector<TestCase> extra;
  if (base.exception) return extra;

  // symbols in first-appearance order within the path constraint
  std::vector<std::string> symbols;
  {
    std::map<std::string, VType> all;
    std::set<std::string> seen;
    for (const auto& c : base.pathConjuncts) sym::collectInputs(c, all);
    std::function<void(const SymRef&)> scan = [&](const SymRef& e) {
      if (!e) return;
      if (e->op == SymOp::Input) {
        if (seen.insert(e->name).second) symbols.push_back(e->name);
        return;
      }
      scan(e->a);
      scan(e->b);
    };
    for (const auto& c : base.pathConjuncts) scan(c);
  }

  auto duplicateOf = [&](const std::map<std::string, uint32_t>& inputs) {
    for (const auto& tc : existing)
      if (tc.inputs == inputs) return true;
    for (const auto& tc : extra)
      if (tc.inputs == inputs) return true;
    return false;
  };

  for (const std::string& symbol : symbols) {
    for (bool maximize : {false, true}) {
      Solver::BoundResult r =
          backend.bound(base.pathConjuncts, {}, symbol, maximize);
      if (!r.value) {
        if (skipped) ++*skipped;
        continue;
      }
      TestCase tc;
      tc.function = base.function;
      tc.origin = CaseOrigin::Boundary;
      tc.boundaryNote = symbol + (maximize ? ":max" : ":min");
      tc.inputs = r.model;
      tc.stubReturns = base.stubReturns;
      for (auto& [name, bits] : tc.stubReturns) {
        auto it = r.model.find(name);
        bits = it == r.model.end() ? 0 : it->second;
        tc.inputs[name] = bits;
      }
      if (duplicateOf(tc.inputs)) continue;
      tc.id = (*nextCaseId)++;
      tc.coveredEdges = base.coveredEdges;
      tc.generationPath = base.generationPath;
      tc.pathConjuncts = base.pathConjuncts;
      extra.push_back(std::move(tc));
    }
  }
  return extra;
}

} // namespace smartgen
