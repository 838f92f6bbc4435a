//===-- cfg.hpp - per-function control-flow graph --------------------------===//
//
// Nodes hold ordered statement lists; branch nodes additionally carry the
// decision expression. Branch edges are labeled with (decision, value):
// value 1/0 for the true/false arms of if/while/for, case index 0..k-1 and
// default index k for switch. Everything a search needs is precomputed here:
// shortest edge-distance to exit and the atomic-condition decomposition of
// every decision.
//
//===----------------------------------------------------------------------===//
#pragma once

#include "smartgen/ast.hpp"

#include <limits>
#include <string>
#include <vector>

namespace smartgen {

using NodeId = int;
using EdgeId = int;
using DecisionId = int;

enum class NodeKind { Sequential, Branch, Exit };

struct CfgEdge {
  EdgeId id = -1;
  NodeId from = -1;
  NodeId to = -1;
  DecisionId decision = -1; // -1: unlabeled
  int value = -1;           // branch value (see header comment)

  bool labeled() const { return decision >= 0; }
};

struct CfgNode {
  NodeId id = -1;
  NodeKind kind = NodeKind::Sequential;
  std::vector<const Stmt*> statements;
  const Expr* decision = nullptr; // Branch only
  DecisionId decisionId = -1;
  std::vector<EdgeId> out;
  std::vector<EdgeId> in;
};

struct Decision {
  DecisionId id = -1;
  NodeId node = -1;
  const Expr* expr = nullptr;
  std::vector<const Expr*> atoms; // left-to-right source order
  bool isSwitch = false;
  std::vector<int64_t> caseValues; // switch: non-default labels in order
};

struct Cfg {
  std::string function;
  std::vector<CfgNode> nodes;
  std::vector<CfgEdge> edges;
  std::vector<Decision> decisions;
  NodeId entry = -1;
  NodeId exit = -1;
  std::vector<LocalSlot> locals; // function slots + inlining temporaries
  std::vector<std::string> warnings;

  // storage for statements/expressions synthesized during lowering
  std::vector<StmtPtr> ownedStmts;
  std::vector<ExprPtr> ownedExprs;

  const CfgNode& node(NodeId id) const { return nodes[static_cast<size_t>(id)]; }
  const CfgEdge& edge(EdgeId id) const { return edges[static_cast<size_t>(id)]; }
  size_t labeledEdgeCount() const;
  // nodes that count toward statement coverage (non-empty or branch)
  std::vector<NodeId> statementBlocks() const;
};

struct CfgOptions {
  int inlineDepth = 0;
};

Cfg buildCfg(const Program& program, const FunctionDef& fn,
             const CfgOptions& options = {});

inline constexpr int kUnreachableDistance = std::numeric_limits<int>::max();

// Minimum edge count from each node to the exit node, by reverse BFS.
// Nodes with no path to exit map to kUnreachableDistance.
std::vector<int> distancesToExit(const Cfg& cfg);

// The maximal &&/||/!-free subexpressions of a decision, in source order.
std::vector<const Expr*> decomposeAtoms(const Expr* decision);

std::string toDot(const Cfg& cfg);

} // namespace smartgen
