//===-- cfg.cpp ---------------------------------------------------------------===//

#include "smartgen/cfg.hpp"

#include "smartgen/pretty.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace smartgen {

namespace {

bool isConstantScalar(const Expr& e, int64_t* value) {
  if (e.kind == ExprKind::IntLit) {
    *value = static_cast<int64_t>(e.intValue);
    return true;
  }
  if (e.kind == ExprKind::Var && e.enumConstant) {
    *value = e.enumValue;
    return true;
  }
  return false;
}

class Builder {
public:
  Builder(const Program& program, const FunctionDef& fn, const CfgOptions& opts)
      : prog_(program), fn_(fn), opts_(opts), inlineDepthLeft_(opts.inlineDepth) {}

  Cfg run() {
    cfg_.function = fn_.name;
    cfg_.locals = fn_.slots;

    cfg_.entry = newNode();
    cfg_.exit = newNode();
    cfg_.nodes[static_cast<size_t>(cfg_.exit)].kind = NodeKind::Exit;

    cur_ = newNode();
    addEdge(cfg_.entry, cur_);
    lowerStmt(*fn_.bodyStmt);
    if (cur_ >= 0) addEdge(cur_, cfg_.exit); // implicit return

    pruneEmptyOrphans();
    flagUnreachable();
    validate();
    return std::move(cfg_);
  }

private:
  const Program& prog_;
  const FunctionDef& fn_;
  CfgOptions opts_;
  Cfg cfg_;
  NodeId cur_ = -1; // node under construction; -1 after a terminator
  int inlineCounter_ = 0;

  struct InlineCtx {
    int resultSlot = -1; // -1 for void callees
    NodeId joinNode = -1;
  };
  std::vector<InlineCtx> inlineStack_;
  int inlineDepthLeft_ = 0;

  NodeId newNode() {
    CfgNode n;
    n.id = static_cast<NodeId>(cfg_.nodes.size());
    cfg_.nodes.push_back(std::move(n));
    return cfg_.nodes.back().id;
  }

  EdgeId addEdge(NodeId from, NodeId to, DecisionId decision = -1, int value = -1) {
    CfgEdge e;
    e.id = static_cast<EdgeId>(cfg_.edges.size());
    e.from = from;
    e.to = to;
    e.decision = decision;
    e.value = value;
    cfg_.nodes[static_cast<size_t>(from)].out.push_back(e.id);
    cfg_.nodes[static_cast<size_t>(to)].in.push_back(e.id);
    cfg_.edges.push_back(e);
    return e.id;
  }

  // ensures there is a node under construction (after terminators, the next
  // statement opens an unreachable node that flagUnreachable reports)
  NodeId need() {
    if (cur_ < 0) cur_ = newNode();
    return cur_;
  }

  void append(const Stmt* s) {
    cfg_.nodes[static_cast<size_t>(need())].statements.push_back(s);
  }

  DecisionId newDecision(NodeId node, const Expr* expr, bool isSwitch,
                         std::vector<int64_t> caseValues = {}) {
    Decision d;
    d.id = static_cast<DecisionId>(cfg_.decisions.size());
    d.node = node;
    d.expr = expr;
    d.atoms = decomposeAtoms(expr);
    d.isSwitch = isSwitch;
    d.caseValues = std::move(caseValues);
    cfg_.decisions.push_back(std::move(d));
    auto& n = cfg_.nodes[static_cast<size_t>(node)];
    n.kind = NodeKind::Branch;
    n.decision = expr;
    n.decisionId = cfg_.decisions.back().id;
    return cfg_.decisions.back().id;
  }

  //===--------------------------------------------------------------------===//
  // statement lowering
  //===--------------------------------------------------------------------===//

  void lowerStmt(const Stmt& s) {
    switch (s.kind) {
    case StmtKind::Block:
      for (const auto& st : s.body) lowerStmt(*st);
      return;
    case StmtKind::Decl:
    case StmtKind::Assign:
    case StmtKind::ExprStmt:
      lowerSimple(s);
      return;
    case StmtKind::If:
      lowerIf(s);
      return;
    case StmtKind::While:
      lowerWhile(s);
      return;
    case StmtKind::For:
      lowerFor(s);
      return;
    case StmtKind::Switch:
      lowerSwitch(s);
      return;
    case StmtKind::Return:
      lowerReturn(s);
      return;
    }
  }

  void lowerSimple(const Stmt& s) {
    const Stmt* lowered = &s;
    if (inlineDepthLeft_ > 0 && stmtHasInlinableCall(s))
      lowered = hoistCallsInStmt(s);
    append(lowered);
  }

  void lowerReturn(const Stmt& s) {
    if (!inlineStack_.empty()) {
      // return inside an inlined callee: store the value, jump to the join
      const InlineCtx& ctx = inlineStack_.back();
      if (s.cond) {
        const Expr* value = maybeHoistExpr(s.cond.get());
        append(makeSlotAssign(ctx.resultSlot, value, s.loc));
      }
      addEdge(need(), ctx.joinNode);
      cur_ = -1;
      return;
    }
    const Stmt* lowered = &s;
    if (inlineDepthLeft_ > 0 && s.cond && exprHasInlinableCall(*s.cond))
      lowered = hoistCallsInStmt(s);
    append(lowered);
    addEdge(need(), cfg_.exit);
    cur_ = -1;
  }

  void lowerIf(const Stmt& s) {
    const Expr* cond = maybeHoistExpr(s.cond.get());
    NodeId branch = need();
    DecisionId dec = newDecision(branch, cond, false);

    NodeId thenStart = newNode();
    addEdge(branch, thenStart, dec, 1);
    cur_ = thenStart;
    lowerStmt(*s.thenStmt);
    NodeId thenEnd = cur_;

    NodeId elseEnd = -1;
    if (s.elseStmt) {
      NodeId elseStart = newNode();
      addEdge(branch, elseStart, dec, 0);
      cur_ = elseStart;
      lowerStmt(*s.elseStmt);
      elseEnd = cur_;
    }

    NodeId merge = newNode();
    if (thenEnd >= 0) addEdge(thenEnd, merge);
    if (s.elseStmt) {
      if (elseEnd >= 0) addEdge(elseEnd, merge);
    } else {
      addEdge(branch, merge, dec, 0);
    }
    cur_ = merge;
  }

  void lowerWhile(const Stmt& s) {
    int64_t constCond = 0;
    if (isConstantScalar(*s.cond, &constCond)) {
      // constant-condition loop: no decision edges; a nonzero condition has
      // no way out, a zero condition never enters the body
      NodeId header = newNode();
      addEdge(need(), header);
      if (constCond != 0) {
        cur_ = header;
        lowerStmt(*s.thenStmt);
        if (cur_ >= 0) addEdge(cur_, header);
        cur_ = newNode(); // anything after the loop is unreachable
      } else {
        NodeId after = newNode();
        addEdge(header, after);
        cur_ = newNode(); // unreachable body
        lowerStmt(*s.thenStmt);
        if (cur_ >= 0) addEdge(cur_, header);
        cur_ = after;
      }
      return;
    }

    NodeId header = newNode();
    addEdge(need(), header);
    const Expr* cond = s.cond.get();
    if (inlineDepthLeft_ > 0 && exprHasInlinableCall(*cond))
      unsupportedInline(s.loc, "loop conditions");
    DecisionId dec = newDecision(header, cond, false);

    NodeId bodyStart = newNode();
    addEdge(header, bodyStart, dec, 1);
    cur_ = bodyStart;
    lowerStmt(*s.thenStmt);
    if (cur_ >= 0) addEdge(cur_, header); // back edge

    NodeId after = newNode();
    addEdge(header, after, dec, 0);
    cur_ = after;
  }

  void lowerFor(const Stmt& s) {
    if (s.forInit) lowerStmt(*s.forInit);

    NodeId header = newNode();
    addEdge(need(), header);

    if (!s.cond) {
      // for (;;) — same shape as while(1)
      cur_ = header;
      lowerStmt(*s.thenStmt);
      if (s.forStep) lowerStmt(*s.forStep);
      if (cur_ >= 0) addEdge(cur_, header);
      cur_ = newNode();
      return;
    }

    const Expr* cond = s.cond.get();
    if (inlineDepthLeft_ > 0 && exprHasInlinableCall(*cond))
      unsupportedInline(s.loc, "loop conditions");
    DecisionId dec = newDecision(header, cond, false);

    NodeId bodyStart = newNode();
    addEdge(header, bodyStart, dec, 1);
    cur_ = bodyStart;
    lowerStmt(*s.thenStmt);
    if (s.forStep) lowerStmt(*s.forStep);
    if (cur_ >= 0) addEdge(cur_, header);

    NodeId after = newNode();
    addEdge(header, after, dec, 0);
    cur_ = after;
  }

  void lowerSwitch(const Stmt& s) {
    const Expr* subject = maybeHoistExpr(s.cond.get());
    std::vector<int64_t> values;
    for (const auto& c : s.cases)
      if (!c.isDefault) values.push_back(c.value);

    NodeId branch = need();
    DecisionId dec = newDecision(branch, subject, true, values);
    NodeId merge = newNode();

    int caseIndex = 0;
    const int defaultValue = static_cast<int>(values.size());
    bool hasDefaultBody = false;
    for (const auto& c : s.cases) {
      NodeId start = newNode();
      if (c.isDefault) {
        hasDefaultBody = true;
        addEdge(branch, start, dec, defaultValue);
      } else {
        addEdge(branch, start, dec, caseIndex++);
      }
      cur_ = start;
      for (const auto& st : c.body) lowerStmt(*st);
      if (cur_ >= 0) addEdge(cur_, merge);
    }
    if (!hasDefaultBody) addEdge(branch, merge, dec, defaultValue);
    cur_ = merge;
  }

  //===--------------------------------------------------------------------===//
  // call inlining
  //===--------------------------------------------------------------------===//

  bool callIsInlinable(const Expr& call) const {
    return call.kind == ExprKind::Call && prog_.findFunction(call.name) != nullptr;
  }
  bool exprHasInlinableCall(const Expr& e) const {
    if (callIsInlinable(e)) return true;
    if (e.a && exprHasInlinableCall(*e.a)) return true;
    if (e.b && exprHasInlinableCall(*e.b)) return true;
    for (const auto& arg : e.args)
      if (exprHasInlinableCall(*arg)) return true;
    return false;
  }
  bool stmtHasInlinableCall(const Stmt& s) const {
    if (s.init && exprHasInlinableCall(*s.init)) return true;
    if (s.lhs && exprHasInlinableCall(*s.lhs)) return true;
    if (s.rhs && exprHasInlinableCall(*s.rhs)) return true;
    if (s.expr && exprHasInlinableCall(*s.expr)) return true;
    return false;
  }

  [[noreturn]] void unsupportedInline(SrcLoc loc, const char* where) {
    unsupported(std::string("inlining calls inside ") + where +
                    " is not supported; lower the call to a local first",
                loc);
  }

  int addSlot(const std::string& base, TypeRef type) {
    std::string name = base;
    auto taken = [&](const std::string& n) {
      for (const auto& s : cfg_.locals)
        if (s.name == n) return true;
      return false;
    };
    int suffix = 2;
    while (taken(name)) name = base + "#" + std::to_string(suffix++);
    LocalSlot slot;
    slot.name = name;
    slot.type = std::move(type);
    cfg_.locals.push_back(std::move(slot));
    return static_cast<int>(cfg_.locals.size()) - 1;
  }

  Expr* makeSlotRef(int slot, SrcLoc loc) {
    auto e = std::make_unique<Expr>();
    e->kind = ExprKind::Var;
    e->loc = loc;
    e->name = cfg_.locals[static_cast<size_t>(slot)].name;
    e->var.slot = slot;
    e->var.isGlobal = false;
    e->type = cfg_.locals[static_cast<size_t>(slot)].type;
    cfg_.ownedExprs.push_back(std::move(e));
    return cfg_.ownedExprs.back().get();
  }

  const Stmt* makeSlotAssign(int slot, const Expr* value, SrcLoc loc) {
    auto st = std::make_unique<Stmt>();
    st->kind = StmtKind::Assign;
    st->loc = loc;
    st->lhs = cloneExpr(*makeSlotRef(slot, loc));
    st->rhs = cloneExpr(*value);
    cfg_.ownedStmts.push_back(std::move(st));
    return cfg_.ownedStmts.back().get();
  }

  // Replaces every inlinable call in the expression with a temporary local,
  // splicing the callee body into the graph ahead of the statement.
  const Expr* maybeHoistExpr(const Expr* e) {
    if (inlineDepthLeft_ <= 0 || !exprHasInlinableCall(*e)) return e;
    ExprPtr rewritten = cloneExpr(*e);
    hoistCallsInExpr(*rewritten);
    cfg_.ownedExprs.push_back(std::move(rewritten));
    return cfg_.ownedExprs.back().get();
  }

  const Stmt* hoistCallsInStmt(const Stmt& s) {
    StmtPtr rewritten = cloneStmt(s);
    if (rewritten->init) hoistCallsInExpr(*rewritten->init);
    if (rewritten->lhs) hoistCallsInExpr(*rewritten->lhs);
    if (rewritten->rhs) hoistCallsInExpr(*rewritten->rhs);
    if (rewritten->expr) hoistCallsInExpr(*rewritten->expr);
    if (rewritten->cond) hoistCallsInExpr(*rewritten->cond);
    cfg_.ownedStmts.push_back(std::move(rewritten));
    return cfg_.ownedStmts.back().get();
  }

  // left-to-right evaluation order: children first
  void hoistCallsInExpr(Expr& e) {
    if (e.a) hoistCallsInExpr(*e.a);
    if (e.b) hoistCallsInExpr(*e.b);
    for (auto& arg : e.args) hoistCallsInExpr(*arg);
    if (!callIsInlinable(e)) return;

    const FunctionDef* callee = prog_.findFunction(e.name);
    int resultSlot = -1;
    if (callee->returnType->kind != TypeKind::Void)
      resultSlot = addSlot(e.name + ".ret", callee->returnType);
    spliceCallee(*callee, e, resultSlot);

    if (resultSlot >= 0) {
      // rewrite this node into a reference to the temporary
      Expr replacement;
      replacement.kind = ExprKind::Var;
      replacement.loc = e.loc;
      replacement.name = cfg_.locals[static_cast<size_t>(resultSlot)].name;
      replacement.var.slot = resultSlot;
      replacement.type = cfg_.locals[static_cast<size_t>(resultSlot)].type;
      e = std::move(replacement);
    } else {
      unsupported("a void call cannot be used as a value", e.loc);
    }
  }

  void spliceCallee(const FunctionDef& callee, const Expr& call, int resultSlot) {
    ++inlineCounter_;
    // fresh slots for the callee frame
    std::vector<int> remap(callee.slots.size(), -1);
    for (size_t i = 0; i < callee.slots.size(); ++i)
      remap[i] = addSlot(callee.name + "." + callee.slots[i].name,
                         callee.slots[i].type);

    // bind arguments
    for (size_t i = 0; i < callee.params.size(); ++i)
      append(makeSlotAssign(remap[i], call.args[i].get(), call.loc));

    // splice body with returns redirected to a join node
    StmtPtr body = cloneStmt(*callee.bodyStmt);
    remapSlots(*body, remap);
    cfg_.ownedStmts.push_back(std::move(body));
    const Stmt* spliced = cfg_.ownedStmts.back().get();

    NodeId join = newNode();
    inlineStack_.push_back(InlineCtx{resultSlot, join});
    --inlineDepthLeft_;
    lowerStmt(*spliced);
    ++inlineDepthLeft_;
    inlineStack_.pop_back();

    if (cur_ >= 0) addEdge(cur_, join); // fall-off-end of callee body
    cur_ = join;
  }

  void remapSlots(Expr& e, const std::vector<int>& remap) {
    if (e.kind == ExprKind::Var && !e.var.isGlobal && !e.enumConstant &&
        e.var.slot >= 0) {
      e.var.slot = remap[static_cast<size_t>(e.var.slot)];
      e.name = cfg_.locals[static_cast<size_t>(e.var.slot)].name;
    }
    if (e.a) remapSlots(*e.a, remap);
    if (e.b) remapSlots(*e.b, remap);
    for (auto& arg : e.args) remapSlots(*arg, remap);
  }
  void remapSlots(Stmt& s, const std::vector<int>& remap) {
    for (auto& st : s.body) remapSlots(*st, remap);
    if (s.kind == StmtKind::Decl)
      s.declSlot = remap[static_cast<size_t>(s.declSlot)];
    if (s.init) remapSlots(*s.init, remap);
    if (s.lhs) remapSlots(*s.lhs, remap);
    if (s.rhs) remapSlots(*s.rhs, remap);
    if (s.cond) remapSlots(*s.cond, remap);
    if (s.thenStmt) remapSlots(*s.thenStmt, remap);
    if (s.elseStmt) remapSlots(*s.elseStmt, remap);
    if (s.forInit) remapSlots(*s.forInit, remap);
    if (s.forStep) remapSlots(*s.forStep, remap);
    for (auto& c : s.cases)
      for (auto& st : c.body) remapSlots(*st, remap);
    if (s.expr) remapSlots(*s.expr, remap);
  }

  //===--------------------------------------------------------------------===//
  // cleanup and validation
  //===--------------------------------------------------------------------===//

  // drop empty sequential nodes that can never be entered (merge artifacts
  // after terminating arms); repeats until stable
  void pruneEmptyOrphans() {
    bool changed = true;
    std::set<NodeId> dead;
    while (changed) {
      changed = false;
      for (auto& n : cfg_.nodes) {
        if (dead.count(n.id) || n.id == cfg_.entry || n.id == cfg_.exit)
          continue;
        if (n.kind != NodeKind::Sequential || !n.statements.empty()) continue;
        bool hasLiveIn = false;
        for (EdgeId e : n.in)
          if (!dead.count(cfg_.edges[static_cast<size_t>(e)].from)) hasLiveIn = true;
        if (!hasLiveIn) {
          dead.insert(n.id);
          changed = true;
        }
      }
    }
    if (dead.empty()) return;

    // rebuild node and edge arrays with dense ids
    std::map<NodeId, NodeId> nodeMap;
    std::vector<CfgNode> newNodes;
    for (auto& n : cfg_.nodes) {
      if (dead.count(n.id)) continue;
      NodeId nid = static_cast<NodeId>(newNodes.size());
      nodeMap[n.id] = nid;
      CfgNode copy = n;
      copy.id = nid;
      copy.in.clear();
      copy.out.clear();
      newNodes.push_back(std::move(copy));
    }
    std::vector<CfgEdge> newEdges;
    std::map<EdgeId, EdgeId> edgeMap;
    for (auto& e : cfg_.edges) {
      if (dead.count(e.from) || dead.count(e.to)) continue;
      CfgEdge copy = e;
      copy.id = static_cast<EdgeId>(newEdges.size());
      copy.from = nodeMap[e.from];
      copy.to = nodeMap[e.to];
      edgeMap[e.id] = copy.id;
      newEdges.push_back(copy);
    }
    for (auto& e : newEdges) {
      newNodes[static_cast<size_t>(e.from)].out.push_back(e.id);
      newNodes[static_cast<size_t>(e.to)].in.push_back(e.id);
    }
    for (auto& d : cfg_.decisions) d.node = nodeMap[d.node];
    cfg_.entry = nodeMap[cfg_.entry];
    cfg_.exit = nodeMap[cfg_.exit];
    cfg_.nodes = std::move(newNodes);
    cfg_.edges = std::move(newEdges);
  }

  void flagUnreachable() {
    std::vector<bool> seen(cfg_.nodes.size(), false);
    std::deque<NodeId> work{cfg_.entry};
    seen[static_cast<size_t>(cfg_.entry)] = true;
    while (!work.empty()) {
      NodeId n = work.front();
      work.pop_front();
      for (EdgeId e : cfg_.nodes[static_cast<size_t>(n)].out) {
        NodeId to = cfg_.edges[static_cast<size_t>(e)].to;
        if (!seen[static_cast<size_t>(to)]) {
          seen[static_cast<size_t>(to)] = true;
          work.push_back(to);
        }
      }
    }
    for (const auto& n : cfg_.nodes) {
      if (seen[static_cast<size_t>(n.id)] || n.statements.empty()) continue;
      int line = n.statements.front()->loc.line;
      cfg_.warnings.push_back(cfg_.function + ": unreachable code at line " +
                              std::to_string(line));
    }
  }

  void validate() const {
    for (const auto& n : cfg_.nodes) {
      switch (n.kind) {
      case NodeKind::Sequential:
        assert(n.out.size() == 1 && "sequential node must have one successor");
        break;
      case NodeKind::Branch:
        assert(n.out.size() >= 2 && "branch node needs at least two edges");
        break;
      case NodeKind::Exit:
        assert(n.out.empty() && "exit node cannot have successors");
        break;
      }
    }
    // labels on one branch node are distinct
    for (const auto& n : cfg_.nodes) {
      if (n.kind != NodeKind::Branch) continue;
      std::set<int> values;
      for (EdgeId e : n.out) {
        const CfgEdge& edge = cfg_.edges[static_cast<size_t>(e)];
        assert(edge.labeled() && "branch edges must be labeled");
        bool fresh = values.insert(edge.value).second;
        assert(fresh && "duplicate branch label");
        (void)fresh;
      }
    }
    (void)this;
  }
};

} // namespace

size_t Cfg::labeledEdgeCount() const {
  size_t n = 0;
  for (const auto& e : edges)
    if (e.labeled()) ++n;
  return n;
}

std::vector<NodeId> Cfg::statementBlocks() const {
  std::vector<NodeId> out;
  for (const auto& n : nodes)
    if (!n.statements.empty() || n.kind == NodeKind::Branch) out.push_back(n.id);
  return out;
}

Cfg buildCfg(const Program& program, const FunctionDef& fn,
             const CfgOptions& options) {
  return Builder(program, fn, options).run();
}

std::vector<int> distancesToExit(const Cfg& cfg) {
  std::vector<int> dist(cfg.nodes.size(), kUnreachableDistance);
  std::deque<NodeId> work;
  dist[static_cast<size_t>(cfg.exit)] = 0;
  work.push_back(cfg.exit);
  while (!work.empty()) {
    NodeId n = work.front();
    work.pop_front();
    for (EdgeId e : cfg.nodes[static_cast<size_t>(n)].in) {
      NodeId from = cfg.edges[static_cast<size_t>(e)].from;
      if (dist[static_cast<size_t>(from)] == kUnreachableDistance) {
        dist[static_cast<size_t>(from)] = dist[static_cast<size_t>(n)] + 1;
        work.push_back(from);
      }
    }
  }
  return dist;
}

namespace {
void collectAtoms(const Expr* e, std::vector<const Expr*>& out) {
  if (e->kind == ExprKind::Binary &&
      (e->bop == BinaryOp::LogAnd || e->bop == BinaryOp::LogOr)) {
    collectAtoms(e->a.get(), out);
    collectAtoms(e->b.get(), out);
    return;
  }
  if (e->kind == ExprKind::Unary && e->uop == UnaryOp::Not) {
    collectAtoms(e->a.get(), out);
    return;
  }
  out.push_back(e);
}
} // namespace

std::vector<const Expr*> decomposeAtoms(const Expr* decision) {
  std::vector<const Expr*> atoms;
  collectAtoms(decision, atoms);
  return atoms;
}

std::string toDot(const Cfg& cfg) {
  std::ostringstream out;
  out << "digraph \"" << cfg.function << "\" {\n";
  out << "  node [shape=box, fontname=\"monospace\"];\n";
  for (const auto& n : cfg.nodes) {
    std::string label;
    if (n.id == cfg.entry) label = "entry";
    if (n.kind == NodeKind::Exit) label = "exit";
    for (const Stmt* s : n.statements) {
      if (!label.empty()) label += "\\n";
      switch (s->kind) {
      case StmtKind::Decl:
        label += s->declName + " = ...";
        break;
      case StmtKind::Assign:
        label += printExpr(*s->lhs) + " = " + printExpr(*s->rhs);
        break;
      case StmtKind::Return:
        label += s->cond ? "return " + printExpr(*s->cond) : "return";
        break;
      case StmtKind::ExprStmt:
        label += printExpr(*s->expr);
        break;
      default:
        label += "...";
      }
    }
    if (n.kind == NodeKind::Branch) {
      if (!label.empty()) label += "\\n";
      label += "branch: " + printExpr(*n.decision);
    }
    // escape quotes for dot
    std::string escaped;
    for (char c : label) {
      if (c == '"') escaped += "\\\"";
      else escaped += c;
    }
    out << "  n" << n.id << " [label=\"" << escaped << "\"];\n";
  }
  for (const auto& e : cfg.edges) {
    out << "  n" << e.from << " -> n" << e.to;
    if (e.labeled()) {
      const Decision& d = cfg.decisions[static_cast<size_t>(e.decision)];
      std::string tag;
      if (d.isSwitch) {
        tag = e.value < static_cast<int>(d.caseValues.size())
                  ? "case " + std::to_string(d.caseValues[static_cast<size_t>(e.value)])
                  : "default";
      } else {
        tag = e.value == 1 ? "true" : "false";
      }
      out << " [label=\"" << tag << "\"]";
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

} // namespace smartgen
