//===-- replay.cpp --------------------------------------------------------------===//

#include "smartgen/replay.hpp"

#include <cassert>

namespace smartgen {

std::set<EdgeId> ReplayTrace::edgeSet() const {
  std::set<EdgeId> out;
  for (const auto& [node, edge] : steps) {
    (void)node;
    if (edge >= 0) out.insert(edge);
  }
  return out;
}

std::set<NodeId> ReplayTrace::nodeSet() const {
  std::set<NodeId> out;
  for (const auto& [node, edge] : steps) {
    (void)edge;
    out.insert(node);
  }
  return out;
}

namespace {

// concrete scalar: bit pattern plus the type it is read at
struct CWord {
  uint32_t bits = 0;
  VType type{32, true};

  int64_t value() const { return sym::interpret(bits, type); }
  bool truthy() const { return bits != 0; }
};

struct CPtr {
  int owner = -1; // object index, -1 when not object-backed
  uint32_t offset = 0;
  bool null = false;
  bool unbound = false;
  uint32_t fixedAddr = 0;
  bool fixed = false;
  TypeRef voidAlias;

  static CPtr nullPtr() {
    CPtr p;
    p.null = true;
    return p;
  }
  static CPtr unboundPtr() {
    CPtr p;
    p.unbound = true;
    return p;
  }
};

struct CVal {
  bool isScalar = true;
  CWord w;
  CPtr p;

  static CVal scalar(uint32_t bits, VType t) {
    CVal v;
    v.isScalar = true;
    v.w = CWord{bits, t};
    return v;
  }
  static CVal pointer(CPtr p) {
    CVal v;
    v.isScalar = false;
    v.p = std::move(p);
    return v;
  }
};

struct CObj {
  TypeRef elem;
  uint32_t count = 1;
  uint32_t totalSize = 0;
  std::map<uint32_t, CVal> cells;
};

// signals a concrete runtime exception during replay
struct ReplayFault {
  ExceptionKind kind;
};

class Interpreter {
public:
  Interpreter(const TestCase& tc, const Program& prog, const FunctionDef& fn,
              const Cfg& cfg, const ReplayOptions& opts)
      : tc_(tc), prog_(prog), fn_(fn), cfg_(cfg), opts_(opts) {}

  ReplayTrace run() {
    setUp();
    NodeId current = cfg_.entry;
    uint64_t steps = 0;
    while (true) {
      if (++steps > opts_.stepLimit) {
        trace_.stepLimitHit = true;
        return trace_;
      }
      const CfgNode& node = cfg_.node(current);
      if (node.kind == NodeKind::Exit) {
        trace_.steps.emplace_back(current, -1);
        if (fn_.returnType->kind != TypeKind::Void && !trace_.returnValue)
          trace_.returnValue = 0; // fell off the end
        return trace_;
      }

      // statements
      bool faulted = false;
      for (size_t i = 0; i < node.statements.size(); ++i) {
        try {
          execStmt(*node.statements[i]);
        } catch (const ReplayFault& f) {
          trace_.steps.emplace_back(current, -1);
          trace_.exception =
              ExceptionInfo{f.kind, current, static_cast<int>(i)};
          faulted = true;
          break;
        }
      }
      if (faulted) return trace_;

      if (node.kind == NodeKind::Sequential) {
        EdgeId e = node.out.front();
        trace_.steps.emplace_back(current, e);
        current = cfg_.edge(e).to;
        continue;
      }

      // branch: evaluate the decision with short-circuiting, record atoms
      int takenValue = 0;
      try {
        takenValue = evalDecision(node);
      } catch (const ReplayFault& f) {
        trace_.steps.emplace_back(current, -1);
        trace_.exception = ExceptionInfo{f.kind, current, -1};
        return trace_;
      }
      EdgeId taken = -1;
      for (EdgeId e : node.out)
        if (cfg_.edge(e).value == takenValue) taken = e;
      assert(taken >= 0 && "decision produced a value with no matching edge");
      trace_.steps.emplace_back(current, taken);
      current = cfg_.edge(taken).to;
    }
  }

private:
  const TestCase& tc_;
  const Program& prog_;
  const FunctionDef& fn_;
  const Cfg& cfg_;
  ReplayOptions opts_;

  std::vector<CObj> objects_;
  std::vector<int> slotObjects_;
  std::vector<int> globalObjects_;
  std::map<uint64_t, std::pair<int, TypeRef>> voidAliases_; // slot -> target
  std::map<std::string, int> stubCounters_;
  ReplayTrace trace_;

  uint32_t inputBits(const std::string& symbol) const {
    auto it = tc_.inputs.find(symbol);
    return it == tc_.inputs.end() ? 0 : it->second;
  }

  //===--------------------------------------------------------------------===//
  // memory construction
  //===--------------------------------------------------------------------===//

  int buildObject(const TypeRef& elem, uint32_t count, const std::string& name,
                  bool fromInputs, bool indexedNames) {
    CObj obj;
    obj.elem = elem;
    obj.count = count;
    uint32_t elemSize = prog_.sizeOf(elem);
    obj.totalSize = elemSize * count;
    auto leaves = computeLeaves(prog_, elem);
    for (uint32_t i = 0; i < count; ++i) {
      std::string prefix =
          (count > 1 || indexedNames) ? name + "[" + std::to_string(i) + "]" : name;
      for (const auto& leaf : leaves) {
        uint32_t off = i * elemSize + leaf.offset;
        switch (leaf.type->kind) {
        case TypeKind::Int:
        case TypeKind::Enum: {
          VType vt = vtypeOf(leaf.type);
          uint32_t bits = fromInputs
                              ? sym::maskToWidth(inputBits(prefix + leaf.suffix),
                                                 vt.width)
                              : 0;
          obj.cells[off] = CVal::scalar(bits, vt);
          break;
        }
        case TypeKind::Pointer:
          obj.cells[off] = CVal::pointer(CPtr::nullPtr());
          break;
        case TypeKind::VoidPointer:
          obj.cells[off] = CVal::pointer(fromInputs ? CPtr::unboundPtr()
                                                    : CPtr::nullPtr());
          break;
        default:
          assert(false);
        }
      }
    }
    objects_.push_back(std::move(obj));
    return static_cast<int>(objects_.size()) - 1;
  }

  void setUp() {
    for (const auto& g : prog_.globals) {
      TypeRef t = g.type;
      uint32_t count = 1;
      if (t->kind == TypeKind::Array) {
        count = t->count;
        t = t->element;
      }
      globalObjects_.push_back(buildObject(t, count, g.name, true, false));
    }
    slotObjects_.assign(cfg_.locals.size(), -1);
    for (size_t i = 0; i < cfg_.locals.size(); ++i) {
      const LocalSlot& slot = cfg_.locals[i];
      TypeRef t = slot.type;
      uint32_t count = 1;
      TypeRef elem = t;
      if (t->kind == TypeKind::Array) {
        count = t->count;
        elem = t->element;
      }
      bool fromInputs = slot.isParam || opts_.symbolicLocals;
      slotObjects_[i] = buildObject(elem, count, slot.name, fromInputs, false);
      if (slot.isParam && t->kind == TypeKind::Pointer) {
        int pointee = buildObject(t->element, 1, slot.name, true, true);
        CPtr p;
        p.owner = pointee;
        objects_[static_cast<size_t>(slotObjects_[i])].cells[0] = CVal::pointer(p);
      }
    }
  }

  //===--------------------------------------------------------------------===//
  // access
  //===--------------------------------------------------------------------===//

  struct CPlace {
    CPtr ptr;
    TypeRef type;
  };

  CVal loadPlace(const CPlace& pl) {
    const CPtr& p = pl.ptr;
    if (p.unbound) throw ReplayFault{ExceptionKind::UnboundVoidAlias};
    if (p.null) throw ReplayFault{ExceptionKind::NullDereference};
    if (p.fixed) throw ReplayFault{ExceptionKind::FixedMemoryAddress};
    CObj& obj = objects_[static_cast<size_t>(p.owner)];
    uint32_t size = prog_.sizeOf(pl.type);
    if (obj.totalSize < size || p.offset > obj.totalSize - size)
      throw ReplayFault{ExceptionKind::ArrayOutOfBounds};
    auto it = obj.cells.find(p.offset);
    assert(it != obj.cells.end() && "aligned access resolves to a cell");
    CVal v = it->second;
    if (pl.type->kind == TypeKind::VoidPointer) {
      auto alias = voidAliases_.find(slotKey(p.owner, p.offset));
      if (alias != voidAliases_.end()) v.p.voidAlias = alias->second.second;
    }
    return v;
  }

  void storePlace(const CPlace& pl, const CVal& v) {
    const CPtr& p = pl.ptr;
    if (p.unbound) throw ReplayFault{ExceptionKind::UnboundVoidAlias};
    if (p.null) throw ReplayFault{ExceptionKind::NullDereference};
    if (p.fixed) throw ReplayFault{ExceptionKind::FixedMemoryAddress};
    CObj& obj = objects_[static_cast<size_t>(p.owner)];
    uint32_t size = prog_.sizeOf(pl.type);
    if (obj.totalSize < size || p.offset > obj.totalSize - size)
      throw ReplayFault{ExceptionKind::ArrayOutOfBounds};
    assert(obj.cells.count(p.offset));
    obj.cells[p.offset] = v;
    if (pl.type->kind == TypeKind::VoidPointer) {
      uint64_t key = slotKey(p.owner, p.offset);
      if (!v.isScalar && v.p.owner >= 0 && v.p.voidAlias)
        voidAliases_[key] = {v.p.owner, v.p.voidAlias};
      else
        voidAliases_.erase(key);
    }
  }

  static uint64_t slotKey(int obj, uint32_t off) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(obj)) << 32) | off;
  }

  //===--------------------------------------------------------------------===//
  // statements
  //===--------------------------------------------------------------------===//

  void execStmt(const Stmt& s) {
    switch (s.kind) {
    case StmtKind::Decl:
      if (s.init) {
        CVal v = rhsValue(*s.init, s.declType);
        CPlace pl;
        pl.ptr.owner = slotObjects_[static_cast<size_t>(s.declSlot)];
        pl.ptr.offset = 0;
        pl.type = s.declType;
        storePlace(pl, v);
      }
      return;
    case StmtKind::Assign: {
      const TypeRef& lt = s.lhs->type;
      if (lt->kind == TypeKind::Record || lt->kind == TypeKind::Array) {
        copyAggregate(*s.lhs, *s.rhs);
        return;
      }
      CVal v = rhsValue(*s.rhs, lt);
      CPlace pl = evalPlace(*s.lhs);
      storePlace(pl, v);
      return;
    }
    case StmtKind::ExprStmt:
      evalExpr(*s.expr);
      return;
    case StmtKind::Return:
      if (s.cond) {
        CVal v = evalExpr(*s.cond);
        VType rt = vtypeOf(fn_.returnType);
        trace_.returnValue = sym::interpret(convertBits(v, rt), rt);
      }
      return;
    default:
      assert(false && "structured statement in a node body");
    }
  }

  void copyAggregate(const Expr& lhs, const Expr& rhs) {
    CPlace lp = evalPlace(lhs);
    CPlace rp = evalPlace(rhs);
    auto leaves = computeLeaves(prog_, lp.type);
    for (const auto& leaf : leaves) {
      CVal v = objects_[static_cast<size_t>(rp.ptr.owner)]
                   .cells[rp.ptr.offset + leaf.offset];
      if (leaf.type->kind == TypeKind::VoidPointer) {
        auto alias = voidAliases_.find(slotKey(rp.ptr.owner, rp.ptr.offset + leaf.offset));
        uint64_t lkey = slotKey(lp.ptr.owner, lp.ptr.offset + leaf.offset);
        if (alias != voidAliases_.end())
          voidAliases_[lkey] = alias->second;
        else
          voidAliases_.erase(lkey);
      }
      objects_[static_cast<size_t>(lp.ptr.owner)]
          .cells[lp.ptr.offset + leaf.offset] = v;
    }
  }

  //===--------------------------------------------------------------------===//
  // decisions
  //===--------------------------------------------------------------------===//

  int evalDecision(const CfgNode& node) {
    const Decision& dec = cfg_.decisions[static_cast<size_t>(node.decisionId)];
    DecisionEval eval;
    eval.decision = dec.id;
    eval.atoms.assign(dec.atoms.size(), -1);

    int outcome;
    if (dec.isSwitch) {
      CVal v = evalExpr(*node.decision);
      int64_t subject = v.w.value();
      outcome = static_cast<int>(dec.caseValues.size()); // default edge
      for (size_t i = 0; i < dec.caseValues.size(); ++i)
        if (dec.caseValues[i] == subject) outcome = static_cast<int>(i);
      if (!dec.atoms.empty()) eval.atoms[0] = 1; // subject evaluated
    } else {
      bool truth = evalCondition(*node.decision, dec, eval);
      outcome = truth ? 1 : 0;
    }
    eval.outcome = outcome;
    trace_.decisions.push_back(std::move(eval));
    return outcome;
  }

  // short-circuit evaluation recording atom truth values
  bool evalCondition(const Expr& e, const Decision& dec, DecisionEval& record) {
    if (e.kind == ExprKind::Binary && e.bop == BinaryOp::LogAnd) {
      if (!evalCondition(*e.a, dec, record)) return false;
      return evalCondition(*e.b, dec, record);
    }
    if (e.kind == ExprKind::Binary && e.bop == BinaryOp::LogOr) {
      if (evalCondition(*e.a, dec, record)) return true;
      return evalCondition(*e.b, dec, record);
    }
    if (e.kind == ExprKind::Unary && e.uop == UnaryOp::Not)
      return !evalCondition(*e.a, dec, record);

    bool truth = truthiness(evalExpr(e));
    for (size_t i = 0; i < dec.atoms.size(); ++i) {
      if (dec.atoms[i] == &e) {
        record.atoms[i] = truth ? 1 : 0;
        break;
      }
    }
    return truth;
  }

  bool truthiness(const CVal& v) {
    if (v.isScalar) return v.w.truthy();
    if (v.p.null) return false;
    if (v.p.owner >= 0) return true;
    if (v.p.fixed) return v.p.fixedAddr != 0;
    throw ReplayFault{ExceptionKind::UnboundVoidAlias};
  }

  //===--------------------------------------------------------------------===//
  // expressions
  //===--------------------------------------------------------------------===//

  uint32_t convertBits(const CVal& v, VType to) {
    assert(v.isScalar);
    int64_t value = v.w.value();
    return sym::maskToWidth(static_cast<uint64_t>(value), to.width);
  }

  CVal rhsValue(const Expr& rhs, const TypeRef& target) {
    if (target->isPointerLike()) {
      if (rhs.kind == ExprKind::IntLit && rhs.intValue == 0)
        return CVal::pointer(CPtr::nullPtr());
      return evalExpr(rhs);
    }
    CVal v = evalExpr(rhs);
    VType vt = vtypeOf(target);
    return CVal::scalar(convertBits(v, vt), vt);
  }

  CPlace evalPlace(const Expr& e) {
    switch (e.kind) {
    case ExprKind::Var: {
      assert(!e.enumConstant);
      CPlace pl;
      pl.ptr.owner = e.var.isGlobal
                         ? globalObjects_[static_cast<size_t>(e.var.slot)]
                         : slotObjects_[static_cast<size_t>(e.var.slot)];
      pl.ptr.offset = 0;
      pl.type = e.type;
      return pl;
    }
    case ExprKind::Index: {
      CVal idx = evalExpr(*e.b);
      uint32_t delta = convertBits(idx, VType{32, false});
      CPtr base;
      if (e.a->type->kind == TypeKind::Array) {
        base = evalPlace(*e.a).ptr;
      } else {
        base = evalExpr(*e.a).p;
      }
      CPlace pl;
      pl.type = e.a->type->element;
      pl.ptr = advance(base, delta, prog_.sizeOf(pl.type));
      return pl;
    }
    case ExprKind::Field: {
      CPtr base;
      if (e.arrow)
        base = evalExpr(*e.a).p;
      else
        base = evalPlace(*e.a).ptr;
      CPlace pl;
      pl.type = e.type;
      pl.ptr = advance(base, e.fieldOffset, 1);
      return pl;
    }
    case ExprKind::Deref: {
      if (e.a->type->kind == TypeKind::Array) {
        CPlace bp = evalPlace(*e.a);
        bp.type = e.a->type->element;
        return bp;
      }
      CPlace pl;
      pl.ptr = evalExpr(*e.a).p;
      pl.type = e.type;
      return pl;
    }
    default:
      assert(false && "not an lvalue");
      return CPlace{};
    }
  }

  static CPtr advance(CPtr p, uint32_t delta, uint32_t elemSize) {
    if (p.owner >= 0) {
      p.offset += delta * elemSize; // uint32 wraparound by definition
      return p;
    }
    if (p.fixed) {
      p.fixedAddr += delta * elemSize;
      return p;
    }
    return p; // null / unbound fault at use
  }

  CVal evalExpr(const Expr& e) {
    switch (e.kind) {
    case ExprKind::IntLit: {
      VType vt = vtypeOf(e.type);
      return CVal::scalar(sym::maskToWidth(e.intValue, vt.width), vt);
    }
    case ExprKind::Var: {
      if (e.enumConstant)
        return CVal::scalar(
            sym::maskToWidth(static_cast<uint64_t>(e.enumValue), 32), VType{32, true});
      if (e.type->kind == TypeKind::Array || e.type->kind == TypeKind::Record) {
        CPlace pl = evalPlace(e);
        return CVal::pointer(pl.ptr);
      }
      return loadPlace(evalPlace(e));
    }
    case ExprKind::Index:
    case ExprKind::Field:
    case ExprKind::Deref: {
      if (e.type->kind == TypeKind::Array || e.type->kind == TypeKind::Record) {
        CPlace pl = evalPlace(e);
        return CVal::pointer(pl.ptr);
      }
      return loadPlace(evalPlace(e));
    }
    case ExprKind::AddrOf:
      return CVal::pointer(evalPlace(*e.a).ptr);
    case ExprKind::Unary: {
      CVal a = evalExpr(*e.a);
      switch (e.uop) {
      case UnaryOp::Not:
        return CVal::scalar(truthiness(a) ? 0 : 1, VType{32, true});
      case UnaryOp::Neg: {
        VType vt = vtypeOf(e.type);
        uint32_t bits = convertBits(a, vt);
        return CVal::scalar(sym::maskToWidth(~static_cast<uint64_t>(bits) + 1, vt.width), vt);
      }
      case UnaryOp::BitNot: {
        VType vt = vtypeOf(e.type);
        uint32_t bits = convertBits(a, vt);
        return CVal::scalar(sym::maskToWidth(~static_cast<uint64_t>(bits), vt.width), vt);
      }
      }
      return a;
    }
    case ExprKind::Binary:
      return evalBinary(e);
    case ExprKind::Call:
      return evalCall(e);
    case ExprKind::Cast:
      return evalCastExpr(e);
    }
    assert(false);
    return CVal::scalar(0, VType{32, true});
  }

  CVal evalCastExpr(const Expr& e) {
    const TypeRef& to = e.castType;
    const TypeRef& from = e.a->type;
    CVal v = evalExpr(*e.a);

    if (to->isInt() && from->isInt()) {
      VType vt = vtypeOf(to);
      return CVal::scalar(convertBits(v, vt), vt);
    }
    if (to->kind == TypeKind::Pointer) {
      if (from->isInt()) {
        uint32_t addr = convertBits(v, VType{32, false});
        if (addr == 0) return CVal::pointer(CPtr::nullPtr());
        CPtr p;
        p.fixed = true;
        p.fixedAddr = addr;
        return CVal::pointer(p);
      }
      if (from->kind == TypeKind::VoidPointer) {
        if (v.p.null || v.p.fixed || v.p.unbound) return v;
        if (!v.p.voidAlias || !sameType(v.p.voidAlias, to->element))
          return CVal::pointer(CPtr::unboundPtr());
        CVal out = v;
        out.p.voidAlias = nullptr;
        return out;
      }
      return v;
    }
    if (to->kind == TypeKind::VoidPointer) {
      CVal out = v;
      if (from->kind == TypeKind::Pointer || from->kind == TypeKind::Array)
        out.p.voidAlias = from->element;
      return out;
    }
    assert(false && "unsupported cast survived type checking");
    return v;
  }

  CVal evalBinary(const Expr& e) {
    BinaryOp op = e.bop;
    if (op == BinaryOp::LogAnd) {
      if (!truthiness(evalExpr(*e.a))) return CVal::scalar(0, VType{32, true});
      return CVal::scalar(truthiness(evalExpr(*e.b)) ? 1 : 0, VType{32, true});
    }
    if (op == BinaryOp::LogOr) {
      if (truthiness(evalExpr(*e.a))) return CVal::scalar(1, VType{32, true});
      return CVal::scalar(truthiness(evalExpr(*e.b)) ? 1 : 0, VType{32, true});
    }

    CVal a = evalExpr(*e.a);
    CVal b = evalExpr(*e.b);

    if ((op == BinaryOp::Add || op == BinaryOp::Sub) &&
        (!a.isScalar || !b.isScalar)) {
      const CVal& ptrSide = !a.isScalar ? a : b;
      const CVal& intSide = !a.isScalar ? b : a;
      uint32_t delta = convertBits(intSide, VType{32, false});
      if (op == BinaryOp::Sub) delta = static_cast<uint32_t>(-static_cast<int64_t>(delta));
      uint32_t elemSize = prog_.sizeOf(e.type->element);
      return CVal::pointer(advance(ptrSide.p, delta, elemSize));
    }

    if ((op == BinaryOp::Eq || op == BinaryOp::Ne) && (!a.isScalar || !b.isScalar)) {
      bool equal = pointerEqual(a, b);
      bool v = op == BinaryOp::Eq ? equal : !equal;
      return CVal::scalar(v ? 1 : 0, VType{32, true});
    }

    VType common = promoteBinary(a.w.type, b.w.type);
    int64_t sa = sym::interpret(convertBits(a, common), common);
    int64_t sb = sym::interpret(convertBits(b, common), common);
    uint32_t ua = convertBits(a, common);
    uint32_t ub = convertBits(b, common);
    auto wrap = [&](uint64_t v) { return sym::maskToWidth(v, common.width); };
    auto boolRes = [](bool v) { return CVal::scalar(v ? 1 : 0, VType{32, true}); };

    switch (op) {
    case BinaryOp::Add: return CVal::scalar(wrap(static_cast<uint64_t>(ua) + ub), common);
    case BinaryOp::Sub: return CVal::scalar(wrap(static_cast<uint64_t>(ua) - ub), common);
    case BinaryOp::Mul:
      return CVal::scalar(wrap(static_cast<uint64_t>(ua) * static_cast<uint64_t>(ub)), common);
    case BinaryOp::Div: {
      if (ub == 0) throw ReplayFault{ExceptionKind::DividedByZero};
      if (common.isSigned)
        return CVal::scalar(wrap(static_cast<uint64_t>(sa / sb)), common);
      return CVal::scalar(ua / ub, common);
    }
    case BinaryOp::Mod: {
      if (ub == 0) throw ReplayFault{ExceptionKind::DividedByZero};
      if (common.isSigned)
        return CVal::scalar(wrap(static_cast<uint64_t>(sa % sb)), common);
      return CVal::scalar(ua % ub, common);
    }
    case BinaryOp::Lt: return boolRes(common.isSigned ? sa < sb : ua < ub);
    case BinaryOp::Le: return boolRes(common.isSigned ? sa <= sb : ua <= ub);
    case BinaryOp::Gt: return boolRes(common.isSigned ? sa > sb : ua > ub);
    case BinaryOp::Ge: return boolRes(common.isSigned ? sa >= sb : ua >= ub);
    case BinaryOp::Eq: return boolRes(ua == ub);
    case BinaryOp::Ne: return boolRes(ua != ub);
    case BinaryOp::Shl: {
      VType lt = promoteUnary(a.w.type);
      uint32_t la = convertBits(a, lt);
      uint32_t amount = convertBits(b, lt) % static_cast<uint32_t>(lt.width);
      return CVal::scalar(sym::maskToWidth(static_cast<uint64_t>(la) << amount, lt.width), lt);
    }
    case BinaryOp::Shr: {
      VType lt = promoteUnary(a.w.type);
      uint32_t la = convertBits(a, lt);
      uint32_t amount = convertBits(b, lt) % static_cast<uint32_t>(lt.width);
      if (!lt.isSigned) return CVal::scalar(la >> amount, lt);
      int64_t sv = sym::interpret(la, lt);
      return CVal::scalar(sym::maskToWidth(static_cast<uint64_t>(sv >> amount), lt.width), lt);
    }
    case BinaryOp::BitAnd: return CVal::scalar(ua & ub, common);
    case BinaryOp::BitOr: return CVal::scalar(ua | ub, common);
    default:
      assert(false);
      return boolRes(false);
    }
  }

  bool pointerEqual(const CVal& a, const CVal& b) {
    auto norm = [](const CVal& v) -> CPtr {
      if (!v.isScalar) return v.p;
      return CPtr::nullPtr(); // literal 0 against a pointer
    };
    CPtr pa = norm(a), pb = norm(b);
    if (pa.unbound || pb.unbound)
      throw ReplayFault{ExceptionKind::UnboundVoidAlias};
    auto addrOf = [](const CPtr& p) -> uint32_t {
      return p.null ? 0 : p.fixedAddr;
    };
    if (pa.owner >= 0 && pb.owner >= 0)
      return pa.owner == pb.owner && pa.offset == pb.offset;
    if (pa.owner >= 0 || pb.owner >= 0) return false;
    return addrOf(pa) == addrOf(pb);
  }

  CVal evalCall(const Expr& e) {
    const std::vector<ParamDecl>* params = nullptr;
    TypeRef returnType;
    if (const FunctionDecl* ext = prog_.findExternal(e.name)) {
      params = &ext->params;
      returnType = ext->returnType;
    } else if (const FunctionDef* def = prog_.findFunction(e.name)) {
      params = &def->params;
      returnType = def->returnType;
    }
    assert(params);

    std::vector<CVal> args;
    for (const auto& arg : e.args) {
      if (arg->type->kind == TypeKind::Record)
        args.push_back(CVal::pointer(evalPlace(*arg).ptr));
      else
        args.push_back(evalExpr(*arg));
    }

    int ordinal = ++stubCounters_[e.name];
    std::string base = e.name + "#" + std::to_string(ordinal);
    for (size_t i = 0; i < args.size(); ++i) {
      const TypeRef& pt = (*params)[i].type;
      bool byRef = pt->kind == TypeKind::Pointer ||
                   pt->kind == TypeKind::VoidPointer ||
                   pt->kind == TypeKind::Array;
      if (byRef && !args[i].isScalar && args[i].p.owner >= 0)
        havoc(args[i].p.owner, base + "." + (*params)[i].name);
    }

    if (returnType->kind == TypeKind::Void)
      return CVal::scalar(0, VType{32, true});
    VType rt = vtypeOf(returnType);
    return CVal::scalar(sym::maskToWidth(inputBits(base), rt.width), rt);
  }

  void havoc(int objIdx, const std::string& base) {
    CObj& obj = objects_[static_cast<size_t>(objIdx)];
    uint32_t elemSize = obj.totalSize / obj.count;
    auto leaves = computeLeaves(prog_, obj.elem);
    for (uint32_t i = 0; i < obj.count; ++i) {
      for (const auto& leaf : leaves) {
        uint32_t off = i * elemSize + leaf.offset;
        std::string name = base + "[" + std::to_string(i) + "]" + leaf.suffix;
        switch (leaf.type->kind) {
        case TypeKind::Int:
        case TypeKind::Enum: {
          VType vt = vtypeOf(leaf.type);
          obj.cells[off] =
              CVal::scalar(sym::maskToWidth(inputBits(name), vt.width), vt);
          break;
        }
        case TypeKind::Pointer:
          obj.cells[off] = CVal::pointer(CPtr::nullPtr());
          break;
        case TypeKind::VoidPointer:
          obj.cells[off] = CVal::pointer(CPtr::unboundPtr());
          voidAliases_.erase(slotKey(objIdx, off));
          break;
        default:
          break;
        }
      }
    }
  }
};

} // namespace

ReplayTrace replay(const TestCase& testcase, const Program& program,
                   const FunctionDef& fn, const Cfg& cfg,
                   const ReplayOptions& options) {
  Interpreter interp(testcase, program, fn, cfg, options);
  return interp.run();
}

} // namespace smartgen
