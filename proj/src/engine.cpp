//===-- engine.cpp --------------------------------------------------------------===//

#include "smartgen/engine.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <deque>

namespace smartgen {

const char* uncoveredReasonName(UncoveredReason r) {
  switch (r) {
  case UncoveredReason::Infeasible: return "infeasible";
  case UncoveredReason::Unknown: return "unknown";
  case UncoveredReason::Budget: return "budget";
  }
  return "?";
}

size_t GenerationResult::countByOrigin(CaseOrigin origin) const {
  size_t n = 0;
  for (const auto& c : cases)
    if (c.origin == origin) ++n;
  return n;
}

std::vector<StubPlan> generateStubs(const Program& program) {
  std::vector<StubPlan> plans;
  for (const auto& ext : program.externals) {
    StubPlan plan;
    plan.callee = ext.name;
    plan.returnType = ext.returnType;
    for (const auto& p : ext.params) plan.params.push_back(p);
    plans.push_back(std::move(plan));
  }
  return plans;
}

namespace {

SymRef guardAnd(const SymRef& guard, SymRef cond) {
  if (!guard) return cond;
  return sym::logAnd(guard, std::move(cond));
}
SymRef guardImplies(const SymRef& guard, SymRef cond) {
  if (!guard) return cond;
  return sym::logOr(sym::logNot(guard), std::move(cond));
}

constexpr VType kU32{32, false};
constexpr VType kI32{32, true};

} // namespace

//===----------------------------------------------------------------------===//
// Explorer::Impl
//===----------------------------------------------------------------------===//

struct Explorer::Impl {
  const Program& prog;
  const FunctionDef& fn;
  const Cfg& cfg;
  Budgets budgets;
  EngineOptions opts;
  ConstraintBackend backend;

  std::vector<int> dist;
  GenerationResult result;

  struct ExecState {
    NodeId current = -1;
    std::optional<EdgeId> pendingEdge;
    std::vector<Conjunct> path;
    MemoryState memory;
    std::map<std::string, int> stubCounters;
    std::vector<std::pair<std::string, std::string>> stubOrder; // callee, ret sym
    std::vector<std::pair<NodeId, EdgeId>> trace;
    std::optional<SymRef> returnValue;
  };

  std::deque<ExecState> open, close;
  std::vector<uint32_t> edgeVisits;
  std::vector<ObjectId> slotObjects;   // per cfg.locals index
  std::vector<ObjectId> globalObjects; // per program.globals index
  ExecState initialState;

  std::set<EdgeId> covered;
  std::set<EdgeId> unsatSeen, unknownSeen, constInfeasible;
  std::set<std::tuple<int, NodeId, int>> emittedExceptions;
  uint64_t maxNodeExecutions = 0;
  std::chrono::steady_clock::time_point startTime;
  int nextCaseId = 1;
  int symbolOrder = 0;
  bool stopAll = false;

  Impl(const Program& p, const FunctionDef& f, const Cfg& g, const Budgets& b,
       const EngineOptions& o)
      : prog(p), fn(f), cfg(g), budgets(b), opts(o),
        backend(o.externalSolver, b.solverMs) {}

  //===--------------------------------------------------------------------===//
  // setup
  //===--------------------------------------------------------------------===//

  void registerSymbol(const std::string& name, VType t, SymbolRole role) {
    if (result.symbols.count(name)) return;
    result.symbols[name] = SymbolInfo{t, role, symbolOrder++};
  }

  void registerObjectSymbols(const MemoryState& mem, ObjectId id, SymbolRole role) {
    const MemoryObject& obj = mem.object(id);
    for (const auto& [off, val] : obj.cells) {
      (void)off;
      if (val.isScalar() && val.scalar->op == SymOp::Input)
        registerSymbol(val.scalar->name, val.scalar->type, role);
    }
  }

  void buildInitialState() {
    ExecState st;
    st.current = cfg.entry;

    for (const auto& g : prog.globals) {
      TypeRef t = g.type;
      uint32_t count = 1;
      if (t->kind == TypeKind::Array) {
        count = t->count;
        t = t->element;
      }
      ObjectId id = allocate(st.memory, prog, t, count, Origin::Global, g.name,
                             InitMode::Zero);
      globalObjects.push_back(id);
      registerObjectSymbols(st.memory, id, SymbolRole::Global);
    }

    slotObjects.assign(cfg.locals.size(), 0);
    for (size_t i = 0; i < cfg.locals.size(); ++i) {
      const LocalSlot& slot = cfg.locals[i];
      TypeRef t = slot.type;
      uint32_t count = 1;
      TypeRef elem = t;
      if (t->kind == TypeKind::Array) {
        count = t->count;
        elem = t->element;
      }
      Origin origin = slot.isParam ? Origin::Param : Origin::Local;
      InitMode init = opts.symbolicLocals ? InitMode::Symbolic : InitMode::Zero;
      ObjectId id = allocate(st.memory, prog, elem, count, origin, slot.name, init);
      slotObjects[i] = id;
      if (slot.isParam)
        registerObjectSymbols(st.memory, id, SymbolRole::Param);
      else if (opts.symbolicLocals)
        registerObjectSymbols(st.memory, id, SymbolRole::Local);

      // a direct pointer parameter points at a fresh symbolic pointee
      if (slot.isParam && t->kind == TypeKind::Pointer) {
        ObjectId pointee =
            allocate(st.memory, prog, t->element, 1, Origin::Param, slot.name,
                     InitMode::Symbolic, /*indexedNames=*/true);
        registerObjectSymbols(st.memory, pointee, SymbolRole::Param);
        writeCell(st.memory, id, 0,
                  SVal::makePointer(PointerValue::toObject(
                      pointee, sym::constant(0, kU32))));
      }
    }
    initialState = std::move(st);
  }

  //===--------------------------------------------------------------------===//
  // small helpers
  //===--------------------------------------------------------------------===//

  std::vector<SymRef> conjEs(const std::vector<Conjunct>& path) const {
    std::vector<SymRef> out;
    out.reserve(path.size());
    for (const auto& c : path) out.push_back(c.expr);
    return out;
  }

  bool wallExpired() const {
    auto elapsed = std::chrono::steady_clock::now() - startTime;
    return std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count() >
           static_cast<int64_t>(budgets.wallClockMs);
  }

  bool nodeBudgetLeft() {
    if (result.nodeExecutions >= maxNodeExecutions || wallExpired()) {
      result.budgetExhausted = true;
      stopAll = true;
      return false;
    }
    return true;
  }

  class PathOracle final : public FeasibilityOracle {
  public:
    PathOracle(Impl& impl, const std::vector<Conjunct>& path)
        : impl_(impl), path_(path) {}
    Answer query(const SymRef& condition) override {
      std::vector<SymRef> conj = impl_.conjEs(path_);
      conj.push_back(condition);
      SolveResult r = impl_.backend.solve(conj, {});
      ++impl_.result.solveCalls;
      Answer a;
      switch (r.verdict) {
      case SolveResult::Verdict::Sat:
        a.verdict = Verdict::Feasible;
        a.model = std::move(r.model);
        break;
      case SolveResult::Verdict::Unsat:
        a.verdict = Verdict::Infeasible;
        break;
      case SolveResult::Verdict::Unknown:
        a.verdict = Verdict::Unknown;
        ++impl_.result.unknownSolves;
        break;
      }
      return a;
    }

  private:
    Impl& impl_;
    const std::vector<Conjunct>& path_;
  };

  //===--------------------------------------------------------------------===//
  // expression evaluation (symbolic, fault-aware)
  //===--------------------------------------------------------------------===//

  struct Place {
    PointerValue ptr;
    TypeRef type;
  };

  class Eval {
  public:
    Eval(Impl& impl, ExecState& st, NodeId node, int stmtIndex)
        : E(impl), st_(st), node_(node), stmtIndex_(stmtIndex),
          oracle_(impl, st.path) {}

    enum class Term { None, FaultDefinite, PathDead, Drop };

    Term term = Term::None;
    ExceptionKind faultKind = ExceptionKind::DividedByZero;
    std::string dropReason;
    std::vector<std::pair<ExceptionKind, Model>> pending; // witnessed faults

    bool ok() const { return term == Term::None; }
    NodeId node() const { return node_; }
    int stmtIndex() const { return stmtIndex_; }

    SVal value(const Expr& e, const SymRef& guard) { return evalExpr(e, guard); }
    Place place(const Expr& e, const SymRef& guard) { return evalPlace(e, guard); }

    // the boolean condition of a decision as an int32 scalar
    SymRef condition(const Expr& e) {
      SVal v = evalExpr(e, nullptr);
      if (!ok()) return nullptr;
      return toTruth(v, e.type);
    }

    void assign(const Stmt& s) {
      const TypeRef& lt = s.lhs->type;
      if (lt->kind == TypeKind::Record || lt->kind == TypeKind::Array) {
        copyAggregate(*s.lhs, *s.rhs);
        return;
      }
      SVal v = rhsValue(*s.rhs, lt);
      if (!ok()) return;
      Place p = evalPlace(*s.lhs, nullptr);
      if (!ok()) return;
      storeTo(p, v, nullptr, s.rhs.get());
    }

    void declare(const Stmt& s) {
      if (!s.init) return;
      SVal v = rhsValue(*s.init, s.declType);
      if (!ok()) return;
      ObjectId obj = E.slotObjects[static_cast<size_t>(s.declSlot)];
      Place p;
      p.ptr = PointerValue::toObject(obj, sym::constant(0, kU32));
      p.type = s.declType;
      if (s.declType->kind == TypeKind::Record || s.declType->kind == TypeKind::Array) {
        E.diagnostic("aggregate initializer not supported");
        drop("aggregate initializer");
        return;
      }
      storeTo(p, v, nullptr, s.init.get());
    }

    std::optional<SymRef> returnValue(const Stmt& s) {
      if (!s.cond) return std::nullopt;
      SVal v = evalExpr(*s.cond, nullptr);
      if (!ok()) return std::nullopt;
      return sym::cast(toScalar(v), vtypeOf(E.fn.returnType));
    }

    void callStatement(const Expr& call) { evalExpr(call, nullptr); }

  private:
    Impl& E;
    ExecState& st_;
    NodeId node_;
    int stmtIndex_;
    PathOracle oracle_;

    void fault(ExceptionKind kind) {
      if (term != Term::None) return;
      term = Term::FaultDefinite;
      faultKind = kind;
    }
    void pathDead() {
      if (term == Term::None) term = Term::PathDead;
    }
    void drop(const std::string& why) {
      if (term != Term::None) return;
      term = Term::Drop;
      dropReason = why;
    }

    SymRef toScalar(const SVal& v) {
      if (v.isScalar()) return v.scalar;
      // pointer used as a scalar only happens in comparisons; callers that
      // need truthiness use toTruth
      return pointerTruth(v.ptr);
    }

    SymRef pointerTruth(const PointerValue& p) {
      if (p.null) return sym::constant(0, kI32);
      if (p.owner) return sym::constant(1, kI32);
      if (p.fixedAddress)
        return sym::ne(sym::promote(*p.fixedAddress, kU32), sym::constant(0, kU32));
      drop("unbound void* used in a condition");
      return sym::constant(0, kI32);
    }

    SymRef toTruth(const SVal& v, const TypeRef& staticType) {
      if (!v.isScalar()) return pointerTruth(v.ptr);
      (void)staticType;
      return sym::promote(v.scalar, kI32);
    }

    SVal rhsValue(const Expr& rhs, const TypeRef& targetType) {
      if (targetType->isPointerLike()) {
        if (rhs.kind == ExprKind::IntLit && rhs.intValue == 0)
          return SVal::makePointer(PointerValue::nullPointer());
        return evalExpr(rhs, nullptr);
      }
      SVal v = evalExpr(rhs, nullptr);
      if (!ok()) return v;
      return SVal::makeScalar(sym::cast(toScalar(v), vtypeOf(targetType)));
    }

    void storeTo(const Place& p, const SVal& v, const SymRef& guard,
                 const Expr* rhsExpr) {
      uint32_t size = E.prog.sizeOf(p.type);
      AccessResult r = storeChecked(st_.memory, p.ptr, size, v, guard, oracle_);
      absorbAccess(r, ExceptionKind::ArrayOutOfBounds);
      if (!r.ok || !ok()) return;
      if (p.type->kind == TypeKind::VoidPointer) {
        // record / clear the alias for this slot
        TypeRef elem;
        if (rhsExpr && rhsExpr->type) {
          if (rhsExpr->type->kind == TypeKind::Pointer)
            elem = rhsExpr->type->element;
          else if (rhsExpr->type->kind == TypeKind::Array)
            elem = rhsExpr->type->element;
        }
        if (!elem && v.voidAlias) elem = v.voidAlias;
        if (elem && !v.ptr.null && v.ptr.owner)
          bindVoidAlias(st_.memory, *p.ptr.owner, r.resolvedOffset, *v.ptr.owner,
                        elem);
        else
          st_.memory.voidTable.erase(
              MemoryState::slotKey(*p.ptr.owner, r.resolvedOffset));
      }
    }

    // pulls constraints/faults out of an access result
    void absorbAccess(const AccessResult& r, ExceptionKind) {
      for (const auto& c : r.pathConstraints) {
        Provenance prov;
        prov.source = Provenance::Source::BoundsGuard;
        st_.path.push_back(Conjunct{c, prov});
      }
      if (r.fault) {
        if (r.faultDefinite)
          fault(*r.fault);
        else
          pending.emplace_back(*r.fault, r.faultWitness);
      }
      if (r.pathDead) pathDead();
      if (r.solverUnknown && !r.ok && term == Term::None)
        drop("bounds undecided by the solver");
    }

    SVal loadFrom(const Place& p, const SymRef& guard) {
      uint32_t size = E.prog.sizeOf(p.type);
      AccessResult r = loadChecked(st_.memory, p.ptr, size, guard, oracle_);
      absorbAccess(r, ExceptionKind::ArrayOutOfBounds);
      if (!r.ok || !ok()) return SVal::makeScalar(sym::constant(0, kI32));
      SVal v = r.value;
      if (p.type->kind == TypeKind::VoidPointer) {
        if (const VoidAlias* alias =
                lookupVoidAlias(st_.memory, *p.ptr.owner, r.resolvedOffset))
          v.voidAlias = alias->elementType;
      }
      return v;
    }

    //===------------------------------------------------------------------===//

    Place evalPlace(const Expr& e, const SymRef& guard) {
      switch (e.kind) {
      case ExprKind::Var: {
        assert(!e.enumConstant);
        ObjectId obj = e.var.isGlobal
                           ? E.globalObjects[static_cast<size_t>(e.var.slot)]
                           : E.slotObjects[static_cast<size_t>(e.var.slot)];
        Place p;
        p.ptr = PointerValue::toObject(obj, sym::constant(0, kU32));
        p.type = e.type;
        return p;
      }
      case ExprKind::Index: {
        const TypeRef& baseType = e.a->type;
        SVal idx = evalExpr(*e.b, guard);
        if (!ok()) return Place{};
        SymRef delta = sym::promote(toScalar(idx), kU32);
        PointerValue base;
        if (baseType->kind == TypeKind::Array) {
          Place bp = evalPlace(*e.a, guard);
          if (!ok()) return Place{};
          base = bp.ptr;
        } else {
          SVal pv = evalExpr(*e.a, guard);
          if (!ok()) return Place{};
          base = pv.ptr;
        }
        Place p;
        p.type = baseType->element;
        p.ptr = ptrOffset(base, delta, E.prog.sizeOf(p.type));
        return p;
      }
      case ExprKind::Field: {
        PointerValue base;
        TypeRef recType;
        if (e.arrow) {
          SVal pv = evalExpr(*e.a, guard);
          if (!ok()) return Place{};
          base = pv.ptr;
          recType = e.a->type->element;
        } else {
          Place bp = evalPlace(*e.a, guard);
          if (!ok()) return Place{};
          base = bp.ptr;
          recType = bp.type;
        }
        Place p;
        p.type = e.type;
        p.ptr = ptrOffset(base, sym::constant(e.fieldOffset, kU32), 1);
        return p;
      }
      case ExprKind::Deref: {
        if (e.a->type->kind == TypeKind::Array) {
          Place bp = evalPlace(*e.a, guard);
          if (!ok()) return Place{};
          Place p;
          p.ptr = bp.ptr;
          p.type = e.a->type->element;
          return p;
        }
        SVal pv = evalExpr(*e.a, guard);
        if (!ok()) return Place{};
        Place p;
        p.ptr = pv.ptr;
        p.type = e.type;
        return p;
      }
      default:
        assert(false && "not an lvalue");
        return Place{};
      }
    }

    SVal evalExpr(const Expr& e, const SymRef& guard) {
      if (term != Term::None) return SVal::makeScalar(sym::constant(0, kI32));
      switch (e.kind) {
      case ExprKind::IntLit:
        return SVal::makeScalar(sym::constant(
            sym::maskToWidth(e.intValue, vtypeOf(e.type).width), vtypeOf(e.type)));
      case ExprKind::Var: {
        if (e.enumConstant)
          return SVal::makeScalar(sym::constant(
              sym::maskToWidth(static_cast<uint64_t>(e.enumValue), 32), kI32));
        if (e.type->kind == TypeKind::Array || e.type->kind == TypeKind::Record) {
          Place p = evalPlace(e, guard);
          if (!ok()) return SVal::makeScalar(sym::constant(0, kI32));
          return SVal::makePointer(p.ptr); // decayed view
        }
        Place p = evalPlace(e, guard);
        if (!ok()) return SVal::makeScalar(sym::constant(0, kI32));
        return loadFrom(p, guard);
      }
      case ExprKind::Unary: {
        SVal a = evalExpr(*e.a, guard);
        if (!ok()) return a;
        switch (e.uop) {
        case UnaryOp::Not:
          return SVal::makeScalar(sym::logNot(toTruth(a, e.a->type)));
        case UnaryOp::Neg:
          return SVal::makeScalar(
              sym::unop(SymOp::Neg, sym::promote(toScalar(a), vtypeOf(e.type))));
        case UnaryOp::BitNot:
          return SVal::makeScalar(
              sym::unop(SymOp::BitNot, sym::promote(toScalar(a), vtypeOf(e.type))));
        }
        return a;
      }
      case ExprKind::Binary:
        return evalBinary(e, guard);
      case ExprKind::Call:
        return evalCall(e, guard);
      case ExprKind::Index:
      case ExprKind::Field:
      case ExprKind::Deref: {
        if (e.type->kind == TypeKind::Array || e.type->kind == TypeKind::Record) {
          Place p = evalPlace(e, guard);
          if (!ok()) return SVal::makeScalar(sym::constant(0, kI32));
          return SVal::makePointer(p.ptr);
        }
        Place p = evalPlace(e, guard);
        if (!ok()) return SVal::makeScalar(sym::constant(0, kI32));
        return loadFrom(p, guard);
      }
      case ExprKind::AddrOf: {
        Place p = evalPlace(*e.a, guard);
        if (!ok()) return SVal::makeScalar(sym::constant(0, kI32));
        return SVal::makePointer(p.ptr);
      }
      case ExprKind::Cast:
        return evalCast(e, guard);
      }
      return SVal::makeScalar(sym::constant(0, kI32));
    }

    SVal evalCast(const Expr& e, const SymRef& guard) {
      const TypeRef& to = e.castType;
      const TypeRef& from = e.a->type;
      SVal v = evalExpr(*e.a, guard);
      if (!ok()) return v;

      if (to->isInt() && from->isInt())
        return SVal::makeScalar(sym::cast(toScalar(v), vtypeOf(to)));

      if (to->kind == TypeKind::Pointer) {
        if (from->isInt()) { // address literal / computed address
          SymRef addr = sym::promote(toScalar(v), kU32);
          return SVal::makePointer(PointerValue::fixed(addr));
        }
        if (from->kind == TypeKind::VoidPointer) {
          if (v.ptr.unbound() || v.ptr.null || v.ptr.fixedAddress) {
            SVal out = v;
            out.voidAlias = nullptr;
            return out; // faults at the eventual dereference
          }
          if (!v.voidAlias) {
            SVal out = v;
            out.ptr = PointerValue{}; // no recorded alias: unbound
            return out;
          }
          if (!sameType(v.voidAlias, to->element)) {
            drop("void* read as " + typeName(to->element) + " but aliases " +
                 typeName(v.voidAlias));
            return SVal::makeScalar(sym::constant(0, kI32));
          }
          SVal out = v;
          out.voidAlias = nullptr;
          return out;
        }
        return v; // same-element pointer cast / array decay
      }

      if (to->kind == TypeKind::VoidPointer) {
        SVal out = v;
        if (from->kind == TypeKind::Pointer) out.voidAlias = from->element;
        if (from->kind == TypeKind::Array) out.voidAlias = from->element;
        return out;
      }
      drop("unsupported cast");
      return SVal::makeScalar(sym::constant(0, kI32));
    }

    SVal evalBinary(const Expr& e, const SymRef& guard) {
      BinaryOp op = e.bop;

      if (op == BinaryOp::LogAnd || op == BinaryOp::LogOr) {
        SVal lv = evalExpr(*e.a, guard);
        if (!ok()) return lv;
        SymRef lTruth = toTruth(lv, e.a->type);
        // the right operand only executes when the left does not short-circuit
        SymRef rGuard = op == BinaryOp::LogAnd
                            ? guardAnd(guard, lTruth)
                            : guardAnd(guard, sym::logNot(lTruth));
        SVal rv = evalExpr(*e.b, rGuard);
        if (!ok()) return rv;
        SymRef rTruth = toTruth(rv, e.b->type);
        return SVal::makeScalar(op == BinaryOp::LogAnd
                                    ? sym::logAnd(lTruth, rTruth)
                                    : sym::logOr(lTruth, rTruth));
      }

      SVal a = evalExpr(*e.a, guard);
      if (!ok()) return a;
      SVal b = evalExpr(*e.b, guard);
      if (!ok()) return b;

      bool aPtr = !a.isScalar();
      bool bPtr = !b.isScalar();

      if ((op == BinaryOp::Add || op == BinaryOp::Sub) && (aPtr || bPtr)) {
        const SVal& ptrSide = aPtr ? a : b;
        const SVal& intSide = aPtr ? b : a;
        uint32_t elemSize = E.prog.sizeOf(e.type->element);
        SymRef delta = sym::promote(toScalar(intSide), kU32);
        if (op == BinaryOp::Sub) delta = sym::unop(SymOp::Neg, delta);
        return SVal::makePointer(ptrOffset(ptrSide.ptr, delta, elemSize));
      }

      if ((op == BinaryOp::Eq || op == BinaryOp::Ne) && (aPtr || bPtr))
        return SVal::makeScalar(pointerCompare(op, a, b, *e.a, *e.b));

      SymRef la = toScalar(a);
      SymRef lb = toScalar(b);
      VType common = promoteBinary(la->type, lb->type);
      la = sym::promote(la, common);
      lb = sym::promote(lb, common);

      switch (op) {
      case BinaryOp::Gt:
        return SVal::makeScalar(sym::lt(lb, la));
      case BinaryOp::Ge:
        return SVal::makeScalar(sym::le(lb, la));
      case BinaryOp::Lt:
        return SVal::makeScalar(sym::lt(la, lb));
      case BinaryOp::Le:
        return SVal::makeScalar(sym::le(la, lb));
      case BinaryOp::Eq:
        return SVal::makeScalar(sym::eq(la, lb));
      case BinaryOp::Ne:
        return SVal::makeScalar(sym::ne(la, lb));
      case BinaryOp::Div:
      case BinaryOp::Mod: {
        checkDivisor(lb, guard);
        if (!ok()) return SVal::makeScalar(sym::constant(0, kI32));
        return SVal::makeScalar(
            sym::binop(op == BinaryOp::Div ? SymOp::Div : SymOp::Mod, la, lb));
      }
      case BinaryOp::Shl:
      case BinaryOp::Shr: {
        // shift width follows the promoted left operand
        VType lt = promoteUnary(toScalar(a)->type);
        SymRef sa = sym::promote(toScalar(a), lt);
        SymRef sb = sym::promote(toScalar(b), lt);
        return SVal::makeScalar(
            sym::binop(op == BinaryOp::Shl ? SymOp::Shl : SymOp::Shr, sa, sb));
      }
      case BinaryOp::Add:
        return SVal::makeScalar(sym::add(la, lb));
      case BinaryOp::Sub:
        return SVal::makeScalar(sym::sub(la, lb));
      case BinaryOp::Mul:
        return SVal::makeScalar(sym::mul(la, lb));
      case BinaryOp::BitAnd:
        return SVal::makeScalar(sym::binop(SymOp::BitAnd, la, lb));
      case BinaryOp::BitOr:
        return SVal::makeScalar(sym::binop(SymOp::BitOr, la, lb));
      default:
        break;
      }
      assert(false);
      return SVal::makeScalar(sym::constant(0, kI32));
    }

    // divisor == 0 feasibility: emit a witnessed exception case, then protect
    // the surviving path with (guard -> divisor != 0)
    void checkDivisor(const SymRef& divisor, const SymRef& guard) {
      if (sym::isConst(divisor)) {
        if (divisor->bits == 0) fault(ExceptionKind::DividedByZero);
        return;
      }
      SymRef zero = sym::constant(0, divisor->type);
      auto answer = oracle_.query(guardAnd(guard, sym::eq(divisor, zero)));
      if (answer.verdict == FeasibilityOracle::Verdict::Feasible)
        pending.emplace_back(ExceptionKind::DividedByZero, answer.model);
      else if (answer.verdict == FeasibilityOracle::Verdict::Unknown)
        E.diagnostic("divisor feasibility unknown; continuing with nonzero divisor");
      Provenance prov;
      prov.source = Provenance::Source::DivisorGuard;
      st_.path.push_back(
          Conjunct{guardImplies(guard, sym::ne(divisor, zero)), prov});
    }

    SymRef pointerCompare(BinaryOp op, const SVal& a, const SVal& b,
                          const Expr& ea, const Expr& eb) {
      auto norm = [&](const SVal& v, const Expr& src) -> PointerValue {
        if (!v.isScalar()) return v.ptr;
        // integer 0 compared against a pointer
        (void)src;
        return PointerValue::nullPointer();
      };
      PointerValue pa = norm(a, ea), pb = norm(b, eb);
      if (pa.unbound() || pb.unbound()) {
        drop("unbound void* compared");
        return sym::constant(0, kI32);
      }
      auto boolConst = [&](bool equal) {
        bool v = op == BinaryOp::Eq ? equal : !equal;
        return sym::constant(v ? 1 : 0, kI32);
      };
      if (pa.null && pb.null) return boolConst(true);
      if (pa.null || pb.null) {
        const PointerValue& other = pa.null ? pb : pa;
        if (other.owner) return boolConst(false);
        // fixed address vs null: address == 0
        SymRef cmp = sym::eq(sym::promote(*other.fixedAddress, kU32),
                             sym::constant(0, kU32));
        return op == BinaryOp::Eq ? cmp : sym::logNot(cmp);
      }
      if (pa.owner && pb.owner) {
        if (*pa.owner != *pb.owner) return boolConst(false);
        SymRef cmp = sym::eq(sym::promote(pa.offset, kU32),
                             sym::promote(pb.offset, kU32));
        return op == BinaryOp::Eq ? cmp : sym::logNot(cmp);
      }
      if (pa.fixedAddress && pb.fixedAddress) {
        SymRef cmp = sym::eq(sym::promote(*pa.fixedAddress, kU32),
                             sym::promote(*pb.fixedAddress, kU32));
        return op == BinaryOp::Eq ? cmp : sym::logNot(cmp);
      }
      return boolConst(false); // object vs fixed address never alias
    }

    SVal evalCall(const Expr& e, const SymRef& guard) {
      // arguments evaluate left to right (their faults and stub effects count)
      std::vector<SVal> args;
      for (const auto& arg : e.args) {
        const TypeRef& at = arg->type;
        if (at->kind == TypeKind::Record) {
          Place p = evalPlace(*arg, guard);
          if (!ok()) return SVal::makeScalar(sym::constant(0, kI32));
          args.push_back(SVal::makePointer(p.ptr));
        } else {
          args.push_back(evalExpr(*arg, guard));
          if (!ok()) return SVal::makeScalar(sym::constant(0, kI32));
        }
      }

      // stub the call: fresh return symbol, havoc pointer arguments
      int ordinal = ++st_.stubCounters[e.name];
      std::string base = e.name + "#" + std::to_string(ordinal);

      const std::vector<ParamDecl>* params = nullptr;
      TypeRef returnType;
      if (const FunctionDecl* ext = E.prog.findExternal(e.name)) {
        params = &ext->params;
        returnType = ext->returnType;
      } else if (const FunctionDef* def = E.prog.findFunction(e.name)) {
        params = &def->params;
        returnType = def->returnType;
      }
      assert(params);

      for (size_t i = 0; i < args.size(); ++i) {
        const TypeRef& pt = (*params)[i].type;
        bool byRef = pt->kind == TypeKind::Pointer ||
                     pt->kind == TypeKind::VoidPointer ||
                     pt->kind == TypeKind::Array;
        if (byRef && !args[i].isScalar() && args[i].ptr.owner)
          havocObject(*args[i].ptr.owner, base + "." + (*params)[i].name);
      }

      if (returnType->kind == TypeKind::Void) {
        st_.stubOrder.emplace_back(e.name, "");
        return SVal::makeScalar(sym::constant(0, kI32));
      }
      VType rt = vtypeOf(returnType);
      E.registerSymbol(base, rt, SymbolRole::Stub);
      st_.stubOrder.emplace_back(e.name, base);
      return SVal::makeScalar(sym::input(base, rt));
    }

    void havocObject(ObjectId id, const std::string& base) {
      MemoryObject& obj = st_.memory.object(id);
      uint32_t elemSize = obj.totalSize / obj.count;
      for (uint32_t i = 0; i < obj.count; ++i) {
        for (const auto& leaf : *obj.leaves) {
          uint32_t off = i * elemSize + leaf.offset;
          std::string name = base + "[" + std::to_string(i) + "]" + leaf.suffix;
          switch (leaf.type->kind) {
          case TypeKind::Int:
          case TypeKind::Enum: {
            VType vt = vtypeOf(leaf.type);
            E.registerSymbol(name, vt, SymbolRole::Stub);
            obj.cells[off] = SVal::makeScalar(sym::input(name, vt));
            break;
          }
          case TypeKind::Pointer:
            obj.cells[off] = SVal::makePointer(PointerValue::nullPointer());
            break;
          case TypeKind::VoidPointer:
            obj.cells[off] = SVal::makePointer(PointerValue{});
            st_.memory.voidTable.erase(MemoryState::slotKey(id, off));
            break;
          default:
            break;
          }
        }
      }
    }

    void copyAggregate(const Expr& lhs, const Expr& rhs) {
      Place lp = evalPlace(lhs, nullptr);
      if (!ok()) return;
      Place rp = evalPlace(rhs, nullptr);
      if (!ok()) return;
      if (!lp.ptr.owner || !rp.ptr.owner || !sym::isConst(lp.ptr.offset) ||
          !sym::isConst(rp.ptr.offset)) {
        drop("aggregate copy requires concrete locations");
        return;
      }
      uint32_t lbase = lp.ptr.offset->bits;
      uint32_t rbase = rp.ptr.offset->bits;
      auto leaves = computeLeaves(E.prog, lp.type);
      for (const auto& leaf : leaves) {
        SVal v = readCell(st_.memory, *rp.ptr.owner, rbase + leaf.offset);
        if (leaf.type->kind == TypeKind::VoidPointer) {
          if (const VoidAlias* alias = lookupVoidAlias(
                  st_.memory, *rp.ptr.owner, rbase + leaf.offset))
            bindVoidAlias(st_.memory, *lp.ptr.owner, lbase + leaf.offset,
                          alias->object, alias->elementType);
          else
            st_.memory.voidTable.erase(
                MemoryState::slotKey(*lp.ptr.owner, lbase + leaf.offset));
        }
        writeCell(st_.memory, *lp.ptr.owner, lbase + leaf.offset, v);
      }
    }
  };

  void diagnostic(const std::string& msg) {
    result.diagnostics.push_back(fn.name + ": " + msg);
  }

  //===--------------------------------------------------------------------===//
  // test case emission
  //===--------------------------------------------------------------------===//

  TestCase makeCase(const ExecState& st, const Model& model, CaseOrigin origin) {
    TestCase tc;
    tc.id = nextCaseId++;
    tc.function = fn.name;
    tc.origin = origin;
    tc.inputs = model;
    for (const auto& [callee, retSym] : st.stubOrder) {
      (void)callee;
      if (retSym.empty()) continue;
      auto it = model.find(retSym);
      uint32_t bits = it == model.end() ? 0 : it->second;
      tc.inputs[retSym] = bits;
      tc.stubReturns.emplace_back(retSym, bits);
    }
    tc.generationPath = st.trace;
    for (const auto& [node, edge] : st.trace) {
      (void)node;
      if (edge >= 0) tc.coveredEdges.insert(edge);
    }
    tc.pathConjuncts = conjEs(st.path);
    return tc;
  }

  void commitCase(TestCase tc) {
    for (EdgeId e : tc.coveredEdges)
      if (cfg.edge(e).labeled()) covered.insert(e);
    result.cases.push_back(std::move(tc));
  }

  void markTraceEdges(const ExecState& st, std::set<EdgeId>& into) {
    for (const auto& [node, edge] : st.trace) {
      (void)node;
      if (edge >= 0 && cfg.edge(edge).labeled()) into.insert(edge);
    }
    if (st.pendingEdge && cfg.edge(*st.pendingEdge).labeled())
      into.insert(*st.pendingEdge);
  }

  void emitWitnessedException(const ExecState& st, ExceptionKind kind,
                              const Model& witness, NodeId node, int stmtIndex) {
    auto key = std::make_tuple(static_cast<int>(kind), node, stmtIndex);
    if (!emittedExceptions.insert(key).second) return;
    ExecState snapshot = st; // trace as of the faulting node
    if (snapshot.trace.empty() || snapshot.trace.back().first != node)
      snapshot.trace.emplace_back(node, -1);
    TestCase tc = makeCase(snapshot, witness, CaseOrigin::Exception);
    tc.exception = ExceptionInfo{kind, node, stmtIndex};
    commitCase(std::move(tc));
  }

  void emitDefiniteFault(ExecState& st, ExceptionKind kind, NodeId node,
                         int stmtIndex) {
    SolveResult r = backend.solve(conjEs(st.path), {});
    ++result.solveCalls;
    if (r.sat()) {
      emitWitnessedException(st, kind, r.model, node, stmtIndex);
    } else if (r.unsat()) {
      markTraceEdges(st, unsatSeen); // the whole path was infeasible
    } else {
      ++result.unknownSolves;
      markTraceEdges(st, unknownSeen);
      diagnostic("fault witness undecided; state dropped");
      ++result.statesDropped;
    }
  }

  void solveAtExit(ExecState& st) {
    SolveResult r = backend.solve(conjEs(st.path), {});
    ++result.solveCalls;
    if (r.sat()) {
      commitCase(makeCase(st, r.model, CaseOrigin::Path));
    } else if (r.unsat()) {
      markTraceEdges(st, unsatSeen);
    } else {
      ++result.unknownSolves;
      markTraceEdges(st, unknownSeen);
    }
  }

  //===--------------------------------------------------------------------===//
  // node execution
  //===--------------------------------------------------------------------===//

  enum class NodeOutcome { Continue, Terminated };

  NodeOutcome runStatements(ExecState& st) {
    const CfgNode& node = cfg.node(st.current);
    for (size_t i = 0; i < node.statements.size(); ++i) {
      const Stmt* s = node.statements[i];
      Eval ev(*this, st, node.id, static_cast<int>(i));
      switch (s->kind) {
      case StmtKind::Decl:
        ev.declare(*s);
        break;
      case StmtKind::Assign:
        ev.assign(*s);
        break;
      case StmtKind::ExprStmt:
        ev.callStatement(*s->expr);
        break;
      case StmtKind::Return:
        st.returnValue = ev.returnValue(*s);
        break;
      default:
        assert(false && "structured statement in a node body");
      }
      for (auto& [kind, witness] : ev.pending)
        emitWitnessedException(st, kind, witness, node.id, static_cast<int>(i));
      switch (ev.term) {
      case Eval::Term::None:
        break;
      case Eval::Term::FaultDefinite:
        emitDefiniteFault(st, ev.faultKind, node.id, static_cast<int>(i));
        return NodeOutcome::Terminated;
      case Eval::Term::PathDead:
        return NodeOutcome::Terminated;
      case Eval::Term::Drop:
        ++result.statesDropped;
        diagnostic("state dropped: " + ev.dropReason);
        return NodeOutcome::Terminated;
      }
    }
    return NodeOutcome::Continue;
  }

  // edge condition as a path conjunct
  SymRef edgeCondition(const CfgEdge& edge, const SymRef& condition) {
    const Decision& dec = cfg.decisions[static_cast<size_t>(edge.decision)];
    if (!dec.isSwitch)
      return edge.value == 1 ? condition : sym::logNot(condition);
    VType subject = condition->type;
    int cases = static_cast<int>(dec.caseValues.size());
    if (edge.value < cases) {
      uint32_t bits = sym::maskToWidth(
          static_cast<uint64_t>(dec.caseValues[static_cast<size_t>(edge.value)]),
          subject.width);
      return sym::eq(condition, sym::constant(bits, subject));
    }
    SymRef acc; // default edge: differs from every case label
    for (int64_t v : dec.caseValues) {
      SymRef ne = sym::ne(condition,
                          sym::constant(sym::maskToWidth(static_cast<uint64_t>(v),
                                                         subject.width),
                                        subject));
      acc = acc ? sym::logAnd(acc, ne) : ne;
    }
    return acc ? acc : sym::constantBool(true);
  }

  void appendEdgeConjunct(ExecState& st, const CfgEdge& edge,
                          const SymRef& condition) {
    Provenance prov;
    prov.source = Provenance::Source::Branch;
    prov.edge = edge.id;
    prov.decision = edge.decision;
    prov.value = edge.value;
    st.path.push_back(Conjunct{edgeCondition(edge, condition), prov});
  }

  void takeEdge(ExecState& st, EdgeId e) {
    st.trace.emplace_back(st.current, e);
    ++edgeVisits[static_cast<size_t>(e)];
    st.current = cfg.edge(e).to;
  }

  // the forced successor of a constant condition
  EdgeId forcedEdge(const CfgNode& node, const SymRef& condition) {
    const Decision& dec = cfg.decisions[static_cast<size_t>(node.decisionId)];
    int want;
    if (!dec.isSwitch) {
      want = condition->bits != 0 ? 1 : 0;
    } else {
      int64_t v = sym::interpret(condition->bits, condition->type);
      want = static_cast<int>(dec.caseValues.size()); // default
      for (size_t i = 0; i < dec.caseValues.size(); ++i)
        if (dec.caseValues[i] == v) want = static_cast<int>(i);
    }
    for (EdgeId e : node.out)
      if (cfg.edge(e).value == want) return e;
    assert(false && "branch labels must be exhaustive");
    return node.out.front();
  }

  //===--------------------------------------------------------------------===//
  // flood search
  //===--------------------------------------------------------------------===//

  void searchShortestToExit(ExecState st) {
    if (st.pendingEdge) {
      takeEdge(st, *st.pendingEdge);
      st.pendingEdge.reset();
    }
    while (true) {
      if (!nodeBudgetLeft()) return;
      const CfgNode& node = cfg.node(st.current);
      if (node.kind == NodeKind::Exit) {
        st.trace.emplace_back(st.current, -1);
        solveAtExit(st);
        return;
      }
      ++result.nodeExecutions;
      if (runStatements(st) == NodeOutcome::Terminated) return;

      if (node.kind == NodeKind::Sequential) {
        takeEdge(st, node.out.front());
        continue;
      }

      // branch node
      Eval ev(*this, st, node.id, -1);
      SymRef condition = ev.condition(*node.decision);
      for (auto& [kind, witness] : ev.pending)
        emitWitnessedException(st, kind, witness, node.id, -1);
      switch (ev.term) {
      case Eval::Term::None:
        break;
      case Eval::Term::FaultDefinite:
        emitDefiniteFault(st, ev.faultKind, node.id, -1);
        return;
      case Eval::Term::PathDead:
        return;
      case Eval::Term::Drop:
        ++result.statesDropped;
        diagnostic("state dropped at decision: " + ev.dropReason);
        return;
      }

      if (sym::isConst(condition)) {
        EdgeId forced = forcedEdge(node, condition);
        for (EdgeId e : node.out)
          if (e != forced) constInfeasible.insert(e);
        takeEdge(st, forced);
        continue;
      }

      // choose the minimum-distance edge, preferring unvisited on ties
      EdgeId chosen = -1;
      int bestDist = 0;
      bool bestUnvisited = false;
      for (EdgeId e : node.out) {
        int d = dist[static_cast<size_t>(cfg.edge(e).to)];
        bool unvisited = edgeVisits[static_cast<size_t>(e)] == 0;
        bool better = chosen < 0 || d < bestDist ||
                      (d == bestDist && unvisited && !bestUnvisited);
        if (better) {
          chosen = e;
          bestDist = d;
          bestUnvisited = unvisited;
        }
      }

      for (EdgeId e : node.out) {
        if (e == chosen) continue;
        if (result.statesCreated >= budgets.maxStates) {
          result.budgetExhausted = true;
          continue;
        }
        ExecState copy = st;
        copy.pendingEdge = e;
        appendEdgeConjunct(copy, cfg.edge(e), condition);
        ++result.statesCreated;
        if (edgeVisits[static_cast<size_t>(e)] == 0)
          open.push_back(std::move(copy));
        else
          close.push_back(std::move(copy));
      }

      appendEdgeConjunct(st, cfg.edge(chosen), condition);
      takeEdge(st, chosen);
    }
  }

  void discharge() {
    while (!close.empty()) {
      ExecState st = std::move(close.front());
      close.pop_front();
      assert(st.pendingEdge);
      if (edgeVisits[static_cast<size_t>(*st.pendingEdge)] > budgets.loopBound) {
        ++result.statesDropped;
        continue; // loop bound exceeded
      }
      takeEdge(st, *st.pendingEdge);
      st.pendingEdge.reset();
      open.push_back(std::move(st));
    }
  }

  void runFlood() {
    open.push_back(initialState);
    ++result.statesCreated;
    while (!open.empty() || !close.empty()) {
      if (stopAll || !nodeBudgetLeft()) break;
      if (open.empty()) {
        discharge();
        if (open.empty()) break;
      }
      ExecState st = std::move(open.front());
      open.pop_front();
      searchShortestToExit(std::move(st));
    }
  }

  //===--------------------------------------------------------------------===//
  // depth-first comparison scheduler
  //===--------------------------------------------------------------------===//

  void runDepthFirst() {
    std::vector<ExecState> stack;
    stack.push_back(initialState);
    ++result.statesCreated;
    while (!stack.empty()) {
      if (stopAll || !nodeBudgetLeft()) break;
      ExecState st = std::move(stack.back());
      stack.pop_back();
      if (st.pendingEdge) {
        if (edgeVisits[static_cast<size_t>(*st.pendingEdge)] >
            budgets.loopBound) {
          ++result.statesDropped;
          continue;
        }
        takeEdge(st, *st.pendingEdge);
        st.pendingEdge.reset();
      }

      bool alive = true;
      while (alive) {
        if (!nodeBudgetLeft()) return;
        const CfgNode& node = cfg.node(st.current);
        if (node.kind == NodeKind::Exit) {
          st.trace.emplace_back(st.current, -1);
          solveAtExit(st);
          alive = false;
          break;
        }
        ++result.nodeExecutions;
        if (runStatements(st) == NodeOutcome::Terminated) {
          alive = false;
          break;
        }
        if (node.kind == NodeKind::Sequential) {
          takeEdge(st, node.out.front());
          continue;
        }
        Eval ev(*this, st, node.id, -1);
        SymRef condition = ev.condition(*node.decision);
        for (auto& [kind, witness] : ev.pending)
          emitWitnessedException(st, kind, witness, node.id, -1);
        if (ev.term != Eval::Term::None) {
          if (ev.term == Eval::Term::FaultDefinite)
            emitDefiniteFault(st, ev.faultKind, node.id, -1);
          else if (ev.term == Eval::Term::Drop) {
            ++result.statesDropped;
            diagnostic("state dropped at decision: " + ev.dropReason);
          }
          alive = false;
          break;
        }
        if (sym::isConst(condition)) {
          EdgeId forced = forcedEdge(node, condition);
          for (EdgeId e : node.out)
            if (e != forced) constInfeasible.insert(e);
          takeEdge(st, forced);
          continue;
        }
        // push every successor; the highest-value edge (true / first case)
        // lands on top of the stack and is explored first
        std::vector<EdgeId> ordered(node.out.begin(), node.out.end());
        std::sort(ordered.begin(), ordered.end(), [&](EdgeId x, EdgeId y) {
          return cfg.edge(x).value < cfg.edge(y).value;
        });
        for (EdgeId e : ordered) {
          if (result.statesCreated >= budgets.maxStates) {
            result.budgetExhausted = true;
            break;
          }
          ExecState copy = st;
          copy.pendingEdge = e;
          appendEdgeConjunct(copy, cfg.edge(e), condition);
          ++result.statesCreated;
          stack.push_back(std::move(copy));
        }
        alive = false; // replaced by its successors
      }
    }
  }

  //===--------------------------------------------------------------------===//

  void classifyUncovered() {
    for (const auto& e : cfg.edges) {
      if (!e.labeled() || covered.count(e.id)) continue;
      UncoveredEdge u;
      u.edge = e.id;
      if (unknownSeen.count(e.id))
        u.reason = UncoveredReason::Unknown;
      else if (unsatSeen.count(e.id) || constInfeasible.count(e.id))
        u.reason = UncoveredReason::Infeasible;
      else
        u.reason = UncoveredReason::Budget;
      result.uncovered.push_back(u);
    }
  }

  GenerationResult run() {
    startTime = std::chrono::steady_clock::now();
    maxNodeExecutions =
        static_cast<uint64_t>(budgets.maxStates) * cfg.nodes.size();
    edgeVisits.assign(cfg.edges.size(), 0);
    for (const auto& w : cfg.warnings) result.diagnostics.push_back(w);

    dist = distancesToExit(cfg);
    buildInitialState();

    if (opts.search == SearchPolicy::Flood)
      runFlood();
    else
      runDepthFirst();

    classifyUncovered();
    auto elapsed = std::chrono::steady_clock::now() - startTime;
    result.seconds =
        std::chrono::duration_cast<std::chrono::microseconds>(elapsed).count() /
        1e6;
    return std::move(result);
  }
};

Explorer::Explorer(const Program& program, const FunctionDef& fn, const Cfg& cfg,
                   const Budgets& budgets, const EngineOptions& options)
    : impl_(std::make_unique<Impl>(program, fn, cfg, budgets, options)) {}

Explorer::~Explorer() = default;

GenerationResult Explorer::run() { return impl_->run(); }

GenerationResult explore(const Program& program, const FunctionDef& fn,
                         const Cfg& cfg, const Budgets& budgets,
                         const EngineOptions& options) {
  return Explorer(program, fn, cfg, budgets, options).run();
}

} // namespace smartgen
