//===-- typecheck.cpp -------------------------------------------------------===//

#include "smartgen/typecheck.hpp"

#include <cassert>
#include <functional>
#include <map>
#include <set>

namespace smartgen {

namespace {

bool containsCall(const Expr& e) {
  if (e.kind == ExprKind::Call) return true;
  if (e.a && containsCall(*e.a)) return true;
  if (e.b && containsCall(*e.b)) return true;
  for (const auto& arg : e.args)
    if (containsCall(*arg)) return true;
  return false;
}

bool isIntegerLiteralZero(const Expr& e) {
  return e.kind == ExprKind::IntLit && e.intValue == 0;
}

class Checker {
public:
  explicit Checker(Program& program) : prog_(program) {}

  void run() {
    checkTopLevelNames();
    checkRecordTypes();
    for (auto& fn : prog_.functions) checkFunction(fn);
  }

private:
  Program& prog_;
  FunctionDef* fn_ = nullptr;
  // scope stack: name -> slot
  std::vector<std::map<std::string, int>> scopes_;
  std::map<std::string, int64_t> enumConstants_;

  void checkTopLevelNames() {
    std::set<std::string> tags;
    for (const auto& r : prog_.records)
      if (!tags.insert(r.name).second)
        typeError("duplicate struct/enum tag '" + r.name + "'", r.loc);
    for (const auto& e : prog_.enums)
      if (!tags.insert(e.name).second)
        typeError("duplicate struct/enum tag '" + e.name + "'", e.loc);

    std::set<std::string> ordinary;
    for (const auto& e : prog_.enums)
      for (const auto& [name, value] : e.enumerators) {
        if (!ordinary.insert(name).second)
          typeError("duplicate name '" + name + "'", e.loc);
        enumConstants_[name] = value;
      }
    for (const auto& g : prog_.globals) {
      if (!ordinary.insert(g.name).second)
        typeError("duplicate name '" + g.name + "'", g.loc);
      resolveType(g.type, g.loc);
    }
    for (const auto& f : prog_.functions)
      if (!ordinary.insert(f.name).second)
        typeError("duplicate name '" + f.name + "'", f.loc);
    for (const auto& f : prog_.externals)
      if (!ordinary.insert(f.name).second)
        typeError("duplicate name '" + f.name + "'", f.loc);

    for (const auto& f : prog_.externals) checkSignature(f.returnType, f.params, f.loc);
    for (const auto& f : prog_.functions) checkSignature(f.returnType, f.params, f.loc);
  }

  void checkSignature(const TypeRef& ret, const std::vector<ParamDecl>& params,
                      SrcLoc loc) {
    if (ret->kind != TypeKind::Void && !ret->isInt())
      unsupported("functions may only return integer types or void", loc);
    if (ret->kind == TypeKind::Enum) resolveType(ret, loc);
    for (const auto& p : params) resolveType(p.type, p.loc);
  }

  void resolveType(const TypeRef& t, SrcLoc loc) {
    switch (t->kind) {
    case TypeKind::Record:
      if (!prog_.findRecord(t->name))
        typeError("unknown struct '" + t->name + "'", loc);
      break;
    case TypeKind::Enum:
      if (!prog_.findEnum(t->name))
        typeError("unknown enum '" + t->name + "'", loc);
      break;
    case TypeKind::Pointer:
    case TypeKind::Array:
      resolveType(t->element, loc);
      break;
    default:
      break;
    }
  }

  // Records may not contain themselves by value (pointers are fine).
  void checkRecordTypes() {
    for (const auto& r : prog_.records) {
      if (r.fields.empty()) typeError("struct '" + r.name + "' has no fields", r.loc);
      std::set<std::string> fieldNames;
      for (const auto& f : r.fields) {
        if (!fieldNames.insert(f.name).second)
          typeError("duplicate field '" + f.name + "' in struct " + r.name, f.loc);
        resolveType(f.type, f.loc);
        if (f.type->kind == TypeKind::Void)
          typeError("field cannot have void type", f.loc);
      }
    }
    // cycle check over by-value containment
    for (const auto& r : prog_.records) {
      std::set<std::string> onPath;
      std::function<void(const RecordDecl&)> visit = [&](const RecordDecl& rec) {
        if (!onPath.insert(rec.name).second)
          typeError("struct '" + rec.name + "' contains itself by value", rec.loc);
        for (const auto& f : rec.fields) {
          const SubjectType* t = f.type.get();
          while (t->kind == TypeKind::Array) t = t->element.get();
          if (t->kind == TypeKind::Record)
            visit(*prog_.findRecord(t->name));
        }
        onPath.erase(rec.name);
      };
      visit(r);
    }
  }

  //===--------------------------------------------------------------------===//
  // Function bodies
  //===--------------------------------------------------------------------===//

  int declareSlot(const std::string& name, const TypeRef& type, bool isParam,
                  SrcLoc loc) {
    if (!scopes_.empty() && scopes_.back().count(name))
      typeError("redeclaration of '" + name + "' in the same scope", loc);
    LocalSlot slot;
    slot.name = name;
    // uniquify the storage name if an outer scope already uses it
    int suffix = 2;
    auto taken = [&](const std::string& n) {
      for (const auto& s : fn_->slots)
        if (s.name == n) return true;
      return false;
    };
    while (taken(slot.name)) slot.name = name + "#" + std::to_string(suffix++);
    slot.type = type;
    slot.isParam = isParam;
    fn_->slots.push_back(std::move(slot));
    int id = static_cast<int>(fn_->slots.size()) - 1;
    scopes_.back()[name] = id;
    return id;
  }

  int lookupLocal(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto found = it->find(name);
      if (found != it->end()) return found->second;
    }
    return -1;
  }

  void checkFunction(FunctionDef& fn) {
    fn_ = &fn;
    fn.slots.clear();
    scopes_.clear();
    scopes_.emplace_back();
    for (const auto& p : fn.params) {
      if (p.type->kind == TypeKind::Void)
        typeError("parameter cannot have void type", p.loc);
      declareSlot(p.name, p.type, /*isParam=*/true, p.loc);
    }
    scopes_.emplace_back();
    checkStmt(*fn.bodyStmt);
    scopes_.clear();
    fn_ = nullptr;
  }

  void checkStmt(Stmt& s) {
    switch (s.kind) {
    case StmtKind::Block: {
      scopes_.emplace_back();
      for (auto& st : s.body) checkStmt(*st);
      scopes_.pop_back();
      return;
    }
    case StmtKind::Decl: {
      resolveType(s.declType, s.loc);
      if (s.init) {
        checkExpr(*s.init);
        requireConvertible(*s.init, s.declType, s.loc);
      }
      s.declSlot = declareSlot(s.declName, s.declType, false, s.loc);
      return;
    }
    case StmtKind::Assign: {
      checkExpr(*s.lhs);
      requireLvalue(*s.lhs);
      checkExpr(*s.rhs);
      requireConvertible(*s.rhs, s.lhs->type, s.loc);
      return;
    }
    case StmtKind::If:
    case StmtKind::While: {
      checkExpr(*s.cond);
      requireScalarCondition(*s.cond);
      checkStmt(*s.thenStmt);
      if (s.elseStmt) checkStmt(*s.elseStmt);
      return;
    }
    case StmtKind::For: {
      scopes_.emplace_back();
      if (s.forInit) checkStmt(*s.forInit);
      if (s.cond) {
        checkExpr(*s.cond);
        requireScalarCondition(*s.cond);
      }
      if (s.forStep) checkStmt(*s.forStep);
      checkStmt(*s.thenStmt);
      scopes_.pop_back();
      return;
    }
    case StmtKind::Switch: {
      checkExpr(*s.cond);
      if (!s.cond->type->isInt())
        typeError("switch subject must have integer type", s.loc);
      std::set<int64_t> seen;
      for (auto& c : s.cases) {
        if (!c.isDefault) {
          if (!c.labelName.empty()) {
            auto it = enumConstants_.find(c.labelName);
            if (it == enumConstants_.end())
              typeError("unknown case label '" + c.labelName + "'", c.loc);
            c.value = it->second;
          }
          if (!seen.insert(c.value).second)
            typeError("duplicate case value " + std::to_string(c.value), c.loc);
        }
        scopes_.emplace_back();
        for (auto& st : c.body) checkStmt(*st);
        scopes_.pop_back();
      }
      return;
    }
    case StmtKind::Return: {
      if (s.cond) {
        if (fn_->returnType->kind == TypeKind::Void)
          typeError("void function cannot return a value", s.loc);
        checkExpr(*s.cond);
        requireConvertible(*s.cond, fn_->returnType, s.loc);
      } else if (fn_->returnType->kind != TypeKind::Void) {
        typeError("non-void function must return a value", s.loc);
      }
      return;
    }
    case StmtKind::ExprStmt: {
      checkExpr(*s.expr);
      return;
    }
    }
  }

  void requireScalarCondition(const Expr& e) {
    if (!e.type->isInt() && !e.type->isPointerLike())
      typeError("condition must have integer or pointer type", e.loc);
  }

  void requireLvalue(const Expr& e) {
    switch (e.kind) {
    case ExprKind::Var:
      if (e.enumConstant)
        typeError("enum constant is not assignable", e.loc);
      if (e.type->kind == TypeKind::Array)
        typeError("array is not assignable as a whole", e.loc);
      return;
    case ExprKind::Index:
    case ExprKind::Deref:
    case ExprKind::Field:
      if (e.type->kind == TypeKind::Array || e.type->kind == TypeKind::Record)
        typeError("aggregate assignment is not supported", e.loc);
      return;
    default:
      typeError("expression is not assignable", e.loc);
    }
  }

  // value conversion legality for assignment / init / argument / return
  void requireConvertible(const Expr& from, const TypeRef& to, SrcLoc loc) {
    const TypeRef& ft = from.type;
    if (to->isInt() && ft->isInt()) return;
    if (to->kind == TypeKind::Pointer) {
      if (isIntegerLiteralZero(from)) return; // null
      if (ft->kind == TypeKind::Pointer && sameType(ft->element, to->element))
        return;
      if (ft->kind == TypeKind::Array && sameType(ft->element, to->element))
        return; // decay
      typeError("cannot convert " + typeName(ft) + " to " + typeName(to) +
                    " (use an explicit cast for address values)",
                loc);
    }
    if (to->kind == TypeKind::VoidPointer) {
      if (ft->isPointerLike() || ft->kind == TypeKind::Array ||
          isIntegerLiteralZero(from))
        return;
      typeError("cannot convert " + typeName(ft) + " to void*", loc);
    }
    if (ft->isPointerLike() && to->isInt())
      typeError("pointer-to-integer conversion is not supported", loc);
    if (!sameType(ft, to))
      typeError("cannot convert " + typeName(ft) + " to " + typeName(to), loc);
  }

  void checkExpr(Expr& e) {
    switch (e.kind) {
    case ExprKind::IntLit: {
      if (e.intValue > 0xFFFFFFFFull)
        typeError("integer literal does not fit in 32 bits", e.loc);
      e.type = e.intValue <= 0x7FFFFFFFull ? types::int32() : types::uint32();
      return;
    }
    case ExprKind::Var: {
      int slot = lookupLocal(e.name);
      if (slot >= 0) {
        e.var.slot = slot;
        e.var.isGlobal = false;
        e.type = fn_->slots[static_cast<size_t>(slot)].type;
        return;
      }
      int g = prog_.globalIndex(e.name);
      if (g >= 0) {
        e.var.slot = g;
        e.var.isGlobal = true;
        e.type = prog_.globals[static_cast<size_t>(g)].type;
        return;
      }
      auto ec = enumConstants_.find(e.name);
      if (ec != enumConstants_.end()) {
        e.enumConstant = true;
        e.enumValue = ec->second;
        e.type = types::int32();
        return;
      }
      typeError("use of undeclared identifier '" + e.name + "'", e.loc);
    }
    case ExprKind::Unary: {
      checkExpr(*e.a);
      if (e.uop == UnaryOp::Not) {
        requireScalarCondition(*e.a);
        e.type = types::int32();
        return;
      }
      if (!e.a->type->isInt())
        typeError("operand of unary operator must be an integer", e.loc);
      VType v = promoteUnary(vtypeOf(e.a->type));
      e.type = types::intType(v.width, v.isSigned);
      return;
    }
    case ExprKind::Binary:
      checkBinary(e);
      return;
    case ExprKind::Call:
      checkCall(e);
      return;
    case ExprKind::Index: {
      checkExpr(*e.a);
      checkExpr(*e.b);
      if (!e.b->type->isInt())
        typeError("array index must be an integer", e.b->loc);
      const TypeRef& base = e.a->type;
      if (base->kind == TypeKind::Array || base->kind == TypeKind::Pointer) {
        e.type = base->element;
        return;
      }
      if (base->kind == TypeKind::VoidPointer)
        typeError("cannot index a void*; cast it to a typed pointer first",
                  e.loc);
      typeError("subscripted value is not an array or pointer", e.loc);
    }
    case ExprKind::Field: {
      checkExpr(*e.a);
      TypeRef base = e.a->type;
      if (e.arrow) {
        if (base->kind != TypeKind::Pointer ||
            base->element->kind != TypeKind::Record)
          typeError("'->' requires a pointer to a struct", e.loc);
        base = base->element;
      } else if (base->kind != TypeKind::Record) {
        typeError("'.' requires a struct value", e.loc);
      }
      const RecordDecl* rec = prog_.findRecord(base->name);
      for (const auto& f : rec->fields) {
        if (f.name == e.name) {
          e.type = f.type;
          return;
        }
      }
      typeError("struct " + base->name + " has no field '" + e.name + "'",
                e.loc);
    }
    case ExprKind::Deref: {
      checkExpr(*e.a);
      const TypeRef& t = e.a->type;
      if (t->kind == TypeKind::Pointer || t->kind == TypeKind::Array) {
        e.type = t->element;
        return;
      }
      if (t->kind == TypeKind::VoidPointer)
        typeError("cannot dereference void*; cast it to a typed pointer first",
                  e.loc);
      typeError("cannot dereference " + typeName(t), e.loc);
    }
    case ExprKind::AddrOf: {
      checkExpr(*e.a);
      switch (e.a->kind) {
      case ExprKind::Var:
        if (e.a->enumConstant)
          typeError("cannot take the address of an enum constant", e.loc);
        break;
      case ExprKind::Index:
      case ExprKind::Deref:
      case ExprKind::Field:
        break;
      default:
        typeError("cannot take the address of this expression", e.loc);
      }
      if (e.a->type->kind == TypeKind::Array)
        typeError("taking the address of a whole array is not supported; "
                  "arrays decay to element pointers",
                  e.loc);
      e.type = types::pointerTo(e.a->type);
      return;
    }
    case ExprKind::Cast: {
      checkExpr(*e.a);
      resolveType(e.castType, e.loc);
      const TypeRef& to = e.castType;
      const TypeRef& ft = e.a->type;
      if (to->isInt() && ft->isInt()) {
        e.type = to;
        return;
      }
      if (to->kind == TypeKind::Pointer) {
        // address literals / computed addresses, void* resolution, decay
        if (ft->isInt() || ft->kind == TypeKind::VoidPointer ||
            (ft->kind == TypeKind::Array && sameType(ft->element, to->element)) ||
            (ft->kind == TypeKind::Pointer && sameType(ft->element, to->element))) {
          e.type = to;
          return;
        }
        unsupported("pointer casts between unrelated element types are not "
                    "supported",
                    e.loc);
      }
      if (to->kind == TypeKind::VoidPointer) {
        if (ft->isPointerLike() || ft->kind == TypeKind::Array) {
          e.type = to;
          return;
        }
        typeError("cannot cast " + typeName(ft) + " to void*", e.loc);
      }
      typeError("cannot cast to " + typeName(to), e.loc);
    }
    }
  }

  void checkBinary(Expr& e) {
    checkExpr(*e.a);
    checkExpr(*e.b);
    const TypeRef& lt = e.a->type;
    const TypeRef& rt = e.b->type;

    switch (e.bop) {
    case BinaryOp::LogAnd:
    case BinaryOp::LogOr: {
      // Calls have side effects on the stub ledger; under short-circuit
      // evaluation their execution would depend on sibling atoms, which the
      // path-constraint model cannot express. Single-atom decisions may call.
      if (containsCall(*e.a) || containsCall(*e.b))
        unsupported("calls are not allowed inside '&&' or '||' operands", e.loc);
      requireScalarCondition(*e.a);
      requireScalarCondition(*e.b);
      e.type = types::int32();
      return;
    }
    case BinaryOp::Add:
    case BinaryOp::Sub: {
      bool lptr = lt->kind == TypeKind::Pointer || lt->kind == TypeKind::Array;
      if (lptr && rt->isInt()) {
        e.type = lt->kind == TypeKind::Array ? types::pointerTo(lt->element) : lt;
        return;
      }
      if (e.bop == BinaryOp::Add && lt->isInt() &&
          (rt->kind == TypeKind::Pointer || rt->kind == TypeKind::Array)) {
        e.type = rt->kind == TypeKind::Array ? types::pointerTo(rt->element) : rt;
        return;
      }
      break;
    }
    case BinaryOp::Eq:
    case BinaryOp::Ne: {
      bool lp = lt->isPointerLike() || lt->kind == TypeKind::Array;
      bool rp = rt->isPointerLike() || rt->kind == TypeKind::Array;
      if (lp || rp) {
        bool ok = (lp && rp) || (lp && isIntegerLiteralZero(*e.b)) ||
                  (rp && isIntegerLiteralZero(*e.a));
        if (!ok)
          typeError("pointer comparison requires another pointer or literal 0",
                    e.loc);
        e.type = types::int32();
        return;
      }
      break;
    }
    default:
      break;
    }

    if (!lt->isInt() || !rt->isInt())
      typeError("operands of this operator must be integers", e.loc);
    switch (e.bop) {
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge:
    case BinaryOp::Eq:
    case BinaryOp::Ne:
      e.type = types::int32();
      return;
    case BinaryOp::Shl:
    case BinaryOp::Shr: {
      VType v = promoteUnary(vtypeOf(lt));
      e.type = types::intType(v.width, v.isSigned);
      return;
    }
    default: {
      VType v = promoteBinary(vtypeOf(lt), vtypeOf(rt));
      e.type = types::intType(v.width, v.isSigned);
      return;
    }
    }
  }

  void checkCall(Expr& e) {
    const std::vector<ParamDecl>* params = nullptr;
    TypeRef ret;
    if (const FunctionDef* fn = prog_.findFunction(e.name)) {
      params = &fn->params;
      ret = fn->returnType;
    } else if (const FunctionDecl* ext = prog_.findExternal(e.name)) {
      params = &ext->params;
      ret = ext->returnType;
    } else {
      if (lookupLocal(e.name) >= 0 || prog_.globalIndex(e.name) >= 0)
        unsupported("calls through variables (function pointers) are not "
                    "supported",
                    e.loc);
      typeError("call to undeclared function '" + e.name + "'", e.loc);
    }
    if (e.args.size() != params->size())
      typeError("call to '" + e.name + "' expects " +
                    std::to_string(params->size()) + " argument(s), got " +
                    std::to_string(e.args.size()),
                e.loc);
    for (size_t i = 0; i < e.args.size(); ++i) {
      checkExpr(*e.args[i]);
      requireConvertible(*e.args[i], (*params)[i].type, e.args[i]->loc);
    }
    e.type = ret;
    return;
  }
};

} // namespace

void typecheck(Program& program) { Checker(program).run(); }

RecordLayout layoutRecord(const Program& program, const RecordDecl& rec) {
  RecordLayout out;
  uint32_t offset = 0;
  uint32_t maxAlign = 1;
  for (const auto& f : rec.fields) {
    uint32_t align = program.alignOf(f.type);
    uint32_t size = program.sizeOf(f.type);
    assert(size > 0 && "field size requires dependencies laid out first");
    offset = (offset + align - 1) / align * align;
    out.fieldOffsets.emplace_back(f.name, offset);
    offset += size;
    maxAlign = std::max(maxAlign, align);
  }
  out.alignment = maxAlign;
  out.totalSize = (offset + maxAlign - 1) / maxAlign * maxAlign;
  out.computed = true;
  return out;
}

namespace {

void fillFieldOffsets(const Program& program, Expr& e) {
  if (e.a) fillFieldOffsets(program, *e.a);
  if (e.b) fillFieldOffsets(program, *e.b);
  for (auto& arg : e.args) fillFieldOffsets(program, *arg);
  if (e.kind != ExprKind::Field) return;
  TypeRef base = e.a->type;
  if (e.arrow) base = base->element;
  const RecordDecl* rec = program.findRecord(base->name);
  for (const auto& [name, off] : rec->layout.fieldOffsets) {
    if (name == e.name) {
      e.fieldOffset = off;
      return;
    }
  }
  assert(false && "field resolved during typecheck but missing from layout");
}

void fillFieldOffsets(const Program& program, Stmt& s) {
  for (auto& st : s.body) fillFieldOffsets(program, *st);
  if (s.init) fillFieldOffsets(program, *s.init);
  if (s.lhs) fillFieldOffsets(program, *s.lhs);
  if (s.rhs) fillFieldOffsets(program, *s.rhs);
  if (s.cond) fillFieldOffsets(program, *s.cond);
  if (s.thenStmt) fillFieldOffsets(program, *s.thenStmt);
  if (s.elseStmt) fillFieldOffsets(program, *s.elseStmt);
  if (s.forInit) fillFieldOffsets(program, *s.forInit);
  if (s.forStep) fillFieldOffsets(program, *s.forStep);
  for (auto& c : s.cases)
    for (auto& st : c.body) fillFieldOffsets(program, *st);
  if (s.expr) fillFieldOffsets(program, *s.expr);
}

} // namespace

void layout(Program& program) {
  // lay out in dependency order; cycles were rejected by typecheck
  bool progress = true;
  size_t remaining = program.records.size();
  while (remaining > 0 && progress) {
    progress = false;
    for (auto& rec : program.records) {
      if (rec.layout.computed) continue;
      bool ready = true;
      for (const auto& f : rec.fields) {
        const SubjectType* t = f.type.get();
        while (t->kind == TypeKind::Array) t = t->element.get();
        if (t->kind == TypeKind::Record &&
            !program.findRecord(t->name)->layout.computed)
          ready = false;
      }
      if (!ready) continue;
      rec.layout = layoutRecord(program, rec);
      --remaining;
      progress = true;
    }
  }
  assert(remaining == 0 && "record dependency cycle escaped typecheck");

  for (auto& fn : program.functions) fillFieldOffsets(program, *fn.bodyStmt);
}

} // namespace smartgen
