//===-- ast.cpp -----------------------------------------------------------===//

#include "smartgen/ast.hpp"

namespace smartgen {

namespace types {

TypeRef intType(int width, bool isSigned) {
  auto t = std::make_shared<SubjectType>();
  t->kind = TypeKind::Int;
  t->width = width;
  t->isSigned = isSigned;
  return t;
}
TypeRef int8() { return intType(8, true); }
TypeRef int16() { return intType(16, true); }
TypeRef int32() { return intType(32, true); }
TypeRef uint8() { return intType(8, false); }
TypeRef uint16() { return intType(16, false); }
TypeRef uint32() { return intType(32, false); }

TypeRef voidType() {
  auto t = std::make_shared<SubjectType>();
  t->kind = TypeKind::Void;
  return t;
}
TypeRef voidPointer() {
  auto t = std::make_shared<SubjectType>();
  t->kind = TypeKind::VoidPointer;
  return t;
}
TypeRef pointerTo(TypeRef element) {
  auto t = std::make_shared<SubjectType>();
  t->kind = TypeKind::Pointer;
  t->element = std::move(element);
  return t;
}
TypeRef arrayOf(TypeRef element, uint32_t count) {
  auto t = std::make_shared<SubjectType>();
  t->kind = TypeKind::Array;
  t->element = std::move(element);
  t->count = count;
  return t;
}
TypeRef record(const std::string& name) {
  auto t = std::make_shared<SubjectType>();
  t->kind = TypeKind::Record;
  t->name = name;
  return t;
}
TypeRef enumType(const std::string& name) {
  auto t = std::make_shared<SubjectType>();
  t->kind = TypeKind::Enum;
  t->name = name;
  return t;
}

} // namespace types

bool sameType(const TypeRef& a, const TypeRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
  case TypeKind::Int:
    return a->width == b->width && a->isSigned == b->isSigned;
  case TypeKind::Pointer:
    return sameType(a->element, b->element);
  case TypeKind::Array:
    return a->count == b->count && sameType(a->element, b->element);
  case TypeKind::Record:
  case TypeKind::Enum:
    return a->name == b->name;
  case TypeKind::VoidPointer:
  case TypeKind::Void:
    return true;
  }
  return false;
}

std::string typeName(const TypeRef& t) {
  if (!t) return "<null>";
  switch (t->kind) {
  case TypeKind::Int: {
    std::string base = t->width == 8 ? "char" : t->width == 16 ? "short" : "int";
    return t->isSigned ? base : "unsigned " + base;
  }
  case TypeKind::Pointer:
    return typeName(t->element) + "*";
  case TypeKind::Array:
    return typeName(t->element) + "[" + std::to_string(t->count) + "]";
  case TypeKind::Record:
    return "struct " + t->name;
  case TypeKind::Enum:
    return "enum " + t->name;
  case TypeKind::VoidPointer:
    return "void*";
  case TypeKind::Void:
    return "void";
  }
  return "<bad>";
}

ExprPtr cloneExpr(const Expr& e) {
  auto out = std::make_unique<Expr>();
  out->kind = e.kind;
  out->loc = e.loc;
  out->type = e.type;
  out->intValue = e.intValue;
  out->name = e.name;
  out->var = e.var;
  out->uop = e.uop;
  out->bop = e.bop;
  if (e.a) out->a = cloneExpr(*e.a);
  if (e.b) out->b = cloneExpr(*e.b);
  for (const auto& arg : e.args) out->args.push_back(cloneExpr(*arg));
  out->castType = e.castType;
  out->arrow = e.arrow;
  out->fieldOffset = e.fieldOffset;
  out->enumConstant = e.enumConstant;
  out->enumValue = e.enumValue;
  return out;
}

StmtPtr cloneStmt(const Stmt& s) {
  auto out = std::make_unique<Stmt>();
  out->kind = s.kind;
  out->loc = s.loc;
  for (const auto& st : s.body) out->body.push_back(cloneStmt(*st));
  out->declName = s.declName;
  out->declType = s.declType;
  out->declSlot = s.declSlot;
  if (s.init) out->init = cloneExpr(*s.init);
  if (s.lhs) out->lhs = cloneExpr(*s.lhs);
  if (s.rhs) out->rhs = cloneExpr(*s.rhs);
  if (s.cond) out->cond = cloneExpr(*s.cond);
  if (s.thenStmt) out->thenStmt = cloneStmt(*s.thenStmt);
  if (s.elseStmt) out->elseStmt = cloneStmt(*s.elseStmt);
  if (s.forInit) out->forInit = cloneStmt(*s.forInit);
  if (s.forStep) out->forStep = cloneStmt(*s.forStep);
  for (const auto& c : s.cases) {
    SwitchCase cc;
    cc.isDefault = c.isDefault;
    cc.value = c.value;
    cc.labelName = c.labelName;
    cc.loc = c.loc;
    for (const auto& st : c.body) cc.body.push_back(cloneStmt(*st));
    out->cases.push_back(std::move(cc));
  }
  if (s.expr) out->expr = cloneExpr(*s.expr);
  return out;
}

const RecordDecl* Program::findRecord(const std::string& name) const {
  for (const auto& r : records)
    if (r.name == name) return &r;
  return nullptr;
}
const EnumDecl* Program::findEnum(const std::string& name) const {
  for (const auto& e : enums)
    if (e.name == name) return &e;
  return nullptr;
}
const FunctionDef* Program::findFunction(const std::string& name) const {
  for (const auto& f : functions)
    if (f.name == name) return &f;
  return nullptr;
}
const FunctionDecl* Program::findExternal(const std::string& name) const {
  for (const auto& f : externals)
    if (f.name == name) return &f;
  return nullptr;
}
int Program::globalIndex(const std::string& name) const {
  for (size_t i = 0; i < globals.size(); ++i)
    if (globals[i].name == name) return static_cast<int>(i);
  return -1;
}

uint32_t Program::alignOf(const TypeRef& t) const {
  switch (t->kind) {
  case TypeKind::Int:
    return static_cast<uint32_t>(t->width / 8);
  case TypeKind::Pointer:
  case TypeKind::VoidPointer:
  case TypeKind::Enum:
    return 4;
  case TypeKind::Array:
    return alignOf(t->element);
  case TypeKind::Record: {
    const RecordDecl* r = findRecord(t->name);
    return r && r->layout.computed ? r->layout.alignment : 1;
  }
  case TypeKind::Void:
    return 1;
  }
  return 1;
}

uint32_t Program::sizeOf(const TypeRef& t) const {
  switch (t->kind) {
  case TypeKind::Int:
    return static_cast<uint32_t>(t->width / 8);
  case TypeKind::Pointer:
  case TypeKind::VoidPointer:
  case TypeKind::Enum:
    return 4;
  case TypeKind::Array:
    return sizeOf(t->element) * t->count;
  case TypeKind::Record: {
    const RecordDecl* r = findRecord(t->name);
    return r && r->layout.computed ? r->layout.totalSize : 0;
  }
  case TypeKind::Void:
    return 0;
  }
  return 0;
}

} // namespace smartgen
