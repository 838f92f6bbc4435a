//===-- ast.hpp - subject-language types, expressions, statements --------===//
//
// The typed AST for the mini-C subject language. A translation unit parses
// into a Program; the type checker resolves names, assigns variable slots,
// and computes record layouts before anything downstream runs.
//
//===----------------------------------------------------------------------===//
#pragma once

#include "smartgen/diag.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace smartgen {

//===----------------------------------------------------------------------===//
// Types
//===----------------------------------------------------------------------===//

enum class TypeKind {
  Int,         // signed/unsigned, width 8/16/32
  Pointer,     // pointer to element type
  Array,       // fixed-count array of element type
  Record,      // struct by name
  Enum,        // enum by name (int32 representation)
  VoidPointer, // void*, value usable only through its recorded alias
  Void,        // function return position only
};

struct SubjectType;
using TypeRef = std::shared_ptr<const SubjectType>;

struct SubjectType {
  TypeKind kind = TypeKind::Int;
  int width = 32;       // Int only: 8, 16, or 32
  bool isSigned = true; // Int only
  TypeRef element;      // Pointer/Array
  uint32_t count = 0;   // Array: element count, > 0
  std::string name;     // Record/Enum

  bool isInt() const { return kind == TypeKind::Int || kind == TypeKind::Enum; }
  bool isPointerLike() const {
    return kind == TypeKind::Pointer || kind == TypeKind::VoidPointer;
  }
};

namespace types {
TypeRef intType(int width, bool isSigned);
TypeRef int8();
TypeRef int16();
TypeRef int32();
TypeRef uint8();
TypeRef uint16();
TypeRef uint32();
TypeRef voidType();
TypeRef voidPointer();
TypeRef pointerTo(TypeRef element);
TypeRef arrayOf(TypeRef element, uint32_t count);
TypeRef record(const std::string& name);
TypeRef enumType(const std::string& name);
} // namespace types

bool sameType(const TypeRef& a, const TypeRef& b);
std::string typeName(const TypeRef& t);

// Value category of an expression once evaluated: widths and signedness for
// the shared integer semantics. Enums evaluate as signed int32; pointers are
// 32-bit unsigned offsets in the simulated address model.
struct VType {
  int width = 32;
  bool isSigned = true;
  bool operator==(const VType& o) const {
    return width == o.width && isSigned == o.isSigned;
  }
};

inline VType vtypeOf(const TypeRef& t) {
  if (t->kind == TypeKind::Int) return VType{t->width, t->isSigned};
  return VType{32, true}; // enums and everything else integer-ish
}

// Usual arithmetic conversions for the subject language: operands narrower
// than 32 bits promote to signed int32; at width 32 unsigned wins.
inline VType promoteUnary(VType v) {
  if (v.width < 32) return VType{32, true};
  return v;
}
inline VType promoteBinary(VType a, VType b) {
  VType pa = promoteUnary(a), pb = promoteUnary(b);
  return VType{32, pa.isSigned && pb.isSigned};
}

//===----------------------------------------------------------------------===//
// Expressions
//===----------------------------------------------------------------------===//

enum class ExprKind {
  IntLit, // integer literal (decimal or hex)
  Var,    // resolved local/param or global reference
  Unary,  // ! - ~
  Binary,
  Call,   // name(args)
  Index,  // base[index]
  Field,  // base.field or base->field (arrow flag)
  Deref,  // *ptr
  AddrOf, // &lvalue
  Cast,   // (type)expr
};

enum class BinaryOp {
  Add, Sub, Mul, Div, Mod,
  Lt, Le, Gt, Ge, Eq, Ne,
  LogAnd, LogOr,
  Shl, Shr,
  BitAnd, BitOr,
};

enum class UnaryOp { Not, Neg, BitNot };

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

// Resolved variable reference. Locals (params included) index the owning
// function's slot table; globals index Program::globals.
struct VarRef {
  int slot = -1;
  bool isGlobal = false;
};

struct Expr {
  ExprKind kind;
  SrcLoc loc;
  TypeRef type; // set by the type checker

  uint64_t intValue = 0; // IntLit raw value
  std::string name;      // Var spelling, Call callee, Field name
  VarRef var;            // Var (after resolution)
  UnaryOp uop = UnaryOp::Not;
  BinaryOp bop = BinaryOp::Add;
  ExprPtr a;                 // unary operand, binary lhs, call/index base
  ExprPtr b;                 // binary rhs, index subscript
  std::vector<ExprPtr> args; // Call
  TypeRef castType;          // Cast target
  bool arrow = false;        // Field: base is a pointer
  uint32_t fieldOffset = 0;  // Field: byte offset (after layout)
  bool enumConstant = false; // Var that resolved to an enumerator
  int64_t enumValue = 0;
};

ExprPtr cloneExpr(const Expr& e);

//===----------------------------------------------------------------------===//
// Statements
//===----------------------------------------------------------------------===//

enum class StmtKind {
  Block,
  Decl,   // local declaration, optional initializer
  Assign, // lvalue = expr
  If,
  While,
  For,
  Switch,
  Return,
  ExprStmt, // call used as a statement
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct SwitchCase {
  bool isDefault = false;
  int64_t value = 0;     // resolved constant label
  std::string labelName; // enum-constant spelling when used as the label
  SrcLoc loc;
  std::vector<StmtPtr> body; // no fallthrough between cases
};

struct Stmt {
  StmtKind kind;
  SrcLoc loc;

  std::vector<StmtPtr> body; // Block
  // Decl
  std::string declName;
  TypeRef declType;
  int declSlot = -1;
  ExprPtr init; // optional
  // Assign
  ExprPtr lhs;
  ExprPtr rhs;
  // If / While / For / Switch / Return
  ExprPtr cond;      // If/While/For condition, Switch subject, Return value
  StmtPtr thenStmt;  // If then, While/For body
  StmtPtr elseStmt;  // If else (optional)
  StmtPtr forInit;   // For: Decl or Assign (optional)
  StmtPtr forStep;   // For: Assign (optional)
  std::vector<SwitchCase> cases;
  // ExprStmt
  ExprPtr expr;
};

StmtPtr cloneStmt(const Stmt& s);

//===----------------------------------------------------------------------===//
// Declarations and the Program
//===----------------------------------------------------------------------===//

struct RecordLayout {
  std::vector<std::pair<std::string, uint32_t>> fieldOffsets;
  uint32_t totalSize = 0;
  uint32_t alignment = 1;
  bool computed = false;
};

struct RecordField {
  std::string name;
  TypeRef type;
  SrcLoc loc;
};

struct RecordDecl {
  std::string name;
  std::vector<RecordField> fields;
  RecordLayout layout;
  SrcLoc loc;
};

struct EnumDecl {
  std::string name;
  std::vector<std::pair<std::string, int64_t>> enumerators;
  SrcLoc loc;
};

struct VarDecl { // global
  std::string name;
  TypeRef type;
  SrcLoc loc;
};

struct ParamDecl {
  std::string name;
  TypeRef type;
  SrcLoc loc;
};

// One entry per local slot in a function: parameters first, then every
// declared local (uniquified if shadowing), then any temporaries synthesized
// by call inlining.
struct LocalSlot {
  std::string name;
  TypeRef type;
  bool isParam = false;
};

struct FunctionDef {
  std::string name;
  std::vector<ParamDecl> params;
  TypeRef returnType;
  StmtPtr bodyStmt; // Block
  std::vector<LocalSlot> slots;
  SrcLoc loc;
};

struct FunctionDecl { // declared but not defined: stubbed during execution
  std::string name;
  std::vector<ParamDecl> params;
  TypeRef returnType;
  SrcLoc loc;
};

struct Program {
  std::vector<RecordDecl> records;
  std::vector<EnumDecl> enums;
  std::vector<VarDecl> globals;
  std::vector<FunctionDef> functions;
  std::vector<FunctionDecl> externals;

  const RecordDecl* findRecord(const std::string& name) const;
  const EnumDecl* findEnum(const std::string& name) const;
  const FunctionDef* findFunction(const std::string& name) const;
  const FunctionDecl* findExternal(const std::string& name) const;
  int globalIndex(const std::string& name) const; // -1 if absent

  // Byte size / natural alignment of a type under the frozen layout rule.
  uint32_t sizeOf(const TypeRef& t) const;
  uint32_t alignOf(const TypeRef& t) const;
};

} // namespace smartgen
