//===-- symvalue.hpp - symbolic expression trees ---------------------------===//
//
// Immutable expression trees over named input symbols. Every node carries the
// value type (width + signedness) it evaluates at; construction folds
// constants eagerly so fully concrete programs execute without touching the
// solver. Shift amounts are taken modulo the operand width; division
// truncates toward zero and remainder follows the dividend sign; all
// arithmetic wraps at the declared width for signed and unsigned alike.
//
//===----------------------------------------------------------------------===//
#pragma once

#include "smartgen/ast.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>

namespace smartgen {

enum class SymOp {
  Const,
  Input,
  Add, Sub, Mul, Div, Mod,
  Lt, Le, Eq, Ne,       // comparisons yield int32 0/1
  LogAnd, LogOr,        // logical on truthiness, yield int32 0/1
  Shl, Shr,
  BitAnd, BitOr,
  Not, Neg, BitNot,
  Cast,
};

struct SymNode;
using SymRef = std::shared_ptr<const SymNode>;

struct SymNode {
  SymOp op;
  VType type;        // value type of this node
  uint32_t bits = 0; // Const payload (masked to width)
  std::string name;  // Input symbol name
  SymRef a, b;
};

// concrete assignment: symbol name -> bit pattern at the symbol's width
using Model = std::map<std::string, uint32_t>;

namespace sym {

uint32_t maskToWidth(uint64_t v, int width);
int64_t interpret(uint32_t bits, VType t); // signed/unsigned reading

SymRef constant(uint32_t bits, VType t);
SymRef constantBool(bool b);
SymRef input(const std::string& name, VType t);
SymRef binop(SymOp op, SymRef a, SymRef b);
SymRef unop(SymOp op, SymRef a);
SymRef cast(SymRef a, VType to);

// convenience wrappers (operands must share a VType where binary)
SymRef add(SymRef a, SymRef b);
SymRef sub(SymRef a, SymRef b);
SymRef mul(SymRef a, SymRef b);
SymRef eq(SymRef a, SymRef b);
SymRef ne(SymRef a, SymRef b);
SymRef lt(SymRef a, SymRef b);
SymRef le(SymRef a, SymRef b);
SymRef logAnd(SymRef a, SymRef b);
SymRef logOr(SymRef a, SymRef b);
SymRef logNot(SymRef a);

// promotes the operand to the given type (no-op when equal)
SymRef promote(SymRef a, VType to);

bool isConst(const SymRef& v);
bool isConstZero(const SymRef& v);
bool isConstNonZero(const SymRef& v);

// Evaluates under a full assignment. Returns nullopt only when a division or
// remainder by zero is reached on a demanded operand; LogAnd/LogOr absorb an
// undefined side when the other side already decides the result.
std::optional<uint32_t> eval(const SymRef& v, const Model& model);

// truthiness under the model (nonzero); nullopt if undefined
std::optional<bool> evalTruth(const SymRef& v, const Model& model);

void collectInputs(const SymRef& v, std::map<std::string, VType>& out);

std::string toString(const SymRef& v); // debug form

} // namespace sym

} // namespace smartgen
