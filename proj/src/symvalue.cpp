//===-- symvalue.cpp -----------------------------------------------------------===//

#include "smartgen/symvalue.hpp"

#include <cassert>
#include <sstream>

namespace smartgen {
namespace sym {

uint32_t maskToWidth(uint64_t v, int width) {
  if (width >= 32) return static_cast<uint32_t>(v);
  return static_cast<uint32_t>(v & ((1ull << width) - 1));
}

int64_t interpret(uint32_t bits, VType t) {
  if (!t.isSigned) return static_cast<int64_t>(bits);
  uint32_t sign = 1u << (t.width - 1);
  if (bits & sign) {
    // sign extend
    uint64_t ext = ~((1ull << t.width) - 1);
    return static_cast<int64_t>(static_cast<uint64_t>(bits) | ext);
  }
  return static_cast<int64_t>(bits);
}

SymRef constant(uint32_t bits, VType t) {
  auto n = std::make_shared<SymNode>();
  n->op = SymOp::Const;
  n->type = t;
  n->bits = maskToWidth(bits, t.width);
  return n;
}

SymRef constantBool(bool b) { return constant(b ? 1 : 0, VType{32, true}); }

SymRef input(const std::string& name, VType t) {
  auto n = std::make_shared<SymNode>();
  n->op = SymOp::Input;
  n->type = t;
  n->name = name;
  return n;
}

namespace {

// exact wraparound arithmetic on two operands of the same VType
std::optional<uint32_t> foldBinary(SymOp op, uint32_t la, uint32_t lb, VType t) {
  int w = t.width;
  auto wrap = [&](uint64_t v) { return maskToWidth(v, w); };
  int64_t sa = interpret(la, t);
  int64_t sb = interpret(lb, t);
  switch (op) {
  case SymOp::Add: return wrap(static_cast<uint64_t>(la) + lb);
  case SymOp::Sub: return wrap(static_cast<uint64_t>(la) - lb);
  case SymOp::Mul:
    return wrap(static_cast<uint64_t>(la) * static_cast<uint64_t>(lb));
  case SymOp::Div: {
    if (lb == 0) return std::nullopt;
    if (t.isSigned) return wrap(static_cast<uint64_t>(sa / sb)); // trunc toward 0
    return wrap(static_cast<uint64_t>(la) / lb);
  }
  case SymOp::Mod: {
    if (lb == 0) return std::nullopt;
    if (t.isSigned) return wrap(static_cast<uint64_t>(sa % sb)); // sign of dividend
    return wrap(static_cast<uint64_t>(la) % lb);
  }
  case SymOp::Lt:
    return (t.isSigned ? sa < sb : la < lb) ? 1u : 0u;
  case SymOp::Le:
    return (t.isSigned ? sa <= sb : la <= lb) ? 1u : 0u;
  case SymOp::Eq: return la == lb ? 1u : 0u;
  case SymOp::Ne: return la != lb ? 1u : 0u;
  case SymOp::LogAnd: return (la != 0 && lb != 0) ? 1u : 0u;
  case SymOp::LogOr: return (la != 0 || lb != 0) ? 1u : 0u;
  case SymOp::Shl: {
    uint32_t amount = lb % static_cast<uint32_t>(w);
    return wrap(static_cast<uint64_t>(la) << amount);
  }
  case SymOp::Shr: {
    uint32_t amount = lb % static_cast<uint32_t>(w);
    if (!t.isSigned) return la >> amount;
    return wrap(static_cast<uint64_t>(sa >> amount)); // arithmetic
  }
  case SymOp::BitAnd: return la & lb;
  case SymOp::BitOr: return la | lb;
  default:
    assert(false && "not a binary op");
    return std::nullopt;
  }
}

} // namespace

SymRef binop(SymOp op, SymRef a, SymRef b) {
  assert(a && b);
  assert(a->type == b->type && "binary operands must share a value type");
  VType result = a->type;
  switch (op) {
  case SymOp::Lt:
  case SymOp::Le:
  case SymOp::Eq:
  case SymOp::Ne:
  case SymOp::LogAnd:
  case SymOp::LogOr:
    result = VType{32, true};
    break;
  default:
    break;
  }
  if (a->op == SymOp::Const && b->op == SymOp::Const) {
    auto folded = foldBinary(op, a->bits, b->bits, a->type);
    if (folded) return constant(*folded, result);
    // division by a literal zero stays symbolic; the executor raises the
    // runtime exception before the value is ever needed
  }
  auto n = std::make_shared<SymNode>();
  n->op = op;
  n->type = result;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

SymRef unop(SymOp op, SymRef a) {
  assert(a);
  VType t = a->type;
  if (a->op == SymOp::Const) {
    switch (op) {
    case SymOp::Not:
      return constant(a->bits == 0 ? 1 : 0, VType{32, true});
    case SymOp::Neg:
      return constant(maskToWidth(~static_cast<uint64_t>(a->bits) + 1, t.width), t);
    case SymOp::BitNot:
      return constant(maskToWidth(~static_cast<uint64_t>(a->bits), t.width), t);
    default:
      break;
    }
  }
  auto n = std::make_shared<SymNode>();
  n->op = op;
  n->type = op == SymOp::Not ? VType{32, true} : t;
  n->a = std::move(a);
  return n;
}

SymRef cast(SymRef a, VType to) {
  if (a->type == to) return a;
  if (a->op == SymOp::Const) {
    int64_t v = interpret(a->bits, a->type);
    return constant(maskToWidth(static_cast<uint64_t>(v), to.width), to);
  }
  auto n = std::make_shared<SymNode>();
  n->op = SymOp::Cast;
  n->type = to;
  n->a = std::move(a);
  return n;
}

SymRef promote(SymRef a, VType to) { return cast(std::move(a), to); }

SymRef add(SymRef a, SymRef b) { return binop(SymOp::Add, std::move(a), std::move(b)); }
SymRef sub(SymRef a, SymRef b) { return binop(SymOp::Sub, std::move(a), std::move(b)); }
SymRef mul(SymRef a, SymRef b) { return binop(SymOp::Mul, std::move(a), std::move(b)); }
SymRef eq(SymRef a, SymRef b) { return binop(SymOp::Eq, std::move(a), std::move(b)); }
SymRef ne(SymRef a, SymRef b) { return binop(SymOp::Ne, std::move(a), std::move(b)); }
SymRef lt(SymRef a, SymRef b) { return binop(SymOp::Lt, std::move(a), std::move(b)); }
SymRef le(SymRef a, SymRef b) { return binop(SymOp::Le, std::move(a), std::move(b)); }
SymRef logAnd(SymRef a, SymRef b) { return binop(SymOp::LogAnd, std::move(a), std::move(b)); }
SymRef logOr(SymRef a, SymRef b) { return binop(SymOp::LogOr, std::move(a), std::move(b)); }
SymRef logNot(SymRef a) { return unop(SymOp::Not, std::move(a)); }

bool isConst(const SymRef& v) { return v && v->op == SymOp::Const; }
bool isConstZero(const SymRef& v) { return isConst(v) && v->bits == 0; }
bool isConstNonZero(const SymRef& v) { return isConst(v) && v->bits != 0; }

std::optional<uint32_t> eval(const SymRef& v, const Model& model) {
  switch (v->op) {
  case SymOp::Const:
    return v->bits;
  case SymOp::Input: {
    auto it = model.find(v->name);
    uint32_t raw = it == model.end() ? 0 : it->second;
    return maskToWidth(raw, v->type.width);
  }
  case SymOp::Not: {
    auto a = eval(v->a, model);
    if (!a) return std::nullopt;
    return *a == 0 ? 1u : 0u;
  }
  case SymOp::Neg: {
    auto a = eval(v->a, model);
    if (!a) return std::nullopt;
    return maskToWidth(~static_cast<uint64_t>(*a) + 1, v->type.width);
  }
  case SymOp::BitNot: {
    auto a = eval(v->a, model);
    if (!a) return std::nullopt;
    return maskToWidth(~static_cast<uint64_t>(*a), v->type.width);
  }
  case SymOp::Cast: {
    auto a = eval(v->a, model);
    if (!a) return std::nullopt;
    int64_t value = interpret(*a, v->a->type);
    return maskToWidth(static_cast<uint64_t>(value), v->type.width);
  }
  case SymOp::LogAnd: {
    auto a = eval(v->a, model);
    auto b = eval(v->b, model);
    // a defined-false or b defined-false decides regardless of the other side
    if (a && *a == 0) return 0u;
    if (b && *b == 0) return 0u;
    if (a && b) return 1u;
    return std::nullopt;
  }
  case SymOp::LogOr: {
    auto a = eval(v->a, model);
    auto b = eval(v->b, model);
    if (a && *a != 0) return 1u;
    if (b && *b != 0) return 1u;
    if (a && b) return 0u;
    return std::nullopt;
  }
  default: {
    auto a = eval(v->a, model);
    auto b = eval(v->b, model);
    if (!a || !b) return std::nullopt;
    return foldBinary(v->op, *a, *b, v->a->type);
  }
  }
}

std::optional<bool> evalTruth(const SymRef& v, const Model& model) {
  auto r = eval(v, model);
  if (!r) return std::nullopt;
  return *r != 0;
}

void collectInputs(const SymRef& v, std::map<std::string, VType>& out) {
  if (!v) return;
  if (v->op == SymOp::Input) {
    out.emplace(v->name, v->type);
    return;
  }
  collectInputs(v->a, out);
  collectInputs(v->b, out);
}

namespace {
const char* opText(SymOp op) {
  switch (op) {
  case SymOp::Add: return "+";
  case SymOp::Sub: return "-";
  case SymOp::Mul: return "*";
  case SymOp::Div: return "/";
  case SymOp::Mod: return "%";
  case SymOp::Lt: return "<";
  case SymOp::Le: return "<=";
  case SymOp::Eq: return "==";
  case SymOp::Ne: return "!=";
  case SymOp::LogAnd: return "&&";
  case SymOp::LogOr: return "||";
  case SymOp::Shl: return "<<";
  case SymOp::Shr: return ">>";
  case SymOp::BitAnd: return "&";
  case SymOp::BitOr: return "|";
  default: return "?";
  }
}
} // namespace

std::string toString(const SymRef& v) {
  if (!v) return "<null>";
  std::ostringstream out;
  switch (v->op) {
  case SymOp::Const:
    out << interpret(v->bits, v->type);
    if (!v->type.isSigned) out << "u";
    break;
  case SymOp::Input:
    out << v->name;
    break;
  case SymOp::Not:
    out << "!" << toString(v->a);
    break;
  case SymOp::Neg:
    out << "-" << toString(v->a);
    break;
  case SymOp::BitNot:
    out << "~" << toString(v->a);
    break;
  case SymOp::Cast:
    out << "(" << (v->type.isSigned ? "i" : "u") << v->type.width << ")"
        << toString(v->a);
    break;
  default:
    out << "(" << toString(v->a) << " " << opText(v->op) << " " << toString(v->b)
        << ")";
  }
  return out.str();
}

} // namespace sym
} // namespace smartgen
