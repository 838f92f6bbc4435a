//===-- pretty.hpp - source printer for the subject language --------------===//
#pragma once

#include "smartgen/ast.hpp"

#include <string>

namespace smartgen {

// Prints a Program back to parseable source. Expressions are fully
// parenthesized, so printing is injective on resolved ASTs and
// parse(print(parse(s))) is structurally identical to parse(s).
std::string prettyPrint(const Program& program);

std::string printExpr(const Expr& e);
std::string printType(const TypeRef& t); // leading type spelling (no arrays)

} // namespace smartgen
