//===-- typecheck.hpp - name resolution, type checking, record layout -----===//
#pragma once

#include "smartgen/ast.hpp"

namespace smartgen {

// Resolves every name, assigns local slots, and types every expression.
// Throws FrontendError on the first violation.
void typecheck(Program& program);

// Computes record layouts under the frozen rule: natural alignment, fields
// in declaration order, no reordering. Also resolves field byte offsets on
// every Field expression. Requires typecheck() to have run.
void layout(Program& program);

// Layout of a single record given already-laid-out dependencies.
RecordLayout layoutRecord(const Program& program, const RecordDecl& rec);

} // namespace smartgen
