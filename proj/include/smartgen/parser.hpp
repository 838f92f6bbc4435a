//===-- parser.hpp - recursive-descent parser ------------------------------===//
#pragma once

#include "smartgen/ast.hpp"

#include <string>

namespace smartgen {

// Parses source text into a raw (unresolved) Program. Throws FrontendError
// with the offending location on syntax errors. Most callers want
// parseAndCheck, which also resolves names, checks types, and computes
// record layouts.
Program parseOnly(const std::string& source);

Program parseAndCheck(const std::string& source);

} // namespace smartgen
