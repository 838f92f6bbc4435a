//===-- diag.hpp - source locations and diagnostics ----------------------===//
#pragma once

#include <stdexcept>
#include <string>

namespace smartgen {

struct SrcLoc {
  int line = 0;
  int column = 0;
};

// Thrown by the frontend for syntax errors, type errors, and constructs the
// subject language deliberately does not support. Carries the offending
// location so batch drivers can report file:line:col.
class FrontendError : public std::runtime_error {
public:
  enum class Kind { Syntax, Type, Unsupported };

  FrontendError(Kind kind, std::string message, SrcLoc loc)
      : std::runtime_error(std::move(message)), kind_(kind), loc_(loc) {}

  Kind kind() const { return kind_; }
  SrcLoc loc() const { return loc_; }

  std::string format() const {
    std::string tag = kind_ == Kind::Syntax        ? "syntax error"
                      : kind_ == Kind::Type        ? "type error"
                                                   : "unsupported construct";
    return std::to_string(loc_.line) + ":" + std::to_string(loc_.column) +
           ": " + tag + ": " + what();
  }

private:
  Kind kind_;
  SrcLoc loc_;
};

[[noreturn]] inline void syntaxError(const std::string& msg, SrcLoc loc) {
  throw FrontendError(FrontendError::Kind::Syntax, msg, loc);
}
[[noreturn]] inline void typeError(const std::string& msg, SrcLoc loc) {
  throw FrontendError(FrontendError::Kind::Type, msg, loc);
}
[[noreturn]] inline void unsupported(const std::string& msg, SrcLoc loc) {
  throw FrontendError(FrontendError::Kind::Unsupported, msg, loc);
}

} // namespace smartgen
