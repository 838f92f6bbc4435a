//===-- pretty.cpp -----------------------------------------------------------===//

#include "smartgen/pretty.hpp"

#include <sstream>

namespace smartgen {

namespace {

const char* binOpText(BinaryOp op) {
  switch (op) {
  case BinaryOp::Add: return "+";
  case BinaryOp::Sub: return "-";
  case BinaryOp::Mul: return "*";
  case BinaryOp::Div: return "/";
  case BinaryOp::Mod: return "%";
  case BinaryOp::Lt: return "<";
  case BinaryOp::Le: return "<=";
  case BinaryOp::Gt: return ">";
  case BinaryOp::Ge: return ">=";
  case BinaryOp::Eq: return "==";
  case BinaryOp::Ne: return "!=";
  case BinaryOp::LogAnd: return "&&";
  case BinaryOp::LogOr: return "||";
  case BinaryOp::Shl: return "<<";
  case BinaryOp::Shr: return ">>";
  case BinaryOp::BitAnd: return "&";
  case BinaryOp::BitOr: return "|";
  }
  return "?";
}

class Printer {
public:
  std::string run(const Program& program) {
    for (const auto& r : program.records) printRecord(r);
    for (const auto& e : program.enums) printEnum(e);
    for (const auto& g : program.globals) {
      line(declString(g.type, g.name) + ";");
    }
    for (const auto& f : program.externals) {
      line(signatureString(f.returnType, f.name, f.params) + ";");
    }
    for (const auto& f : program.functions) {
      line(signatureString(f.returnType, f.name, f.params));
      printBlockBody(*f.bodyStmt);
      line("");
    }
    return out_.str();
  }

private:
  std::ostringstream out_;
  int indent_ = 0;

  void line(const std::string& s) {
    for (int i = 0; i < indent_; ++i) out_ << "    ";
    out_ << s << "\n";
  }

  // "int x", "int* p", "int a[10]" — arrays print as a suffix
  static std::string declString(const TypeRef& t, const std::string& name) {
    if (t->kind == TypeKind::Array)
      return printType(t->element) + " " + name + "[" +
             std::to_string(t->count) + "]";
    return printType(t) + " " + name;
  }

  static std::string signatureString(const TypeRef& ret, const std::string& name,
                                     const std::vector<ParamDecl>& params) {
    std::string s = printType(ret) + " " + name + "(";
    for (size_t i = 0; i < params.size(); ++i) {
      if (i) s += ", ";
      s += declString(params[i].type, params[i].name);
    }
    s += ")";
    return s;
  }

  void printRecord(const RecordDecl& r) {
    line("struct " + r.name + " {");
    ++indent_;
    for (const auto& f : r.fields) line(declString(f.type, f.name) + ";");
    --indent_;
    line("};");
    line("");
  }

  void printEnum(const EnumDecl& e) {
    line("enum " + e.name + " {");
    ++indent_;
    for (size_t i = 0; i < e.enumerators.size(); ++i) {
      const auto& [name, value] = e.enumerators[i];
      std::string s = name + " = " + std::to_string(value);
      if (i + 1 < e.enumerators.size()) s += ",";
      line(s);
    }
    --indent_;
    line("};");
    line("");
  }

  void printBlockBody(const Stmt& block) {
    line("{");
    ++indent_;
    for (const auto& st : block.body) printStmt(*st);
    --indent_;
    line("}");
  }

  void printStmt(const Stmt& s) {
    switch (s.kind) {
    case StmtKind::Block:
      printBlockBody(s);
      return;
    case StmtKind::Decl: {
      std::string text = declString(s.declType, s.declName);
      if (s.init) text += " = " + printExpr(*s.init);
      line(text + ";");
      return;
    }
    case StmtKind::Assign:
      line(printExpr(*s.lhs) + " = " + printExpr(*s.rhs) + ";");
      return;
    case StmtKind::If:
      line("if (" + printExpr(*s.cond) + ")");
      printNested(*s.thenStmt);
      if (s.elseStmt) {
        line("else");
        printNested(*s.elseStmt);
      }
      return;
    case StmtKind::While:
      line("while (" + printExpr(*s.cond) + ")");
      printNested(*s.thenStmt);
      return;
    case StmtKind::For: {
      std::string head = "for (";
      if (s.forInit) head += inlineStmt(*s.forInit);
      head += ";";
      if (s.cond) head += " " + printExpr(*s.cond);
      head += ";";
      if (s.forStep) head += " " + inlineStmt(*s.forStep);
      head += ")";
      line(head);
      printNested(*s.thenStmt);
      return;
    }
    case StmtKind::Switch:
      line("switch (" + printExpr(*s.cond) + ") {");
      for (const auto& c : s.cases) {
        if (c.isDefault)
          line("default:");
        else if (!c.labelName.empty())
          line("case " + c.labelName + ":");
        else
          line("case " + std::to_string(c.value) + ":");
        ++indent_;
        for (const auto& st : c.body) printStmt(*st);
        --indent_;
      }
      line("}");
      return;
    case StmtKind::Return:
      line(s.cond ? "return " + printExpr(*s.cond) + ";" : "return;");
      return;
    case StmtKind::ExprStmt:
      line(printExpr(*s.expr) + ";");
      return;
    }
  }

  void printNested(const Stmt& s) {
    if (s.kind == StmtKind::Block) {
      printBlockBody(s);
    } else {
      ++indent_;
      printStmt(s);
      --indent_;
    }
  }

  // single-line form, no trailing ';' (for-init / for-step)
  static std::string inlineStmt(const Stmt& s) {
    switch (s.kind) {
    case StmtKind::Decl: {
      std::string text = declString(s.declType, s.declName);
      if (s.init) text += " = " + printExpr(*s.init);
      return text;
    }
    case StmtKind::Assign:
      return printExpr(*s.lhs) + " = " + printExpr(*s.rhs);
    case StmtKind::ExprStmt:
      return printExpr(*s.expr);
    default:
      return "";
    }
  }
};

} // namespace

std::string printType(const TypeRef& t) {
  switch (t->kind) {
  case TypeKind::Int: {
    std::string base = t->width == 8    ? "char"
                       : t->width == 16 ? "short"
                                        : "int";
    return t->isSigned ? base : "unsigned " + base;
  }
  case TypeKind::Pointer:
    return printType(t->element) + "*";
  case TypeKind::Array:
    // array types in cast/abstract positions never occur; spell element
    return printType(t->element) + "*";
  case TypeKind::Record:
    return "struct " + t->name;
  case TypeKind::Enum:
    return "enum " + t->name;
  case TypeKind::VoidPointer:
    return "void*";
  case TypeKind::Void:
    return "void";
  }
  return "?";
}

std::string printExpr(const Expr& e) {
  switch (e.kind) {
  case ExprKind::IntLit:
    return std::to_string(e.intValue);
  case ExprKind::Var:
    return e.name;
  case ExprKind::Unary: {
    const char* op = e.uop == UnaryOp::Not ? "!" : e.uop == UnaryOp::Neg ? "-" : "~";
    return std::string(op) + "(" + printExpr(*e.a) + ")";
  }
  case ExprKind::Binary:
    return "(" + printExpr(*e.a) + " " + binOpText(e.bop) + " " +
           printExpr(*e.b) + ")";
  case ExprKind::Call: {
    std::string s = e.name + "(";
    for (size_t i = 0; i < e.args.size(); ++i) {
      if (i) s += ", ";
      s += printExpr(*e.args[i]);
    }
    return s + ")";
  }
  case ExprKind::Index:
    return printExpr(*e.a) + "[" + printExpr(*e.b) + "]";
  case ExprKind::Field:
    return "(" + printExpr(*e.a) + ")" + (e.arrow ? "->" : ".") + e.name;
  case ExprKind::Deref:
    return "*(" + printExpr(*e.a) + ")";
  case ExprKind::AddrOf:
    return "&(" + printExpr(*e.a) + ")";
  case ExprKind::Cast:
    return "(" + printType(e.castType) + ")(" + printExpr(*e.a) + ")";
  }
  return "?";
}

std::string prettyPrint(const Program& program) { return Printer().run(program); }

} // namespace smartgen
