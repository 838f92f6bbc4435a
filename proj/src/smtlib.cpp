//===-- smtlib.cpp --------------------------------------------------------------===//

#include "smartgen/smtlib.hpp"

#include <array>
#include <cassert>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <unistd.h>

namespace smartgen {

namespace {

std::string hexLiteral(uint32_t bits, int width) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "#x%0*x", width / 4, bits);
  return buf;
}

std::string smtSymbol(const std::string& name) {
  bool simple = !name.empty();
  for (char c : name)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) simple = false;
  if (simple && !std::isdigit(static_cast<unsigned char>(name[0]))) return name;
  return "|" + name + "|";
}

class Emitter {
public:
  // bitvector term for the node's value (total division semantics)
  std::string term(const SymRef& e) {
    int w = e->type.width;
    std::string zero = hexLiteral(0, w);
    std::string one = hexLiteral(1, w);
    switch (e->op) {
    case SymOp::Const:
      return hexLiteral(e->bits, w);
    case SymOp::Input:
      return smtSymbol(e->name);
    case SymOp::Add: return app("bvadd", e);
    case SymOp::Sub: return app("bvsub", e);
    case SymOp::Mul: return app("bvmul", e);
    case SymOp::Div: return app(e->a->type.isSigned ? "bvsdiv" : "bvudiv", e);
    case SymOp::Mod: return app(e->a->type.isSigned ? "bvsrem" : "bvurem", e);
    case SymOp::BitAnd: return app("bvand", e);
    case SymOp::BitOr: return app("bvor", e);
    case SymOp::Shl:
      return "(bvshl " + term(e->a) + " " + maskedAmount(e) + ")";
    case SymOp::Shr:
      return "(" + std::string(e->a->type.isSigned ? "bvashr" : "bvlshr") + " " +
             term(e->a) + " " + maskedAmount(e) + ")";
    case SymOp::Neg:
      return "(bvneg " + term(e->a) + ")";
    case SymOp::BitNot:
      return "(bvnot " + term(e->a) + ")";
    case SymOp::Lt:
    case SymOp::Le:
    case SymOp::Eq:
    case SymOp::Ne:
    case SymOp::LogAnd:
    case SymOp::LogOr:
    case SymOp::Not:
      return "(ite " + boolTerm(e) + " " + one + " " + zero + ")";
    case SymOp::Cast: {
      int from = e->a->type.width;
      std::string inner = term(e->a);
      if (from == w) return inner;
      if (from > w)
        return "((_ extract " + std::to_string(w - 1) + " 0) " + inner + ")";
      std::string ext = e->a->type.isSigned ? "sign_extend" : "zero_extend";
      return "((_ " + ext + " " + std::to_string(w - from) + ") " + inner + ")";
    }
    }
    assert(false);
    return zero;
  }

  // SMT boolean for the node's truthiness
  std::string boolTerm(const SymRef& e) {
    switch (e->op) {
    case SymOp::Lt:
      return cmp(e, e->a->type.isSigned ? "bvslt" : "bvult");
    case SymOp::Le:
      return cmp(e, e->a->type.isSigned ? "bvsle" : "bvule");
    case SymOp::Eq:
      return cmp(e, "=");
    case SymOp::Ne:
      return cmp(e, "distinct");
    case SymOp::LogAnd:
      return "(and " + boolTerm(e->a) + " " + boolTerm(e->b) + ")";
    case SymOp::LogOr:
      return "(or " + boolTerm(e->a) + " " + boolTerm(e->b) + ")";
    case SymOp::Not:
      return "(not " + boolTerm(e->a) + ")";
    default:
      return "(distinct " + term(e) + " " + hexLiteral(0, e->type.width) + ")";
    }
  }

  // Definedness of evaluation: no demanded division by zero. && / || absorb
  // an undefined side when the other side already decides the value.
  std::string definedTerm(const SymRef& e) {
    if (!containsDivision(e)) return "true";
    switch (e->op) {
    case SymOp::Div:
    case SymOp::Mod: {
      std::string zero = hexLiteral(0, e->b->type.width);
      return "(and " + definedTerm(e->a) + " " + definedTerm(e->b) +
             " (distinct " + term(e->b) + " " + zero + "))";
    }
    case SymOp::LogAnd: {
      std::string da = definedTerm(e->a), db = definedTerm(e->b);
      std::string fa = "(and " + da + " (not " + boolTerm(e->a) + "))";
      std::string fb = "(and " + db + " (not " + boolTerm(e->b) + "))";
      return "(or " + fa + " " + fb + " (and " + da + " " + db + "))";
    }
    case SymOp::LogOr: {
      std::string da = definedTerm(e->a), db = definedTerm(e->b);
      std::string ta = "(and " + da + " " + boolTerm(e->a) + ")";
      std::string tb = "(and " + db + " " + boolTerm(e->b) + ")";
      return "(or " + ta + " " + tb + " (and " + da + " " + db + "))";
    }
    default: {
      std::string out = "(and";
      bool any = false;
      if (e->a) {
        out += " " + definedTerm(e->a);
        any = true;
      }
      if (e->b) {
        out += " " + definedTerm(e->b);
        any = true;
      }
      out += ")";
      return any ? out : "true";
    }
    }
  }

private:
  std::string app(const char* op, const SymRef& e) {
    return "(" + std::string(op) + " " + term(e->a) + " " + term(e->b) + ")";
  }
  std::string cmp(const SymRef& e, const char* op) {
    return "(" + std::string(op) + " " + term(e->a) + " " + term(e->b) + ")";
  }
  std::string maskedAmount(const SymRef& e) {
    int w = e->type.width;
    return "(bvand " + term(e->b) + " " + hexLiteral(static_cast<uint32_t>(w - 1), w) + ")";
  }
  static bool containsDivision(const SymRef& e) {
    if (!e) return false;
    if (e->op == SymOp::Div || e->op == SymOp::Mod) return true;
    return containsDivision(e->a) || containsDivision(e->b);
  }
};

} // namespace

std::string emitSmtlib(const std::vector<SymRef>& conjuncts,
                       const DomainMap& domains) {
  std::ostringstream out;
  out << "(set-logic QF_BV)\n";

  std::map<std::string, VType> inputs;
  for (const auto& c : conjuncts) sym::collectInputs(c, inputs);

  for (const auto& [name, vt] : inputs)
    out << "(declare-fun " << smtSymbol(name) << " () (_ BitVec " << vt.width
        << "))\n";

  // domain restrictions beyond the full width range
  for (const auto& [name, vt] : inputs) {
    auto it = domains.find(name);
    if (it == domains.end()) continue;
    Domain full = fullDomain(vt);
    Domain d = it->second;
    const char* ge = vt.isSigned ? "bvsge" : "bvuge";
    const char* le = vt.isSigned ? "bvsle" : "bvule";
    if (d.lo > full.lo)
      out << "(assert (" << ge << " " << smtSymbol(name) << " "
          << hexLiteral(sym::maskToWidth(static_cast<uint64_t>(d.lo), vt.width),
                        vt.width)
          << "))\n";
    if (d.hi < full.hi)
      out << "(assert (" << le << " " << smtSymbol(name) << " "
          << hexLiteral(sym::maskToWidth(static_cast<uint64_t>(d.hi), vt.width),
                        vt.width)
          << "))\n";
  }

  Emitter emitter;
  if (conjuncts.empty()) out << "(assert true)\n";
  for (const auto& c : conjuncts) {
    std::string defined = emitter.definedTerm(c);
    std::string truthy = emitter.boolTerm(c);
    if (defined == "true")
      out << "(assert " << truthy << ")\n";
    else
      out << "(assert (and " << defined << " " << truthy << "))\n";
  }
  out << "(check-sat)\n(get-model)\n(exit)\n";
  return out.str();
}

//===----------------------------------------------------------------------===//
// s-expressions
//===----------------------------------------------------------------------===//

namespace {

struct Sexp {
  bool isAtom = false;
  std::string atom;
  std::vector<Sexp> items;
};

class SexpParser {
public:
  explicit SexpParser(const std::string& text) : text_(text) {}

  bool parseAll(std::vector<Sexp>& out, std::string& error) {
    skipWs();
    while (pos_ < text_.size()) {
      Sexp s;
      if (!parseOne(s, error)) return false;
      out.push_back(std::move(s));
      skipWs();
    }
    return true;
  }

private:
  const std::string& text_;
  size_t pos_ = 0;

  void skipWs() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool parseOne(Sexp& out, std::string& error) {
    skipWs();
    if (pos_ >= text_.size()) {
      error = "unexpected end of input";
      return false;
    }
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      out.isAtom = false;
      skipWs();
      while (pos_ < text_.size() && text_[pos_] != ')') {
        Sexp item;
        if (!parseOne(item, error)) return false;
        out.items.push_back(std::move(item));
        skipWs();
      }
      if (pos_ >= text_.size()) {
        error = "missing ')'";
        return false;
      }
      ++pos_;
      return true;
    }
    if (c == '|') {
      size_t end = text_.find('|', pos_ + 1);
      if (end == std::string::npos) {
        error = "unterminated |symbol|";
        return false;
      }
      out.isAtom = true;
      out.atom = text_.substr(pos_ + 1, end - pos_ - 1);
      pos_ = end + 1;
      return true;
    }
    size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')')
      ++pos_;
    out.isAtom = true;
    out.atom = text_.substr(start, pos_ - start);
    return true;
  }
};

bool parseBvLiteral(const Sexp& s, uint32_t* bits, int* width) {
  if (s.isAtom) {
    const std::string& a = s.atom;
    if (a.size() > 2 && a[0] == '#' && a[1] == 'x') {
      *width = static_cast<int>((a.size() - 2) * 4);
      *bits = static_cast<uint32_t>(std::stoull(a.substr(2), nullptr, 16));
      return true;
    }
    if (a.size() > 2 && a[0] == '#' && a[1] == 'b') {
      *width = static_cast<int>(a.size() - 2);
      *bits = static_cast<uint32_t>(std::stoull(a.substr(2), nullptr, 2));
      return true;
    }
    return false;
  }
  // (_ bvN W)
  if (s.items.size() == 3 && s.items[0].isAtom && s.items[0].atom == "_" &&
      s.items[1].isAtom && s.items[1].atom.rfind("bv", 0) == 0 &&
      s.items[2].isAtom) {
    *bits = static_cast<uint32_t>(std::stoull(s.items[1].atom.substr(2)));
    *width = std::stoi(s.items[2].atom);
    return true;
  }
  return false;
}

} // namespace

SolveResult parseSolverOutput(const std::string& text) {
  SolveResult out;
  std::istringstream lines(text);
  std::string verdictLine;
  // first non-empty line
  while (std::getline(lines, verdictLine)) {
    while (!verdictLine.empty() && std::isspace(static_cast<unsigned char>(verdictLine.back())))
      verdictLine.pop_back();
    if (!verdictLine.empty()) break;
  }
  std::string rest((std::istreambuf_iterator<char>(lines)),
                   std::istreambuf_iterator<char>());

  if (verdictLine == "unsat") {
    out.verdict = SolveResult::Verdict::Unsat;
    return out;
  }
  if (verdictLine == "unknown") {
    out.verdict = SolveResult::Verdict::Unknown;
    out.reason = "external";
    return out;
  }
  if (verdictLine != "sat") {
    out.verdict = SolveResult::Verdict::Unknown;
    out.reason = "external: unrecognized answer '" + verdictLine + "'";
    return out;
  }

  out.verdict = SolveResult::Verdict::Sat;
  std::vector<Sexp> sexps;
  std::string error;
  SexpParser parser(rest);
  if (!parser.parseAll(sexps, error)) return out; // sat with empty model

  // (model (define-fun x () (_ BitVec 32) #x...)...) or the list without
  // the leading "model" atom
  for (const auto& top : sexps) {
    if (top.isAtom) continue;
    size_t firstItem = 0;
    if (!top.items.empty() && top.items[0].isAtom && top.items[0].atom == "model")
      firstItem = 1;
    for (size_t i = firstItem; i < top.items.size(); ++i) {
      const Sexp& def = top.items[i];
      if (def.isAtom || def.items.size() < 5) continue;
      if (!def.items[0].isAtom || def.items[0].atom != "define-fun") continue;
      if (!def.items[1].isAtom) continue;
      uint32_t bits = 0;
      int width = 0;
      if (!parseBvLiteral(def.items[4], &bits, &width)) continue;
      out.model[def.items[1].atom] = bits;
    }
  }
  return out;
}

SolveResult solveViaExternalCommand(const std::string& command,
                                    const std::string& smtText) {
  SolveResult out;
  out.verdict = SolveResult::Verdict::Unknown;

  char pathTemplate[] = "/tmp/smartgen-query-XXXXXX";
  int fd = mkstemp(pathTemplate);
  if (fd < 0) {
    out.reason = "external: cannot create temp file";
    return out;
  }
  {
    std::ofstream file(pathTemplate);
    file << smtText;
  }
  close(fd);

  std::string cmd = command + " " + pathTemplate + " 2>/dev/null";
  std::string output;
  if (FILE* pipe = popen(cmd.c_str(), "r")) {
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
      output.append(buf.data(), n);
    int status = pclose(pipe);
    (void)status; // solvers exit nonzero on unsat in some configurations
  } else {
    std::remove(pathTemplate);
    out.reason = "external: cannot run '" + command + "'";
    return out;
  }
  std::remove(pathTemplate);
  return parseSolverOutput(output);
}

//===----------------------------------------------------------------------===//
// reading the emitted subset
//===----------------------------------------------------------------------===//

namespace {

class SubsetReader {
public:
  SubsetReader(ParsedSmtQuery& out, std::string& error) : out_(out), error_(error) {}

  bool top(const Sexp& s) {
    if (s.isAtom || s.items.empty() || !s.items[0].isAtom) return fail("bad form");
    const std::string& head = s.items[0].atom;
    if (head == "set-logic" || head == "set-info" || head == "exit" ||
        head == "check-sat")
      return true;
    if (head == "get-model") {
      out_.wantModel = true;
      return true;
    }
    if (head == "declare-fun") {
      if (s.items.size() != 4 || !s.items[1].isAtom) return fail("bad declare-fun");
      const Sexp& sort = s.items[3];
      if (sort.isAtom || sort.items.size() != 3 || sort.items[1].atom != "BitVec")
        return fail("only BitVec sorts supported");
      int width = std::stoi(sort.items[2].atom);
      // signedness is not part of the sort; signed operators re-type uses
      declared_[s.items[1].atom] = VType{width, true};
      return true;
    }
    if (head == "assert") {
      if (s.items.size() != 2) return fail("bad assert");
      SymRef cond = parseBool(s.items[1]);
      if (!cond) return false;
      out_.conjuncts.push_back(std::move(cond));
      return true;
    }
    return fail("unsupported command " + head);
  }

private:
  ParsedSmtQuery& out_;
  std::string& error_;
  std::map<std::string, VType> declared_;

  bool fail(const std::string& msg) {
    if (error_.empty()) error_ = msg;
    return false;
  }

  // boolean-valued expression -> int32 truthy SymRef
  SymRef parseBool(const Sexp& s) {
    if (s.isAtom) {
      if (s.atom == "true") return sym::constantBool(true);
      if (s.atom == "false") return sym::constantBool(false);
      fail("expected boolean, got " + s.atom);
      return nullptr;
    }
    if (s.items.empty() || !s.items[0].isAtom) {
      fail("bad boolean form");
      return nullptr;
    }
    const std::string& head = s.items[0].atom;
    auto binBool = [&](SymOp op, bool asSigned) -> SymRef {
      SymRef a = parseTerm(s.items[1], asSigned);
      SymRef b = parseTerm(s.items[2], asSigned);
      if (!a || !b) return nullptr;
      return sym::binop(op, a, b);
    };
    if (head == "and" || head == "or") {
      SymRef acc = parseBool(s.items[1]);
      if (!acc) return nullptr;
      for (size_t i = 2; i < s.items.size(); ++i) {
        SymRef next = parseBool(s.items[i]);
        if (!next) return nullptr;
        acc = head == "and" ? sym::logAnd(acc, next) : sym::logOr(acc, next);
      }
      return acc;
    }
    if (head == "not") return sym::logNot(parseBoolChecked(s.items[1]));
    if (head == "=") return binBool(SymOp::Eq, true);
    if (head == "distinct") return binBool(SymOp::Ne, true);
    if (head == "bvslt") return binBool(SymOp::Lt, true);
    if (head == "bvsle") return binBool(SymOp::Le, true);
    if (head == "bvult") return binBool(SymOp::Lt, false);
    if (head == "bvule") return binBool(SymOp::Le, false);
    if (head == "bvsge") {
      SymRef a = parseTerm(s.items[1], true), b = parseTerm(s.items[2], true);
      if (!a || !b) return nullptr;
      return sym::le(b, a);
    }
    if (head == "bvsgt") {
      SymRef a = parseTerm(s.items[1], true), b = parseTerm(s.items[2], true);
      if (!a || !b) return nullptr;
      return sym::lt(b, a);
    }
    if (head == "bvuge") {
      SymRef a = parseTerm(s.items[1], false), b = parseTerm(s.items[2], false);
      if (!a || !b) return nullptr;
      return sym::le(b, a);
    }
    if (head == "bvugt") {
      SymRef a = parseTerm(s.items[1], false), b = parseTerm(s.items[2], false);
      if (!a || !b) return nullptr;
      return sym::lt(b, a);
    }
    fail("unsupported boolean operator " + head);
    return nullptr;
  }

  SymRef parseBoolChecked(const Sexp& s) {
    SymRef r = parseBool(s);
    return r ? r : nullptr;
  }

  // bitvector term; `wantSigned` re-types inputs for signed operators
  SymRef parseTerm(const Sexp& s, bool wantSigned) {
    if (s.isAtom) {
      uint32_t bits = 0;
      int width = 0;
      Sexp lit;
      lit.isAtom = true;
      lit.atom = s.atom;
      if (parseBvLiteral(lit, &bits, &width))
        return sym::constant(bits, VType{width, wantSigned});
      auto it = declared_.find(s.atom);
      if (it == declared_.end()) {
        fail("undeclared symbol " + s.atom);
        return nullptr;
      }
      return sym::input(s.atom, VType{it->second.width, wantSigned});
    }
    if (s.items.empty()) {
      fail("bad term");
      return nullptr;
    }
    // (_ bvN W)
    {
      uint32_t bits = 0;
      int width = 0;
      if (parseBvLiteral(s, &bits, &width))
        return sym::constant(bits, VType{width, wantSigned});
    }
    // ((_ extract h 0) t) / ((_ sign_extend n) t) / ((_ zero_extend n) t)
    if (!s.items[0].isAtom && s.items.size() == 2 && !s.items[0].items.empty() &&
        s.items[0].items[0].isAtom && s.items[0].items[0].atom == "_") {
      const auto& spec = s.items[0].items;
      const std::string& op = spec[1].atom;
      if (op == "extract") {
        int hi = std::stoi(spec[2].atom);
        SymRef t = parseTerm(s.items[1], true);
        if (!t) return nullptr;
        return sym::cast(t, VType{hi + 1, wantSigned});
      }
      if (op == "sign_extend" || op == "zero_extend") {
        int n = std::stoi(spec[2].atom);
        SymRef t = parseTerm(s.items[1], op == "sign_extend");
        if (!t) return nullptr;
        return sym::cast(t, VType{t->type.width + n, wantSigned});
      }
      fail("unsupported indexed op " + op);
      return nullptr;
    }
    if (!s.items[0].isAtom) {
      fail("bad term head");
      return nullptr;
    }
    const std::string& head = s.items[0].atom;
    auto bin = [&](SymOp op, bool operandSigned) -> SymRef {
      SymRef a = parseTerm(s.items[1], operandSigned);
      SymRef b = parseTerm(s.items[2], operandSigned);
      if (!a || !b) return nullptr;
      return sym::binop(op, a, b);
    };
    if (head == "bvadd") return bin(SymOp::Add, wantSigned);
    if (head == "bvsub") return bin(SymOp::Sub, wantSigned);
    if (head == "bvmul") return bin(SymOp::Mul, wantSigned);
    if (head == "bvsdiv") return bin(SymOp::Div, true);
    if (head == "bvudiv") return bin(SymOp::Div, false);
    if (head == "bvsrem") return bin(SymOp::Mod, true);
    if (head == "bvurem") return bin(SymOp::Mod, false);
    if (head == "bvand") return bin(SymOp::BitAnd, false);
    if (head == "bvor") return bin(SymOp::BitOr, false);
    if (head == "bvshl") return bin(SymOp::Shl, wantSigned);
    if (head == "bvashr") return bin(SymOp::Shr, true);
    if (head == "bvlshr") return bin(SymOp::Shr, false);
    if (head == "bvneg") {
      SymRef a = parseTerm(s.items[1], true);
      return a ? sym::unop(SymOp::Neg, a) : nullptr;
    }
    if (head == "bvnot") {
      SymRef a = parseTerm(s.items[1], wantSigned);
      return a ? sym::unop(SymOp::BitNot, a) : nullptr;
    }
    if (head == "ite") {
      // only the emitted pattern (ite <bool> 1 0) is part of the subset
      SymRef cond = parseBool(s.items[1]);
      if (!cond) return nullptr;
      uint32_t oneBits = 0, zeroBits = 0;
      int w1 = 0, w0 = 0;
      if (!parseBvLiteral(s.items[2], &oneBits, &w1) ||
          !parseBvLiteral(s.items[3], &zeroBits, &w0) || oneBits != 1 ||
          zeroBits != 0 || w1 != w0) {
        fail("only (ite <bool> 1 0) is supported");
        return nullptr;
      }
      return sym::cast(cond, VType{w1, wantSigned});
    }
    fail("unsupported term operator " + head);
    return nullptr;
  }
};

} // namespace

bool parseSmtlibSubset(const std::string& text, ParsedSmtQuery& out,
                       std::string& error) {
  std::vector<Sexp> sexps;
  SexpParser parser(text);
  if (!parser.parseAll(sexps, error)) return false;
  SubsetReader reader(out, error);
  for (const auto& s : sexps)
    if (!reader.top(s)) return false;
  return true;
}

int runSmtSolveFile(const std::string& path, uint64_t budgetMs) {
  std::ifstream file(path);
  if (!file) {
    std::cerr << "cannot open " << path << "\n";
    return 2;
  }
  std::stringstream buf;
  buf << file.rdbuf();

  ParsedSmtQuery query;
  std::string error;
  if (!parseSmtlibSubset(buf.str(), query, error)) {
    std::cout << "unknown\n";
    std::cerr << "parse error: " << error << "\n";
    return 0;
  }

  Solver solver;
  SolveResult r = solver.solve(query.conjuncts, query.domains, budgetMs);
  switch (r.verdict) {
  case SolveResult::Verdict::Sat: {
    std::cout << "sat\n";
    if (query.wantModel) {
      std::map<std::string, VType> inputs;
      for (const auto& c : query.conjuncts) sym::collectInputs(c, inputs);
      std::cout << "(model\n";
      for (const auto& [name, bits] : r.model) {
        int width = inputs.count(name) ? inputs[name].width : 32;
        char buf2[16];
        std::snprintf(buf2, sizeof(buf2), "#x%0*x", width / 4, bits);
        std::cout << "  (define-fun " << smtSymbol(name) << " () (_ BitVec "
                  << width << ") " << buf2 << ")\n";
      }
      std::cout << ")\n";
    }
    return 0;
  }
  case SolveResult::Verdict::Unsat:
    std::cout << "unsat\n";
    return 0;
  case SolveResult::Verdict::Unknown:
    std::cout << "unknown\n";
    return 0;
  }
  return 0;
}

//===----------------------------------------------------------------------===//
// backend dispatch
//===----------------------------------------------------------------------===//

SolveResult ConstraintBackend::solve(const std::vector<SymRef>& conjuncts,
                                     const DomainMap& domains) const {
  ++solver_.solveCalls;
  if (externalCmd_.empty()) {
    Solver plain;
    SolveResult r = plain.solve(conjuncts, domains, budgetMs_);
    return r;
  }
  return solveViaExternalCommand(externalCmd_, emitSmtlib(conjuncts, domains));
}

Solver::BoundResult ConstraintBackend::bound(const std::vector<SymRef>& conjuncts,
                                             const DomainMap& domains,
                                             const std::string& symbol,
                                             bool maximize) const {
  Solver plain;
  if (externalCmd_.empty())
    return plain.bound(conjuncts, domains, symbol, maximize, budgetMs_);
  return plain.bound(conjuncts, domains, symbol, maximize, budgetMs_,
                     [this](const std::vector<SymRef>& c, const DomainMap& d,
                            uint64_t) { return this->solve(c, d); });
}

} // namespace smartgen
