//===-- parser.cpp ----------------------------------------------------------===//

#include "smartgen/parser.hpp"

#include "smartgen/lexer.hpp"
#include "smartgen/typecheck.hpp"

#include <set>

namespace smartgen {

namespace {

bool reservedUnsupported(const std::string& name) {
  static const std::set<std::string> words = {
      "union",  "typedef", "goto",   "do",     "continue", "float",
      "double", "long",    "sizeof", "static", "const",    "volatile",
      "signed", "register", "NULL",
  };
  return words.count(name) > 0;
}

class Parser {
public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Program run() {
    Program program;
    while (!at(Tok::End)) {
      if (at(Tok::KwStruct) && peek(1).kind == Tok::Ident &&
          peek(2).kind == Tok::LBrace) {
        program.records.push_back(parseRecordDecl());
        continue;
      }
      if (at(Tok::KwEnum) && peek(1).kind == Tok::Ident &&
          peek(2).kind == Tok::LBrace) {
        program.enums.push_back(parseEnumDecl());
        continue;
      }
      parseTopLevelObject(program);
    }
    return program;
  }

private:
  std::vector<Token> toks_;
  size_t pos_ = 0;

  const Token& peek(size_t k = 0) const {
    size_t i = pos_ + k;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& cur() const { return peek(0); }
  bool at(Tok t) const { return cur().kind == t; }
  Token take() { return toks_[pos_++]; }
  Token expect(Tok t, const char* what) {
    if (!at(t))
      syntaxError(std::string("expected ") + what + ", found " +
                      tokenName(cur().kind),
                  cur().loc);
    return take();
  }
  bool accept(Tok t) {
    if (at(t)) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool atTypeStart() const {
    switch (cur().kind) {
    case Tok::KwInt:
    case Tok::KwChar:
    case Tok::KwShort:
    case Tok::KwUnsigned:
    case Tok::KwVoid:
    case Tok::KwStruct:
    case Tok::KwEnum:
      return true;
    default:
      return false;
    }
  }

  // type := base-type '*'*          (arrays attach to declarators)
  TypeRef parseType() {
    SrcLoc loc = cur().loc;
    TypeRef base;
    if (accept(Tok::KwUnsigned)) {
      if (accept(Tok::KwChar))
        base = types::uint8();
      else if (accept(Tok::KwShort))
        base = types::uint16();
      else {
        accept(Tok::KwInt); // plain "unsigned" means unsigned int
        base = types::uint32();
      }
    } else if (accept(Tok::KwChar)) {
      base = types::int8();
    } else if (accept(Tok::KwShort)) {
      base = types::int16();
    } else if (accept(Tok::KwInt)) {
      base = types::int32();
    } else if (accept(Tok::KwVoid)) {
      base = types::voidType();
    } else if (accept(Tok::KwStruct)) {
      Token name = expect(Tok::Ident, "struct name");
      base = types::record(name.text);
    } else if (accept(Tok::KwEnum)) {
      Token name = expect(Tok::Ident, "enum name");
      base = types::enumType(name.text);
    } else {
      if (at(Tok::Ident) && reservedUnsupported(cur().text))
        unsupported("'" + cur().text + "' is not part of the subject language",
                    cur().loc);
      syntaxError("expected a type", loc);
    }
    while (accept(Tok::Star)) {
      if (base->kind == TypeKind::Void)
        base = types::voidPointer();
      else
        base = types::pointerTo(base);
    }
    if (base->kind == TypeKind::Void && !at(Tok::Ident) && !at(Tok::RParen))
      syntaxError("void is only valid as a return type or void*", loc);
    return base;
  }

  RecordDecl parseRecordDecl() {
    RecordDecl rec;
    rec.loc = cur().loc;
    expect(Tok::KwStruct, "'struct'");
    rec.name = expect(Tok::Ident, "struct name").text;
    expect(Tok::LBrace, "'{'");
    while (!at(Tok::RBrace)) {
      RecordField field;
      field.loc = cur().loc;
      field.type = parseType();
      field.name = expect(Tok::Ident, "field name").text;
      if (accept(Tok::LBracket)) {
        Token n = expect(Tok::Number, "array size");
        if (n.number == 0) syntaxError("array size must be positive", n.loc);
        expect(Tok::RBracket, "']'");
        field.type = types::arrayOf(field.type, static_cast<uint32_t>(n.number));
      }
      expect(Tok::Semi, "';'");
      rec.fields.push_back(std::move(field));
    }
    expect(Tok::RBrace, "'}'");
    expect(Tok::Semi, "';'");
    return rec;
  }

  EnumDecl parseEnumDecl() {
    EnumDecl en;
    en.loc = cur().loc;
    expect(Tok::KwEnum, "'enum'");
    en.name = expect(Tok::Ident, "enum name").text;
    expect(Tok::LBrace, "'{'");
    int64_t next = 0;
    while (!at(Tok::RBrace)) {
      Token name = expect(Tok::Ident, "enumerator name");
      int64_t value = next;
      if (accept(Tok::Assign)) {
        bool neg = accept(Tok::Minus);
        Token n = expect(Tok::Number, "enumerator value");
        value = static_cast<int64_t>(n.number);
        if (neg) value = -value;
      }
      en.enumerators.emplace_back(name.text, value);
      next = value + 1;
      if (!accept(Tok::Comma)) break;
    }
    expect(Tok::RBrace, "'}'");
    expect(Tok::Semi, "';'");
    return en;
  }

  // Global variable, function definition, or external declaration.
  void parseTopLevelObject(Program& program) {
    bool isExtern = accept(Tok::KwExtern);
    if (!atTypeStart()) {
      if (at(Tok::Ident) && reservedUnsupported(cur().text))
        unsupported("'" + cur().text + "' is not part of the subject language",
                    cur().loc);
      syntaxError("expected a declaration", cur().loc);
    }
    SrcLoc loc = cur().loc;
    TypeRef type = parseType();
    Token name = expect(Tok::Ident, "name");

    if (at(Tok::LParen)) {
      take();
      std::vector<ParamDecl> params = parseParams();
      expect(Tok::RParen, "')'");
      if (at(Tok::LBrace)) {
        if (isExtern)
          syntaxError("extern function cannot have a body", loc);
        FunctionDef fn;
        fn.loc = loc;
        fn.name = name.text;
        fn.returnType = type;
        fn.params = std::move(params);
        fn.bodyStmt = parseBlock();
        program.functions.push_back(std::move(fn));
      } else {
        expect(Tok::Semi, "';'");
        FunctionDecl fn;
        fn.loc = loc;
        fn.name = name.text;
        fn.returnType = type;
        fn.params = std::move(params);
        program.externals.push_back(std::move(fn));
      }
      return;
    }

    // Global variable. Initializers are not allowed: globals are test inputs.
    if (type->kind == TypeKind::Void)
      syntaxError("variable cannot have void type", loc);
    VarDecl g;
    g.loc = loc;
    g.name = name.text;
    g.type = type;
    if (accept(Tok::LBracket)) {
      Token n = expect(Tok::Number, "array size");
      if (n.number == 0) syntaxError("array size must be positive", n.loc);
      expect(Tok::RBracket, "']'");
      g.type = types::arrayOf(g.type, static_cast<uint32_t>(n.number));
    }
    if (at(Tok::Assign))
      unsupported("global initializers are not supported; globals are "
                  "symbolic test inputs",
                  cur().loc);
    expect(Tok::Semi, "';'");
    program.globals.push_back(std::move(g));
  }

  std::vector<ParamDecl> parseParams() {
    std::vector<ParamDecl> params;
    if (at(Tok::RParen)) return params;
    if (at(Tok::KwVoid) && peek(1).kind == Tok::RParen) {
      take();
      return params;
    }
    while (true) {
      ParamDecl p;
      p.loc = cur().loc;
      p.type = parseType();
      p.name = expect(Tok::Ident, "parameter name").text;
      if (accept(Tok::LBracket)) {
        Token n = expect(Tok::Number, "array size");
        if (n.number == 0) syntaxError("array size must be positive", n.loc);
        expect(Tok::RBracket, "']'");
        p.type = types::arrayOf(p.type, static_cast<uint32_t>(n.number));
      }
      params.push_back(std::move(p));
      if (!accept(Tok::Comma)) break;
    }
    return params;
  }

  //===--------------------------------------------------------------------===//
  // Statements
  //===--------------------------------------------------------------------===//

  StmtPtr parseBlock() {
    auto block = std::make_unique<Stmt>();
    block->kind = StmtKind::Block;
    block->loc = cur().loc;
    expect(Tok::LBrace, "'{'");
    while (!at(Tok::RBrace)) block->body.push_back(parseStatement());
    expect(Tok::RBrace, "'}'");
    return block;
  }

  StmtPtr parseStatement() {
    switch (cur().kind) {
    case Tok::LBrace:
      return parseBlock();
    case Tok::KwIf:
      return parseIf();
    case Tok::KwWhile:
      return parseWhile();
    case Tok::KwFor:
      return parseFor();
    case Tok::KwSwitch:
      return parseSwitch();
    case Tok::KwReturn: {
      auto st = std::make_unique<Stmt>();
      st->kind = StmtKind::Return;
      st->loc = take().loc;
      if (!at(Tok::Semi)) st->cond = parseExpr();
      expect(Tok::Semi, "';'");
      return st;
    }
    case Tok::KwBreak:
      unsupported("'break' is not supported; switch cases do not fall through",
                  cur().loc);
    default:
      break;
    }
    if (atTypeStart()) return parseDecl();
    if (at(Tok::Ident) && reservedUnsupported(cur().text))
      unsupported("'" + cur().text + "' is not part of the subject language",
                  cur().loc);
    return parseExprOrAssign();
  }

  StmtPtr parseDecl() {
    auto st = std::make_unique<Stmt>();
    st->kind = StmtKind::Decl;
    st->loc = cur().loc;
    st->declType = parseType();
    if (st->declType->kind == TypeKind::Void)
      syntaxError("variable cannot have void type", st->loc);
    st->declName = expect(Tok::Ident, "variable name").text;
    if (accept(Tok::LBracket)) {
      Token n = expect(Tok::Number, "array size");
      if (n.number == 0) syntaxError("array size must be positive", n.loc);
      expect(Tok::RBracket, "']'");
      st->declType = types::arrayOf(st->declType, static_cast<uint32_t>(n.number));
    }
    if (accept(Tok::Assign)) st->init = parseExpr();
    expect(Tok::Semi, "';'");
    return st;
  }

  StmtPtr parseExprOrAssign() {
    SrcLoc loc = cur().loc;
    ExprPtr e = parseExpr();
    if (accept(Tok::Assign)) {
      auto st = std::make_unique<Stmt>();
      st->kind = StmtKind::Assign;
      st->loc = loc;
      st->lhs = std::move(e);
      st->rhs = parseExpr();
      expect(Tok::Semi, "';'");
      return st;
    }
    if (e->kind != ExprKind::Call)
      syntaxError("expression statement must be a call or assignment", loc);
    auto st = std::make_unique<Stmt>();
    st->kind = StmtKind::ExprStmt;
    st->loc = loc;
    st->expr = std::move(e);
    expect(Tok::Semi, "';'");
    return st;
  }

  StmtPtr parseIf() {
    auto st = std::make_unique<Stmt>();
    st->kind = StmtKind::If;
    st->loc = take().loc; // if
    expect(Tok::LParen, "'('");
    st->cond = parseExpr();
    expect(Tok::RParen, "')'");
    st->thenStmt = parseStatement();
    if (accept(Tok::KwElse)) st->elseStmt = parseStatement();
    return st;
  }

  StmtPtr parseWhile() {
    auto st = std::make_unique<Stmt>();
    st->kind = StmtKind::While;
    st->loc = take().loc;
    expect(Tok::LParen, "'('");
    st->cond = parseExpr();
    expect(Tok::RParen, "')'");
    st->thenStmt = parseStatement();
    return st;
  }

  StmtPtr parseFor() {
    auto st = std::make_unique<Stmt>();
    st->kind = StmtKind::For;
    st->loc = take().loc;
    expect(Tok::LParen, "'('");
    if (!at(Tok::Semi)) {
      if (atTypeStart())
        st->forInit = parseDecl(); // consumes ';'
      else
        st->forInit = parseExprOrAssign(); // consumes ';'
    } else {
      take();
    }
    if (!at(Tok::Semi)) st->cond = parseExpr();
    expect(Tok::Semi, "';'");
    if (!at(Tok::RParen)) {
      SrcLoc loc = cur().loc;
      ExprPtr e = parseExpr();
      auto step = std::make_unique<Stmt>();
      step->loc = loc;
      if (accept(Tok::Assign)) {
        step->kind = StmtKind::Assign;
        step->lhs = std::move(e);
        step->rhs = parseExpr();
      } else if (e->kind == ExprKind::Call) {
        step->kind = StmtKind::ExprStmt;
        step->expr = std::move(e);
      } else {
        syntaxError("for-step must be an assignment or a call", loc);
      }
      st->forStep = std::move(step);
    }
    expect(Tok::RParen, "')'");
    st->thenStmt = parseStatement();
    return st;
  }

  StmtPtr parseSwitch() {
    auto st = std::make_unique<Stmt>();
    st->kind = StmtKind::Switch;
    st->loc = take().loc;
    expect(Tok::LParen, "'('");
    st->cond = parseExpr();
    expect(Tok::RParen, "')'");
    expect(Tok::LBrace, "'{'");
    bool sawDefault = false;
    while (!at(Tok::RBrace)) {
      SwitchCase sc;
      sc.loc = cur().loc;
      if (accept(Tok::KwDefault)) {
        if (sawDefault) syntaxError("duplicate default case", sc.loc);
        sawDefault = true;
        sc.isDefault = true;
        expect(Tok::Colon, "':'");
      } else {
        expect(Tok::KwCase, "'case' or 'default'");
        bool neg = accept(Tok::Minus);
        if (at(Tok::Number)) {
          Token n = take();
          sc.value = static_cast<int64_t>(n.number);
          if (neg) sc.value = -sc.value;
        } else if (at(Tok::Ident) && !neg) {
          // enum constant label; resolved during type checking
          Token id = take();
          sc.value = 0;
          sc.labelName = id.text;
        } else {
          syntaxError("case label must be an integer or enum constant",
                      cur().loc);
        }
        expect(Tok::Colon, "':'");
      }
      while (!at(Tok::KwCase) && !at(Tok::KwDefault) && !at(Tok::RBrace))
        sc.body.push_back(parseStatement());
      st->cases.push_back(std::move(sc));
    }
    expect(Tok::RBrace, "'}'");
    if (st->cases.empty())
      syntaxError("switch must have at least one case", st->loc);
    return st;
  }

  //===--------------------------------------------------------------------===//
  // Expressions (precedence climbing)
  //===--------------------------------------------------------------------===//

  ExprPtr parseExpr() { return parseLogOr(); }

  ExprPtr makeBinary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SrcLoc loc) {
    auto e = std::make_unique<Expr>();
    e->kind = ExprKind::Binary;
    e->loc = loc;
    e->bop = op;
    e->a = std::move(lhs);
    e->b = std::move(rhs);
    return e;
  }

  ExprPtr parseLogOr() {
    ExprPtr lhs = parseLogAnd();
    while (at(Tok::PipePipe)) {
      SrcLoc loc = take().loc;
      lhs = makeBinary(BinaryOp::LogOr, std::move(lhs), parseLogAnd(), loc);
    }
    return lhs;
  }
  ExprPtr parseLogAnd() {
    ExprPtr lhs = parseBitOr();
    while (at(Tok::AmpAmp)) {
      SrcLoc loc = take().loc;
      lhs = makeBinary(BinaryOp::LogAnd, std::move(lhs), parseBitOr(), loc);
    }
    return lhs;
  }
  ExprPtr parseBitOr() {
    ExprPtr lhs = parseBitAnd();
    while (at(Tok::Pipe)) {
      SrcLoc loc = take().loc;
      lhs = makeBinary(BinaryOp::BitOr, std::move(lhs), parseBitAnd(), loc);
    }
    return lhs;
  }
  ExprPtr parseBitAnd() {
    ExprPtr lhs = parseEquality();
    while (at(Tok::Amp)) {
      SrcLoc loc = take().loc;
      lhs = makeBinary(BinaryOp::BitAnd, std::move(lhs), parseEquality(), loc);
    }
    return lhs;
  }
  ExprPtr parseEquality() {
    ExprPtr lhs = parseRelational();
    while (at(Tok::EqEq) || at(Tok::NotEq)) {
      BinaryOp op = at(Tok::EqEq) ? BinaryOp::Eq : BinaryOp::Ne;
      SrcLoc loc = take().loc;
      lhs = makeBinary(op, std::move(lhs), parseRelational(), loc);
    }
    return lhs;
  }
  ExprPtr parseRelational() {
    ExprPtr lhs = parseShift();
    while (at(Tok::Lt) || at(Tok::Le) || at(Tok::Gt) || at(Tok::Ge)) {
      BinaryOp op = at(Tok::Lt)   ? BinaryOp::Lt
                    : at(Tok::Le) ? BinaryOp::Le
                    : at(Tok::Gt) ? BinaryOp::Gt
                                  : BinaryOp::Ge;
      SrcLoc loc = take().loc;
      lhs = makeBinary(op, std::move(lhs), parseShift(), loc);
    }
    return lhs;
  }
  ExprPtr parseShift() {
    ExprPtr lhs = parseAdditive();
    while (at(Tok::Shl) || at(Tok::Shr)) {
      BinaryOp op = at(Tok::Shl) ? BinaryOp::Shl : BinaryOp::Shr;
      SrcLoc loc = take().loc;
      lhs = makeBinary(op, std::move(lhs), parseAdditive(), loc);
    }
    return lhs;
  }
  ExprPtr parseAdditive() {
    ExprPtr lhs = parseMultiplicative();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      BinaryOp op = at(Tok::Plus) ? BinaryOp::Add : BinaryOp::Sub;
      SrcLoc loc = take().loc;
      lhs = makeBinary(op, std::move(lhs), parseMultiplicative(), loc);
    }
    return lhs;
  }
  ExprPtr parseMultiplicative() {
    ExprPtr lhs = parseUnary();
    while (at(Tok::Star) || at(Tok::Slash) || at(Tok::Percent)) {
      BinaryOp op = at(Tok::Star)    ? BinaryOp::Mul
                    : at(Tok::Slash) ? BinaryOp::Div
                                     : BinaryOp::Mod;
      SrcLoc loc = take().loc;
      lhs = makeBinary(op, std::move(lhs), parseUnary(), loc);
    }
    return lhs;
  }

  ExprPtr parseUnary() {
    SrcLoc loc = cur().loc;
    if (accept(Tok::Bang)) {
      auto e = std::make_unique<Expr>();
      e->kind = ExprKind::Unary;
      e->loc = loc;
      e->uop = UnaryOp::Not;
      e->a = parseUnary();
      return e;
    }
    if (accept(Tok::Minus)) {
      auto e = std::make_unique<Expr>();
      e->kind = ExprKind::Unary;
      e->loc = loc;
      e->uop = UnaryOp::Neg;
      e->a = parseUnary();
      return e;
    }
    if (accept(Tok::Tilde)) {
      auto e = std::make_unique<Expr>();
      e->kind = ExprKind::Unary;
      e->loc = loc;
      e->uop = UnaryOp::BitNot;
      e->a = parseUnary();
      return e;
    }
    if (accept(Tok::Star)) {
      auto e = std::make_unique<Expr>();
      e->kind = ExprKind::Deref;
      e->loc = loc;
      e->a = parseUnary();
      return e;
    }
    if (accept(Tok::Amp)) {
      auto e = std::make_unique<Expr>();
      e->kind = ExprKind::AddrOf;
      e->loc = loc;
      e->a = parseUnary();
      return e;
    }
    // cast: '(' type ')' unary
    if (at(Tok::LParen)) {
      Tok next = peek(1).kind;
      if (next == Tok::KwInt || next == Tok::KwChar || next == Tok::KwShort ||
          next == Tok::KwUnsigned || next == Tok::KwVoid ||
          next == Tok::KwStruct || next == Tok::KwEnum) {
        take(); // (
        auto e = std::make_unique<Expr>();
        e->kind = ExprKind::Cast;
        e->loc = loc;
        e->castType = parseType();
        expect(Tok::RParen, "')'");
        e->a = parseUnary();
        return e;
      }
    }
    return parsePostfix();
  }

  ExprPtr parsePostfix() {
    ExprPtr e = parsePrimary();
    while (true) {
      SrcLoc loc = cur().loc;
      if (accept(Tok::LBracket)) {
        auto idx = std::make_unique<Expr>();
        idx->kind = ExprKind::Index;
        idx->loc = loc;
        idx->a = std::move(e);
        idx->b = parseExpr();
        expect(Tok::RBracket, "']'");
        e = std::move(idx);
      } else if (accept(Tok::Dot)) {
        auto fld = std::make_unique<Expr>();
        fld->kind = ExprKind::Field;
        fld->loc = loc;
        fld->a = std::move(e);
        fld->name = expect(Tok::Ident, "field name").text;
        e = std::move(fld);
      } else if (accept(Tok::Arrow)) {
        auto fld = std::make_unique<Expr>();
        fld->kind = ExprKind::Field;
        fld->loc = loc;
        fld->arrow = true;
        fld->a = std::move(e);
        fld->name = expect(Tok::Ident, "field name").text;
        e = std::move(fld);
      } else {
        return e;
      }
    }
  }

  ExprPtr parsePrimary() {
    SrcLoc loc = cur().loc;
    if (at(Tok::Number)) {
      Token n = take();
      auto e = std::make_unique<Expr>();
      e->kind = ExprKind::IntLit;
      e->loc = loc;
      e->intValue = n.number;
      return e;
    }
    if (at(Tok::Ident)) {
      Token id = take();
      if (reservedUnsupported(id.text))
        unsupported("'" + id.text + "' is not part of the subject language",
                    loc);
      if (at(Tok::LParen)) {
        take();
        auto call = std::make_unique<Expr>();
        call->kind = ExprKind::Call;
        call->loc = loc;
        call->name = id.text;
        if (!at(Tok::RParen)) {
          while (true) {
            call->args.push_back(parseExpr());
            if (!accept(Tok::Comma)) break;
          }
        }
        expect(Tok::RParen, "')'");
        return call;
      }
      auto e = std::make_unique<Expr>();
      e->kind = ExprKind::Var;
      e->loc = loc;
      e->name = id.text;
      return e;
    }
    if (accept(Tok::LParen)) {
      ExprPtr e = parseExpr();
      expect(Tok::RParen, "')'");
      return e;
    }
    syntaxError(std::string("expected an expression, found ") +
                    tokenName(cur().kind),
                loc);
  }
};

} // namespace

Program parseOnly(const std::string& source) {
  Parser parser(lex(source));
  return parser.run();
}

Program parseAndCheck(const std::string& source) {
  Program program = parseOnly(source);
  typecheck(program);
  layout(program);
  return program;
}

} // namespace smartgen
