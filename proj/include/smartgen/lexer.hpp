//===-- lexer.hpp - tokenizer for the subject language --------------------===//
#pragma once

#include "smartgen/diag.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace smartgen {

enum class Tok {
  End,
  Ident,
  Number,
  // punctuation
  LParen, RParen, LBrace, RBrace, LBracket, RBracket,
  Semi, Comma, Colon,
  // operators
  Plus, Minus, Star, Slash, Percent,
  Lt, Le, Gt, Ge, EqEq, NotEq,
  AmpAmp, PipePipe, Bang,
  Amp, Pipe, Tilde, Shl, Shr,
  Assign, Arrow, Dot,
  // keywords
  KwInt, KwChar, KwShort, KwUnsigned, KwVoid,
  KwStruct, KwEnum, KwExtern,
  KwIf, KwElse, KwWhile, KwFor, KwSwitch, KwCase, KwDefault, KwBreak,
  KwReturn,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  uint64_t number = 0;
  SrcLoc loc;
};

// Tokenizes the whole input up front. // and /* */ comments are skipped.
std::vector<Token> lex(const std::string& source);

const char* tokenName(Tok t);

} // namespace smartgen
