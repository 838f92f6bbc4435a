//===-- lexer.cpp ----------------------------------------------------------===//

#include "smartgen/lexer.hpp"

#include <cctype>
#include <unordered_map>

namespace smartgen {

namespace {

const std::unordered_map<std::string, Tok>& keywordMap() {
  static const std::unordered_map<std::string, Tok> kw = {
      {"int", Tok::KwInt},         {"char", Tok::KwChar},
      {"short", Tok::KwShort},     {"unsigned", Tok::KwUnsigned},
      {"void", Tok::KwVoid},       {"struct", Tok::KwStruct},
      {"enum", Tok::KwEnum},       {"extern", Tok::KwExtern},
      {"if", Tok::KwIf},           {"else", Tok::KwElse},
      {"while", Tok::KwWhile},     {"for", Tok::KwFor},
      {"switch", Tok::KwSwitch},   {"case", Tok::KwCase},
      {"default", Tok::KwDefault}, {"break", Tok::KwBreak},
      {"return", Tok::KwReturn},
  };
  return kw;
}

} // namespace

std::vector<Token> lex(const std::string& source) {
  std::vector<Token> out;
  size_t i = 0;
  int line = 1, col = 1;

  auto peek = [&](size_t k = 0) -> char {
    return i + k < source.size() ? source[i + k] : '\0';
  };
  auto advance = [&]() {
    if (source[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  auto push = [&](Tok kind, SrcLoc loc, std::string text = {}, uint64_t num = 0) {
    Token t;
    t.kind = kind;
    t.loc = loc;
    t.text = std::move(text);
    t.number = num;
    out.push_back(std::move(t));
  };

  while (i < source.size()) {
    char c = peek();
    SrcLoc loc{line, col};

    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    if (c == '/' && peek(1) == '/') {
      while (i < source.size() && peek() != '\n') advance();
      continue;
    }
    if (c == '/' && peek(1) == '*') {
      advance();
      advance();
      while (i < source.size() && !(peek() == '*' && peek(1) == '/')) advance();
      if (i >= source.size()) syntaxError("unterminated comment", loc);
      advance();
      advance();
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string ident;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
        ident += peek();
        advance();
      }
      auto it = keywordMap().find(ident);
      if (it != keywordMap().end())
        push(it->second, loc, ident);
      else
        push(Tok::Ident, loc, ident);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      uint64_t value = 0;
      std::string text;
      if (c == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
        text = "0x";
        advance();
        advance();
        if (!std::isxdigit(static_cast<unsigned char>(peek())))
          syntaxError("expected hex digit", loc);
        while (std::isxdigit(static_cast<unsigned char>(peek()))) {
          char d = peek();
          value = value * 16 +
                  (std::isdigit(static_cast<unsigned char>(d))
                       ? static_cast<uint64_t>(d - '0')
                       : static_cast<uint64_t>(std::tolower(d) - 'a' + 10));
          text += d;
          advance();
        }
      } else {
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
          value = value * 10 + static_cast<uint64_t>(peek() - '0');
          text += peek();
          advance();
        }
      }
      if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')
        syntaxError("bad character in number", SrcLoc{line, col});
      push(Tok::Number, loc, text, value);
      continue;
    }

    auto two = [&](char second, Tok pair, Tok single) {
      advance();
      if (peek() == second) {
        advance();
        push(pair, loc);
      } else {
        push(single, loc);
      }
    };

    switch (c) {
    case '(': advance(); push(Tok::LParen, loc); break;
    case ')': advance(); push(Tok::RParen, loc); break;
    case '{': advance(); push(Tok::LBrace, loc); break;
    case '}': advance(); push(Tok::RBrace, loc); break;
    case '[': advance(); push(Tok::LBracket, loc); break;
    case ']': advance(); push(Tok::RBracket, loc); break;
    case ';': advance(); push(Tok::Semi, loc); break;
    case ',': advance(); push(Tok::Comma, loc); break;
    case ':': advance(); push(Tok::Colon, loc); break;
    case '+': advance(); push(Tok::Plus, loc); break;
    case '*': advance(); push(Tok::Star, loc); break;
    case '/': advance(); push(Tok::Slash, loc); break;
    case '%': advance(); push(Tok::Percent, loc); break;
    case '~': advance(); push(Tok::Tilde, loc); break;
    case '.': advance(); push(Tok::Dot, loc); break;
    case '-':
      advance();
      if (peek() == '>') {
        advance();
        push(Tok::Arrow, loc);
      } else {
        push(Tok::Minus, loc);
      }
      break;
    case '<':
      advance();
      if (peek() == '=') {
        advance();
        push(Tok::Le, loc);
      } else if (peek() == '<') {
        advance();
        push(Tok::Shl, loc);
      } else {
        push(Tok::Lt, loc);
      }
      break;
    case '>':
      advance();
      if (peek() == '=') {
        advance();
        push(Tok::Ge, loc);
      } else if (peek() == '>') {
        advance();
        push(Tok::Shr, loc);
      } else {
        push(Tok::Gt, loc);
      }
      break;
    case '=': two('=', Tok::EqEq, Tok::Assign); break;
    case '!': two('=', Tok::NotEq, Tok::Bang); break;
    case '&': two('&', Tok::AmpAmp, Tok::Amp); break;
    case '|': two('|', Tok::PipePipe, Tok::Pipe); break;
    default:
      syntaxError(std::string("unexpected character '") + c + "'", loc);
    }
  }

  Token end;
  end.kind = Tok::End;
  end.loc = SrcLoc{line, col};
  out.push_back(end);
  return out;
}

const char* tokenName(Tok t) {
  switch (t) {
  case Tok::End: return "end of input";
  case Tok::Ident: return "identifier";
  case Tok::Number: return "number";
  case Tok::LParen: return "'('";
  case Tok::RParen: return "')'";
  case Tok::LBrace: return "'{'";
  case Tok::RBrace: return "'}'";
  case Tok::LBracket: return "'['";
  case Tok::RBracket: return "']'";
  case Tok::Semi: return "';'";
  case Tok::Comma: return "','";
  case Tok::Colon: return "':'";
  case Tok::Plus: return "'+'";
  case Tok::Minus: return "'-'";
  case Tok::Star: return "'*'";
  case Tok::Slash: return "'/'";
  case Tok::Percent: return "'%'";
  case Tok::Lt: return "'<'";
  case Tok::Le: return "'<='";
  case Tok::Gt: return "'>'";
  case Tok::Ge: return "'>='";
  case Tok::EqEq: return "'=='";
  case Tok::NotEq: return "'!='";
  case Tok::AmpAmp: return "'&&'";
  case Tok::PipePipe: return "'||'";
  case Tok::Bang: return "'!'";
  case Tok::Amp: return "'&'";
  case Tok::Pipe: return "'|'";
  case Tok::Tilde: return "'~'";
  case Tok::Shl: return "'<<'";
  case Tok::Shr: return "'>>'";
  case Tok::Assign: return "'='";
  case Tok::Arrow: return "'->'";
  case Tok::Dot: return "'.'";
  case Tok::KwInt: return "'int'";
  case Tok::KwChar: return "'char'";
  case Tok::KwShort: return "'short'";
  case Tok::KwUnsigned: return "'unsigned'";
  case Tok::KwVoid: return "'void'";
  case Tok::KwStruct: return "'struct'";
  case Tok::KwEnum: return "'enum'";
  case Tok::KwExtern: return "'extern'";
  case Tok::KwIf: return "'if'";
  case Tok::KwElse: return "'else'";
  case Tok::KwWhile: return "'while'";
  case Tok::KwFor: return "'for'";
  case Tok::KwSwitch: return "'switch'";
  case Tok::KwCase: return "'case'";
  case Tok::KwDefault: return "'default'";
  case Tok::KwBreak: return "'break'";
  case Tok::KwReturn: return "'return'";
  }
  return "?";
}

} // namespace smartgen
