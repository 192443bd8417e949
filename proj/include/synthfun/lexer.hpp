#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

namespace synth {

// User-facing error with a source line number.
class SynthError : public std::runtime_error {
 public:
  SynthError(const std::string& msg, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line_(line) {}
  explicit SynthError(const std::string& msg)
      : std::runtime_error(msg), line_(0) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct Token {
  enum class Kind {
    KwVal, KwRec, KwLambda, KwIf, KwThen, KwElse,
    KwPEx, KwNEx, KwSynthesize, KwTrue, KwFalse, KwNil,
    Ident, Int, CharLit,
    LParen, RParen, LBracket, RBracket, Comma,
    Colon, Equals, FatArrow, DoubleSemi,
    Plus, Minus, Star, Less, Dot,
    End
  };
  Kind kind;
  std::string text;
  long long num = 0;
  char chr = 0;
  int line = 1;
};

inline const char* token_name(Token::Kind k) {
  switch (k) {
    case Token::Kind::KwVal: return "'val'";
    case Token::Kind::KwRec: return "'rec'";
    case Token::Kind::KwLambda: return "'lambda'";
    case Token::Kind::KwIf: return "'if'";
    case Token::Kind::KwThen: return "'then'";
    case Token::Kind::KwElse: return "'else'";
    case Token::Kind::KwPEx: return "'PEx'";
    case Token::Kind::KwNEx: return "'NEx'";
    case Token::Kind::KwSynthesize: return "'Synthesize'";
    case Token::Kind::KwTrue: return "'true'";
    case Token::Kind::KwFalse: return "'false'";
    case Token::Kind::KwNil: return "'nil'";
    case Token::Kind::Ident: return "identifier";
    case Token::Kind::Int: return "integer";
    case Token::Kind::CharLit: return "character";
    case Token::Kind::LParen: return "'('";
    case Token::Kind::RParen: return "')'";
    case Token::Kind::LBracket: return "'['";
    case Token::Kind::RBracket: return "']'";
    case Token::Kind::Comma: return "','";
    case Token::Kind::Colon: return "':'";
    case Token::Kind::Equals: return "'='";
    case Token::Kind::FatArrow: return "'=>'";
    case Token::Kind::DoubleSemi: return "';;'";
    case Token::Kind::Plus: return "'+'";
    case Token::Kind::Minus: return "'-'";
    case Token::Kind::Star: return "'*'";
    case Token::Kind::Less: return "'<'";
    case Token::Kind::Dot: return "'.'";
    case Token::Kind::End: return "end of input";
  }
  return "?";
}

// Splits source text into tokens. `--` starts a comment to end of line.
inline std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  int line = 1;
  std::size_t i = 0;
  const std::size_t n = src.size();

  auto push = [&](Token::Kind k, std::string text = "") {
    Token t;
    t.kind = k;
    t.text = std::move(text);
    t.line = line;
    out.push_back(std::move(t));
  };

  while (i < n) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < n && src[i + 1] == '-') {
      while (i < n && src[i] != '\n') ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < n && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      Token t;
      t.kind = Token::Kind::Int;
      t.text = src.substr(i, j - i);
      t.num = std::stoll(t.text);
      t.line = line;
      out.push_back(std::move(t));
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < n && (std::isalnum(static_cast<unsigned char>(src[j])) ||
                       src[j] == '_'))
        ++j;
      std::string word = src.substr(i, j - i);
      Token::Kind k = Token::Kind::Ident;
      if (word == "val") k = Token::Kind::KwVal;
      else if (word == "rec") k = Token::Kind::KwRec;
      else if (word == "lambda") k = Token::Kind::KwLambda;
      else if (word == "if") k = Token::Kind::KwIf;
      else if (word == "then") k = Token::Kind::KwThen;
      else if (word == "else") k = Token::Kind::KwElse;
      else if (word == "PEx") k = Token::Kind::KwPEx;
      else if (word == "NEx") k = Token::Kind::KwNEx;
      else if (word == "Synthesize") k = Token::Kind::KwSynthesize;
      else if (word == "true") k = Token::Kind::KwTrue;
      else if (word == "false") k = Token::Kind::KwFalse;
      else if (word == "nil") k = Token::Kind::KwNil;
      push(k, word);
      i = j;
      continue;
    }
    if (c == '\'') {
      if (i + 2 >= n || src[i + 2] != '\'')
        throw SynthError("malformed character literal", line);
      Token t;
      t.kind = Token::Kind::CharLit;
      t.chr = src[i + 1];
      t.text = std::string(1, src[i + 1]);
      t.line = line;
      out.push_back(std::move(t));
      i += 3;
      continue;
    }
    switch (c) {
      case '(': push(Token::Kind::LParen); ++i; continue;
      case ')': push(Token::Kind::RParen); ++i; continue;
      case '[': push(Token::Kind::LBracket); ++i; continue;
      case ']': push(Token::Kind::RBracket); ++i; continue;
      case ',': push(Token::Kind::Comma); ++i; continue;
      case ':': push(Token::Kind::Colon); ++i; continue;
      case '+': push(Token::Kind::Plus); ++i; continue;
      case '-': push(Token::Kind::Minus); ++i; continue;
      case '*': push(Token::Kind::Star); ++i; continue;
      case '<': push(Token::Kind::Less); ++i; continue;
      case '.': push(Token::Kind::Dot); ++i; continue;
      case '=':
        if (i + 1 < n && src[i + 1] == '>') {
          push(Token::Kind::FatArrow);
          i += 2;
        } else {
          push(Token::Kind::Equals);
          ++i;
        }
        continue;
      case ';':
        if (i + 1 < n && src[i + 1] == ';') {
          push(Token::Kind::DoubleSemi);
          i += 2;
          continue;
        }
        throw SynthError("single ';' (declarations end with ';;')", line);
      default:
        throw SynthError(std::string("unknown character '") + c + "'", line);
    }
  }
  return out;
}

}  // namespace synth
