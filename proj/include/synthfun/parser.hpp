#pragma once

#include <string>
#include <vector>

#include "synthfun/ast.hpp"
#include "synthfun/lexer.hpp"

namespace synth {

// Recursive-descent parser for the declaration language.
//
// Precedence, loosest to tightest:
//   lambda / if  <  comparison (= <)  <  cons (:)  <  + -  <  *
//   <  composition (.)  <  application (juxtaposition)  <  atom
//
// `a.b` is sugar for applying the `comp` combinator to a and b, so rendered
// programs parse back to the expressions they were printed from.
class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  SourceFile parse_file(const std::string& path) {
    SourceFile file;
    file.path = path;
    int goals = 0;
    while (!at_end()) {
      Decl d = parse_decl();
      if (d.kind == Decl::Kind::Goal) ++goals;
      file.declarations.push_back(std::move(d));
    }
    if (goals == 0) throw SynthError("missing Synthesize declaration", last_line());
    if (goals > 1) throw SynthError("multiple Synthesize declarations", last_line());
    return file;
  }

  // Single expression, for tests and the render round-trip.
  ExprPtr parse_expression() {
    ExprPtr e = parse_expr();
    expect_end();
    return e;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  bool at_end() const { return pos_ >= toks_.size(); }
  int line() const { return at_end() ? last_line() : toks_[pos_].line; }
  int last_line() const { return toks_.empty() ? 1 : toks_.back().line; }

  const Token& peek() const {
    if (at_end()) throw SynthError("unexpected end of input", last_line());
    return toks_[pos_];
  }
  bool check(Token::Kind k) const { return !at_end() && toks_[pos_].kind == k; }
  const Token& advance() {
    const Token& t = peek();
    ++pos_;
    return t;
  }
  const Token& expect(Token::Kind k) {
    if (!check(k))
      throw SynthError(std::string("expected ") + token_name(k) + ", found " +
                           (at_end() ? "end of input" : token_name(peek().kind)),
                       line());
    return advance();
  }
  void expect_end() {
    if (!at_end())
      throw SynthError(std::string("unexpected ") + token_name(peek().kind),
                       line());
  }

  Decl parse_decl() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::KwVal:
      case Token::Kind::KwRec: return parse_def(t.kind == Token::Kind::KwRec);
      case Token::Kind::KwPEx:
      case Token::Kind::KwNEx: return parse_example(t.kind == Token::Kind::KwPEx);
      case Token::Kind::KwSynthesize: return parse_goal();
      default:
        throw SynthError(std::string("expected a declaration, found ") +
                             token_name(t.kind),
                         t.line);
    }
  }

  Decl parse_def(bool rec) {
    Decl d;
    d.kind = rec ? Decl::Kind::Rec : Decl::Kind::Val;
    d.line = advance().line;
    d.name = expect(Token::Kind::Ident).text;
    if (check(Token::Kind::LParen)) {
      advance();
      d.params.push_back(expect(Token::Kind::Ident).text);
      while (check(Token::Kind::Comma)) {
        advance();
        d.params.push_back(expect(Token::Kind::Ident).text);
      }
      expect(Token::Kind::RParen);
      for (std::size_t i = 0; i < d.params.size(); ++i)
        for (std::size_t j = i + 1; j < d.params.size(); ++j)
          if (d.params[i] == d.params[j])
            throw SynthError("duplicate parameter '" + d.params[i] + "'", d.line);
    }
    expect(Token::Kind::Equals);
    ExprPtr body = parse_expr();
    d.body = d.params.empty() ? body : lambda(d.params, body);
    expect(Token::Kind::DoubleSemi);
    return d;
  }

  Decl parse_example(bool positive) {
    Decl d;
    d.kind = positive ? Decl::Kind::PosExample : Decl::Kind::NegExample;
    d.line = advance().line;
    d.in = parse_expr();
    expect(Token::Kind::FatArrow);
    d.out = parse_expr();
    expect(Token::Kind::DoubleSemi);
    check_ground(d.in, d.line);
    check_ground(d.out, d.line);
    return d;
  }

  Decl parse_goal() {
    Decl d;
    d.kind = Decl::Kind::Goal;
    d.line = advance().line;
    expect(Token::Kind::LParen);
    d.goal_in = parse_type();
    expect(Token::Kind::RParen);
    expect(Token::Kind::FatArrow);
    d.goal_out = parse_type();
    expect(Token::Kind::DoubleSemi);
    return d;
  }

  void check_ground(const ExprPtr& e, int line) {
    switch (e->kind) {
      case Expr::Kind::Lambda:
        throw SynthError("example values must be ground (no lambdas)", line);
      case Expr::Kind::Hole:
        throw SynthError("example values must be ground (no holes)", line);
      case Expr::Kind::Apply:
        check_ground(e->e1, line);
        check_ground(e->e2, line);
        break;
      case Expr::Kind::If:
        check_ground(e->e1, line);
        check_ground(e->e2, line);
        check_ground(e->e3, line);
        break;
      default: break;
    }
  }

  TypePtr parse_type() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::Ident: {
        advance();
        if (t.text == "Int") return tint();
        if (t.text == "Char") return tchar();
        if (t.text == "Bool") return tbool();
        throw SynthError("unknown type '" + t.text + "'", t.line);
      }
      case Token::Kind::LBracket: {
        advance();
        TypePtr inner = parse_type();
        expect(Token::Kind::RBracket);
        return tlist(inner);
      }
      case Token::Kind::LParen: {
        advance();
        TypePtr inner = parse_type();
        expect(Token::Kind::RParen);
        return inner;
      }
      default:
        throw SynthError(std::string("expected a type, found ") +
                             token_name(t.kind),
                         t.line);
    }
  }

  ExprPtr parse_expr() {
    if (check(Token::Kind::KwLambda)) {
      advance();
      expect(Token::Kind::LParen);
      std::vector<std::string> params;
      params.push_back(expect(Token::Kind::Ident).text);
      while (check(Token::Kind::Comma)) {
        advance();
        params.push_back(expect(Token::Kind::Ident).text);
      }
      expect(Token::Kind::RParen);
      return lambda(std::move(params), parse_expr());
    }
    if (check(Token::Kind::KwIf)) {
      advance();
      ExprPtr c = parse_expr();
      expect(Token::Kind::KwThen);
      ExprPtr t = parse_expr();
      expect(Token::Kind::KwElse);
      ExprPtr f = parse_expr();
      return if_expr(std::move(c), std::move(t), std::move(f));
    }
    return parse_cmp();
  }

  ExprPtr parse_cmp() {
    ExprPtr lhs = parse_cons();
    if (check(Token::Kind::Equals)) {
      advance();
      return apply(apply(var("="), std::move(lhs)), parse_cons());
    }
    if (check(Token::Kind::Less)) {
      advance();
      return apply(apply(var("<"), std::move(lhs)), parse_cons());
    }
    return lhs;
  }

  ExprPtr parse_cons() {
    ExprPtr head = parse_additive();
    if (check(Token::Kind::Colon)) {
      advance();
      return apply(apply(var(":"), std::move(head)), parse_cons());
    }
    return head;
  }

  ExprPtr parse_additive() {
    ExprPtr e = parse_multiplicative();
    while (check(Token::Kind::Plus) || check(Token::Kind::Minus)) {
      bool plus = advance().kind == Token::Kind::Plus;
      e = apply(apply(var(plus ? "+" : "-"), std::move(e)),
                parse_multiplicative());
    }
    return e;
  }

  ExprPtr parse_multiplicative() {
    ExprPtr e = parse_composition();
    while (check(Token::Kind::Star)) {
      advance();
      e = apply(apply(var("*"), std::move(e)), parse_composition());
    }
    return e;
  }

  ExprPtr parse_composition() {
    ExprPtr e = parse_application();
    if (check(Token::Kind::Dot)) {
      advance();
      return apply(apply(var("comp"), std::move(e)), parse_composition());
    }
    return e;
  }

  bool starts_atom() const {
    if (at_end()) return false;
    switch (peek().kind) {
      case Token::Kind::Int:
      case Token::Kind::CharLit:
      case Token::Kind::Ident:
      case Token::Kind::KwTrue:
      case Token::Kind::KwFalse:
      case Token::Kind::KwNil:
      case Token::Kind::LParen:
      case Token::Kind::LBracket: return true;
      default: return false;
    }
  }

  ExprPtr parse_application() {
    ExprPtr e = parse_atom();
    while (starts_atom()) e = apply(std::move(e), parse_atom());
    return e;
  }

  ExprPtr parse_atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::Int: advance(); return num_lit(t.num);
      case Token::Kind::CharLit: advance(); return char_lit(t.chr);
      case Token::Kind::KwTrue: advance(); return bool_lit(true);
      case Token::Kind::KwFalse: advance(); return bool_lit(false);
      case Token::Kind::KwNil: advance(); return var("nil");
      case Token::Kind::Ident: advance(); return var(t.text);
      case Token::Kind::LParen: {
        advance();
        ExprPtr e = parse_expr();
        expect(Token::Kind::RParen);
        return e;
      }
      case Token::Kind::LBracket: {
        advance();
        std::vector<ExprPtr> items;
        if (!check(Token::Kind::RBracket)) {
          items.push_back(parse_expr());
          while (check(Token::Kind::Comma)) {
            advance();
            items.push_back(parse_expr());
          }
        }
        expect(Token::Kind::RBracket);
        ExprPtr list = var("nil");
        for (auto it = items.rbegin(); it != items.rend(); ++it)
          list = apply(apply(var(":"), *it), std::move(list));
        return list;
      }
      default:
        throw SynthError(std::string("expected an expression, found ") +
                             token_name(t.kind),
                         t.line);
    }
  }
};

inline SourceFile parse_source(const std::string& text, const std::string& path) {
  Parser p(tokenize(text));
  return p.parse_file(path);
}

inline ExprPtr parse_expr_text(const std::string& text) {
  Parser p(tokenize(text));
  return p.parse_expression();
}

}  // namespace synth
