#pragma once

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "mallows/logic/formula.hpp"

namespace mallows::logic {

// Syntax error carrying the 0-based byte offset of the offending token.
class parse_error : public std::invalid_argument {
 public:
  parse_error(const std::string& what, std::size_t offset)
      : std::invalid_argument(what + " at offset " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

namespace detail {

enum class Tok {
  Ident, LParen, RParen, Comma, Dot, Eq, Lt1, Lt2,
  Tilde, Amp, Pipe, Arrow, DArrow, End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

inline std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const auto push = [&](Tok k, std::size_t at, std::string s = {}) {
    out.push_back({k, std::move(s), at});
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
        ++i;
      push(Tok::Ident, start, text.substr(start, i - start));
      continue;
    }
    switch (c) {
      case '(': push(Tok::LParen, i++); continue;
      case ')': push(Tok::RParen, i++); continue;
      case ',': push(Tok::Comma, i++); continue;
      case '.': push(Tok::Dot, i++); continue;
      case '=': push(Tok::Eq, i++); continue;
      case '~': push(Tok::Tilde, i++); continue;
      case '&': push(Tok::Amp, i++); continue;
      case '|': push(Tok::Pipe, i++); continue;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          push(Tok::Arrow, i);
          i += 2;
          continue;
        }
        throw parse_error("expected '->'", i);
      case '<':
        if (i + 1 < text.size() && text[i + 1] == '1') {
          push(Tok::Lt1, i);
          i += 2;
          continue;
        }
        if (i + 1 < text.size() && text[i + 1] == '2') {
          push(Tok::Lt2, i);
          i += 2;
          continue;
        }
        if (i + 2 < text.size() && text[i + 1] == '-' && text[i + 2] == '>') {
          push(Tok::DArrow, i);
          i += 3;
          continue;
        }
        throw parse_error("expected '<1', '<2' or '<->'", i);
      default:
        throw parse_error(std::string("unexpected character '") + c + "'", i);
    }
  }
  push(Tok::End, text.size());
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, Signature sig)
      : tokens_(std::move(tokens)), sig_(sig) {}

  FormulaPtr parse() {
    FormulaPtr f = formula();
    expect(Tok::End, "unexpected trailing input");
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token take() { return tokens_[pos_++]; }
  bool at(Tok k) const { return peek().kind == k; }
  void expect(Tok k, const char* what) {
    if (!at(k)) throw parse_error(what, peek().offset);
    ++pos_;
  }

  static bool is_keyword(const std::string& s) {
    return s == "exists" || s == "forall" || s == "R";
  }

  std::string variable() {
    if (!at(Tok::Ident)) throw parse_error("expected a variable", peek().offset);
    Token t = take();
    if (is_keyword(t.text))
      throw parse_error("'" + t.text + "' cannot be a variable", t.offset);
    return t.text;
  }

  // Grammar, loosest first: <-> (left), -> (right), | (left), & (left),
  // ~ / atoms / parens. Quantifiers are accepted at the unary level and
  // swallow everything to their right.
  FormulaPtr formula() { return iff_level(); }

  FormulaPtr iff_level() {
    FormulaPtr l = implies_level();
    while (at(Tok::DArrow)) {
      take();
      l = iff(l, implies_level());
    }
    return l;
  }

  FormulaPtr implies_level() {
    FormulaPtr l = or_level();
    if (at(Tok::Arrow)) {
      take();
      return implies(l, implies_level());
    }
    return l;
  }

  FormulaPtr or_level() {
    FormulaPtr l = and_level();
    while (at(Tok::Pipe)) {
      take();
      l = or_(l, and_level());
    }
    return l;
  }

  FormulaPtr and_level() {
    FormulaPtr l = unary();
    while (at(Tok::Amp)) {
      take();
      l = and_(l, unary());
    }
    return l;
  }

  FormulaPtr unary() {
    if (at(Tok::Tilde)) {
      take();
      return not_(unary());
    }
    if (at(Tok::LParen)) {
      take();
      FormulaPtr f = formula();
      expect(Tok::RParen, "expected ')'");
      return f;
    }
    if (at(Tok::Ident) && (peek().text == "exists" || peek().text == "forall")) {
      const bool ex = take().text == "exists";
      std::string v = variable();
      expect(Tok::Dot, "expected '.'");
      FormulaPtr body = formula();  // maximal right scope
      return ex ? exists(std::move(v), std::move(body))
                : forall(std::move(v), std::move(body));
    }
    return atom();
  }

  FormulaPtr atom() {
    if (!at(Tok::Ident)) throw parse_error("expected a formula", peek().offset);
    Token name = take();
    if (name.text == "R" || at(Tok::LParen)) {
      // Relation application syntax; only TOOB's R exists.
      if (name.text != "R" || sig_ != Signature::TOOB)
        throw parse_error("unknown relation '" + name.text + "' for signature",
                          name.offset);
      expect(Tok::LParen, "expected '('");
      std::string a = variable();
      expect(Tok::Comma, "expected ','");
      std::string b = variable();
      expect(Tok::RParen, "expected ')'");
      return rel_r(std::move(a), std::move(b));
    }
    if (is_keyword(name.text))
      throw parse_error("'" + name.text + "' cannot be a variable", name.offset);
    if (at(Tok::Eq)) {
      take();
      return eq(name.text, variable());
    }
    if (at(Tok::Lt1) || at(Tok::Lt2)) {
      const Token op = take();
      const bool one = op.kind == Tok::Lt1;
      if (sig_ != Signature::TOTO)
        throw parse_error(std::string("unknown relation '<") + (one ? "1" : "2") +
                              "' for signature",
                          op.offset);
      return one ? lt1(name.text, variable()) : lt2(name.text, variable());
    }
    throw parse_error("expected '=', '<1', '<2' or 'R(...)'", peek().offset);
  }

  std::vector<Token> tokens_;
  Signature sig_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline FormulaPtr parse(const std::string& text, Signature sig) {
  return detail::Parser(detail::lex(text), sig).parse();
}

}  // namespace mallows::logic
