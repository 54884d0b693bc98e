// lexer.hpp - shared tokenizer for the surface languages
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "twoside/parser.hpp"

namespace twoside::detail {

enum class Tok { Ident, Upper, Number, Symbol, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

/// Symbols: -> ~> :: <= == => ^c and single characters ( ) , ; | : = + * { } [ ] .
/// Comments run from `--` to end of line.
std::vector<Token> tokenize(std::string_view src);

class TokenStream {
 public:
  explicit TokenStream(std::string_view src) : toks_(tokenize(src)) {}

  [[nodiscard]] const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  [[nodiscard]] bool at_end() const { return peek().kind == Tok::End; }
  [[nodiscard]] bool is(std::string_view sym) const {
    return (peek().kind == Tok::Symbol || peek().kind == Tok::Ident) && peek().text == sym;
  }
  bool accept(std::string_view sym) {
    if (!is(sym)) return false;
    next();
    return true;
  }
  void expect(std::string_view sym) {
    if (!accept(sym)) fail("expected '" + std::string(sym) + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + ", found " + found, t.line, t.column);
  }
  [[noreturn]] void fail_at(const Token& t, const std::string& msg) const {
    throw ParseError(msg, t.line, t.column);
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace twoside::detail
