#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "symctr/operator.hpp"

namespace symctr {

namespace detail {

enum class TokKind { Number, Ident, Deriv, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  TokKind kind;
  std::string text;
  std::size_t line = 1, column = 1;
  mpq_class number;             // Number
  std::vector<std::string> vars; // Deriv
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t{TokKind::End, "", line_, col_, 0, {}};
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        lex_number(t);
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          advance();
        t.text = std::string(src_.substr(start, pos_ - start));
        t.kind = TokKind::Ident;
        skip_space();
        if (t.text == "d" && pos_ < src_.size() && src_[pos_] == '[')
          lex_deriv(t);
      } else {
        t.text = std::string(1, c);
        switch (c) {
        case '+': t.kind = TokKind::Plus; break;
        case '-': t.kind = TokKind::Minus; break;
        case '*': t.kind = TokKind::Star; break;
        case '/': t.kind = TokKind::Slash; break;
        case '^': t.kind = TokKind::Caret; break;
        case '(': t.kind = TokKind::LParen; break;
        case ')': t.kind = TokKind::RParen; break;
        default: throw ParseError("unexpected character", line_, col_, t.text);
        }
        advance();
      }
      out.push_back(std::move(t));
    }
  }

private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      advance();
  }

  /// Integer or decimal literal; decimals are read exactly (0.25 = 1/4).
  void lex_number(Token &t) {
    std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
      advance();
    t.text = std::string(src_.substr(start, pos_ - start));
    t.kind = TokKind::Number;
    auto dot = t.text.find('.');
    std::string digits = t.text;
    std::size_t frac = 0;
    if (dot != std::string::npos) {
      frac = t.text.size() - dot - 1;
      digits.erase(dot, 1);
    }
    bool ok = !digits.empty() && std::all_of(digits.begin(), digits.end(), [](char ch) {
      return std::isdigit(static_cast<unsigned char>(ch));
    });
    if (!ok || (dot != std::string::npos && (frac == 0 || dot == 0)))
      throw ParseError("malformed number", t.line, t.column, t.text);
    mpz_class num(digits, 10), den = 1;
    for (std::size_t k = 0; k < frac; ++k)
      den *= 10;
    t.number = mpq_class(num, den);
    t.number.canonicalize();
  }

  void lex_deriv(Token &t) {
    advance(); // '['
    t.kind = TokKind::Deriv;
    while (true) {
      skip_space();
      std::size_t start = pos_;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        advance();
      if (start == pos_)
        throw ParseError("expected a variable name inside d[...]", line_, col_,
                         pos_ < src_.size() ? std::string(1, src_[pos_]) : "");
      t.vars.emplace_back(src_.substr(start, pos_ - start));
      skip_space();
      if (pos_ < src_.size() && src_[pos_] == ',') {
        advance();
        continue;
      }
      if (pos_ < src_.size() && src_[pos_] == ']') {
        advance();
        break;
      }
      throw ParseError("expected ',' or ']' in derivative token", line_, col_,
                       pos_ < src_.size() ? std::string(1, src_[pos_]) : "");
    }
    t.text = "d[...]";
  }

  std::string_view src_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

class Parser {
public:
  Parser(std::vector<Token> toks, const std::vector<std::string> &vars) : toks_(std::move(toks)), vars_(vars) {}

  DiffOperator parse() {
    DiffOperator r = sum();
    if (peek().kind != TokKind::End)
      fail("unexpected token", peek());
    return r;
  }

private:
  const Token &peek() const { return toks_[pos_]; }
  const Token &take() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string &what, const Token &t) const {
    throw ParseError(what, t.line, t.column, t.kind == TokKind::End ? "end of input" : t.text);
  }
  std::size_t dim() const { return vars_.size(); }

  std::size_t var_index(const Token &t) const {
    auto it = std::find(vars_.begin(), vars_.end(), t.text);
    if (it == vars_.end())
      fail("unknown variable '" + t.text + "'", t);
    return static_cast<std::size_t>(it - vars_.begin());
  }

  DiffOperator sum() {
    DiffOperator r = signed_term();
    while (peek().kind == TokKind::Plus || peek().kind == TokKind::Minus) {
      bool minus = take().kind == TokKind::Minus;
      DiffOperator t = signed_term();
      r = minus ? r - t : r + t;
    }
    return r;
  }

  DiffOperator signed_term() {
    if (peek().kind == TokKind::Minus) {
      take();
      return -signed_term();
    }
    if (peek().kind == TokKind::Plus) {
      take();
      return signed_term();
    }
    return product();
  }

  static bool is_coefficient(const DiffOperator &op) { return op.order() <= 0; }
  bool is_variable(const Token &t) const {
    return t.kind == TokKind::Ident && std::find(vars_.begin(), vars_.end(), t.text) != vars_.end();
  }
  Coefficient as_coefficient(const DiffOperator &op) const { return op.coefficient(DerivIndex::identity(dim())); }

  DiffOperator product() {
    DiffOperator r = power();
    while (peek().kind == TokKind::Star || peek().kind == TokKind::Slash) {
      const Token &op = take();
      const Token &rhsTok = peek();
      DiffOperator rhs = power();
      if (op.kind == TokKind::Slash) {
        if (!is_coefficient(rhs))
          fail("cannot divide by a derivative", rhsTok);
        Coefficient c = as_coefficient(rhs);
        if (c.is_zero())
          fail("division by zero", rhsTok);
        if (!c.is_invertible())
          fail("division is only allowed by a single monomial", rhsTok);
        r = c.inverse() * r;
      } else if (is_coefficient(rhs)) {
        Coefficient c = as_coefficient(rhs);
        if (!is_coefficient(r) && !c.is_constant() && !c.is_zero())
          fail("a derivative must be the last factor of a term; "
               "write operator products with the `compose` command",
               rhsTok);
        r = c * r;
      } else {
        if (!is_coefficient(r))
          fail("a term may contain only one derivative token; "
               "write operator products with the `compose` command",
               rhsTok);
        r = as_coefficient(r) * rhs;
      }
    }
    return r;
  }

  int integer_exponent() {
    bool negative = false;
    bool paren = false;
    if (peek().kind == TokKind::LParen) {
      take();
      paren = true;
    }
    if (peek().kind == TokKind::Minus) {
      take();
      negative = true;
    }
    const Token &t = take();
    if (t.kind != TokKind::Number || t.number.get_den() != 1 || t.text.find('.') != std::string::npos)
      fail("exponent must be an integer literal", t);
    if (!t.number.get_num().fits_sint_p() || abs(t.number.get_num()) > 10000)
      fail("exponent out of range", t);
    if (paren && take().kind != TokKind::RParen)
      fail("expected ')' after exponent", toks_[pos_ - 1]);
    int e = static_cast<int>(t.number.get_num().get_si());
    return negative ? -e : e;
  }

  DiffOperator power() {
    const Token &baseTok = peek();
    DiffOperator base = atom();
    if (peek().kind != TokKind::Caret)
      return base;
    take();
    const Token &expTok = peek();
    int e = integer_exponent();
    if (!is_coefficient(base))
      fail("powers of derivatives are written as repeated indices, e.g. d[x,x]", baseTok);
    Coefficient c = as_coefficient(base);
    if (e < 0) {
      if (!is_variable(baseTok))
        fail("negative exponents are only allowed on a variable, e.g. t^-1", expTok);
      c = c.inverse();
      e = -e;
    }
    return DiffOperator::multiplication(c.pow(static_cast<unsigned>(e)));
  }

  DiffOperator atom() {
    const Token &t = take();
    switch (t.kind) {
    case TokKind::Number:
      return DiffOperator::scalar(dim(), GaussianRational(t.number));
    case TokKind::Deriv: {
      std::vector<int> alpha(dim(), 0);
      for (const auto &name : t.vars) {
        auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it == vars_.end())
          fail("unknown variable '" + name + "' in derivative", t);
        ++alpha[static_cast<std::size_t>(it - vars_.begin())];
      }
      return DiffOperator::derivative(dim(), DerivIndex(alpha));
    }
    case TokKind::LParen: {
      DiffOperator r = sum();
      if (peek().kind != TokKind::RParen)
        fail("expected ')'", peek());
      take();
      return r;
    }
    case TokKind::Ident: {
      if (t.text == "i")
        return DiffOperator::scalar(dim(), GaussianRational::i());
      if (t.text == "exp")
        return exponential(t);
      if (peek().kind == TokKind::LParen)
        fail("function '" + t.text + "' is not supported; only exp(<linear form>) is allowed", t);
      return DiffOperator::multiplication(Coefficient::variable(dim(), var_index(t)));
    }
    default:
      fail("unexpected token", t);
    }
  }

  DiffOperator exponential(const Token &expTok) {
    if (peek().kind != TokKind::LParen)
      fail("expected '(' after exp", peek());
    take();
    DiffOperator arg = sum();
    if (peek().kind != TokKind::RParen)
      fail("expected ')'", peek());
    take();
    if (!is_coefficient(arg))
      fail("exp argument must be a linear form in the variables", expTok);
    ExpArg lambda(dim());
    const Coefficient argc = as_coefficient(arg);
    for (const auto &term : argc.terms()) {
      int nonzero = 0;
      std::size_t which = 0;
      for (std::size_t v = 0; v < dim(); ++v)
        if (term.powers[v] != 0) {
          ++nonzero;
          which = v;
        }
      if (term.has_exp() || nonzero != 1 || term.powers[which] != 1)
        fail("exp argument must be a linear form without constant term, e.g. exp(2*x - i*t)", expTok);
      lambda[which] += term.scalar;
    }
    return DiffOperator::multiplication(Coefficient::exponential(dim(), lambda));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const std::vector<std::string> &vars_;
};

inline void validate_vars(const std::vector<std::string> &vars) {
  if (vars.empty())
    throw Error("at least one variable must be declared");
  std::set<std::string> seen;
  for (const auto &v : vars) {
    if (v.empty() || !(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_') ||
        !std::all_of(v.begin(), v.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }))
      throw Error("invalid variable name '" + v + "'");
    if (v == "i" || v == "d" || v == "exp")
      throw Error("'" + v + "' is reserved and cannot be a variable name");
    if (!seen.insert(v).second)
      throw Error("duplicate variable name '" + v + "'");
  }
}

} // namespace detail

/// Parses a sum of (coefficient x single derivative token) terms over `vars`.
inline DiffOperator parse_operator(std::string_view text, const std::vector<std::string> &vars) {
  detail::validate_vars(vars);
  detail::Parser p(detail::Lexer(text).run(), vars);
  return p.parse();
}

/// Splits `x,t` into {"x","t"}.
inline std::vector<std::string> parse_var_list(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  out.push_back(cur);
  detail::validate_vars(out);
  return out;
}

} // namespace symctr
