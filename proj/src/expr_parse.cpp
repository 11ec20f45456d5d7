// Recursive-descent reader for the t-expression grammar:
//
//   expr     := term { ("+" | "-") term }
//   term     := ["-"] factor { "*" factor }
//   factor   := base [ "^" exponent ]
//   base     := NUMBER | "t" | FUNC "(" linarg ")" | "(" expr ")"
//   linarg   := ["-"] [ NUMBER "*" ] "t"
//   exponent := ["-"] NUMBER

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>

#include "dlap/errors.hpp"
#include "dlap/expr.hpp"

namespace dlap {

namespace {

constexpr int kMaxIntegerPower = 64;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr run() {
    skip_ws();
    if (at_end()) throw SyntaxError(pos_, "expression");
    Expr e = expr();
    skip_ws();
    if (!at_end()) throw SyntaxError(pos_, "operator or end of input");
    return e;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) throw SyntaxError(pos_, std::string("'") + c + "'");
  }

  bool next_is_digit() {
    skip_ws();
    return !at_end() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.');
  }

  // NUMBER := digits ["." digits] [("e"|"E") ["+"|"-"] digits], or "." digits.
  std::optional<double> number() {
    skip_ws();
    const std::size_t start = pos_;
    std::size_t i = pos_;
    auto digits = [&] {
      const std::size_t from = i;
      while (i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]))) ++i;
      return i - from;
    };
    std::size_t mantissa = digits();
    if (i < text_.size() && text_[i] == '.') {
      ++i;
      mantissa += digits();
    }
    if (mantissa == 0) return std::nullopt;
    if (i < text_.size() && (text_[i] == 'e' || text_[i] == 'E')) {
      std::size_t j = i + 1;
      if (j < text_.size() && (text_[j] == '+' || text_[j] == '-')) ++j;
      std::size_t k = j;
      while (k < text_.size() && std::isdigit(static_cast<unsigned char>(text_[k]))) ++k;
      if (k > j) i = k;
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + i, value);
    if (ec != std::errc() || ptr != text_.data() + i || !std::isfinite(value)) {
      throw SyntaxError(start, "finite number");
    }
    pos_ = i;
    return value;
  }

  double require_number(const char* what) {
    auto v = number();
    if (!v) throw SyntaxError(pos_, what);
    return *v;
  }

  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Expr expr() {
    std::vector<Expr> terms;
    terms.push_back(term());
    for (;;) {
      if (accept('+')) {
        terms.push_back(term());
      } else if (accept('-')) {
        terms.push_back(Expr::scale(-1.0, term()));
      } else {
        break;
      }
    }
    return terms.size() == 1 ? terms.front() : Expr::sum(std::move(terms));
  }

  Expr term() {
    const bool negate = accept('-');
    std::vector<Expr> factors;
    factors.push_back(factor());
    while (accept('*')) factors.push_back(factor());
    Expr body = factors.size() == 1 ? factors.front() : Expr::prod(std::move(factors));
    return negate ? Expr::scale(-1.0, std::move(body)) : body;
  }

  struct Base {
    Expr expr;
    enum class Shape { Number, T, Func, Group } shape;
  };

  Expr factor() {
    Base b = base();
    if (!accept('^')) return b.expr;
    const std::size_t exp_pos = pos_;
    const bool negative = accept('-');
    double k = require_number("exponent");
    if (negative) k = -k;

    switch (b.shape) {
      case Base::Shape::Number: {
        const double v = std::pow(b.expr.param(), k);
        if (!std::isfinite(v)) throw SyntaxError(exp_pos, "exponent giving a finite constant");
        return Expr::constant(v);
      }
      case Base::Shape::T:
        if (!(k > -1.0)) {
          throw ExponentOutOfRange(exp_pos, "t^" + format_number(k) +
                                                " is not integrable at 0; exponent must exceed -1");
        }
        return Expr::power(k);
      case Base::Shape::Func:
        if (b.expr.kind() == Kind::LogPow) {
          if (k < 0.0 || k != std::floor(k) || k > kMaxIntegerPower) {
            throw NonIntegerLogPower(exp_pos, "log1p_l(t) power must be a non-negative integer");
          }
          return Expr::log_pow(static_cast<int>(k));
        }
        if (b.expr.kind() == Kind::DegExp) return Expr::deg_exp(b.expr.param() * k);
        break;
      case Base::Shape::Group:
        break;
    }
    if (k < 0.0 || k != std::floor(k) || k > kMaxIntegerPower) {
      throw SyntaxError(exp_pos, "non-negative integer exponent");
    }
    std::vector<Expr> copies(static_cast<std::size_t>(k), b.expr);
    if (copies.empty()) return Expr::constant(1.0);
    return copies.size() == 1 ? copies.front() : Expr::prod(std::move(copies));
  }

  Base base() {
    skip_ws();
    if (at_end()) throw SyntaxError(pos_, "number, t, function or '('");
    if (next_is_digit()) return {Expr::constant(*number()), Base::Shape::Number};
    if (accept('(')) {
      Expr inner = expr();
      expect(')');
      return {inner, Base::Shape::Group};
    }
    const std::size_t start = pos_;
    const std::string name = identifier();
    if (name == "t") return {Expr::power(1.0), Base::Shape::T};
    if (name.empty()) throw SyntaxError(start, "number, t, function or '('");

    auto builder = [&]() -> Expr (*)(double) {
      if (name == "exp_l") return &Expr::deg_exp;
      if (name == "cos_l") return &Expr::cos_l;
      if (name == "sin_l") return &Expr::sin_l;
      if (name == "cosh_l") return &Expr::cosh_l;
      if (name == "sinh_l") return &Expr::sinh_l;
      return nullptr;
    }();
    if (builder == nullptr && name != "log1p_l") {
      pos_ = start;
      throw SyntaxError(start, "number, t, function or '('");
    }
    expect('(');
    const std::size_t arg_pos = pos_;
    const double a = linarg();
    if (!accept(')')) {
      throw NonLinearArgument(pos_, name + " argument must have the form a*t");
    }
    if (builder == nullptr) {
      if (a != 1.0) throw NonLinearArgument(arg_pos, "log1p_l takes exactly t as argument");
      return {Expr::log_pow(1), Base::Shape::Func};
    }
    return {builder(a), Base::Shape::Func};
  }

  double linarg() {
    skip_ws();
    const std::size_t start = pos_;
    const bool negative = accept('-');
    double coefficient = 1.0;
    if (next_is_digit()) {
      coefficient = *number();
      if (!accept('*')) throw NonLinearArgument(pos_, "argument must have the form a*t");
    }
    const std::size_t t_pos = pos_;
    if (identifier() != "t") {
      pos_ = t_pos;
      throw NonLinearArgument(start, "argument must have the form a*t");
    }
    return negative ? -coefficient : coefficient;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) {
  Expr raw = Parser(text).run();
  try {
    return normalize(raw);
  } catch (const DomainError& e) {
    throw ExponentOutOfRange(text.size(), e.what());
  }
}

}  // namespace dlap
