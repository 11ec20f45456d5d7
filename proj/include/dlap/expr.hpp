#pragma once

// Expression language for functions of t.
//
// Atoms are t^alpha, the degenerate exponential (1+lambda t)^(a/lambda), the
// degenerate trig/hyperbolic functions of a*t and powers of ln(1+lambda t).
// Nodes are immutable values; every builder validates its parameters.

#include <string>
#include <string_view>
#include <vector>

#include "dlap/degenfun.hpp"

namespace dlap {

enum class Kind { Const, Power, DegExp, CosL, SinL, CoshL, SinhL, LogPow, Sum, Prod, Scale };

class Expr {
 public:
  static Expr constant(double c);
  /// t^alpha, alpha > -1.
  static Expr power(double alpha);
  /// (1+lambda t)^(a/lambda).
  static Expr deg_exp(double a);
  static Expr cos_l(double a);
  static Expr sin_l(double a);
  static Expr cosh_l(double a);
  static Expr sinh_l(double a);
  /// (ln(1+lambda t))^n, n >= 0.
  static Expr log_pow(int n);
  static Expr sum(std::vector<Expr> terms);
  static Expr prod(std::vector<Expr> factors);
  static Expr scale(double c, Expr child);

  Kind kind() const noexcept { return kind_; }
  /// c for Const/Scale, alpha for Power, a for the a*t atoms.
  double param() const noexcept { return param_; }
  /// n for LogPow.
  int exponent() const noexcept { return exponent_; }
  const std::vector<Expr>& children() const noexcept { return children_; }

  bool is_atom() const noexcept {
    return kind_ != Kind::Sum && kind_ != Kind::Prod && kind_ != Kind::Scale;
  }

  friend bool operator==(const Expr&, const Expr&) = default;

 private:
  Expr(Kind kind, double param, int exponent, std::vector<Expr> children);

  Kind kind_;
  double param_ = 0.0;
  int exponent_ = 0;
  std::vector<Expr> children_;
};

/// Point of evaluation carried in the coordinates every atom needs:
/// t itself, ln t, and u = ln(1+lambda t)/lambda (u = t when lambda = 0).
struct EvalPoint {
  double t;
  double log_t;
  double u;
};

EvalPoint point_from_t(Lambda lambda, double t);
/// Inverse of the u coordinate, accurate even where t itself overflows.
EvalPoint point_from_u(Lambda lambda, double u);

/// sign * exp(log_abs); sign is -1, 0 or +1.
struct SignedLog {
  double sign;
  double log_abs;
  double value() const;
};

Expr parse(std::string_view text);
std::string to_text(const Expr& e);
/// Structural dump, e.g. "Sum[Power(2), Scale(3, DegExp(-1))]".
std::string describe(const Expr& e);

double eval_at(const Expr& e, Lambda lambda, double t);
double eval_at(const Expr& e, Lambda lambda, const EvalPoint& p);
/// Overflow-free evaluation used by the quadrature kernels.
SignedLog eval_log(const Expr& e, Lambda lambda, const EvalPoint& p);

Expr normalize(const Expr& e);

/// d/dt. The factor 1/(1+lambda t) is emitted as deg_exp(-lambda), so the
/// result depends on lambda. Power(alpha) with -1 < alpha < 0 has no
/// representable derivative and raises NonDifferentiableAtZero.
Expr deriv_t(const Expr& e, Lambda lambda);

/// Shortest round-trip decimal form used by to_text.
std::string format_number(double v);

}  // namespace dlap
