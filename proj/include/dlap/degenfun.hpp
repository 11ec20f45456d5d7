#pragma once

// Pointwise degenerate special functions.
//
// Every function takes the degeneracy parameter explicitly. A parameter of
// exactly zero selects the classical branch (exp, cos, Gamma, ...) rather
// than a numerical limit.

#include <utility>

namespace dlap {

/// Degeneracy parameter lambda >= 0.
class Lambda {
 public:
  /// Throws DomainError for negative or non-finite values.
  explicit Lambda(double value);

  double value() const noexcept { return value_; }
  bool classical() const noexcept { return value_ == 0.0; }

  friend bool operator==(Lambda, Lambda) = default;

 private:
  double value_;
};

/// ln(1+lambda t)/lambda, or t on the classical branch. All degenerate
/// atoms are ordinary functions of this coordinate.
double degenerate_log(Lambda lambda, double t);

/// (1+lambda t)^(a/lambda); e^(a t) when lambda = 0.
double deg_pow(Lambda lambda, double a, double t);

/// (cos_lambda(a t), sin_lambda(a t)) in polar form.
std::pair<double, double> deg_trig(Lambda lambda, double a, double t);

/// (cosh_lambda(a t), sinh_lambda(a t)).
std::pair<double, double> deg_hyp(Lambda lambda, double a, double t);

/// (ln(1+lambda t))^n. The classical branch returns the literal limit: 0 for
/// n >= 1 and 1 for n = 0.
double log1p_pow(Lambda lambda, int n, double t);

double log_gamma(double x);

/// Degenerate gamma function via the Beta-function reduction, evaluated in
/// log space. Domain: 0 < s < 1/lambda (s > 0 when lambda = 0).
double deg_gamma(Lambda lambda, double s);

/// (k-1)! / ((1-lambda)(1-2 lambda)...(1-k lambda)) for integer k >= 1.
double deg_gamma_int(Lambda lambda, int k);

}  // namespace dlap
