#include "dlap/degenfun.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "dlap/errors.hpp"

namespace dlap {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void require_t(Lambda lambda, double t) {
  if (!std::isfinite(t) || 1.0 + lambda.value() * t <= 0.0) {
    throw DomainError("1 + lambda*t must be positive, got t = " + num(t));
  }
}

double checked(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw OverflowError(std::string(what) + " is not finite");
  }
  return v;
}

}  // namespace

Lambda::Lambda(double value) : value_(value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw DomainError("lambda must be finite and >= 0, got " + num(value));
  }
}

double degenerate_log(Lambda lambda, double t) {
  if (lambda.classical()) return t;
  return std::log1p(lambda.value() * t) / lambda.value();
}

double deg_pow(Lambda lambda, double a, double t) {
  require_t(lambda, t);
  if (a == 0.0) return 1.0;
  return checked(std::exp(a * degenerate_log(lambda, t)), "deg_pow");
}

std::pair<double, double> deg_trig(Lambda lambda, double a, double t) {
  require_t(lambda, t);
  const double theta = a * degenerate_log(lambda, t);
  return {std::cos(theta), std::sin(theta)};
}

std::pair<double, double> deg_hyp(Lambda lambda, double a, double t) {
  require_t(lambda, t);
  const double x = a * degenerate_log(lambda, t);
  return {checked(std::cosh(x), "cosh_lambda"), checked(std::sinh(x), "sinh_lambda")};
}

double log1p_pow(Lambda lambda, int n, double t) {
  require_t(lambda, t);
  if (n < 0) throw DomainError("log1p_pow needs n >= 0");
  if (n == 0) return 1.0;
  if (lambda.classical()) return 0.0;
  return std::pow(std::log1p(lambda.value() * t), n);
}

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("log_gamma needs x > 0, got " + num(x));
  }
  // Reentrant variant; std::lgamma writes the global signgam.
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

double deg_gamma(Lambda lambda, double s) {
  if (!(s > 0.0)) throw DomainError("degenerate gamma needs s > 0, got " + num(s));
  if (lambda.classical()) return checked(std::tgamma(s), "Gamma(s)");
  const double inv = 1.0 / lambda.value();
  if (!(s < inv)) {
    throw DomainError("degenerate gamma needs s < 1/lambda = " + num(inv) +
                      ", got " + num(s));
  }
  const double log_value =
      -s * std::log(lambda.value()) + log_gamma(s) + (log_gamma(inv - s) - log_gamma(inv));
  return checked(std::exp(log_value), "degenerate gamma");
}

double deg_gamma_int(Lambda lambda, int k) {
  if (k < 1) throw DomainError("deg_gamma_int needs k >= 1");
  if (!lambda.classical() && !(k * lambda.value() < 1.0)) {
    throw DomainError("deg_gamma_int needs lambda < 1/k");
  }
  double numerator = 1.0;
  for (int j = 2; j < k; ++j) numerator *= j;
  double denominator = 1.0;
  for (int j = 1; j <= k; ++j) denominator *= 1.0 - j * lambda.value();
  return checked(numerator / denominator, "deg_gamma_int");
}

}  // namespace dlap
