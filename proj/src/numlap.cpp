#include "dlap/numlap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dlap/errors.hpp"
#include "dlap/sexpr.hpp"
#include "dlap/symlap.hpp"

namespace dlap {

namespace {

constexpr double kOrderSampleStart = 1.0;  // u beyond which the bound is asserted

bool contains_log_power(const Expr& e) {
  if (e.kind() == Kind::LogPow) return e.exponent() > 0;
  return std::any_of(e.children().begin(), e.children().end(), contains_log_power);
}

bool contains_positive_power(const Expr& e) {
  if (e.kind() == Kind::Power) return e.param() > 0.0;
  return std::any_of(e.children().begin(), e.children().end(), contains_positive_power);
}

// Smallest power of t over the additive terms, i.e. the behaviour at t -> 0.
double leading_power(const Expr& e) {
  switch (e.kind()) {
    case Kind::Power:
      return e.param();
    case Kind::Sum: {
      double m = HUGE_VAL;
      for (const auto& c : e.children()) m = std::min(m, leading_power(c));
      return m;
    }
    case Kind::Prod: {
      double total = 0.0;
      for (const auto& c : e.children()) total += leading_power(c);
      return total;
    }
    case Kind::Scale:
      return leading_power(e.children().front());
    default:
      return 0.0;
  }
}

double log_abs_over_growth(const Expr& f, Lambda lambda, double C, double u) {
  SignedLog v = eval_log(f, lambda, point_from_u(lambda, u));
  if (v.sign == 0.0) return -HUGE_VAL;
  return v.log_abs - C * u;
}

}  // namespace

ExponentialOrderBound estimate_order(const Expr& f_in, Lambda lambda) {
  const Expr f = normalize(f_in);
  const double lam = lambda.value();
  double C = convergence_threshold(f, lambda) - lam;
  // Powers of the logarithm (and classical polynomials) are dominated by any
  // positive degenerate exponential order, but not by order zero.
  if (contains_log_power(f) || (lambda.classical() && contains_positive_power(f))) {
    C += 0.05 * lam + 0.05;
  }
  // M by sampling |f| e^(-C u) on a geometric grid u in [1, 4096].
  double log_m = -HUGE_VAL;
  for (int k = 0; k <= 48; ++k) {
    const double u = kOrderSampleStart * std::exp2(k / 4.0);
    log_m = std::max(log_m, log_abs_over_growth(f, lambda, C, u));
  }
  const double M = std::isfinite(log_m) ? 2.0 * std::exp(std::min(log_m, 700.0)) : 1e-300;
  const double T = lambda.classical() ? kOrderSampleStart
                                      : std::expm1(lam * kOrderSampleStart) / lam;
  return {C, std::max(M, 1e-300), T};
}

QuadratureResult num_transform(const Expr& f_in, Lambda lambda, double s,
                               const NumericOptions& options) {
  if (!(options.tol >= 1e-12 && options.tol <= 1e-4)) {
    throw DomainError("tol must lie in [1e-12, 1e-4]");
  }
  const Expr f = normalize(f_in);
  const double lam = lambda.value();
  const ExponentialOrderBound bound = estimate_order(f, lambda);
  const double rate = s - lam - bound.C;
  if (!(rate > 0.0)) {
    throw DivergenceError("transform integral diverges: need s > " + format9(lam + bound.C) +
                          ", got s = " + format9(s));
  }

  // Tail past U is below tol/10: M e^(-rate U)/rate <= tol/10.
  const double u_t = kOrderSampleStart;
  const double U = std::max(
      {u_t, 2.0, std::log(10.0 * bound.M / (rate * options.tol)) / rate});
  const double tail = bound.M * std::exp(-rate * U) / rate;
  const double kernel_rate = s - lam;

  auto integrand = [&](double u) {
    SignedLog v = eval_log(f, lambda, point_from_u(lambda, u));
    if (v.sign == 0.0) return 0.0;
    return v.sign * std::exp(v.log_abs - kernel_rate * u);
  };

  // First panel: u = u1 w^p flattens the u^alpha endpoint behaviour.
  const double alpha = leading_power(f);
  const bool singular_end = std::isfinite(alpha) && alpha != std::floor(alpha);
  const double u1 = singular_end ? std::min(1.0, 0.5 * U) : 0.0;
  const double p = singular_end ? 1.0 / (1.0 + alpha) : 1.0;

  QuadratureOptions q;
  q.abs_tol = 0.5 * options.tol * 1e-3;
  q.rel_tol = 0.5 * options.tol;
  q.max_evaluations = options.max_evaluations;

  QuadratureResult head;
  if (singular_end) {
    q.initial_panels = 1;
    head = integrate(
        [&](double w) {
          const double u = u1 * std::pow(w, p);
          if (u <= 0.0) return 0.0;
          SignedLog v = eval_log(f, lambda, point_from_u(lambda, u));
          if (v.sign == 0.0) return 0.0;
          const double log_jac = std::log(u1 * p) + (p - 1.0) * std::log(w);
          return v.sign * std::exp(v.log_abs - kernel_rate * u + log_jac);
        },
        0.0, 1.0, q);
    q.max_evaluations = std::max<long>(q.max_evaluations - head.evaluations, 42);
  }
  const double panel_budget = std::max(1.0, std::floor(q.max_evaluations / 21.0));
  q.initial_panels =
      static_cast<int>(std::clamp(std::ceil((U - u1) / 2.0), 1.0, std::min(500.0, panel_budget)));
  QuadratureResult body = integrate(integrand, u1, U, q);

  QuadratureResult out;
  out.value = head.value + body.value;
  out.abs_error_estimate = head.abs_error_estimate + body.abs_error_estimate + tail;
  out.evaluations = head.evaluations + body.evaluations + 49;
  if (!std::isfinite(out.value)) throw OverflowError("transform quadrature is not finite");
  if (out.abs_error_estimate > options.tol * std::max(1.0, std::fabs(out.value))) {
    throw ToleranceNotReached("quadrature error estimate " + format9(out.abs_error_estimate) +
                              " exceeds tol after " + std::to_string(out.evaluations) +
                              " evaluations");
  }
  return out;
}

QuadratureResult num_deg_gamma(Lambda lambda, double s, const NumericOptions& options) {
  if (!(s > 0.0)) throw DomainError("degenerate gamma needs s > 0");
  if (!lambda.classical() && !(s * lambda.value() < 1.0)) {
    throw DomainError("degenerate gamma needs s < 1/lambda");
  }
  return num_transform(Expr::power(s - 1.0), lambda, 1.0, options);
}

double default_fd_step(double s) { return std::max(1e-4, 1e-3 * std::fabs(s)); }

double fd_derivative(const std::function<double(double)>& F, double s, int n, double h,
                     double domain_floor) {
  if (n < 0 || n > 2) throw DomainError("fd_derivative supports n in {0, 1, 2}");
  if (n == 0) return F(s);
  if (!(h > 0.0)) throw DomainError("step must be positive");
  if (!(s - h > domain_floor)) {
    throw DomainError("difference stencil leaves the domain at s = " + format9(s));
  }
  auto central = [&](double step) {
    if (n == 1) return (F(s + step) - F(s - step)) / (2.0 * step);
    return (F(s + step) - 2.0 * F(s) + F(s - step)) / (step * step);
  };
  return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

}  // namespace dlap
