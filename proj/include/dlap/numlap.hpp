#pragma once

// Quadrature oracle for the degenerate Laplace transform and gamma function.
//
// Integration runs in u = ln(1+lambda t)/lambda, where the kernel becomes
// exactly exp(-(s - lambda) u):
//   int_0^inf (1+lambda t)^(-s/lambda) f(t) dt
//     = int_0^inf exp(-(s-lambda) u) f((e^(lambda u) - 1)/lambda) du.

#include <cmath>
#include <functional>

#include "dlap/expr.hpp"
#include "dlap/quadrature.hpp"

namespace dlap {

/// |f(t)| <= M (1+lambda t)^(C/lambda) for t > T.
struct ExponentialOrderBound {
  double C;
  double M;
  double T;
};

struct NumericOptions {
  double tol = 1e-10;
  long max_evaluations = 2'000'000;
};

ExponentialOrderBound estimate_order(const Expr& f, Lambda lambda);

/// Throws DivergenceError when s - lambda - C <= 0 and ToleranceNotReached
/// when the error estimate exceeds tol*max(1,|value|) after the budget.
QuadratureResult num_transform(const Expr& f, Lambda lambda, double s,
                               const NumericOptions& options = {});

/// Direct quadrature of int_0^inf (1+lambda t)^(-1/lambda) t^(s-1) dt.
QuadratureResult num_deg_gamma(Lambda lambda, double s, const NumericOptions& options = {});

/// Default Richardson base step: max(1e-4, 1e-3 |s|).
double default_fd_step(double s);

/// Central difference of order n in {0, 1, 2} with one Richardson step.
/// The stencil must stay above domain_floor.
double fd_derivative(const std::function<double(double)>& F, double s, int n, double h,
                     double domain_floor = -HUGE_VAL);

}  // namespace dlap
