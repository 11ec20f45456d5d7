#pragma once

// Rule-based closed forms of the degenerate Laplace transform
//   L_lambda(f)(s) = int_0^inf (1+lambda t)^(-s/lambda) f(t) dt.

#include <functional>
#include <string>
#include <vector>

#include "dlap/expr.hpp"
#include "dlap/sexpr.hpp"

namespace dlap {

struct TransformResult {
  SExpr closed_form;
  /// The closed form is valid for every s > sigma_min.
  double sigma_min;
  /// Rule identifiers in application order.
  std::vector<std::string> trace;
};

/// Closed forms for the base atoms. Replaceable so that verification can
/// confirm a corrupted table is caught.
struct RuleSet {
  std::function<SExpr(Lambda)> unit;                      // 1
  std::function<SExpr(int, Lambda)> power_int;            // t^n
  std::function<SExpr(double, Lambda)> power_real;        // t^alpha
  std::function<SExpr(double, Lambda)> cos_l;             // cos_lambda(a t)
  std::function<SExpr(double, Lambda)> sin_l;             // sin_lambda(a t)
  std::function<SExpr(double, Lambda)> cosh_l;            // cosh_lambda(a t)
  std::function<SExpr(double, Lambda)> sinh_l;            // sinh_lambda(a t)
};

const RuleSet& default_rules();

/// Throws UnsupportedShape when no rule covers a product (two base atoms,
/// or a log power over a degenerate-gamma closed form).
TransformResult transform(const Expr& f, Lambda lambda, const RuleSet& rules = default_rules());

/// L_lambda(f^(n)) from L_lambda(f): rising product s(s+lambda)...(s+(n-1)lambda)
/// times the transform shifted by -n lambda, minus the initial-value terms.
TransformResult transform_derivative(const Expr& f, int n, Lambda lambda,
                                     const RuleSet& rules = default_rules());

/// Infimum of s for which the transform integral converges: lambda plus the
/// degenerate exponential growth rate of the fastest additive term.
double convergence_threshold(const Expr& f, Lambda lambda);

}  // namespace dlap
