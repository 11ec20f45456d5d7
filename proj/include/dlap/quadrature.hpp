#pragma once

#include <functional>

namespace dlap {

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  long evaluations = 0;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  long max_evaluations = 2'000'000;
  /// Equal-width panels laid down before adaptive bisection starts.
  int initial_panels = 1;
};

/// Globally adaptive 21-point Gauss-Kronrod quadrature on [a, b]. Never
/// evaluates the endpoints. Stops when the summed error estimate is below
/// max(abs_tol, rel_tol*|value|), when it reaches the roundoff floor, or
/// when the budget runs out; callers check the returned estimate.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options = {});

}  // namespace dlap
