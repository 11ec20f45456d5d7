#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "dlap/errors.hpp"
#include "dlap/numlap.hpp"
#include "dlap/quadrature.hpp"

using namespace dlap;

TEST_CASE("adaptive Gauss-Kronrod") {
  const QuadratureResult a = integrate([](double x) { return std::sin(x); }, 0.0, M_PI);
  CHECK(a.value == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(a.abs_error_estimate < 1e-10);

  const QuadratureResult b = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
  CHECK(b.value == doctest::Approx(2.0).epsilon(1e-9));

  const QuadratureResult c = integrate([](double x) { return std::exp(-x * x); }, -6.0, 6.0);
  CHECK(c.value == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
}

// References: 30-digit quadrature in t (mpmath).
TEST_CASE("num_transform against references") {
  struct Ref {
    const char* expr;
    double lambda, s, value;
  };
  const Ref refs[] = {
      {"sin_l(2*t)", 0.1, 2.0, 0.26281208935611038181},
      {"t^-0.5", 0.2, 1.0, 1.9208477780189486182},
      {"t^1.5", 0.05, 1.0, 1.6740473598683230879},
      {"exp_l(0.3*t)*log1p_l(t)^2", 0.2, 1.5, 0.08},
      {"sin_l(t)*cos_l(t)", 0.1, 2.0, 0.1314060446780551909},
      {"t^2 + 3*sinh_l(0.5*t)", 0.1, 2.0, 0.79042581945058726174},
  };
  for (const auto& r : refs) {
    CAPTURE(r.expr);
    const QuadratureResult q = num_transform(parse(r.expr), Lambda(r.lambda), r.s, {1e-12});
    CHECK(q.value == doctest::Approx(r.value).epsilon(1e-11));
    CHECK(q.abs_error_estimate <= 1e-12 * std::max(1.0, std::fabs(q.value)));
  }
}

TEST_CASE("num_transform classical branch") {
  // L(t e^t)(s) = 1/(s-1)^2
  const QuadratureResult q = num_transform(parse("t*exp_l(t)"), Lambda(0.0), 3.0);
  CHECK(q.value == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("num_deg_gamma") {
  CHECK(num_deg_gamma(Lambda(0.1), 3.0).value ==
        doctest::Approx(3.9682539682539684279).epsilon(1e-10));
  CHECK(num_deg_gamma(Lambda(0.3), 0.25, {1e-12}).value ==
        doctest::Approx(3.8138149173690423692).epsilon(1e-11));
  CHECK_THROWS_AS(num_deg_gamma(Lambda(0.1), 10.0), DomainError);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(num_transform(parse("1"), Lambda(0.5), 0.4), DivergenceError);
  CHECK_THROWS_AS(num_transform(parse("exp_l(t)"), Lambda(0.1), 1.05), DivergenceError);
  CHECK_THROWS_AS(num_transform(parse("1"), Lambda(0.1), 2.0, {1e-14}), DomainError);
  CHECK_THROWS_AS(num_transform(parse("1"), Lambda(0.1), 2.0, {1e-2}), DomainError);
  CHECK_THROWS_AS(num_transform(parse("sin_l(t)"), Lambda(0.1), 0.5, {1e-12, 50}),
                  ToleranceNotReached);
}

TEST_CASE("estimate_order") {
  const ExponentialOrderBound b = estimate_order(parse("exp_l(0.5*t)"), Lambda(0.1));
  CHECK(b.C == doctest::Approx(0.5));
  CHECK(b.M >= 1.0);
  // t^2 grows like (1+lambda t)^2.
  CHECK(estimate_order(parse("t^2"), Lambda(0.2)).C == doctest::Approx(0.4));
  // Logarithmic growth needs a margin above the exponential part.
  CHECK(estimate_order(parse("log1p_l(t)"), Lambda(0.2)).C > 0.0);
  CHECK(estimate_order(parse("t^2"), Lambda(0.0)).C > 0.0);
}

TEST_CASE("fd_derivative") {
  auto f = [](double x) { return std::exp(2.0 * x); };
  CHECK(fd_derivative(f, 0.5, 0, 1e-2) == doctest::Approx(std::exp(1.0)));
  CHECK(fd_derivative(f, 0.5, 1, 1e-2) == doctest::Approx(2.0 * std::exp(1.0)).epsilon(1e-9));
  CHECK(fd_derivative(f, 0.5, 2, 1e-2) == doctest::Approx(4.0 * std::exp(1.0)).epsilon(1e-7));
  CHECK_THROWS_AS(fd_derivative(f, 0.5, 1, 0.1, 0.45), DomainError);
  CHECK(default_fd_step(0.01) == 1e-4);
  CHECK(default_fd_step(10.0) == doctest::Approx(1e-2));
}
