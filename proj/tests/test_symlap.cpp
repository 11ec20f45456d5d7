#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "dlap/errors.hpp"
#include "dlap/symlap.hpp"

using namespace dlap;

namespace {

double at(const char* text, double lambda, double s) {
  const TransformResult r = transform(parse(text), Lambda(lambda));
  return sexpr_eval(r.closed_form, Lambda(lambda), s);
}

bool traced(const TransformResult& r, const std::string& id) {
  return std::find(r.trace.begin(), r.trace.end(), id) != r.trace.end();
}

}  // namespace

TEST_CASE("table closed forms") {
  const TransformResult r = transform(parse("sin_l(2*t)"), Lambda(0.1));
  CHECK(to_string(r.closed_form) == "2/((s-0.1)^2+4)");
  CHECK(r.sigma_min == doctest::Approx(0.1));
  CHECK(r.trace == std::vector<std::string>{"sin_l"});

  CHECK(to_string(transform(parse("1"), Lambda(0.5)).closed_form) == "1/(s-0.5)");
  CHECK(to_string(transform(parse("t^3"), Lambda(0.1)).closed_form) ==
        "6/((s-0.1)*(s-0.2)*(s-0.3)*(s-0.4))");
  CHECK(to_string(transform(parse("cos_l(t)"), Lambda(0.25)).closed_form) ==
        "(s-0.25)/((s-0.25)^2+1)");
  CHECK(to_string(transform(parse("exp_l(-0.7*t)"), Lambda(0.2)).closed_form) == "1/(s+0.5)");
  CHECK(to_string(transform(parse("t^0.5"), Lambda(0.1)).closed_form) ==
        "gamma_{0.1/s}(1.5)/s^1.5");
}

// References: 30-digit quadrature of the defining integral in t (mpmath).
TEST_CASE("closed forms against high-precision references") {
  CHECK(at("sin_l(2*t)", 0.1, 2.0) == doctest::Approx(0.26281208935611038181).epsilon(1e-14));
  CHECK(at("cos_l(2*t)", 0.1, 2.0) == doctest::Approx(0.24967148488830486199).epsilon(1e-14));
  CHECK(at("t^-0.5", 0.2, 1.0) == doctest::Approx(1.9208477780189486182).epsilon(1e-13));
  CHECK(at("t^1.5", 0.05, 1.0) == doctest::Approx(1.6740473598683230879).epsilon(1e-13));
  CHECK(at("exp_l(0.3*t)*log1p_l(t)^2", 0.2, 1.5) == doctest::Approx(0.08).epsilon(1e-14));
  CHECK(at("cosh_l(0.5*t)*exp_l(-0.2*t)", 0.1, 1.0) ==
        doctest::Approx(1.1458333333333333245).epsilon(1e-14));
  CHECK(at("t^2 + 3*sinh_l(0.5*t)", 0.1, 2.0) ==
        doctest::Approx(0.79042581945058726174).epsilon(1e-14));
}

TEST_CASE("trace and sigma composition") {
  const TransformResult r = transform(parse("2*t^2 - 3*cos_l(t) + 0.5*exp_l(0.25*t)"), Lambda(0.1));
  CHECK(r.sigma_min == doctest::Approx(0.35));
  CHECK(traced(r, "linearity"));
  CHECK(traced(r, "power_int"));
  CHECK(traced(r, "cos_l"));
  CHECK(traced(r, "unit"));
  CHECK(traced(r, "shift"));

  const TransformResult d = transform(parse("(1 + t)*exp_l(0.2*t)"), Lambda(0.1));
  CHECK(d.trace.front() == "distribute");
  CHECK(d.sigma_min == doctest::Approx(0.4));

  const TransformResult h = transform(parse("cosh_l(-2*t)*exp_l(0.5*t)"), Lambda(0.1));
  CHECK(h.sigma_min == doctest::Approx(2.6));

  const TransformResult lp = transform(parse("log1p_l(t)*cos_l(t)"), Lambda(0.1));
  CHECK(lp.trace.back() == "log_power");
}

TEST_CASE("classical branch") {
  CHECK(to_string(transform(parse("1"), Lambda(0.0)).closed_form) == "1/s");
  CHECK(to_string(transform(parse("t^2"), Lambda(0.0)).closed_form) == "2/s^3");
  CHECK(to_string(transform(parse("sin_l(2*t)"), Lambda(0.0)).closed_form) == "2/(s^2+4)");
  CHECK(transform(parse("log1p_l(t)*exp_l(2*t)"), Lambda(0.0)).closed_form.is_zero());
}

TEST_CASE("unsupported shapes") {
  CHECK_THROWS_AS(transform(parse("sin_l(t)*cos_l(t)"), Lambda(0.1)), UnsupportedShape);
  CHECK_THROWS_AS(transform(parse("t*sin_l(t)"), Lambda(0.1)), UnsupportedShape);
  CHECK_THROWS_AS(transform(parse("log1p_l(t)*t^0.5"), Lambda(0.1)), UnsupportedShape);
  try {
    transform(parse("sin_l(t)*cos_l(t)"), Lambda(0.1));
  } catch (const UnsupportedShape& e) {
    CHECK(std::string(e.what()).find("--numeric") != std::string::npos);
  }
}

TEST_CASE("convergence threshold") {
  CHECK(convergence_threshold(parse("t^2"), Lambda(0.1)) == doctest::Approx(0.3));
  CHECK(convergence_threshold(parse("sinh_l(-2*t) + 1"), Lambda(0.1)) == doctest::Approx(2.1));
  CHECK(convergence_threshold(parse("exp_l(-1*t)"), Lambda(0.1)) == doctest::Approx(-0.9));
}

TEST_CASE("derivative rule") {
  const Lambda lambda(0.1);
  const TransformResult r = transform_derivative(parse("t^2"), 1, lambda);
  CHECK(traced(r, "derivative_rule"));
  CHECK(traced(r, "cross_check"));
  // L(2t) = 2/((s-lambda)(s-2 lambda))
  CHECK(sexpr_eval(r.closed_form, lambda, 2.0) == doctest::Approx(2.0 / (1.9 * 1.8)).epsilon(1e-14));

  const TransformResult c = transform_derivative(parse("cos_l(t)"), 2, lambda);
  CHECK(traced(c, "cross_check"));

  // Through the degenerate gamma factor: L(1.5 t^0.5).
  const TransformResult g = transform_derivative(parse("t^1.5"), 1, lambda);
  CHECK(traced(g, "cross_check"));
  CHECK(sexpr_eval(g.closed_form, lambda, 1.0) ==
        doctest::Approx(1.5 * sexpr_eval(transform(parse("t^0.5"), lambda).closed_form, lambda, 1.0))
            .epsilon(1e-13));

  CHECK_THROWS_AS(transform_derivative(parse("t^0.5"), 2, lambda), NonDifferentiableAtZero);
}
