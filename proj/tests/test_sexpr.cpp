#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "dlap/errors.hpp"
#include "dlap/sexpr.hpp"

using namespace dlap;

TEST_CASE("printing") {
  CHECK(to_string(2.0 * SExpr::quad(0.1, 4.0).pow(-1)) == "2/((s-0.1)^2+4)");
  CHECK(to_string(SExpr::lin(0.0).pow(-2)) == "1/s^2");
  CHECK(to_string(SExpr::lin(-0.3)) == "(s+0.3)");
  CHECK(to_string(SExpr::quad(0.0, -0.25).pow(-1)) == "1/(s^2-0.25)");
  CHECK(to_string(SExpr()) == "0");
  CHECK(to_string(SExpr::constant(-2.5)) == "-2.5");
  CHECK(to_string(6.0 * (SExpr::lin(0.1) * SExpr::lin(0.2)).pow(-1)) == "6/((s-0.1)*(s-0.2))");
  CHECK(to_string(SExpr::lin(0.0).pow(-1.5) * SExpr::deg_gamma(Lambda(0.1), 1.5)) ==
        "gamma_{0.1/s}(1.5)/s^1.5");
  CHECK(to_string(SExpr::lin(1.0) - SExpr::constant(2.0)) == "(s-1) - 2");
}

TEST_CASE("canonical form") {
  CHECK(SExpr::lin(0.5) * SExpr::lin(0.5) == SExpr::lin(0.5).pow(2));
  CHECK(SExpr::quad(0.5, 0.0) == SExpr::lin(0.5).pow(2));
  CHECK((SExpr::lin(0.1) - SExpr::lin(0.1)).is_zero());
  CHECK(SExpr::lin(3 * 0.1 - 2 * 0.1) * SExpr::lin(0.1).pow(-1) == SExpr::constant(1.0));
  CHECK(SExpr::lin(1e-17) == SExpr::lin(0.0));
}

TEST_CASE("evaluation") {
  const Lambda lambda(0.1);
  CHECK(sexpr_eval(2.0 * SExpr::quad(0.1, 4.0).pow(-1), lambda, 2.0) ==
        doctest::Approx(2.0 / (1.9 * 1.9 + 4.0)).epsilon(1e-15));
  CHECK(sexpr_eval(SExpr::deg_gamma(lambda, 2.0), lambda, 1.0) ==
        doctest::Approx(1.0 / (0.9 * 0.8)).epsilon(1e-13));
  CHECK_THROWS_AS(sexpr_eval(SExpr::lin(1.0).pow(-1), lambda, 1.0), DomainError);
  CHECK_THROWS_AS(sexpr_eval(SExpr::lin(1.0).pow(-0.5), lambda, 0.5), DomainError);
}

TEST_CASE("d/ds") {
  const Lambda lambda(0.0);
  // d/ds 1/((s-1)^2+4) = -2(s-1)/((s-1)^2+4)^2
  const SExpr f = SExpr::quad(1.0, 4.0).pow(-1);
  const double s = 2.5;
  CHECK(sexpr_eval(sexpr_diff(f, 1), lambda, s) ==
        doctest::Approx(-2.0 * 1.5 / std::pow(1.5 * 1.5 + 4.0, 2)).epsilon(1e-15));
  // d^3/ds^3 s^-2 = -24 s^-5
  CHECK(sexpr_eval(sexpr_diff(SExpr::lin(0.0).pow(-2), 3), lambda, s) ==
        doctest::Approx(-24.0 * std::pow(s, -5)).epsilon(1e-15));
  CHECK(sexpr_diff(SExpr::constant(3.0), 1).is_zero());
  CHECK_THROWS_AS(sexpr_diff(SExpr::deg_gamma(Lambda(0.1), 1.5), 1), UnsupportedShape);
}

TEST_CASE("shift") {
  auto [g, sigma] = shift(SExpr::lin(0.1).pow(-1), 0.1, 0.3);
  CHECK(sigma == doctest::Approx(0.4));
  CHECK(to_string(g) == "1/(s-0.4)");
  CHECK(format9(1.0 / 3.0) == "0.333333333");
}
