#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "dlap/errors.hpp"
#include "dlap/expr.hpp"
#include "dlap/numlap.hpp"
#include "dlap/symlap.hpp"
#include "expr_generator.hpp"

using namespace dlap;
using dlap::testing::Generator;

namespace {

// Sum of |term| magnitudes; the scale against which reassociation error is judged.
double magnitude(const Expr& e, Lambda lambda, double t) {
  switch (e.kind()) {
    case Kind::Sum: {
      double m = 0.0;
      for (const auto& c : e.children()) m += magnitude(c, lambda, t);
      return m;
    }
    case Kind::Scale:
      return std::fabs(e.param()) * magnitude(e.children().front(), lambda, t);
    case Kind::Prod: {
      double m = 1.0;
      for (const auto& c : e.children()) m *= magnitude(c, lambda, t);
      return m;
    }
    default:
      return std::fabs(eval_at(e, lambda, t));
  }
}

}  // namespace

TEST_CASE("round trip: parse(to_text(e)) == normalize(e) on 1000 generated trees") {
  Generator gen(20240611);
  int accepted = 0;
  int attempts = 0;
  while (accepted < 1000) {
    REQUIRE(++attempts < 5000);
    const Expr e = gen.tree(3);
    Expr n = e;
    try {
      n = normalize(e);
    } catch (const DomainError&) {
      continue;  // merged power fell to <= -1
    }
    ++accepted;
    const std::string text = to_text(e);
    CAPTURE(text);
    CAPTURE(describe(n));
    REQUIRE(parse(text) == n);
    CHECK(normalize(n) == n);
  }
}

TEST_CASE("normalize preserves values") {
  Generator gen(7);
  int checked = 0;
  while (checked < 500) {
    const Expr e = gen.tree(3);
    Expr n = e;
    try {
      n = normalize(e);
    } catch (const DomainError&) {
      continue;
    }
    const Lambda lambda(gen.uniform(0.0, 1.0));
    const double t = gen.uniform(0.01, 5.0);
    const double scale = magnitude(e, lambda, t);
    if (!(scale > 0.0) || !std::isfinite(scale)) continue;
    ++checked;
    CAPTURE(to_text(e));
    CHECK(std::fabs(eval_at(n, lambda, t) - eval_at(e, lambda, t)) <= 1e-13 * scale);
  }
}

TEST_CASE("pythagorean identities on 1000 samples") {
  Generator gen(11);
  for (int i = 0; i < 1000; ++i) {
    const Lambda lambda(gen.uniform(0.0, 1.0));
    const double a = gen.uniform(-1.0, 1.0);
    const double t = gen.uniform(0.0, 3.0);
    const auto [c, s] = deg_trig(lambda, a, t);
    const auto [ch, sh] = deg_hyp(lambda, a, t);
    CHECK(std::fabs(c * c + s * s - 1.0) <= 1e-12);
    CHECK(std::fabs(ch * ch - sh * sh - 1.0) <= 1e-12);
  }
}

TEST_CASE("deriv_t agrees with finite differences") {
  Generator gen(3);
  int checked = 0;
  while (checked < 300) {
    const Expr e = gen.tree(2, false);
    Expr n = e;
    try {
      n = normalize(e);
    } catch (const DomainError&) {
      continue;
    }
    const Lambda lambda(gen.uniform(0.0, 0.5));
    const double t = gen.uniform(0.5, 3.0);
    const double h = 1e-3;
    auto f = [&](double x) { return eval_at(n, lambda, x); };
    const double fd = (-f(t + 2 * h) + 8 * f(t + h) - 8 * f(t - h) + f(t - 2 * h)) / (12 * h);
    const double exact = eval_at(deriv_t(n, lambda), lambda, t);
    const double scale = std::max({1.0, std::fabs(exact), magnitude(n, lambda, t)});
    ++checked;
    CAPTURE(to_text(n));
    CHECK(std::fabs(fd - exact) <= 1e-7 * scale);
  }
}

TEST_CASE("transform is linear and shifts") {
  Generator gen(5);
  for (int i = 0; i < 100; ++i) {
    const double lam = gen.uniform(0.0, 0.3);
    const Lambda lambda(lam);
    const double a = gen.coefficient(2.0);
    const double b = gen.coefficient(2.0);
    const double shift_by = gen.coefficient(0.5);
    const Expr f = Expr::cos_l(gen.coefficient(2.0));
    const Expr g = Expr::power(gen.pick(2) ? 2.0 : 1.5);
    const Expr combo = Expr::sum({Expr::scale(a, f), Expr::scale(b, g)});
    const double s = 3.0 + gen.uniform(0.0, 2.0);
    const double lhs = sexpr_eval(transform(combo, lambda).closed_form, lambda, s);
    const double rhs = a * sexpr_eval(transform(f, lambda).closed_form, lambda, s) +
                       b * sexpr_eval(transform(g, lambda).closed_form, lambda, s);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

    const Expr shifted = Expr::prod({Expr::deg_exp(shift_by), f});
    CHECK(sexpr_eval(transform(shifted, lambda).closed_form, lambda, s) ==
          doctest::Approx(sexpr_eval(transform(f, lambda).closed_form, lambda, s - shift_by))
              .epsilon(1e-12));
  }
}

TEST_CASE("closed forms agree with quadrature at random points") {
  Generator gen(17);
  const char* exprs[] = {"t^2*exp_l(-0.3*t)", "cosh_l(0.4*t) - sin_l(3*t)", "t^0.5 + 2",
                         "log1p_l(t)*cos_l(t)"};
  for (const char* text : exprs) {
    const Expr f = parse(text);
    for (int i = 0; i < 5; ++i) {
      const Lambda lambda(gen.uniform(0.01, 0.3));
      const TransformResult r = transform(f, lambda);
      const double s = r.sigma_min + gen.uniform(0.2, 4.0);
      CAPTURE(text);
      CAPTURE(lambda.value());
      CAPTURE(s);
      CHECK(sexpr_eval(r.closed_form, lambda, s) ==
            doctest::Approx(num_transform(f, lambda, s, {1e-12}).value).epsilon(1e-9));
    }
  }
}

TEST_CASE("sexpr_diff agrees with finite differences") {
  const Lambda lambda(0.1);
  for (const char* text : {"cos_l(2*t)", "t^3", "sinh_l(0.5*t)*exp_l(0.2*t)"}) {
    const SExpr F = transform(parse(text), lambda).closed_form;
    for (double s : {1.5, 2.5, 4.0}) {
      auto value = [&](double x) { return sexpr_eval(F, lambda, x); };
      CHECK(sexpr_eval(sexpr_diff(F, 1), lambda, s) ==
            doctest::Approx(fd_derivative(value, s, 1, 1e-3)).epsilon(1e-8));
      CHECK(sexpr_eval(sexpr_diff(F, 2), lambda, s) ==
            doctest::Approx(fd_derivative(value, s, 2, 1e-3)).epsilon(1e-6));
    }
  }
}

TEST_CASE("gamma identities at random points") {
  Generator gen(23);
  for (int i = 0; i < 200; ++i) {
    const double lam = gen.uniform(0.01, 0.45);
    const Lambda lambda(lam);
    const double s = gen.uniform(0.1, (1.0 - lam) / lam - 0.05);
    const double mu = lam / (1.0 - lam);
    const double rhs = s / std::pow(1.0 - lam, s + 1.0) * deg_gamma(Lambda(mu), s);
    CHECK(deg_gamma(lambda, s + 1.0) == doctest::Approx(rhs).epsilon(1e-11));
    const int k = 1 + gen.pick(static_cast<int>(std::ceil(1.0 / lam)) - 1);
    if (k * lam < 1.0) {
      CHECK(deg_gamma(lambda, k) == doctest::Approx(deg_gamma_int(lambda, k)).epsilon(1e-11));
    }
  }
}
