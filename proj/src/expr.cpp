#include "dlap/expr.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dlap/errors.hpp"

namespace dlap {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

}  // namespace

Expr::Expr(Kind kind, double param, int exponent, std::vector<Expr> children)
    : kind_(kind), param_(param), exponent_(exponent), children_(std::move(children)) {}

Expr Expr::constant(double c) {
  require_finite(c, "constant");
  return Expr(Kind::Const, c == 0.0 ? 0.0 : c, 0, {});
}

Expr Expr::power(double alpha) {
  require_finite(alpha, "power exponent");
  if (!(alpha > -1.0)) throw DomainError("t^alpha needs alpha > -1, got " + format_number(alpha));
  return Expr(Kind::Power, alpha, 0, {});
}

Expr Expr::deg_exp(double a) {
  require_finite(a, "exp_l coefficient");
  return Expr(Kind::DegExp, a, 0, {});
}

Expr Expr::cos_l(double a) {
  require_finite(a, "cos_l coefficient");
  return Expr(Kind::CosL, a, 0, {});
}

Expr Expr::sin_l(double a) {
  require_finite(a, "sin_l coefficient");
  return Expr(Kind::SinL, a, 0, {});
}

Expr Expr::cosh_l(double a) {
  require_finite(a, "cosh_l coefficient");
  return Expr(Kind::CoshL, a, 0, {});
}

Expr Expr::sinh_l(double a) {
  require_finite(a, "sinh_l coefficient");
  return Expr(Kind::SinhL, a, 0, {});
}

Expr Expr::log_pow(int n) {
  if (n < 0) throw DomainError("log power must be >= 0");
  return Expr(Kind::LogPow, 0.0, n, {});
}

Expr Expr::sum(std::vector<Expr> terms) { return Expr(Kind::Sum, 0.0, 0, std::move(terms)); }

Expr Expr::prod(std::vector<Expr> factors) {
  return Expr(Kind::Prod, 0.0, 0, std::move(factors));
}

Expr Expr::scale(double c, Expr child) {
  require_finite(c, "scale factor");
  std::vector<Expr> children;
  children.push_back(std::move(child));
  return Expr(Kind::Scale, c, 0, std::move(children));
}

// ---------------------------------------------------------------------------
// normalize

namespace {

Expr make_scaled(double c, const Expr& e) {
  if (c == 0.0) return Expr::constant(0.0);
  if (e.kind() == Kind::Const) return Expr::constant(c * e.param());
  if (e.kind() == Kind::Scale) return make_scaled(c * e.param(), e.children().front());
  if (c == 1.0) return e;
  return Expr::scale(c, e);
}

Expr normalize_atom(const Expr& e) {
  switch (e.kind()) {
    case Kind::Power:
      return e.param() == 0.0 ? Expr::constant(1.0) : e;
    case Kind::DegExp:
    case Kind::CosL:
    case Kind::CoshL:
      return e.param() == 0.0 ? Expr::constant(1.0) : e;
    case Kind::SinL:
    case Kind::SinhL:
      return e.param() == 0.0 ? Expr::constant(0.0) : e;
    case Kind::LogPow:
      return e.exponent() == 0 ? Expr::constant(1.0) : e;
    default:
      return e;
  }
}

Expr normalize_sum(const Expr& e) {
  std::vector<Expr> terms;
  std::size_t const_slot = std::numeric_limits<std::size_t>::max();
  double const_total = 0.0;
  auto add = [&](const Expr& term) {
    if (term.kind() == Kind::Const) {
      if (const_slot == std::numeric_limits<std::size_t>::max()) {
        const_slot = terms.size();
        terms.push_back(term);
      }
      const_total += term.param();
      return;
    }
    terms.push_back(term);
  };
  for (const auto& child : e.children()) {
    Expr n = normalize(child);
    if (n.kind() == Kind::Sum) {
      for (const auto& grandchild : n.children()) add(grandchild);
    } else {
      add(n);
    }
  }
  if (const_slot != std::numeric_limits<std::size_t>::max()) {
    if (const_total == 0.0) {
      terms.erase(terms.begin() + static_cast<std::ptrdiff_t>(const_slot));
    } else {
      terms[const_slot] = Expr::constant(const_total);
    }
  }
  if (terms.empty()) return Expr::constant(0.0);
  if (terms.size() == 1) return terms.front();
  return Expr::sum(std::move(terms));
}

Expr normalize_prod(const Expr& e) {
  double coefficient = 1.0;
  bool has_power = false;
  double alpha = 0.0;
  int log_n = 0;
  double deg_a = 0.0;
  std::vector<Expr> others;

  auto absorb = [&](const Expr& f) {
    switch (f.kind()) {
      case Kind::Power:
        has_power = true;
        alpha += f.param();
        break;
      case Kind::LogPow:
        log_n += f.exponent();
        break;
      case Kind::DegExp:
        deg_a += f.param();
        break;
      default:
        others.push_back(f);
    }
  };
  auto absorb_normalized = [&](const Expr& n) {
    const Expr* core = &n;
    if (n.kind() == Kind::Const) {
      coefficient *= n.param();
      return;
    }
    if (n.kind() == Kind::Scale) {
      coefficient *= n.param();
      core = &n.children().front();
    }
    if (core->kind() == Kind::Prod) {
      for (const auto& f : core->children()) absorb(f);
    } else {
      absorb(*core);
    }
  };
  for (const auto& child : e.children()) absorb_normalized(normalize(child));

  if (coefficient == 0.0) return Expr::constant(0.0);
  if (has_power && !(alpha > -1.0)) {
    throw DomainError("product of powers gives t^" + format_number(alpha) +
                      ", which is not integrable at 0");
  }
  std::vector<Expr> factors;
  if (has_power && alpha != 0.0) factors.push_back(Expr::power(alpha));
  if (log_n != 0) factors.push_back(Expr::log_pow(log_n));
  if (deg_a != 0.0) factors.push_back(Expr::deg_exp(deg_a));
  for (auto& f : others) factors.push_back(std::move(f));

  if (factors.empty()) return Expr::constant(coefficient);
  if (factors.size() == 1) return make_scaled(coefficient, factors.front());
  return make_scaled(coefficient, Expr::prod(std::move(factors)));
}

}  // namespace

Expr normalize(const Expr& e) {
  switch (e.kind()) {
    case Kind::Sum:
      return normalize_sum(e);
    case Kind::Prod:
      return normalize_prod(e);
    case Kind::Scale:
      return make_scaled(e.param(), normalize(e.children().front()));
    default:
      return normalize_atom(e);
  }
}

// ---------------------------------------------------------------------------
// printing

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

namespace {

const char* func_name(Kind k) {
  switch (k) {
    case Kind::DegExp:
      return "exp_l";
    case Kind::CosL:
      return "cos_l";
    case Kind::SinL:
      return "sin_l";
    case Kind::CoshL:
      return "cosh_l";
    case Kind::SinhL:
      return "sinh_l";
    default:
      return "?";
  }
}

std::string print(const Expr& e);

std::string print_factor(const Expr& e) {
  if (e.kind() == Kind::Sum) return "(" + print(e) + ")";
  return print(e);
}

bool is_negative(const Expr& e) {
  return (e.kind() == Kind::Const || e.kind() == Kind::Scale) && e.param() < 0.0;
}

Expr negated(const Expr& e) {
  if (e.kind() == Kind::Const) return Expr::constant(-e.param());
  return make_scaled(-e.param(), e.children().front());
}

std::string print(const Expr& e) {
  switch (e.kind()) {
    case Kind::Const:
      return format_number(e.param());
    case Kind::Power:
      return e.param() == 1.0 ? "t" : "t^" + format_number(e.param());
    case Kind::LogPow:
      return e.exponent() == 1 ? "log1p_l(t)" : "log1p_l(t)^" + std::to_string(e.exponent());
    case Kind::DegExp:
    case Kind::CosL:
    case Kind::SinL:
    case Kind::CoshL:
    case Kind::SinhL:
      return std::string(func_name(e.kind())) + "(" + format_number(e.param()) + "*t)";
    case Kind::Sum: {
      std::string out;
      for (std::size_t i = 0; i < e.children().size(); ++i) {
        const Expr& term = e.children()[i];
        if (i == 0) {
          out += print(term);
        } else if (is_negative(term)) {
          out += " - " + print(negated(term));
        } else {
          out += " + " + print(term);
        }
      }
      return out;
    }
    case Kind::Prod: {
      std::string out;
      for (std::size_t i = 0; i < e.children().size(); ++i) {
        if (i > 0) out += "*";
        out += print_factor(e.children()[i]);
      }
      return out;
    }
    case Kind::Scale: {
      const Expr& child = e.children().front();
      if (e.param() == -1.0) return "-" + print_factor(child);
      return format_number(e.param()) + "*" + print_factor(child);
    }
  }
  return {};
}

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Const:
      return "Const";
    case Kind::Power:
      return "Power";
    case Kind::DegExp:
      return "DegExp";
    case Kind::CosL:
      return "CosL";
    case Kind::SinL:
      return "SinL";
    case Kind::CoshL:
      return "CoshL";
    case Kind::SinhL:
      return "SinhL";
    case Kind::LogPow:
      return "LogPow";
    case Kind::Sum:
      return "Sum";
    case Kind::Prod:
      return "Prod";
    case Kind::Scale:
      return "Scale";
  }
  return "?";
}

}  // namespace

std::string to_text(const Expr& e) { return print(normalize(e)); }

std::string describe(const Expr& e) {
  std::string out = kind_name(e.kind());
  switch (e.kind()) {
    case Kind::LogPow:
      return out + "(" + std::to_string(e.exponent()) + ")";
    case Kind::Sum:
    case Kind::Prod: {
      out += "[";
      for (std::size_t i = 0; i < e.children().size(); ++i) {
        if (i > 0) out += ", ";
        out += describe(e.children()[i]);
      }
      return out + "]";
    }
    case Kind::Scale:
      return out + "(" + format_number(e.param()) + ", " + describe(e.children().front()) + ")";
    default:
      return out + "(" + format_number(e.param()) + ")";
  }
}

// ---------------------------------------------------------------------------
// evaluation

EvalPoint point_from_t(Lambda lambda, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw DomainError("evaluation needs finite t >= 0, got " + format_number(t));
  }
  return {t, std::log(t), degenerate_log(lambda, t)};
}

EvalPoint point_from_u(Lambda lambda, double u) {
  if (lambda.classical()) return {u, std::log(u), u};
  const double x = lambda.value() * u;
  const double log_lambda = std::log(lambda.value());
  if (x > 700.0) {
    return {std::numeric_limits<double>::infinity(), x + std::log1p(-std::exp(-x)) - log_lambda,
            u};
  }
  const double em1 = std::expm1(x);
  return {em1 / lambda.value(), std::log(em1) - log_lambda, u};
}

double SignedLog::value() const { return sign == 0.0 ? 0.0 : sign * std::exp(log_abs); }

namespace {

double atom_value(const Expr& e, Lambda lambda, const EvalPoint& p) {
  const double a = e.param();
  switch (e.kind()) {
    case Kind::Const:
      return a;
    case Kind::Power:
      if (a == 0.0) return 1.0;
      return std::isfinite(p.t) ? std::pow(p.t, a) : std::exp(a * p.log_t);
    case Kind::DegExp:
      return a == 0.0 ? 1.0 : std::exp(a * p.u);
    case Kind::CosL:
      return std::cos(a * p.u);
    case Kind::SinL:
      return std::sin(a * p.u);
    case Kind::CoshL:
      return std::cosh(a * p.u);
    case Kind::SinhL:
      return std::sinh(a * p.u);
    case Kind::LogPow:
      if (e.exponent() == 0) return 1.0;
      return std::pow(lambda.value() * p.u, e.exponent());
    default:
      return 0.0;
  }
}

SignedLog from_value(double v) {
  if (v == 0.0) return {0.0, -std::numeric_limits<double>::infinity()};
  return {v < 0.0 ? -1.0 : 1.0, std::log(std::fabs(v))};
}

// log cosh x and log |sinh x| without overflow.
double log_cosh(double x) {
  const double ax = std::fabs(x);
  return ax + std::log1p(std::exp(-2.0 * ax)) - std::numbers::ln2;
}

double log_abs_sinh(double x) {
  const double ax = std::fabs(x);
  if (ax < 1.0) return std::log(std::fabs(std::sinh(x)));
  return ax + std::log1p(-std::exp(-2.0 * ax)) - std::numbers::ln2;
}

SignedLog atom_log(const Expr& e, Lambda lambda, const EvalPoint& p) {
  const double a = e.param();
  switch (e.kind()) {
    case Kind::Power:
      if (a == 0.0) return {1.0, 0.0};
      if (p.t == 0.0) return a > 0.0 ? from_value(0.0) : SignedLog{1.0, HUGE_VAL};
      return {1.0, a * p.log_t};
    case Kind::DegExp:
      return {1.0, a * p.u};
    case Kind::CoshL:
      return {1.0, log_cosh(a * p.u)};
    case Kind::SinhL: {
      const double x = a * p.u;
      if (x == 0.0) return from_value(0.0);
      return {x < 0.0 ? -1.0 : 1.0, log_abs_sinh(x)};
    }
    case Kind::LogPow: {
      if (e.exponent() == 0) return {1.0, 0.0};
      const double base = lambda.value() * p.u;
      if (base == 0.0) return from_value(0.0);
      return {1.0, e.exponent() * std::log(base)};
    }
    default:
      return from_value(atom_value(e, lambda, p));
  }
}

}  // namespace

double eval_at(const Expr& e, Lambda lambda, const EvalPoint& p) {
  switch (e.kind()) {
    case Kind::Sum: {
      double total = 0.0;
      for (const auto& c : e.children()) total += eval_at(c, lambda, p);
      return total;
    }
    case Kind::Prod: {
      double total = 1.0;
      for (const auto& c : e.children()) total *= eval_at(c, lambda, p);
      return total;
    }
    case Kind::Scale:
      return e.param() * eval_at(e.children().front(), lambda, p);
    default:
      return atom_value(e, lambda, p);
  }
}

double eval_at(const Expr& e, Lambda lambda, double t) {
  if (1.0 + lambda.value() * t <= 0.0) throw DomainError("1 + lambda*t must be positive");
  const double v = eval_at(e, lambda, point_from_t(lambda, t));
  if (std::isinf(v)) throw OverflowError("expression value overflows at t = " + format_number(t));
  return v;
}

SignedLog eval_log(const Expr& e, Lambda lambda, const EvalPoint& p) {
  switch (e.kind()) {
    case Kind::Sum: {
      std::vector<SignedLog> parts;
      parts.reserve(e.children().size());
      double peak = -std::numeric_limits<double>::infinity();
      for (const auto& c : e.children()) {
        parts.push_back(eval_log(c, lambda, p));
        if (parts.back().sign != 0.0) peak = std::max(peak, parts.back().log_abs);
      }
      if (peak == -std::numeric_limits<double>::infinity()) return from_value(0.0);
      if (std::isinf(peak)) return {1.0, peak};
      double acc = 0.0;
      for (const auto& part : parts) {
        if (part.sign != 0.0) acc += part.sign * std::exp(part.log_abs - peak);
      }
      if (acc == 0.0) return from_value(0.0);
      return {acc < 0.0 ? -1.0 : 1.0, peak + std::log(std::fabs(acc))};
    }
    case Kind::Prod: {
      SignedLog acc{1.0, 0.0};
      for (const auto& c : e.children()) {
        SignedLog f = eval_log(c, lambda, p);
        if (f.sign == 0.0) return f;
        acc.sign *= f.sign;
        acc.log_abs += f.log_abs;
      }
      return acc;
    }
    case Kind::Scale: {
      SignedLog inner = eval_log(e.children().front(), lambda, p);
      if (inner.sign == 0.0 || e.param() == 0.0) return from_value(0.0);
      return {inner.sign * (e.param() < 0.0 ? -1.0 : 1.0),
              inner.log_abs + std::log(std::fabs(e.param()))};
    }
    default:
      return atom_log(e, lambda, p);
  }
}

// ---------------------------------------------------------------------------
// d/dt

namespace {

Expr reciprocal_times(double c, Lambda lambda, Expr f) {
  return Expr::scale(c, Expr::prod({Expr::deg_exp(-lambda.value()), std::move(f)}));
}

Expr derive(const Expr& e, Lambda lambda) {
  const double a = e.param();
  switch (e.kind()) {
    case Kind::Const:
      return Expr::constant(0.0);
    case Kind::Power:
      if (a == 0.0) return Expr::constant(0.0);
      if (a < 0.0) {
        throw NonDifferentiableAtZero("d/dt of t^" + format_number(a) +
                                      " is not integrable at t = 0");
      }
      return Expr::scale(a, Expr::power(a - 1.0));
    case Kind::DegExp:
      return Expr::scale(a, Expr::deg_exp(a - lambda.value()));
    case Kind::CosL:
      return reciprocal_times(-a, lambda, Expr::sin_l(a));
    case Kind::SinL:
      return reciprocal_times(a, lambda, Expr::cos_l(a));
    case Kind::CoshL:
      return reciprocal_times(a, lambda, Expr::sinh_l(a));
    case Kind::SinhL:
      return reciprocal_times(a, lambda, Expr::cosh_l(a));
    case Kind::LogPow:
      if (e.exponent() == 0) return Expr::constant(0.0);
      return reciprocal_times(e.exponent() * lambda.value(), lambda,
                              Expr::log_pow(e.exponent() - 1));
    case Kind::Sum: {
      std::vector<Expr> terms;
      for (const auto& c : e.children()) terms.push_back(derive(c, lambda));
      return Expr::sum(std::move(terms));
    }
    case Kind::Scale:
      return Expr::scale(a, derive(e.children().front(), lambda));
    case Kind::Prod: {
      std::vector<Expr> terms;
      const auto& fs = e.children();
      for (std::size_t i = 0; i < fs.size(); ++i) {
        std::vector<Expr> factors = fs;
        factors[i] = derive(fs[i], lambda);
        terms.push_back(Expr::prod(std::move(factors)));
      }
      return Expr::sum(std::move(terms));
    }
  }
  return Expr::constant(0.0);
}

}  // namespace

Expr deriv_t(const Expr& e, Lambda lambda) { return normalize(derive(normalize(e), lambda)); }

}  // namespace dlap
