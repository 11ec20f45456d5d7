#include "dlap/sexpr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <tuple>

#include "dlap/errors.hpp"

namespace dlap {

namespace {

// Offsets produced by different rule paths (3*lambda - 2*lambda vs lambda)
// differ in the last bits; they denote the same factor.
bool same_value(double x, double y) {
  return std::fabs(x - y) <= 1e-14 * std::max({1.0, std::fabs(x), std::fabs(y)});
}

bool same_base(const SFactor& a, const SFactor& b) {
  return a.kind == b.kind && same_value(a.offset, b.offset) && same_value(a.param, b.param);
}

bool base_less(const SFactor& a, const SFactor& b) {
  return std::tie(a.kind, a.offset, a.param) < std::tie(b.kind, b.offset, b.param);
}

bool same_factors(const std::vector<SFactor>& a, const std::vector<SFactor>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same_base(a[i], b[i]) || a[i].exponent != b[i].exponent) return false;
  }
  return true;
}

std::vector<SFactor> canonical_factors(std::vector<SFactor> fs) {
  for (auto& f : fs) {
    if (std::fabs(f.offset) <= 1e-15) f.offset = 0.0;
    // (s-c)^2 + 0 is a repeated linear factor.
    if (f.kind == FactorKind::Quad && f.param == 0.0) {
      f.kind = FactorKind::Lin;
      f.exponent *= 2.0;
    }
  }
  std::sort(fs.begin(), fs.end(), base_less);
  std::vector<SFactor> out;
  for (const auto& f : fs) {
    if (!out.empty() && same_base(out.back(), f)) {
      out.back().exponent += f.exponent;
    } else {
      out.push_back(f);
    }
  }
  std::erase_if(out, [](const SFactor& f) { return f.exponent == 0.0; });
  return out;
}

}  // namespace

SExpr::SExpr(std::vector<Monomial> terms) : terms_(std::move(terms)) {}

SExpr SExpr::from_terms(std::vector<Monomial> terms) {
  std::vector<Monomial> out;
  for (auto& m : terms) {
    if (m.coeff == 0.0) continue;
    m.factors = canonical_factors(std::move(m.factors));
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const Monomial& o) { return same_factors(o.factors, m.factors); });
    if (it != out.end()) {
      it->coeff += m.coeff;
    } else {
      out.push_back(std::move(m));
    }
  }
  std::erase_if(out, [](const Monomial& m) { return m.coeff == 0.0; });
  return SExpr(std::move(out));
}

SExpr SExpr::constant(double c) { return from_terms({Monomial{c, {}}}); }

SExpr SExpr::lin(double c) { return from_terms({Monomial{1.0, {SFactor{FactorKind::Lin, c}}}}); }

SExpr SExpr::quad(double c, double q) {
  return from_terms({Monomial{1.0, {SFactor{FactorKind::Quad, c, q}}}});
}

SExpr SExpr::deg_gamma(Lambda lambda, double beta, double c) {
  return from_terms(
      {Monomial{1.0, {SFactor{FactorKind::DegGamma, c, beta, lambda.value(), 1.0}}}});
}

bool SExpr::has_deg_gamma() const noexcept {
  for (const auto& m : terms_) {
    for (const auto& f : m.factors) {
      if (f.kind == FactorKind::DegGamma) return true;
    }
  }
  return false;
}

SExpr SExpr::pow(double k) const {
  if (terms_.size() != 1) throw UnsupportedShape("power of a sum is not represented");
  Monomial m = terms_.front();
  m.coeff = std::pow(m.coeff, k);
  for (auto& f : m.factors) f.exponent *= k;
  return from_terms({m});
}

SExpr operator+(const SExpr& a, const SExpr& b) {
  std::vector<Monomial> terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return SExpr::from_terms(std::move(terms));
}

SExpr operator-(const SExpr& a, const SExpr& b) { return a + (-1.0) * b; }

SExpr operator*(double c, const SExpr& a) {
  std::vector<Monomial> terms = a.terms_;
  for (auto& m : terms) m.coeff *= c;
  return SExpr::from_terms(std::move(terms));
}

SExpr operator*(const SExpr& a, const SExpr& b) {
  std::vector<Monomial> terms;
  terms.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      Monomial m{x.coeff * y.coeff, x.factors};
      m.factors.insert(m.factors.end(), y.factors.begin(), y.factors.end());
      terms.push_back(std::move(m));
    }
  }
  return SExpr::from_terms(std::move(terms));
}

// ---------------------------------------------------------------------------

namespace {

double factor_value(const SFactor& f, Lambda lambda, double s) {
  const double x = s - f.offset;
  double base = 0.0;
  switch (f.kind) {
    case FactorKind::Lin:
      base = x;
      break;
    case FactorKind::Quad:
      base = x * x + f.param;
      break;
    case FactorKind::DegGamma:
      if (!(x > 0.0)) throw DomainError("degenerate gamma factor needs s > offset");
      base = deg_gamma(Lambda(lambda.value() / x), f.param);
      break;
  }
  if (base == 0.0 && f.exponent < 0.0) {
    throw DomainError("closed form has a pole at s = " + format9(s));
  }
  if (base < 0.0 && f.exponent != std::floor(f.exponent)) {
    throw DomainError("non-integer power of a negative factor at s = " + format9(s));
  }
  if (f.exponent == 1.0) return base;
  if (f.exponent == -1.0) return 1.0 / base;
  return std::pow(base, f.exponent);
}

}  // namespace

double sexpr_eval(const SExpr& f, Lambda lambda, double s) {
  double total = 0.0;
  for (const auto& m : f.terms()) {
    double v = m.coeff;
    for (const auto& factor : m.factors) v *= factor_value(factor, lambda, s);
    total += v;
  }
  return total;
}

namespace {

SExpr diff_once(const SExpr& f) {
  std::vector<Monomial> terms;
  for (const auto& m : f.terms()) {
    for (std::size_t i = 0; i < m.factors.size(); ++i) {
      const SFactor& g = m.factors[i];
      if (g.kind == FactorKind::DegGamma) {
        throw UnsupportedShape(
            "d/ds of a degenerate gamma factor has no closed form; use the numeric path");
      }
      // d/ds base^k = k base^(k-1) base'
      Monomial term{m.coeff * g.exponent, m.factors};
      term.factors[i].exponent -= 1.0;
      if (g.kind == FactorKind::Quad) {
        term.coeff *= 2.0;
        term.factors.push_back(SFactor{FactorKind::Lin, g.offset});
      }
      terms.push_back(std::move(term));
    }
  }
  return SExpr::from_terms(std::move(terms));
}

}  // namespace

SExpr sexpr_diff(const SExpr& f, int n) {
  if (n < 0) throw DomainError("derivative order must be >= 0");
  SExpr out = f;
  for (int i = 0; i < n; ++i) out = diff_once(out);
  return out;
}

std::pair<SExpr, double> shift(const SExpr& f, double sigma, double a) {
  std::vector<Monomial> terms = f.terms();
  for (auto& m : terms) {
    for (auto& factor : m.factors) factor.offset += a;
  }
  return {SExpr::from_terms(std::move(terms)), sigma + a};
}

// ---------------------------------------------------------------------------
// printing

std::string format9(double v) {
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

namespace {

std::string lin_text(double offset) {
  if (offset == 0.0) return "s";
  if (offset > 0.0) return "(s-" + format9(offset) + ")";
  return "(s+" + format9(-offset) + ")";
}

std::string exponent_suffix(double k) { return k == 1.0 ? "" : "^" + format9(k); }

std::string factor_text(const SFactor& f, double exponent) {
  switch (f.kind) {
    case FactorKind::Lin:
      return lin_text(f.offset) + exponent_suffix(exponent);
    case FactorKind::Quad: {
      std::string q = f.param < 0.0 ? "-" + format9(-f.param) : "+" + format9(f.param);
      return "(" + lin_text(f.offset) + "^2" + q + ")" + exponent_suffix(exponent);
    }
    case FactorKind::DegGamma: {
      std::string arg = format9(f.lambda) + "/" + lin_text(f.offset);
      return "gamma_{" + arg + "}(" + format9(f.param) + ")" + exponent_suffix(exponent);
    }
  }
  return {};
}

std::string monomial_text(const Monomial& m) {
  const double c = std::fabs(m.coeff);
  std::vector<std::string> num;
  std::vector<std::string> den;
  for (const auto& f : m.factors) {
    if (f.exponent > 0.0) {
      num.push_back(factor_text(f, f.exponent));
    } else {
      den.push_back(factor_text(f, -f.exponent));
    }
  }
  auto join = [](const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "*" : "") + parts[i];
    return out;
  };
  std::string out;
  if (num.empty()) {
    out = format9(c);
  } else {
    out = (c == 1.0 ? "" : format9(c) + "*") + join(num);
  }
  if (den.empty()) return out;
  if (den.size() == 1) return out + "/" + den.front();
  return out + "/(" + join(den) + ")";
}

}  // namespace

std::string to_string(const SExpr& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < f.terms().size(); ++i) {
    const Monomial& m = f.terms()[i];
    const bool negative = m.coeff < 0.0;
    if (i == 0) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    out += monomial_text(m);
  }
  return out;
}

}  // namespace dlap
