#pragma once

// Closed forms F(s) for the transform rules.
//
// An SExpr is kept in canonical form: a sum of monomials, each a real
// coefficient times a product of powered factors. A factor is one of
//   Lin(c)            s - c
//   Quad(c, q)        (s - c)^2 + q
//   DegGamma(c, beta) Gamma_{lambda/(s-c)}(beta)
// Every s-dependence goes through an offset c, so substituting s -> s - a
// is exact. d/ds is closed over Lin and Quad; DegGamma is opaque to it.

#include <string>
#include <vector>

#include "dlap/degenfun.hpp"

namespace dlap {

enum class FactorKind { Lin, Quad, DegGamma };

struct SFactor {
  FactorKind kind;
  double offset;
  /// q for Quad, beta for DegGamma, unused for Lin.
  double param = 0.0;
  /// lambda for DegGamma (used for printing).
  double lambda = 0.0;
  double exponent = 1.0;

  friend bool operator==(const SFactor&, const SFactor&) = default;
};

struct Monomial {
  double coeff;
  std::vector<SFactor> factors;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

class SExpr {
 public:
  SExpr() = default;

  static SExpr constant(double c);
  /// s - c
  static SExpr lin(double c);
  /// (s - c)^2 + q
  static SExpr quad(double c, double q);
  /// Gamma_{lambda/(s-c)}(beta)
  static SExpr deg_gamma(Lambda lambda, double beta, double c = 0.0);
  /// Canonicalizes: merges equal bases and like monomials, drops zeros.
  static SExpr from_terms(std::vector<Monomial> terms);

  const std::vector<Monomial>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool has_deg_gamma() const noexcept;

  SExpr pow(double k) const;  // single-monomial expressions only

  friend SExpr operator+(const SExpr& a, const SExpr& b);
  friend SExpr operator-(const SExpr& a, const SExpr& b);
  friend SExpr operator*(const SExpr& a, const SExpr& b);
  friend SExpr operator*(double c, const SExpr& a);
  friend bool operator==(const SExpr&, const SExpr&) = default;

 private:
  explicit SExpr(std::vector<Monomial> terms);

  std::vector<Monomial> terms_;
};

/// Numeric value; DegGamma factors use the supplied lambda. Poles and
/// out-of-strip gamma arguments raise DomainError.
double sexpr_eval(const SExpr& f, Lambda lambda, double s);

/// Exact n-th derivative in s. UnsupportedShape if a DegGamma factor is present.
SExpr sexpr_diff(const SExpr& f, int n = 1);

/// Substitution s -> s - a; returns the new expression and sigma + a.
std::pair<SExpr, double> shift(const SExpr& f, double sigma, double a);

/// Rendering with 9 significant digits, e.g. "2/((s-0.1)^2+4)".
std::string to_string(const SExpr& f);

/// Format used by every user-facing number: 9 significant digits.
std::string format9(double v);

}  // namespace dlap
