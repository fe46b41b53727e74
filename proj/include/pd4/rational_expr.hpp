#pragma once

#include <span>

#include "pd4/polynomial.hpp"

namespace pd4::alg {

// Quotient of two Polynomials. Normalization contract: common monomial
// factors cancelled, the denominator's t-content folded into the (Laurent)
// numerator, scalar denominators folded away, a full exact-division cancel
// attempted, and the surviving pair scaled so the numerator is a primitive
// integer polynomial and the denominator's leading coefficient is positive.
// No general multivariate GCD: any further cancellation happens through
// simplify_hint with an explicitly supplied factor.
class RationalExpr {
 public:
  RationalExpr() : num_(), den_(Polynomial::constant(Rat(1))) {}
  explicit RationalExpr(Polynomial num)
      : num_(std::move(num)), den_(Polynomial::constant(Rat(1))) {}
  RationalExpr(Polynomial num, Polynomial den);  // throws on zero den

  static RationalExpr constant(const Rat& c);
  static RationalExpr variable(int v);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  // True iff the denominator reduced to a scalar; Laurent-in-t numerators
  // count as polynomial (the coefficient ring is C(t)).
  bool is_polynomial() const { return den_.is_scalar(); }
  const Polynomial& as_polynomial() const;  // requires is_polynomial()

  RationalExpr operator-() const;
  RationalExpr operator+(const RationalExpr& o) const;
  RationalExpr operator-(const RationalExpr& o) const;
  RationalExpr operator*(const RationalExpr& o) const;
  RationalExpr operator/(const RationalExpr& o) const;
  RationalExpr pow(int e) const;

  // Value equality via cross-multiplication.
  bool operator==(const RationalExpr& o) const;

  RationalExpr derivative(int v) const;

  // Simultaneous substitution; denominators of the images are cleared into
  // the result. Throws PoleAtPoint when the substituted denominator
  // vanishes identically.
  RationalExpr substitute(const std::map<int, RationalExpr>& bindings) const;
  // Cheaper path for polynomial images (parameter elimination,
  // specialization).
  RationalExpr substitute_poly(const std::map<int, Polynomial>& b) const;

  Rat evaluate(const std::vector<Rat>& point) const;  // PoleAtPoint

  // While hint divides both parts exactly, cancel it; then renormalize.
  RationalExpr simplify_hint(const Polynomial& hint) const;
  RationalExpr simplify_hints(std::span<const Polynomial> hints) const;

  size_t term_count() const { return num_.term_count() + den_.term_count(); }

 private:
  void normalize();
  Polynomial num_, den_;
};

Polynomial eliminate_alpha0(const Polynomial& p);
RationalExpr eliminate_alpha0(const RationalExpr& e);

}  // namespace pd4::alg
