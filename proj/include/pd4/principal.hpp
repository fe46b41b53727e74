#pragma once

#include <array>
#include <map>
#include <string>

#include "pd4/hamiltonian.hpp"

namespace pd4::prin {

using namespace pd4::alg;

// Affine form c0 + c1*alpha1 + c2*alpha2 + c3*alpha3, stored with alpha0
// already eliminated through the parameter-sum constraint, so two exponents
// are equal exactly when they agree modulo that constraint.
class AffineForm {
 public:
  AffineForm() = default;
  explicit AffineForm(const Rat& c0) { c_[0] = c0; }
  static AffineForm alpha(int k);

  AffineForm operator+(const AffineForm& o) const;
  AffineForm operator-(const AffineForm& o) const;
  AffineForm operator-() const;
  AffineForm scaled(const Rat& s) const;
  bool operator==(const AffineForm& o) const { return c_ == o.c_; }
  bool operator<(const AffineForm& o) const;

  bool is_constant() const;
  const Rat& constant_part() const { return c_[0]; }
  Rat evaluate(const std::array<Rat, 4>& alpha) const;
  Polynomial to_polynomial() const;
  std::string to_string() const;

 private:
  std::array<Rat, 4> c_{};  // c0, then alpha1..alpha3 coefficients
};

// Finite sum of c * t^e with c a rational expression in (alpha, C1, C2)
// and e an AffineForm. Coefficients are alpha0-eliminated on entry; terms
// with equal exponents merge and zero coefficients are dropped.
class ExpSum {
 public:
  ExpSum() = default;
  static ExpSum term(const RationalExpr& c, const AffineForm& e);

  ExpSum operator+(const ExpSum& o) const;
  ExpSum operator-(const ExpSum& o) const;
  ExpSum operator*(const ExpSum& o) const;
  ExpSum operator-() const;
  bool operator==(const ExpSum& o) const { return terms_ == o.terms_; }

  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const std::map<AffineForm, RationalExpr>& terms() const { return terms_; }

  // d/dt maps c * t^e to (c * e) * t^(e-1).
  ExpSum ddt() const;
  // C1, C2 replaced by rationals; vanished terms dropped.
  ExpSum specialize_constants(const Rat& c1, const Rat& c2) const;
  std::string to_string() const;

 private:
  void add(const AffineForm& e, const RationalExpr& c);
  std::map<AffineForm, RationalExpr> terms_;
};

// P evaluated with phase variables bound to ExpSums; t feeds exponents,
// parameters and integration constants feed coefficients. A present phase
// variable without a binding throws std::invalid_argument.
ExpSum expsum_substitute(const Polynomial& P,
                         const std::map<int, ExpSum>& bindings);

// Exact coefficient/exponent evaluation, floating t-power. Throws
// DegenerateParameters when a coefficient denominator vanishes at alpha.
double expsum_eval(const ExpSum& s, double t, const std::array<Rat, 4>& alpha,
                   const Rat& c1, const Rat& c2);

struct SolutionPair {
  ExpSum first;   // x for the K1 pair, q for the K3 pair
  ExpSum second;  // y for the K1 pair, p for the K3 pair
};

SolutionPair k1_solution();
SolutionPair k3_solution();

struct ClosedFormReport {
  bool ok = false;
  ExpSum residual_first, residual_second;
};

// subsystem 1 (x,y block) or 3 (q,p block): substitutes the pair into both
// equations of motion of the restricted Hamiltonian and reduces the
// residual ExpSums to normal form.
ClosedFormReport verify_closed_form(const SolutionPair& sol, int subsystem);

struct K2Report {
  Polynomial k2_tilde;        // derived transformed Hamiltonian
  Polynomial correction;      // the generating correction z*w/t
  bool matches_display = false;
  bool symplectic = false;    // {w/t, t z} = 1
};

// Time-dependent rescaling z -> tz, w -> w/t of the middle subsystem.
K2Report k2_transform();

// I = 4t K2~ is a first integral of the transformed subsystem.
bool first_integral_I_check();

// d/dt(4t K1) along the K1 flow; nonzero (equals 6 y^2), so the analogous
// expression is not an integral of the first subsystem.
Polynomial k1_nonintegral_residual();

}  // namespace pd4::prin
