#pragma once

#include <map>
#include <optional>
#include <vector>

#include "pd4/rational.hpp"
#include "pd4/universe.hpp"

namespace pd4::alg {

// Sparse exact multivariate polynomial. Laurent exponents are permitted for
// t only; every stored coefficient is nonzero, so map equality is value
// equality.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rat, GrlexLess>;

  Polynomial() = default;
  static Polynomial constant(const Rat& c);
  static Polynomial variable(int v);
  static Polynomial monomial(Monomial m, const Rat& c);

  bool is_zero() const { return terms_.empty(); }
  // Zero or a single exponent-free term.
  bool is_scalar() const;
  Rat scalar_value() const;  // requires is_scalar()
  size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  void add_term(const Monomial& m, const Rat& c);

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

  Polynomial scaled(const Rat& c) const;
  Polynomial pow(unsigned e) const;
  // Multiplies every term by t^k (k may be negative).
  Polynomial shift_t(int32_t k) const;

  Polynomial derivative(int v) const;

  // Simultaneous substitution with polynomial images; vars not in the map
  // stay themselves. A variable carrying a negative exponent (only t can)
  // may only be bound to a single-term image.
  Polynomial substitute(const std::map<int, Polynomial>& bindings) const;

  // point is indexed by variable; throws PoleAtPoint for t=0 under a
  // negative t-exponent and std::invalid_argument when a present variable
  // is not covered.
  Rat evaluate(const std::vector<Rat>& point) const;

  int max_exp(int v) const;  // 0 for the zero polynomial
  int min_exp(int v) const;
  int max_var() const;       // highest variable index present; -1 if none
  int phase_deg() const;     // max over terms
  int total_deg() const;
  bool depends_on(int v) const;

  // Entrywise minimum exponent vector over the support ({} when zero).
  Monomial mono_content() const;
  // Positive rational c with p/c a primitive integer polynomial; 0 for zero.
  Rat scalar_content() const;
  const std::pair<const Monomial, Rat>& leading() const;  // grlex-largest

 private:
  TermMap terms_;
};

// Quotient when den divides num exactly, nullopt otherwise (a value, not an
// error). Handles Laurent t by factoring out the minimal t-power first.
std::optional<Polynomial> exact_divide(const Polynomial& num,
                                       const Polynomial& den);

// Eliminates solved_var via divisor = 0; divisor must be linear in
// solved_var with a nonzero scalar coefficient. The result is zero exactly
// when f lies in the principal ideal (divisor).
Polynomial reduce_mod(const Polynomial& f, const Polynomial& divisor,
                      int solved_var);

}  // namespace pd4::alg
