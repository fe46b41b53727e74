#pragma once

#include <array>

#include "pd4/rational_expr.hpp"

namespace pd4::holo {

using namespace pd4::alg;

// Birational coordinate change resolving one accessible singularity.
// Parameters are untouched; only the six phase images matter.
struct ChartMap {
  std::array<RationalExpr, 6> images;
};

ChartMap chart(int i);          // forward map, i in 0..3
ChartMap chart_inverse(int i);
int chart_singular_var(int i);  // variable whose vanishing locus is the chart's

// Both compositions fix every coordinate exactly.
bool chart_roundtrip(int i);

struct HolomorphyReport {
  bool ok = false;
  // denominator exponent of the singular variable; -1 when the transformed
  // denominator is not a monomial in it
  int pole_order = 0;
  RationalExpr image;    // transformed expression, alpha0 eliminated
  Polynomial offending;  // numerator terms below the pole order
};

// Transforms K through chart i and decides whether the image is polynomial
// in the chart coordinates (t-Laurent coefficients allowed). The -z
// correction in chart 2 belongs to the Hamiltonian being checked, so
// Hamiltonian-level calls set apply_adjustment and direction-level calls
// do not.
HolomorphyReport check_holomorphy(const Polynomial& K, int i,
                                  bool apply_adjustment = true);

// H + sum_k a_k (y+2p)^k with symbolic coefficients a_k passes every chart
// (adjustment applied), so the whole family is holomorphic at once.
bool family_holomorphic_symbolic();

struct AnsatzResult {
  int columns = 0;      // size of the degree-4 monomial basis
  int rows = 0;         // polynomiality constraints imposed
  int dimension = 0;    // dimension of the affine solution space
  bool consistent = false;
  bool contains_hamiltonian = false;
  std::array<bool, 4> contains_direction{};  // H + (y+2p)^k, k = 1..4
};

// Imposes chart polynomiality on a generic phase-degree-4 ansatz at numeric
// (t0, alpha) and reports the surviving affine family.
AnsatzResult ansatz_solve(const Rat& t0, const std::array<Rat, 4>& alpha);

}  // namespace pd4::holo
