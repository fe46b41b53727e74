#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "pd4/rational_expr.hpp"

namespace pd4::ham {

using namespace pd4::alg;

// The coupled Hamiltonian: polynomial in the phase variables (phase degree
// 4), Laurent in t, linear in alpha1..alpha3. alpha0 never appears; it
// enters every identity only through the normalization alpha0+...+alpha3=1.
Polynomial build_hamiltonian();

// Canonical bracket with {y,x} = {w,z} = {p,q} = 1.
Polynomial poisson_bracket(const Polynomial& f, const Polynomial& g);
RationalExpr poisson_bracket(const RationalExpr& f, const RationalExpr& g);

// Components ordered (x,y,z,w,q,p):
//   xdot = dH/dy   ydot = -dH/dx
//   zdot = dH/dw   wdot = -dH/dz
//   qdot = dH/dp   pdot = -dH/dq
std::array<Polynomial, 6> equations_of_motion(const Polynomial& H);
std::array<RationalExpr, 6> equations_of_motion(const RationalExpr& H);

// H with the listed phase variables set to zero.
Polynomial restrict_hamiltonian(const Polynomial& H, std::span<const int> zeroed);

// dg/dt along the flow: {H,g} + dg/dt.
Polynomial total_time_derivative(const Polynomial& g, const Polynomial& H);
RationalExpr total_time_derivative(const RationalExpr& g, const RationalExpr& H);

struct IntegralSearchResult {
  std::vector<Polynomial> basis;  // exact kernel of g -> {H,g} + dg/dt
  int columns = 0;                // ansatz monomials
  int rows = 0;                   // independent equations imposed
};

// Kernel of the total time derivative over the ansatz space spanned by
// monomials in H's active phase variables (canonical pairs H touches) of
// phase degree <= phase_degree_bound times t^k, t_lo <= k <= t_hi. H must
// be parameter-free (alpha specialized); throws std::invalid_argument
// otherwise and BudgetExceeded when the ansatz exceeds column_budget.
IntegralSearchResult first_integral_search(const Polynomial& H,
                                           int phase_degree_bound, int t_lo,
                                           int t_hi,
                                           std::size_t column_budget = 20000);

}  // namespace pd4::ham
