#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pd4/hamiltonian.hpp"

namespace pd4::weyl {

using namespace pd4::alg;

// Row-major action on the column (alpha0..alpha3).
using ParamMatrix = std::array<std::array<int, 4>, 4>;

ParamMatrix param_identity();
ParamMatrix param_mul(const ParamMatrix& a, const ParamMatrix& b);

struct BirationalMap {
  std::array<RationalExpr, 6> images;  // x..p; t maps to itself
  ParamMatrix param = param_identity();

  std::array<Rat, 4> apply_param(const std::array<Rat, 4>& a) const;
  // Image of alpha_k as a polynomial in alpha0..alpha3.
  Polynomial param_poly(int k) const;
  size_t term_count() const;
};

BirationalMap identity_map();
const BirationalMap& generator(int i);  // i in 0..3
const Polynomial& divisor(int i);       // f0..f3
int divisor_solved_var(int i);          // the variable divisor(i) is linear in

// Left-to-right composition: the first letter of the word acts first on
// points. Throws BudgetExceeded when an intermediate map's term count
// passes term_budget (parameter actions stay cheap; see compose_param).
BirationalMap compose(std::span<const int> word,
                      std::size_t term_budget = 200000);
ParamMatrix compose_param(std::span<const int> word);

struct SymmetryReport {
  bool ok = false;
  // coordinate index -> nonzero residual numerator, alpha0 eliminated
  std::vector<std::pair<int, Polynomial>> residuals;
};

// Pushforward identity: for every coordinate u, the chain-rule derivative
// of m's u-image along the flow equals the u-component of the vector field
// at the transformed point with transformed parameters.
SymmetryReport is_backlund_symmetry(const BirationalMap& m,
                                    const Polynomial& H);

struct AdjointReport {
  int order = 0;  // bracket depth at which the series terminated
  bool matches = false;
};

// Sums g + sum_k (alpha_i/f_i)^k ad^k(g)/k! with ad = {f_i, .} and compares
// against generator(i)'s image of the coordinate. Throws BudgetExceeded
// when the series fails to terminate by max_order.
AdjointReport adjoint_series_check(int i, int coordinate, int max_order = 8);

struct PointState {
  std::array<Rat, 6> u;
  Rat t = Rat(1);
  std::array<Rat, 4> alpha;
};

// nullopt when a denominator vanishes at the point.
std::optional<PointState> apply_at_point(const BirationalMap& m,
                                         const PointState& s);
std::optional<PointState> apply_word_at_point(std::span<const int> word,
                                              const PointState& s);

// Order of (s_i s_j) from exact iteration at `samples` random pole-free
// points; nullopt when samples disagree or the cap is hit.
std::optional<int> weyl_relation_order(int i, int j, int samples,
                                       std::uint64_t seed, int cap = 12);

struct DivisorReport {
  bool ok = false;
  Polynomial residual;  // reduce_mod remainder; zero iff ok
};

// Flow derivative of f_i at alpha_i = 0 lies in the ideal (f_i); the
// parameter-sum constraint is applied before reducing.
DivisorReport invariant_divisor_check(int i, const Polynomial& H);

// The symplectic change (x2..p2) whose w-image is f2.
BirationalMap alpha2_particular_transform();

struct TranslationData {
  std::vector<int> word;
  std::array<int, 4> shift;
};
const TranslationData& translation(int k);  // k in 1..3

}  // namespace pd4::weyl
