#include "pd4/hamiltonian.hpp"

#include <map>
#include <stdexcept>

#include "pd4/linalg.hpp"

namespace pd4::ham {

namespace {

Polynomial V(int v) { return Polynomial::variable(v); }

Polynomial C(long n, long d = 1) { return Polynomial::constant(Rat(n, d)); }

Polynomial tpow(int k) {
  Monomial m;
  set_exponent(m, VT, k);
  return Polynomial::monomial(m, Rat(1));
}

}  // namespace

Polynomial build_hamiltonian() {
  Polynomial x = V(VX), y = V(VY), z = V(VZ), w = V(VW), q = V(VQ), p = V(VP);
  Polynomial t = V(VT), it = tpow(-1);
  Polynomial A1 = V(VA1), A2 = V(VA2), A3 = V(VA3);
  return C(1, 4) * it * y.pow(3) + C(3, 2) * y * y +
         (C(3) * A3 - C(1)) * it * x * y + C(3, 4) * it * z * z * w * w +
         C(3, 2) * z * z * w +
         (C(3) * A1 + C(3) * A2 - C(2)) * C(1, 2) * it * z * w +
         C(3, 2) * A1 * z - C(4) * it * p.pow(3) - C(6) * p * p -
         (C(3) * A1 + C(3) * A2 + C(3) * A3 - C(2)) * it * q * p -
         C(6) * t * p +
         C(3, 4) * it * A1 * (C(8) * x * p + C(2) * z * p + y * z) +
         C(6) * it * A2 * x * p + C(3, 2) * it * A3 * (C(4) * x * p - y * q) +
         C(3, 4) * it *
             (C(8) * x * y * q * p - C(4) * z * w * q * p +
              C(8) * x * z * w * p - C(8) * x * x * y * p +
              C(2) * z * z * w * p + y * z * z * w - C(2) * y * q * q * p +
              C(8) * w * w * p - C(4) * y * p * p + C(4) * y * w * w +
              C(4) * y * y * w + C(8) * y * w * p - C(8) * x * p +
              C(8) * t * y * w);
}

Polynomial poisson_bracket(const Polynomial& f, const Polynomial& g) {
  auto cross = [&](int a, int b) { return f.derivative(a) * g.derivative(b); };
  return cross(VY, VX) - cross(VX, VY) + cross(VW, VZ) - cross(VZ, VW) +
         cross(VP, VQ) - cross(VQ, VP);
}

RationalExpr poisson_bracket(const RationalExpr& f, const RationalExpr& g) {
  auto cross = [&](int a, int b) { return f.derivative(a) * g.derivative(b); };
  return cross(VY, VX) - cross(VX, VY) + cross(VW, VZ) - cross(VZ, VW) +
         cross(VP, VQ) - cross(VQ, VP);
}

std::array<Polynomial, 6> equations_of_motion(const Polynomial& H) {
  return {H.derivative(VY),  -H.derivative(VX), H.derivative(VW),
          -H.derivative(VZ), H.derivative(VP),  -H.derivative(VQ)};
}

std::array<RationalExpr, 6> equations_of_motion(const RationalExpr& H) {
  return {H.derivative(VY),  -H.derivative(VX), H.derivative(VW),
          -H.derivative(VZ), H.derivative(VP),  -H.derivative(VQ)};
}

Polynomial restrict_hamiltonian(const Polynomial& H,
                                std::span<const int> zeroed) {
  std::map<int, Polynomial> bindings;
  for (int v : zeroed) bindings.emplace(v, Polynomial());
  return H.substitute(bindings);
}

Polynomial total_time_derivative(const Polynomial& g, const Polynomial& H) {
  return poisson_bracket(H, g) + g.derivative(VT);
}

RationalExpr total_time_derivative(const RationalExpr& g,
                                   const RationalExpr& H) {
  return poisson_bracket(H, g) + g.derivative(VT);
}

IntegralSearchResult first_integral_search(const Polynomial& H,
                                           int phase_degree_bound, int t_lo,
                                           int t_hi,
                                           std::size_t column_budget) {
  if (H.max_var() > VT)
    throw std::invalid_argument(
        "first_integral_search requires specialized parameters");
  if (phase_degree_bound < 0 || t_lo > t_hi)
    throw std::invalid_argument("first_integral_search: empty ansatz window");

  std::vector<int> active;
  for (int pair = 0; pair < 3; ++pair) {
    int a = 2 * pair, b = 2 * pair + 1;
    if (H.depends_on(a) || H.depends_on(b)) {
      active.push_back(a);
      active.push_back(b);
    }
  }

  // ansatz monomials: active-variable exponents summing to <= bound, crossed
  // with the t-window
  std::vector<Monomial> cols;
  std::vector<int32_t> exps(active.size(), 0);
  auto emit = [&]() {
    for (int k = t_lo; k <= t_hi; ++k) {
      Monomial m;
      for (size_t i = 0; i < active.size(); ++i)
        set_exponent(m, active[i], exps[i]);
      set_exponent(m, VT, k);
      cols.push_back(std::move(m));
    }
  };
  auto gen = [&](auto&& self, size_t i, int remaining) -> void {
    if (i == active.size()) {
      emit();
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      exps[i] = e;
      self(self, i + 1, remaining - e);
    }
    exps[i] = 0;
  };
  gen(gen, 0, phase_degree_bound);
  if (cols.size() > column_budget)
    throw BudgetExceeded("first_integral_search ansatz exceeds budget");

  // one linear equation per monomial appearing in any L(b_j)
  std::map<Monomial, SparseRow, GrlexLess> equations;
  for (size_t j = 0; j < cols.size(); ++j) {
    Polynomial L = total_time_derivative(Polynomial::monomial(cols[j], Rat(1)), H);
    for (const auto& [m, c] : L.terms())
      equations[m].emplace_back(static_cast<int>(j), c);
  }

  AffineSolver solver(static_cast<int>(cols.size()));
  int rows = 0;
  for (const auto& [m, row] : equations) {
    (void)m;
    int before = solver.dimension();
    solver.add_row(row, Rat(0));
    if (solver.dimension() < before) ++rows;
  }

  IntegralSearchResult out;
  out.columns = static_cast<int>(cols.size());
  out.rows = rows;
  for (const auto& vec : solver.kernel()) {
    Polynomial b;
    for (size_t j = 0; j < cols.size(); ++j)
      if (vec[j] != 0) b.add_term(cols[j], vec[j]);
    out.basis.push_back(std::move(b));
  }
  return out;
}

}  // namespace pd4::ham
