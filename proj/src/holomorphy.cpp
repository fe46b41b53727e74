#include "pd4/holomorphy.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <vector>

#include "pd4/hamiltonian.hpp"
#include "pd4/linalg.hpp"

namespace pd4::holo {

namespace {

RationalExpr V(int v) { return RationalExpr::variable(v); }

RationalExpr C(long n, long d = 1) { return RationalExpr::constant(Rat(n, d)); }

RationalExpr half(int v) { return V(v) * C(1, 2); }

}  // namespace

int chart_singular_var(int i) {
  switch (i) {
    case 0:
      return VX;
    case 1:
    case 2:
      return VZ;
    case 3:
      return VQ;
  }
  throw std::invalid_argument("chart index out of range");
}

ChartMap chart(int i) {
  RationalExpr x = V(VX), y = V(VY), z = V(VZ), w = V(VW), q = V(VQ),
               p = V(VP), t = V(VT);
  RationalExpr a0 = V(VA0), a1 = V(VA1), a2 = V(VA2), a3 = V(VA3);
  switch (i) {
    case 0:
      return {{C(1) / x, -((y + z * z * C(1, 4)) * x + a0) * x, z,
               w + half(VX) * z, q, p}};
    case 1:
      return {{x, y, C(1) / z, -(w * z + a1) * z, q, p}};
    case 2:
      return {{x - half(VZ), y + z * z * C(1, 4), C(1) / z,
               -((w + half(VY) + p + t + half(VX) * z - z * q * C(1, 4)) * z +
                 a2) *
                   z,
               q - z, p - z * z * C(1, 8)}};
    case 3:
      return {{x, y, z, w, C(1) / q, -(p * q + a3) * q}};
  }
  throw std::invalid_argument("chart index out of range");
}

ChartMap chart_inverse(int i) {
  RationalExpr x = V(VX), y = V(VY), z = V(VZ), w = V(VW), q = V(VQ),
               p = V(VP), t = V(VT);
  RationalExpr a0 = V(VA0), a1 = V(VA1), a2 = V(VA2), a3 = V(VA3);
  switch (i) {
    case 0:
      return {{C(1) / x, -y * x * x - a0 * x - z * z * C(1, 4), z,
               w - z / (x * C(2)), q, p}};
    case 1:
      return {{x, y, C(1) / z, -(w * z + a1) * z, q, p}};
    case 2:
      return {{x + C(1) / (z * C(2)), y - C(1) / (z * z * C(4)), C(1) / z,
               -w * z * z - a2 * z - half(VY) - p - t - x / (z * C(2)) +
                   q / (z * C(4)),
               q + C(1) / z, p + C(1) / (z * z * C(8))}};
    case 3:
      return {{x, y, z, w, C(1) / q, -(p * q + a3) * q}};
  }
  throw std::invalid_argument("chart index out of range");
}

bool chart_roundtrip(int i) {
  ChartMap f = chart(i), g = chart_inverse(i);
  std::map<int, RationalExpr> bf, bg;
  for (int v = 0; v < kPhase; ++v) {
    bf.emplace(v, f.images[v]);
    bg.emplace(v, g.images[v]);
  }
  for (int v = 0; v < kPhase; ++v) {
    if (!(f.images[v].substitute(bg) == V(v))) return false;
    if (!(g.images[v].substitute(bf) == V(v))) return false;
  }
  return true;
}

HolomorphyReport check_holomorphy(const Polynomial& K, int i,
                                  bool apply_adjustment) {
  Polynomial e = K;
  if (i == 2 && apply_adjustment) e -= Polynomial::variable(VZ);

  ChartMap inv = chart_inverse(i);
  std::map<int, RationalExpr> bind;
  for (int v = 0; v < kPhase; ++v) bind.emplace(v, inv.images[v]);

  HolomorphyReport rep;
  rep.image = eliminate_alpha0(RationalExpr(e).substitute(bind));

  int sv = chart_singular_var(i);
  const Polynomial& den = rep.image.den();
  if (den.term_count() != 1) {
    rep.pole_order = -1;
    return rep;
  }
  const Monomial& dm = den.leading().first;
  for (int v = 0; v <= den.max_var(); ++v) {
    if (v != sv && v != VT && exponent(dm, v) != 0) {
      rep.pole_order = -1;
      return rep;
    }
  }
  rep.pole_order = exponent(dm, sv);
  for (const auto& [m, c] : rep.image.num().terms()) {
    if (exponent(m, sv) < rep.pole_order) rep.offending.add_term(m, c);
  }
  rep.ok = rep.offending.is_zero();
  return rep;
}

bool family_holomorphic_symbolic() {
  Polynomial K = ham::build_hamiltonian();
  Polynomial dir = Polynomial::variable(VY) +
                   Polynomial::variable(VP).scaled(Rat(2));
  for (int k = 1; k <= 4; ++k) {
    K += Polynomial::variable(VANSATZ + k - 1) * dir.pow(k);
  }
  for (int i = 0; i < 4; ++i) {
    if (!check_holomorphy(K, i, true).ok) return false;
  }
  return true;
}

namespace {

Rat rat_pow(const Rat& b, int e) {
  Rat r(1);
  for (int k = 0; k < std::abs(e); ++k) r *= b;
  return e < 0 ? Rat(1) / r : r;
}

// image of one chart coordinate as num / v^k with num polynomial in the
// chart variables, t and alpha already specialized
struct NumImage {
  Polynomial num;
  int k = 0;
};

using RowKey = std::array<int, 6>;  // singular slot may go negative

std::array<NumImage, 6> specialized_images(int i, const Rat& t0,
                                           const std::array<Rat, 4>& alpha,
                                           int sv) {
  std::map<int, RationalExpr> subs;
  subs.emplace(VT, RationalExpr::constant(t0));
  for (int k = 0; k < 4; ++k) {
    subs.emplace(VA0 + k, RationalExpr::constant(alpha[k]));
  }
  ChartMap inv = chart_inverse(i);
  std::array<NumImage, 6> out;
  for (int v = 0; v < kPhase; ++v) {
    RationalExpr im = inv.images[v].substitute(subs);
    const Polynomial& den = im.den();
    if (den.term_count() != 1) throw std::logic_error("chart image shape");
    const auto& [dm, dc] = den.leading();
    for (int u = 0; u <= den.max_var(); ++u) {
      if (u != sv && exponent(dm, u) != 0) {
        throw std::logic_error("chart image shape");
      }
    }
    out[v].k = exponent(dm, sv);
    out[v].num = im.num().scaled(Rat(1) / dc);
  }
  return out;
}

}  // namespace

AnsatzResult ansatz_solve(const Rat& t0, const std::array<Rat, 4>& alpha) {
  // phase monomials of total degree <= 4, degree-major then ascending
  // lexicographic with the last variable fastest
  std::vector<RowKey> basis;
  std::map<RowKey, int> index;
  for (int tot = 0; tot <= 4; ++tot) {
    RowKey e{};
    int pos = 0;
    while (pos >= 0) {
      int sum = 0;
      for (int v = 0; v < 6; ++v) sum += e[v];
      if (sum == tot) {
        index.emplace(e, static_cast<int>(basis.size()));
        basis.push_back(e);
      }
      // odometer over {0..4}^6
      pos = 5;
      while (pos >= 0) {
        if (++e[pos] <= 4) break;
        e[pos] = 0;
        --pos;
      }
    }
  }

  AnsatzResult res;
  res.columns = static_cast<int>(basis.size());
  AffineSolver solver(res.columns);

  for (int i = 0; i < 4; ++i) {
    int sv = chart_singular_var(i);
    auto imgs = specialized_images(i, t0, alpha, sv);

    // negative-exponent constraints, keyed by the offending chart monomial
    std::map<RowKey, SparseRow> rows;
    auto scatter = [&](const RowKey& m, auto&& sink) {
      Polynomial num = Polynomial::constant(Rat(1));
      int k = 0;
      for (int v = 0; v < 6; ++v) {
        for (int rep = 0; rep < m[v]; ++rep) {
          num = num * imgs[v].num;
          k += imgs[v].k;
        }
      }
      for (const auto& [mono, c] : num.terms()) {
        if (exponent(mono, sv) - k >= 0) continue;
        RowKey tau{};
        for (int v = 0; v < 6; ++v) tau[v] = exponent(mono, v);
        tau[sv] -= k;
        sink(tau, c);
      }
    };

    for (int ci = 0; ci < res.columns; ++ci) {
      scatter(basis[ci],
              [&](const RowKey& tau, const Rat& c) {
                rows[tau].emplace_back(ci, c);
              });
    }

    std::map<RowKey, Rat> rhs;
    if (i == 2) {
      // r2 transforms K - z: the z-image's negative part moves to the RHS
      RowKey zm{};
      zm[VZ] = 1;
      scatter(zm, [&](const RowKey& tau, const Rat& c) { rhs[tau] += c; });
    }

    std::vector<std::pair<RowKey, SparseRow>> ordered(rows.begin(), rows.end());
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto& a, const auto& b) {
                       return a.second.size() < b.second.size();
                     });
    for (auto& [tau, row] : ordered) {
      auto it = rhs.find(tau);
      solver.add_row(row, it == rhs.end() ? Rat(0) : it->second);
      res.rows += 1;
    }
    for (const auto& [tau, b] : rhs) {
      if (!rows.count(tau)) {
        solver.add_row({}, b);
        res.rows += 1;
      }
    }
  }

  res.consistent = solver.consistent();
  res.dimension = solver.dimension();

  // Hamiltonian coefficient vector at (t0, alpha)
  std::vector<Rat> hvec(res.columns, Rat(0));
  Polynomial H = ham::build_hamiltonian();
  for (const auto& [m, c] : H.terms()) {
    Rat cc = c * rat_pow(t0, exponent(m, VT));
    for (int k = 0; k < 4; ++k) cc *= rat_pow(alpha[k], exponent(m, VA0 + k));
    RowKey key{};
    for (int v = 0; v < 6; ++v) key[v] = exponent(m, v);
    hvec[index.at(key)] += cc;
  }
  res.contains_hamiltonian = solver.contains(hvec);

  Polynomial dir = Polynomial::variable(VY) +
                   Polynomial::variable(VP).scaled(Rat(2));
  for (int k = 1; k <= 4; ++k) {
    std::vector<Rat> v = hvec;
    Polynomial dk = dir.pow(k);
    for (const auto& [m, c] : dk.terms()) {
      RowKey key{};
      for (int u = 0; u < 6; ++u) key[u] = exponent(m, u);
      v[index.at(key)] += c;
    }
    res.contains_direction[k - 1] = solver.contains(v);
  }
  return res;
}

}  // namespace pd4::holo
