#include "pd4/weyl.hpp"

#include <random>
#include <stdexcept>

namespace pd4::weyl {

namespace {

Polynomial V(int v) { return Polynomial::variable(v); }

Polynomial C(long n, long d = 1) { return Polynomial::constant(Rat(n, d)); }

RationalExpr RV(int v) { return RationalExpr::variable(v); }

}  // namespace

ParamMatrix param_identity() {
  ParamMatrix m{};
  for (int i = 0; i < 4; ++i) m[i][i] = 1;
  return m;
}

ParamMatrix param_mul(const ParamMatrix& a, const ParamMatrix& b) {
  ParamMatrix r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

std::array<Rat, 4> BirationalMap::apply_param(
    const std::array<Rat, 4>& a) const {
  std::array<Rat, 4> r;
  for (int i = 0; i < 4; ++i) {
    r[i] = 0;
    for (int j = 0; j < 4; ++j) r[i] += Rat(param[i][j]) * a[j];
  }
  return r;
}

Polynomial BirationalMap::param_poly(int k) const {
  Polynomial p;
  for (int j = 0; j < 4; ++j)
    if (param[k][j] != 0) p += V(VA0 + j).scaled(Rat(param[k][j]));
  return p;
}

size_t BirationalMap::term_count() const {
  size_t n = 0;
  for (const auto& e : images) n += e.term_count();
  return n;
}

BirationalMap identity_map() {
  BirationalMap m;
  for (int v = 0; v < kPhase; ++v) m.images[v] = RV(v);
  return m;
}

const Polynomial& divisor(int i) {
  static const std::array<Polynomial, 4> f = {
      V(VY) + V(VZ) * V(VZ).scaled(Rat(1, 4)),
      V(VW),
      V(VW) + V(VP) + V(VY).scaled(Rat(1, 2)) +
          V(VX) * V(VZ).scaled(Rat(1, 2)) - V(VZ) * V(VQ).scaled(Rat(1, 4)) +
          V(VT),
      V(VP)};
  return f.at(i);
}

int divisor_solved_var(int i) {
  static constexpr int solved[4] = {VY, VW, VW, VP};
  if (i < 0 || i > 3) throw std::out_of_range("divisor index");
  return solved[i];
}

const BirationalMap& generator(int i) {
  static const std::array<BirationalMap, 4> gens = [] {
    std::array<BirationalMap, 4> g;
    for (auto& m : g) m = identity_map();
    const Polynomial a0 = V(VA0), a1 = V(VA1), a2 = V(VA2), a3 = V(VA3);
    const Polynomial& f0 = divisor(0);
    const Polynomial& f2 = divisor(2);

    g[0].images[VX] = RV(VX) + RationalExpr(a0, f0);
    g[0].images[VW] =
        RV(VW) - RationalExpr(a0 * V(VZ), f0.scaled(Rat(2)));
    g[0].param = {{{-1, 0, 0, 0}, {2, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};

    g[1].images[VZ] = RV(VZ) + RationalExpr(a1, V(VW));
    g[1].param = {{{1, 1, 0, 0}, {0, -1, 0, 0}, {0, 1, 1, 0}, {0, 0, 0, 1}}};

    g[2].images[VX] = RV(VX) + RationalExpr(a2.scaled(Rat(1, 2)), f2);
    g[2].images[VY] = RV(VY) -
                      RationalExpr(a2 * V(VZ).scaled(Rat(1, 2)), f2) -
                      RationalExpr((a2 * a2).scaled(Rat(1, 4)), f2 * f2);
    g[2].images[VZ] = RV(VZ) + RationalExpr(a2, f2);
    g[2].images[VW] =
        RV(VW) +
        RationalExpr(a2 * (V(VQ) - V(VX).scaled(Rat(2))).scaled(Rat(1, 4)), f2);
    g[2].images[VQ] = RV(VQ) + RationalExpr(a2, f2);
    g[2].images[VP] = RV(VP) +
                      RationalExpr(a2 * V(VZ).scaled(Rat(1, 4)), f2) +
                      RationalExpr((a2 * a2).scaled(Rat(1, 8)), f2 * f2);
    g[2].param = {{{1, 0, 0, 0}, {0, 1, 1, 0}, {0, 0, -1, 0}, {0, 0, 1, 1}}};

    g[3].images[VQ] = RV(VQ) + RationalExpr(a3, V(VP));
    g[3].param = {{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 2}, {0, 0, 0, -1}}};
    return g;
  }();
  return gens.at(i);
}

BirationalMap compose(std::span<const int> word, std::size_t term_budget) {
  BirationalMap cur = identity_map();
  for (int g : word) {
    const BirationalMap& nx = generator(g);
    std::map<int, RationalExpr> bind;
    for (int v = 0; v < kPhase; ++v) bind.emplace(v, cur.images[v]);
    for (int k = 0; k < 4; ++k)
      bind.emplace(VA0 + k, RationalExpr(cur.param_poly(k)));
    BirationalMap res;
    for (int v = 0; v < kPhase; ++v)
      res.images[v] = nx.images[v].substitute(bind);
    res.param = param_mul(nx.param, cur.param);
    if (res.term_count() > term_budget)
      throw BudgetExceeded("compose: intermediate map exceeds term budget");
    cur = std::move(res);
  }
  return cur;
}

ParamMatrix compose_param(std::span<const int> word) {
  ParamMatrix m = param_identity();
  for (int g : word) m = param_mul(generator(g).param, m);
  return m;
}

namespace {

// Decomposition of a map's images over powers of one polynomial:
// image_v = nums[v] / base^ks[v].
struct CommonBase {
  Polynomial base;
  std::array<Polynomial, 6> nums;
  std::array<int, 6> ks{};
};

std::optional<CommonBase> decompose(const BirationalMap& m,
                                    const Polynomial& base) {
  CommonBase cb;
  cb.base = base;
  for (int v = 0; v < kPhase; ++v) {
    Polynomial den = m.images[v].den();
    int k = 0;
    while (!den.is_scalar()) {
      auto q = exact_divide(den, base);
      if (!q) return std::nullopt;
      den = std::move(*q);
      ++k;
    }
    cb.nums[v] = m.images[v].num().scaled(Rat(1) / den.scalar_value());
    cb.ks[v] = k;
  }
  return cb;
}

// P with parameters bound by `extra` first, then phase variables bound to
// nums/base^ks; returns (N, K) with the value N / base^K.
std::pair<Polynomial, int> substitute_clear(
    const Polynomial& P, const CommonBase& cb,
    const std::map<int, Polynomial>& extra) {
  Polynomial P2 = P.substitute(extra);
  int K = 0;
  for (const auto& [m, c] : P2.terms()) {
    (void)c;
    int d = 0;
    for (int v = 0; v < kPhase; ++v) d += exponent(m, v) * cb.ks[v];
    K = std::max(K, d);
  }
  std::array<std::vector<Polynomial>, 6> npow;
  for (auto& tab : npow) tab.assign(1, C(1));
  std::vector<Polynomial> bpow{C(1)};
  auto base_pow = [&](int e) -> const Polynomial& {
    while (static_cast<int>(bpow.size()) <= e)
      bpow.push_back(bpow.back() * cb.base);
    return bpow[e];
  };
  Polynomial N;
  for (const auto& [m, c] : P2.terms()) {
    Polynomial acc = Polynomial::constant(c);
    Monomial carry;
    int d = 0;
    for (int v = 0; v < static_cast<int>(m.size()); ++v) {
      if (m[v] == 0) continue;
      if (v < kPhase) {
        auto& tab = npow[v];
        while (static_cast<int>(tab.size()) <= m[v])
          tab.push_back(tab.back() * cb.nums[v]);
        acc = acc * tab[m[v]];
        d += m[v] * cb.ks[v];
      } else {
        set_exponent(carry, v, m[v]);
      }
    }
    acc = acc * base_pow(K - d);
    N += acc * Polynomial::monomial(carry, Rat(1));
  }
  return {std::move(N), K};
}

}  // namespace

SymmetryReport is_backlund_symmetry(const BirationalMap& m,
                                    const Polynomial& H) {
  auto Vf = ham::equations_of_motion(H);
  std::map<int, Polynomial> abind;
  for (int k = 0; k < 4; ++k) abind.emplace(VA0 + k, m.param_poly(k));

  std::optional<CommonBase> cb;
  for (int i = 0; i < 4 && !cb; ++i) cb = decompose(m, divisor(i));
  std::map<int, RationalExpr> bind;
  if (!cb) {
    for (int v = 0; v < kPhase; ++v) bind.emplace(v, m.images[v]);
    for (const auto& [k, img] : abind) bind.emplace(k, RationalExpr(img));
  }

  SymmetryReport rep;
  rep.ok = true;
  for (int u = 0; u < kPhase; ++u) {
    const RationalExpr& E = m.images[u];
    RationalExpr lhs = E.derivative(VT);
    if (cb) lhs = lhs.simplify_hint(cb->base);
    for (int j = 0; j < kPhase; ++j) {
      RationalExpr dE = E.derivative(j);
      if (dE.is_zero()) continue;
      if (cb) dE = dE.simplify_hint(cb->base);
      lhs = lhs + dE * RationalExpr(Vf[j]);
    }
    RationalExpr rhs;
    if (cb) {
      auto [N, K] = substitute_clear(Vf[u], *cb, abind);
      rhs = K == 0 ? RationalExpr(std::move(N))
                   : RationalExpr(std::move(N), cb->base.pow(K));
    } else {
      rhs = RationalExpr(Vf[u]).substitute(bind);
    }
    Polynomial resid = eliminate_alpha0((lhs - rhs).num());
    if (!resid.is_zero()) {
      rep.ok = false;
      rep.residuals.emplace_back(u, std::move(resid));
    }
  }
  return rep;
}

AdjointReport adjoint_series_check(int i, int coordinate, int max_order) {
  const Polynomial& fi = divisor(i);
  const Polynomial ai = V(VA0 + i);
  RationalExpr acc = RV(coordinate);
  Polynomial cur = Polynomial::variable(coordinate);
  Rat fact(1);
  int k = 0;
  while (true) {
    cur = ham::poisson_bracket(fi, cur);
    if (cur.is_zero()) break;
    ++k;
    fact *= k;
    if (k > max_order)
      throw BudgetExceeded("adjoint series did not terminate");
    acc = acc + RationalExpr(ai.pow(static_cast<unsigned>(k)) *
                                 cur.scaled(Rat(1) / fact),
                             fi.pow(static_cast<unsigned>(k)));
  }
  return {k, acc == generator(i).images[coordinate]};
}

std::optional<PointState> apply_at_point(const BirationalMap& m,
                                         const PointState& s) {
  std::vector<Rat> pt(VC2 + 1, Rat(0));
  for (int v = 0; v < kPhase; ++v) pt[v] = s.u[v];
  pt[VT] = s.t;
  for (int k = 0; k < 4; ++k) pt[VA0 + k] = s.alpha[k];
  PointState out;
  out.t = s.t;
  out.alpha = m.apply_param(s.alpha);
  for (int v = 0; v < kPhase; ++v) {
    try {
      out.u[v] = m.images[v].evaluate(pt);
    } catch (const PoleAtPoint&) {
      return std::nullopt;
    }
  }
  return out;
}

std::optional<PointState> apply_word_at_point(std::span<const int> word,
                                              const PointState& s) {
  PointState cur = s;
  for (int g : word) {
    auto nx = apply_at_point(generator(g), cur);
    if (!nx) return std::nullopt;
    cur = std::move(*nx);
  }
  return cur;
}

namespace {

PointState random_state(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4), tn(1, 5), td(1, 3);
  PointState s;
  for (auto& v : s.u) v = Rat(num(rng)) / den(rng);
  s.t = Rat(tn(rng)) / td(rng);
  for (auto& a : s.alpha) a = Rat(num(rng)) / den(rng);
  return s;
}

struct IterOutcome {
  bool pole = false;
  std::optional<int> order;
};

IterOutcome order_at_point(int i, int j, const PointState& start, int cap) {
  PointState cur = start;
  for (int k = 1; k <= cap; ++k) {
    auto a = apply_at_point(generator(i), cur);
    if (!a) return {true, std::nullopt};
    auto b = apply_at_point(generator(j), *a);
    if (!b) return {true, std::nullopt};
    cur = std::move(*b);
    if (cur.u == start.u && cur.alpha == start.alpha) return {false, k};
  }
  return {false, std::nullopt};
}

}  // namespace

std::optional<int> weyl_relation_order(int i, int j, int samples,
                                       std::uint64_t seed, int cap) {
  std::mt19937_64 rng(seed);
  std::optional<int> common;
  int agreed = 0;
  for (int attempts = 0; agreed < samples && attempts < samples * 50;
       ++attempts) {
    PointState s = random_state(rng);
    IterOutcome out = order_at_point(i, j, s, cap);
    if (out.pole) continue;
    if (!out.order) return std::nullopt;  // cap reached
    if (common && *common != *out.order) return std::nullopt;
    common = out.order;
    ++agreed;
  }
  if (agreed < samples) return std::nullopt;  // pole-dominated sampling
  return common;
}

DivisorReport invariant_divisor_check(int i, const Polynomial& H) {
  const Polynomial& fi = divisor(i);
  Polynomial d = ham::total_time_derivative(fi, H);
  std::map<int, Polynomial> sub;
  if (i == 0) {
    sub.emplace(VA0, Polynomial());
    sub.emplace(VA3, C(1) - V(VA1) - V(VA2));
  } else {
    Polynomial rest = C(1);
    for (int k = 1; k <= 3; ++k)
      if (k != i) rest -= V(VA0 + k);
    sub.emplace(VA0, std::move(rest));
    sub.emplace(VA0 + i, Polynomial());
  }
  Polynomial r = reduce_mod(d.substitute(sub), fi, divisor_solved_var(i));
  return {r.is_zero(), std::move(r)};
}

BirationalMap alpha2_particular_transform() {
  BirationalMap m = identity_map();
  m.images[VX] = RationalExpr(V(VX) - V(VZ).scaled(Rat(1, 2)));
  m.images[VY] = RationalExpr(V(VY) + V(VZ) * V(VZ).scaled(Rat(1, 4)));
  m.images[VW] = RationalExpr(divisor(2));
  m.images[VQ] = RationalExpr(V(VQ) - V(VZ));
  m.images[VP] = RationalExpr(V(VP) - V(VZ) * V(VZ).scaled(Rat(1, 8)));
  return m;
}

const TranslationData& translation(int k) {
  static const std::array<TranslationData, 3> data = {
      TranslationData{{1, 2, 3, 2, 1, 0}, {-2, 2, 0, 0}},
      TranslationData{{1, 1, 2, 3, 2, 1, 0, 1}, {0, -2, 2, 0}},
      TranslationData{{2, 1, 1, 2, 3, 2, 1, 0, 1, 2}, {0, 0, -2, 2}}};
  if (k < 1 || k > 3) throw std::out_of_range("translation index");
  return data[k - 1];
}

}  // namespace pd4::weyl
