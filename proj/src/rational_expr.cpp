#include "pd4/rational_expr.hpp"

#include <stdexcept>

namespace pd4::alg {

RationalExpr::RationalExpr(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero())
    throw std::invalid_argument("RationalExpr: zero denominator");
  normalize();
}

RationalExpr RationalExpr::constant(const Rat& c) {
  return RationalExpr(Polynomial::constant(c));
}

RationalExpr RationalExpr::variable(int v) {
  return RationalExpr(Polynomial::variable(v));
}

const Polynomial& RationalExpr::as_polynomial() const {
  if (!is_polynomial())
    throw std::logic_error("as_polynomial on a proper quotient");
  return num_;
}

void RationalExpr::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial::constant(Rat(1));
    return;
  }
  // joint monomial content
  Monomial g = mono_min(num_.mono_content(), den_.mono_content());
  if (!g.empty()) {
    Polynomial shift = Polynomial::monomial(g, Rat(1));
    num_ = *exact_divide(num_, shift);
    den_ = *exact_divide(den_, shift);
  }
  // den's own t-content folds into the Laurent numerator
  int k = den_.min_exp(VT);
  if (k != 0) {
    num_ = num_.shift_t(-k);
    den_ = den_.shift_t(-k);
  }
  // scalar denominators fold away entirely
  if (den_.is_scalar()) {
    Rat s = den_.scalar_value();
    if (s != 1) num_ = num_.scaled(Rat(1) / s);
    den_ = Polynomial::constant(Rat(1));
    return;
  }
  // full cancel when the denominator happens to divide the numerator
  if (auto q = exact_divide(num_, den_)) {
    num_ = std::move(*q);
    den_ = Polynomial::constant(Rat(1));
    return;
  }
  // scale by the numerator's content, then sign the denominator positive
  Rat c = num_.scalar_content();
  if (c != 1) {
    Rat inv = Rat(1) / c;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
  if (den_.leading().second < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

RationalExpr RationalExpr::operator-() const {
  RationalExpr r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalExpr RationalExpr::operator+(const RationalExpr& o) const {
  if (den_ == o.den_) return RationalExpr(num_ + o.num_, den_);
  if (auto q = exact_divide(o.den_, den_))
    return RationalExpr(num_ * *q + o.num_, o.den_);
  if (auto q = exact_divide(den_, o.den_))
    return RationalExpr(num_ + o.num_ * *q, den_);
  return RationalExpr(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalExpr RationalExpr::operator-(const RationalExpr& o) const {
  return *this + (-o);
}

RationalExpr RationalExpr::operator*(const RationalExpr& o) const {
  Polynomial n1 = num_, d2 = o.den_;
  if (!d2.is_scalar())
    if (auto q = exact_divide(n1, d2)) {
      n1 = std::move(*q);
      d2 = Polynomial::constant(Rat(1));
    }
  Polynomial n2 = o.num_, d1 = den_;
  if (!d1.is_scalar())
    if (auto q = exact_divide(n2, d1)) {
      n2 = std::move(*q);
      d1 = Polynomial::constant(Rat(1));
    }
  return RationalExpr(n1 * n2, d1 * d2);
}

RationalExpr RationalExpr::operator/(const RationalExpr& o) const {
  if (o.is_zero()) throw std::invalid_argument("division by zero expression");
  return *this * RationalExpr(o.den_, o.num_);
}

RationalExpr RationalExpr::pow(int e) const {
  if (e == 0) return constant(Rat(1));
  if (e < 0) {
    if (is_zero()) throw std::invalid_argument("zero to a negative power");
    return RationalExpr(den_, num_).pow(-e);
  }
  return RationalExpr(num_.pow(static_cast<unsigned>(e)),
                      den_.pow(static_cast<unsigned>(e)));
}

bool RationalExpr::operator==(const RationalExpr& o) const {
  return num_ * o.den_ == o.num_ * den_;
}

RationalExpr RationalExpr::derivative(int v) const {
  if (den_.is_scalar()) {
    Rat s = den_.scalar_value();
    return RationalExpr(num_.derivative(v).scaled(Rat(1) / s));
  }
  return RationalExpr(
      num_.derivative(v) * den_ - num_ * den_.derivative(v), den_ * den_);
}

namespace {

// P with variables bound to num/den pairs, returned as (N, D) with
// P(images) = N/D; unbound variables pass through into N. Image
// denominators are factored over a shared list of polynomial bases
// (detected by exact division) so that variables sharing a denominator,
// or powers of one, clear against the true common power rather than the
// product of per-variable powers.
std::pair<Polynomial, Polynomial> subst_cleared(
    const Polynomial& P, const std::map<int, RationalExpr>& bindings) {
  std::map<int, int32_t> maxe;
  for (const auto& [m, c] : P.terms()) {
    (void)c;
    for (int v = 0; v < static_cast<int>(m.size()); ++v)
      if (m[v] > 0 && bindings.count(v))
        maxe[v] = std::max(maxe[v], m[v]);
  }
  // den_v = c_v * prod bases[b]^{k_vb}; nums pre-scaled by 1/c_v
  std::vector<Polynomial> bases;
  std::map<int, Polynomial> nums;
  std::map<int, std::vector<std::pair<int, int>>> factors;
  for (const auto& [v, e] : maxe) {
    (void)e;
    const auto& img = bindings.at(v);
    Polynomial den = img.den();
    std::vector<std::pair<int, int>> fac;
    for (size_t b = 0; b < bases.size() && !den.is_scalar(); ++b) {
      int k = 0;
      while (true) {
        auto q = exact_divide(den, bases[b]);
        if (!q) break;
        den = std::move(*q);
        ++k;
      }
      if (k) fac.emplace_back(static_cast<int>(b), k);
    }
    if (!den.is_scalar()) {
      bases.push_back(std::move(den));
      fac.emplace_back(static_cast<int>(bases.size()) - 1, 1);
      den = Polynomial::constant(Rat(1));
    }
    Rat c = den.scalar_value();
    nums.emplace(v, c == 1 ? img.num() : img.num().scaled(Rat(1) / c));
    factors.emplace(v, std::move(fac));
  }
  // per-base power demanded by a term, and the common maximum
  auto base_need = [&](const Monomial& m, int b) {
    int d = 0;
    for (int v = 0; v < static_cast<int>(m.size()); ++v)
      if (m[v] > 0 && factors.count(v))
        for (const auto& [bi, k] : factors.at(v))
          if (bi == b) d += m[v] * k;
    return d;
  };
  std::vector<int> K(bases.size(), 0);
  for (const auto& [m, c] : P.terms()) {
    (void)c;
    for (size_t b = 0; b < bases.size(); ++b)
      K[b] = std::max(K[b], base_need(m, static_cast<int>(b)));
  }
  // power tables
  std::map<int, std::vector<Polynomial>> npow;
  for (const auto& [v, e] : maxe) {
    auto& nt = npow[v];
    nt.assign(1, Polynomial::constant(Rat(1)));
    for (int32_t i = 1; i <= e; ++i) nt.push_back(nt.back() * nums.at(v));
  }
  std::vector<std::vector<Polynomial>> bpow(bases.size());
  for (size_t b = 0; b < bases.size(); ++b) {
    bpow[b].assign(1, Polynomial::constant(Rat(1)));
    for (int i = 1; i <= K[b]; ++i)
      bpow[b].push_back(bpow[b].back() * bases[b]);
  }
  Polynomial D = Polynomial::constant(Rat(1));
  for (size_t b = 0; b < bases.size(); ++b) D = D * bpow[b][K[b]];
  Polynomial N;
  for (const auto& [m, c] : P.terms()) {
    Polynomial acc = Polynomial::constant(c);
    Monomial carry;
    for (int v = 0; v < static_cast<int>(m.size()); ++v) {
      int32_t e = m[v];
      if (e == 0) continue;
      auto it = bindings.find(v);
      if (it == bindings.end()) {
        set_exponent(carry, v, exponent(carry, v) + e);
        continue;
      }
      if (e < 0) {
        // Laurent slot bound: image must be monomial/monomial
        if (it->second.num().term_count() != 1 ||
            !it->second.den().is_scalar())
          throw std::invalid_argument(
              "negative exponent requires a monomial image");
        const auto& [im, ic] = *it->second.num().terms().begin();
        Monomial inv;
        for (int u = 0; u < static_cast<int>(im.size()); ++u) {
          if (im[u] == 0) continue;
          if (u != VT && im[u] * e < 0)
            throw std::invalid_argument(
                "negative power of image leaves the Laurent-in-t ring");
          set_exponent(inv, u, im[u] * e);
        }
        Rat s = ic / it->second.den().scalar_value();
        acc = acc * Polynomial::monomial(inv, rat_pow(s, e));
        continue;
      }
      acc = acc * npow[v][e];
    }
    // pad up to the common denominator power of every base
    for (size_t b = 0; b < bases.size(); ++b) {
      int deficit = K[b] - base_need(m, static_cast<int>(b));
      if (deficit > 0) acc = acc * bpow[b][deficit];
    }
    N += acc * Polynomial::monomial(carry, Rat(1));
  }
  return {std::move(N), std::move(D)};
}

}  // namespace

RationalExpr RationalExpr::substitute(
    const std::map<int, RationalExpr>& bindings) const {
  for (const auto& [v, img] : bindings) {
    (void)v;
    if (img.den().is_zero())
      throw std::invalid_argument("binding with identically zero denominator");
  }
  auto [n1, d1] = subst_cleared(num_, bindings);
  auto [n2, d2] = subst_cleared(den_, bindings);
  if (n2.is_zero())
    throw PoleAtPoint("denominator vanished identically under substitution");
  return RationalExpr(n1 * d2, d1 * n2);
}

RationalExpr RationalExpr::substitute_poly(
    const std::map<int, Polynomial>& b) const {
  Polynomial n = num_.substitute(b);
  Polynomial d = den_.substitute(b);
  if (d.is_zero())
    throw PoleAtPoint("denominator vanished identically under substitution");
  return RationalExpr(std::move(n), std::move(d));
}

Rat RationalExpr::evaluate(const std::vector<Rat>& point) const {
  Rat d = den_.evaluate(point);
  if (d == 0) throw PoleAtPoint("denominator vanished at the point");
  return num_.evaluate(point) / d;
}

RationalExpr RationalExpr::simplify_hint(const Polynomial& hint) const {
  if (hint.is_scalar()) return *this;
  Polynomial n = num_, d = den_;
  while (true) {
    auto qn = exact_divide(n, hint);
    if (!qn) break;
    auto qd = exact_divide(d, hint);
    if (!qd) break;
    n = std::move(*qn);
    d = std::move(*qd);
  }
  return RationalExpr(std::move(n), std::move(d));
}

RationalExpr RationalExpr::simplify_hints(
    std::span<const Polynomial> hints) const {
  RationalExpr r = *this;
  for (const auto& h : hints) r = r.simplify_hint(h);
  return r;
}

Polynomial eliminate_alpha0(const Polynomial& p) {
  if (!p.depends_on(VA0)) return p;
  Polynomial img = Polynomial::constant(Rat(1)) - Polynomial::variable(VA1) -
                   Polynomial::variable(VA2) - Polynomial::variable(VA3);
  return p.substitute({{VA0, img}});
}

RationalExpr eliminate_alpha0(const RationalExpr& e) {
  if (!e.num().depends_on(VA0) && !e.den().depends_on(VA0)) return e;
  Polynomial img = Polynomial::constant(Rat(1)) - Polynomial::variable(VA1) -
                   Polynomial::variable(VA2) - Polynomial::variable(VA3);
  return e.substitute_poly({{VA0, img}});
}

}  // namespace pd4::alg
