#include "pd4/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace pd4::alg {

Polynomial Polynomial::constant(const Rat& c) {
  Polynomial p;
  if (c != 0) p.terms_.emplace(Monomial{}, c);
  return p;
}

Polynomial Polynomial::variable(int v) {
  Monomial m;
  set_exponent(m, v, 1);
  return monomial(m, Rat(1));
}

Polynomial Polynomial::monomial(Monomial m, const Rat& c) {
  Polynomial p;
  trim(m);
  if (c != 0) p.terms_.emplace(std::move(m), c);
  return p;
}

bool Polynomial::is_scalar() const {
  return terms_.empty() ||
         (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rat Polynomial::scalar_value() const {
  if (terms_.empty()) return Rat(0);
  if (!is_scalar()) throw std::logic_error("scalar_value on non-scalar");
  return terms_.begin()->second;
}

void Polynomial::add_term(const Monomial& m, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  r += o;
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r = *this;
  r -= o;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r;
  if (terms_.empty() || o.terms_.empty()) return r;
  // iterate the smaller factor on the outside to reuse monomial products
  const Polynomial& a = terms_.size() <= o.terms_.size() ? *this : o;
  const Polynomial& b = terms_.size() <= o.terms_.size() ? o : *this;
  for (const auto& [am, ac] : a.terms_)
    for (const auto& [bm, bc] : b.terms_) r.add_term(mono_mul(am, bm), ac * bc);
  return r;
}

Polynomial Polynomial::scaled(const Rat& c) const {
  Polynomial r;
  if (c == 0) return r;
  for (const auto& [m, cc] : terms_) r.terms_.emplace(m, cc * c);
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial acc = constant(Rat(1));
  Polynomial base = *this;
  while (e) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

Polynomial Polynomial::shift_t(int32_t k) const {
  if (k == 0) return *this;
  Polynomial r;
  for (const auto& [m, c] : terms_) {
    Monomial mm = m;
    set_exponent(mm, VT, exponent(mm, VT) + k);
    r.terms_.emplace(std::move(mm), c);
  }
  return r;
}

Polynomial Polynomial::derivative(int v) const {
  Polynomial r;
  for (const auto& [m, c] : terms_) {
    int32_t e = exponent(m, v);
    if (e == 0) continue;
    Monomial mm = m;
    set_exponent(mm, v, e - 1);
    r.add_term(mm, c * e);
  }
  return r;
}

Polynomial Polynomial::substitute(
    const std::map<int, Polynomial>& bindings) const {
  // lazily extended per-variable power tables img^0, img^1, ...
  std::map<int, std::vector<Polynomial>> powers;
  auto power = [&](int v, int32_t e) -> const Polynomial& {
    auto& tab = powers[v];
    if (tab.empty()) tab.push_back(constant(Rat(1)));
    while (static_cast<int32_t>(tab.size()) <= e)
      tab.push_back(tab.back() * bindings.at(v));
    return tab[e];
  };
  Polynomial result;
  for (const auto& [m, c] : terms_) {
    Monomial carry;  // unbound variables pass through
    Polynomial acc = constant(c);
    for (int v = 0; v < static_cast<int>(m.size()); ++v) {
      int32_t e = m[v];
      if (e == 0) continue;
      auto it = bindings.find(v);
      if (it == bindings.end()) {
        set_exponent(carry, v, exponent(carry, v) + e);
        continue;
      }
      if (e < 0) {
        // only t can be here; a negative power needs a monomial image
        if (it->second.term_count() != 1)
          throw std::invalid_argument(
              "negative exponent requires a monomial image for " +
              var_name(v));
        const auto& [im, ic] = *it->second.terms().begin();
        Monomial inv;
        for (int u = 0; u < static_cast<int>(im.size()); ++u) {
          if (im[u] == 0) continue;
          if (u != VT && im[u] * e < 0)
            throw std::invalid_argument(
                "negative power of image would leave the Laurent-in-t ring");
          set_exponent(inv, u, im[u] * e);
        }
        acc = acc * monomial(inv, rat_pow(ic, e));
        continue;
      }
      acc = acc * power(v, e);
    }
    result += acc * monomial(carry, Rat(1));
  }
  return result;
}

Rat Polynomial::evaluate(const std::vector<Rat>& point) const {
  Rat sum(0);
  for (const auto& [m, c] : terms_) {
    Rat prod = c;
    for (int v = 0; v < static_cast<int>(m.size()); ++v) {
      if (m[v] == 0) continue;
      if (v >= static_cast<int>(point.size()))
        throw std::invalid_argument("evaluate: unbound variable " +
                                    var_name(v));
      if (m[v] < 0 && point[v] == 0)
        throw PoleAtPoint("t=0 under a negative t-exponent");
      prod *= rat_pow(point[v], m[v]);
    }
    sum += prod;
  }
  return sum;
}

int Polynomial::max_exp(int v) const {
  int32_t best = 0;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    (void)c;
    int32_t e = exponent(m, v);
    if (first || e > best) best = e;
    first = false;
  }
  return best;
}

int Polynomial::min_exp(int v) const {
  int32_t best = 0;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    (void)c;
    int32_t e = exponent(m, v);
    if (first || e < best) best = e;
    first = false;
  }
  return best;
}

int Polynomial::max_var() const {
  int best = -1;
  for (const auto& [m, c] : terms_) {
    (void)c;
    if (static_cast<int>(m.size()) - 1 > best)
      best = static_cast<int>(m.size()) - 1;
  }
  return best;
}

int Polynomial::phase_deg() const {
  int best = 0;
  for (const auto& [m, c] : terms_) {
    (void)c;
    best = std::max(best, phase_degree(m));
  }
  return best;
}

int Polynomial::total_deg() const {
  int best = 0;
  for (const auto& [m, c] : terms_) {
    (void)c;
    best = std::max(best, total_degree(m));
  }
  return best;
}

bool Polynomial::depends_on(int v) const {
  for (const auto& [m, c] : terms_) {
    (void)c;
    if (exponent(m, v) != 0) return true;
  }
  return false;
}

Monomial Polynomial::mono_content() const {
  Monomial g;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    (void)c;
    if (first) {
      g = m;
      first = false;
    } else {
      g = mono_min(g, m);
    }
  }
  return g;
}

Rat Polynomial::scalar_content() const {
  if (terms_.empty()) return Rat(0);
  Int gnum(0), lden(1);
  for (const auto& [m, c] : terms_) {
    (void)m;
    gnum = gcd(gnum, numerator(c));
    lden = lcm(lden, denominator(c));
  }
  return Rat(abs(gnum)) / Rat(lden);
}

const std::pair<const Monomial, Rat>& Polynomial::leading() const {
  if (terms_.empty()) throw std::logic_error("leading() of zero polynomial");
  return *terms_.rbegin();
}

std::optional<Polynomial> exact_divide(const Polynomial& num,
                                       const Polynomial& den) {
  if (den.is_zero()) throw std::invalid_argument("exact_divide by zero");
  if (num.is_zero()) return Polynomial();
  // shift t so both operands have non-negative exponents; grlex is then a
  // well-order and the division loop terminates
  int sn = num.min_exp(VT), sd = den.min_exp(VT);
  Polynomial r = num.shift_t(-sn);
  Polynomial d = den.shift_t(-sd);
  const auto& [lm, lc] = d.leading();
  Polynomial q;
  while (!r.is_zero()) {
    const auto& [rm, rc] = r.leading();
    if (!mono_divides(lm, rm)) return std::nullopt;
    Monomial qm = mono_div(rm, lm);
    Rat qc = rc / lc;
    q.add_term(qm, qc);
    r -= d * Polynomial::monomial(qm, qc);
  }
  return q.shift_t(sn - sd);
}

Polynomial reduce_mod(const Polynomial& f, const Polynomial& divisor,
                      int solved_var) {
  Polynomial coef = divisor.derivative(solved_var);
  if (!coef.is_scalar() || coef.is_zero())
    throw std::invalid_argument(
        "reduce_mod: divisor must be linear in the solved variable with a "
        "scalar coefficient");
  if (divisor.max_exp(solved_var) != 1)
    throw std::invalid_argument("reduce_mod: divisor not linear");
  // divisor = c*v + rest  =>  v -> -rest/c
  Polynomial rest = divisor - Polynomial::variable(solved_var) *
                                  Polynomial::constant(coef.scalar_value());
  Polynomial image = rest.scaled(Rat(-1) / coef.scalar_value());
  return f.substitute({{solved_var, image}});
}

}  // namespace pd4::alg
