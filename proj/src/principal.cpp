#include "pd4/principal.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pd4/serialize.hpp"

namespace pd4::prin {

namespace {

Polynomial V(int v) { return Polynomial::variable(v); }

Polynomial C(long n, long d = 1) { return Polynomial::constant(Rat(n, d)); }

Polynomial tpow(int k) {
  return Polynomial::constant(Rat(1)).shift_t(k);
}

}  // namespace

AffineForm AffineForm::alpha(int k) {
  if (k < 0 || k > 3) throw std::invalid_argument("alpha index out of range");
  AffineForm f;
  if (k == 0) {
    f.c_ = {Rat(1), Rat(-1), Rat(-1), Rat(-1)};
  } else {
    f.c_[k] = 1;
  }
  return f;
}

AffineForm AffineForm::operator+(const AffineForm& o) const {
  AffineForm r;
  for (int i = 0; i < 4; ++i) r.c_[i] = c_[i] + o.c_[i];
  return r;
}

AffineForm AffineForm::operator-(const AffineForm& o) const {
  AffineForm r;
  for (int i = 0; i < 4; ++i) r.c_[i] = c_[i] - o.c_[i];
  return r;
}

AffineForm AffineForm::operator-() const { return scaled(Rat(-1)); }

AffineForm AffineForm::scaled(const Rat& s) const {
  AffineForm r;
  for (int i = 0; i < 4; ++i) r.c_[i] = c_[i] * s;
  return r;
}

bool AffineForm::operator<(const AffineForm& o) const {
  for (int i = 0; i < 4; ++i) {
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  }
  return false;
}

bool AffineForm::is_constant() const {
  return c_[1] == 0 && c_[2] == 0 && c_[3] == 0;
}

Rat AffineForm::evaluate(const std::array<Rat, 4>& alpha) const {
  Rat v = c_[0];
  for (int i = 1; i < 4; ++i) v += c_[i] * alpha[i];
  return v;
}

Polynomial AffineForm::to_polynomial() const {
  Polynomial p = Polynomial::constant(c_[0]);
  for (int i = 1; i < 4; ++i) {
    if (c_[i] != 0) p += Polynomial::variable(VA0 + i).scaled(c_[i]);
  }
  return p;
}

std::string AffineForm::to_string() const {
  return pd4::alg::to_string(to_polynomial());
}

ExpSum ExpSum::term(const RationalExpr& c, const AffineForm& e) {
  ExpSum s;
  s.add(e, eliminate_alpha0(c));
  return s;
}

void ExpSum::add(const AffineForm& e, const RationalExpr& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

ExpSum ExpSum::operator+(const ExpSum& o) const {
  ExpSum r = *this;
  for (const auto& [e, c] : o.terms_) r.add(e, c);
  return r;
}

ExpSum ExpSum::operator-(const ExpSum& o) const { return *this + (-o); }

ExpSum ExpSum::operator-() const {
  ExpSum r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

ExpSum ExpSum::operator*(const ExpSum& o) const {
  ExpSum r;
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) r.add(e1 + e2, c1 * c2);
  }
  return r;
}

ExpSum ExpSum::ddt() const {
  ExpSum r;
  for (const auto& [e, c] : terms_) {
    RationalExpr ce = c * RationalExpr(e.to_polynomial());
    r.add(e - AffineForm(Rat(1)), ce);
  }
  return r;
}

ExpSum ExpSum::specialize_constants(const Rat& c1, const Rat& c2) const {
  std::map<int, Polynomial> b{{VC1, Polynomial::constant(c1)},
                              {VC2, Polynomial::constant(c2)}};
  ExpSum r;
  for (const auto& [e, c] : terms_) r.add(e, c.substitute_poly(b));
  return r;
}

std::string ExpSum::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << pd4::alg::to_string(c) << ") * t^(" << e.to_string() << ")";
  }
  return os.str();
}

ExpSum expsum_substitute(const Polynomial& P,
                         const std::map<int, ExpSum>& bindings) {
  ExpSum out;
  for (const auto& [m, c] : P.terms()) {
    // parameter and constant exponents stay in the coefficient
    Monomial coeff_mono;
    for (int v = VT + 1; v <= P.max_var(); ++v) {
      set_exponent(coeff_mono, v, exponent(m, v));
    }
    ExpSum acc = ExpSum::term(RationalExpr(Polynomial::monomial(coeff_mono, c)),
                              AffineForm(Rat(exponent(m, VT))));
    for (int v = 0; v < kPhase; ++v) {
      int e = exponent(m, v);
      if (e == 0) continue;
      auto it = bindings.find(v);
      if (it == bindings.end()) {
        throw std::invalid_argument("unbound phase variable " + var_name(v));
      }
      for (int k = 0; k < e; ++k) acc = acc * it->second;
    }
    out = out + acc;
  }
  return out;
}

double expsum_eval(const ExpSum& s, double t, const std::array<Rat, 4>& alpha,
                   const Rat& c1, const Rat& c2) {
  std::vector<Rat> point(VC2 + 1, Rat(0));
  for (int i = 0; i < 4; ++i) point[VA0 + i] = alpha[i];
  point[VT] = 1;  // coefficients never involve t
  point[VC1] = c1;
  point[VC2] = c2;
  double total = 0;
  for (const auto& [e, c] : s.terms()) {
    Rat cv;
    try {
      cv = c.evaluate(point);
    } catch (const PoleAtPoint&) {
      throw DegenerateParameters(
          "closed-form coefficient undefined at these parameters");
    }
    total += rat_to_double(cv) * std::pow(t, rat_to_double(e.evaluate(alpha)));
  }
  return total;
}

namespace {

AffineForm af_alpha(int k) { return AffineForm::alpha(k); }

RationalExpr over(const Polynomial& num, const AffineForm& den) {
  return RationalExpr(num, den.to_polynomial());
}

}  // namespace

SolutionPair k1_solution() {
  AffineForm a0 = af_alpha(0), a1 = af_alpha(1), a2 = af_alpha(2),
             a3 = af_alpha(3);
  AffineForm s012 = a0 + a1 + a2;  // alpha0 + alpha1 + alpha2

  ExpSum y = ExpSum::term(RationalExpr(V(VC1)), s012 - a3.scaled(Rat(2)));

  ExpSum x =
      ExpSum::term(over(V(VC1), s012 - a3),
                   AffineForm(Rat(-1)) + s012.scaled(Rat(3))) +
      ExpSum::term(over(V(VC1) * V(VC1), (s012 - a3.scaled(Rat(2))).scaled(Rat(4))),
                   AffineForm(Rat(-4)) + s012.scaled(Rat(6))) +
      ExpSum::term(RationalExpr(V(VC2)),
                   AffineForm(Rat(2)) - s012.scaled(Rat(3)));
  return {x, y};
}

SolutionPair k3_solution() {
  AffineForm a0 = af_alpha(0), a1 = af_alpha(1), a2 = af_alpha(2),
             a3 = af_alpha(3);
  AffineForm s123 = a1 + a2 + a3;

  ExpSum p = ExpSum::term(RationalExpr(V(VC1)),
                          -(a0.scaled(Rat(2)) - s123));

  ExpSum q =
      ExpSum::term(over(C(-2), s123), AffineForm(Rat(2))) +
      ExpSum::term(over(V(VC1).scaled(Rat(-4)), s123 - a0),
                   AffineForm(Rat(2)) - a0.scaled(Rat(3))) +
      ExpSum::term(over((V(VC1) * V(VC1)).scaled(Rat(-4)),
                        s123 - a0.scaled(Rat(2))),
                   AffineForm(Rat(2)) - a0.scaled(Rat(6))) +
      ExpSum::term(RationalExpr(V(VC2)),
                   AffineForm(Rat(-1)) + a0.scaled(Rat(3)));
  return {q, p};
}

ClosedFormReport verify_closed_form(const SolutionPair& sol, int subsystem) {
  using ham::build_hamiltonian;
  using ham::restrict_hamiltonian;

  Polynomial H = build_hamiltonian();
  Polynomial K;
  int pos_var, mom_var;
  if (subsystem == 1) {
    static const int zeroed[] = {VZ, VW, VQ, VP};
    K = restrict_hamiltonian(H, zeroed);
    pos_var = VX;
    mom_var = VY;
  } else if (subsystem == 3) {
    static const int zeroed[] = {VX, VY, VZ, VW};
    K = restrict_hamiltonian(H, zeroed);
    pos_var = VQ;
    mom_var = VP;
  } else {
    throw std::invalid_argument("subsystem must be 1 or 3");
  }

  std::map<int, ExpSum> bind{{pos_var, sol.first}, {mom_var, sol.second}};
  ClosedFormReport rep;
  rep.residual_first =
      sol.first.ddt() - expsum_substitute(K.derivative(mom_var), bind);
  rep.residual_second =
      sol.second.ddt() + expsum_substitute(K.derivative(pos_var), bind);
  rep.ok = rep.residual_first.is_zero() && rep.residual_second.is_zero();
  return rep;
}

K2Report k2_transform() {
  Polynomial H = ham::build_hamiltonian();
  static const int zeroed[] = {VX, VY, VQ, VP};
  Polynomial K2 = ham::restrict_hamiltonian(H, zeroed);

  // old coordinates in terms of the rescaled ones: z -> z/t, w -> w t
  std::map<int, Polynomial> resc{{VZ, V(VZ) * tpow(-1)}, {VW, V(VW) * tpow(1)}};
  K2Report rep;
  rep.correction = V(VZ) * V(VW) * tpow(-1);
  rep.k2_tilde = K2.substitute(resc) + rep.correction;

  Polynomial inner = V(VZ) * V(VW) * V(VW) + (V(VZ) * V(VW)).scaled(Rat(2)) +
                     (V(VA1) + V(VA2)) * V(VW).scaled(Rat(2)) +
                     V(VA1).scaled(Rat(2));
  Polynomial target = V(VZ) * inner * tpow(-1).scaled(Rat(3, 4));
  rep.matches_display = rep.k2_tilde == target;

  Polynomial w1 = V(VW) * tpow(-1);
  Polynomial z1 = V(VZ) * tpow(1);
  rep.symplectic = ham::poisson_bracket(w1, z1) == C(1);
  return rep;
}

bool first_integral_I_check() {
  Polynomial k2t = k2_transform().k2_tilde;
  Polynomial I = k2t * tpow(1).scaled(Rat(4));
  return ham::total_time_derivative(I, k2t).is_zero();
}

Polynomial k1_nonintegral_residual() {
  Polynomial H = ham::build_hamiltonian();
  static const int zeroed[] = {VZ, VW, VQ, VP};
  Polynomial K1 = ham::restrict_hamiltonian(H, zeroed);
  Polynomial J = K1 * tpow(1).scaled(Rat(4));
  return ham::total_time_derivative(J, K1);
}

}  // namespace pd4::prin
