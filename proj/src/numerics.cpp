#include "pd4/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "pd4/hamiltonian.hpp"
#include "pd4/weyl.hpp"

namespace pd4::num {

using namespace pd4::alg;

CompiledPoly::CompiledPoly(const Polynomial& p,
                           const std::array<Rat, 4>& alpha) {
  std::map<int, Polynomial> subs;
  for (int k = 0; k < 4; ++k) {
    subs.emplace(VA0 + k, Polynomial::constant(alpha[k]));
  }
  Polynomial s = p.substitute(subs);
  if (s.max_var() > VT) {
    throw std::invalid_argument("unspecialized variables in compiled poly");
  }
  for (const auto& [m, c] : s.terms()) {
    Term t{alg::rat_to_double(c), {}};
    for (int v = 0; v < kPhase; ++v) {
      t.e[v] = static_cast<int8_t>(alg::exponent(m, v));
    }
    t.e[6] = static_cast<int8_t>(alg::exponent(m, VT));
    terms_.push_back(t);
  }
}

namespace {

double ipow(double b, int e) {
  if (e < 0) return 1.0 / ipow(b, -e);
  double r = 1.0;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

double CompiledPoly::eval(const std::array<double, 6>& u, double t) const {
  double total = 0;
  for (const auto& term : terms_) {
    double v = term.c;
    for (int i = 0; i < 6; ++i) {
      if (term.e[i]) v *= ipow(u[i], term.e[i]);
    }
    if (term.e[6]) v *= ipow(t, term.e[6]);
    total += v;
  }
  return total;
}

void VectorField::eval(double t, const std::array<double, 6>& u,
                       std::array<double, 6>& du) const {
  for (int i = 0; i < 6; ++i) du[i] = f[i].eval(u, t);
}

VectorField compile_equations(const Polynomial& H,
                              const std::array<Rat, 4>& alpha) {
  auto eom = ham::equations_of_motion(H);
  VectorField vf;
  for (int i = 0; i < 6; ++i) vf.f[i] = CompiledPoly(eom[i], alpha);
  return vf;
}

namespace {

bool out_of_bounds(const std::array<double, 6>& u, double bound) {
  for (double v : u) {
    if (!std::isfinite(v) || std::fabs(v) > bound) return true;
  }
  return false;
}

}  // namespace

IntegrationResult integrate(const VectorField& vf, double t0, double t1,
                            const std::array<double, 6>& u0,
                            const IntegrationOptions& opt) {
  IntegrationResult res;
  res.samples.push_back({t0, u0});
  res.final_state = u0;
  res.final_time = t0;
  if (out_of_bounds(u0, opt.blowup)) {
    res.status = IntegrationStatus::blowup;
    return res;
  }
  if (t0 == t1) return res;

  const double dir = t1 > t0 ? 1.0 : -1.0;
  std::vector<double> sched;
  for (double s : opt.sample_times) {
    if ((s - t0) * dir > 0 && (t1 - s) * dir > 0) sched.push_back(s);
  }
  sched.push_back(t1);
  std::sort(sched.begin(), sched.end());
  if (dir < 0) std::reverse(sched.begin(), sched.end());
  sched.erase(std::unique(sched.begin(), sched.end()), sched.end());

  // classic fifth-order pair with embedded fourth-order error estimate
  static const double a2[] = {1.0 / 5};
  static const double a3[] = {3.0 / 40, 9.0 / 40};
  static const double a4[] = {44.0 / 45, -56.0 / 15, 32.0 / 9};
  static const double a5[] = {19372.0 / 6561, -25360.0 / 2187,
                              64448.0 / 6561, -212.0 / 729};
  static const double a6[] = {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247,
                              49.0 / 176, -5103.0 / 18656};
  static const double b[] = {35.0 / 384,     0.0,        500.0 / 1113,
                             125.0 / 192,    -2187.0 / 6784, 11.0 / 84};
  static const double e[] = {71.0 / 57600,  0.0,          -71.0 / 16695,
                             71.0 / 1920,   -17253.0 / 339200, 22.0 / 525,
                             -1.0 / 40};

  std::array<double, 6> u = u0;
  double t = t0;
  double h = std::min(1e-3, std::fabs(t1 - t0)) * dir;
  std::array<double, 6> k1, k2, k3, k4, k5, k6, k7, y, ytmp;
  vf.eval(t, u, k1);

  size_t next = 0;
  while (next < sched.size()) {
    double target = sched[next];
    double dist = (target - t) * dir;
    if (dist <= 1e-14 * std::max(1.0, std::fabs(target))) {
      res.samples.push_back({target, u});
      t = target;
      ++next;
      continue;
    }
    double hs = std::min(std::fabs(h), dist) * dir;
    bool lands = std::fabs(hs) >= dist - 1e-14 * std::max(1.0, dist);

    auto stage = [&](const double* a, int n, double c,
                     std::array<double, 6>& k) {
      for (int i = 0; i < 6; ++i) {
        double acc = 0;
        const std::array<double, 6>* ks[] = {&k1, &k2, &k3, &k4, &k5};
        for (int j = 0; j < n; ++j) acc += a[j] * (*ks[j])[i];
        ytmp[i] = u[i] + hs * acc;
      }
      vf.eval(t + c * hs, ytmp, k);
    };
    stage(a2, 1, 1.0 / 5, k2);
    stage(a3, 2, 3.0 / 10, k3);
    stage(a4, 3, 4.0 / 5, k4);
    stage(a5, 4, 8.0 / 9, k5);
    stage(a6, 5, 1.0, k6);
    for (int i = 0; i < 6; ++i) {
      y[i] = u[i] + hs * (b[0] * k1[i] + b[2] * k3[i] + b[3] * k4[i] +
                          b[4] * k5[i] + b[5] * k6[i]);
    }
    vf.eval(t + hs, y, k7);

    double err = 0;
    bool finite = true;
    for (int i = 0; i < 6; ++i) {
      double le = hs * (e[0] * k1[i] + e[2] * k3[i] + e[3] * k4[i] +
                        e[4] * k5[i] + e[5] * k6[i] + e[6] * k7[i]);
      double sc = opt.abs_tol +
                  opt.rel_tol * std::max(std::fabs(u[i]), std::fabs(y[i]));
      if (!std::isfinite(y[i])) finite = false;
      err += (le / sc) * (le / sc);
    }
    err = std::sqrt(err / 6.0);

    if (finite && err <= 1.0) {
      t = lands ? target : t + hs;
      u = y;
      k1 = k7;
      ++res.steps;
      if (out_of_bounds(u, opt.blowup)) {
        res.status = IntegrationStatus::blowup;
        break;
      }
      if (lands) {
        res.samples.push_back({t, u});
        ++next;
      }
    } else {
      ++res.rejected;
    }
    double fac = finite && err > 0
                     ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0)
                     : (finite ? 5.0 : 0.2);
    h = std::fabs(hs) * fac * dir;
    if (std::fabs(h) < opt.min_step) {
      res.status = IntegrationStatus::step_underflow;
      break;
    }
  }

  res.final_state = u;
  res.final_time = t;
  return res;
}

void write_csv(std::ostream& os, std::span<const SamplePoint> samples) {
  os << "t,x,y,z,w,q,p\n";
  char buf[32];
  for (const auto& s : samples) {
    std::snprintf(buf, sizeof buf, "%.17g", s.t);
    os << buf;
    for (double v : s.u) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      os << ',' << buf;
    }
    os << '\n';
  }
}

namespace {

std::vector<double> uniform_times(double t0, double t1, int n) {
  std::vector<double> out;
  for (int k = 1; k < n; ++k) {
    out.push_back(t0 + (t1 - t0) * k / n);
  }
  return out;
}

Rat rat_of(double v) { return Rat(v); }

}  // namespace

NumericSymmetryReport backlund_numeric_check(
    int i, const std::array<Rat, 4>& alpha, const std::array<Rat, 6>& u0,
    const Rat& t0, const Rat& t1, int samples, double tol,
    const IntegrationOptions& base) {
  NumericSymmetryReport rep;
  weyl::BirationalMap g = weyl::generator(i);
  std::array<Rat, 4> alpha2 = g.apply_param(alpha);

  weyl::PointState start{u0, t0, alpha};
  auto v0 = weyl::apply_at_point(g, start);
  if (!v0) return rep;  // initial point on the generator's polar locus

  Polynomial H = ham::build_hamiltonian();
  VectorField vf_src = compile_equations(H, alpha);
  VectorField vf_img = compile_equations(H, alpha2);

  double td0 = alg::rat_to_double(t0), td1 = alg::rat_to_double(t1);
  IntegrationOptions opt = base;
  opt.sample_times = uniform_times(td0, td1, samples);

  std::array<double, 6> us, vs;
  for (int k = 0; k < 6; ++k) {
    us[k] = alg::rat_to_double(u0[k]);
    vs[k] = alg::rat_to_double(v0->u[k]);
  }
  IntegrationResult src = integrate(vf_src, td0, td1, us, opt);
  IntegrationResult img = integrate(vf_img, td0, td1, vs, opt);
  if (src.status != IntegrationStatus::ok ||
      img.status != IntegrationStatus::ok ||
      src.samples.size() != img.samples.size()) {
    return rep;
  }
  rep.completed = true;

  for (size_t k = 0; k < src.samples.size(); ++k) {
    weyl::PointState ps;
    for (int c = 0; c < 6; ++c) ps.u[c] = rat_of(src.samples[k].u[c]);
    ps.t = rat_of(src.samples[k].t);
    ps.alpha = alpha;
    auto im = weyl::apply_at_point(g, ps);
    if (!im) return rep;  // trajectory crossed the polar locus
    for (int c = 0; c < 6; ++c) {
      double d =
          std::fabs(alg::rat_to_double(im->u[c]) - img.samples[k].u[c]);
      rep.max_deviation = std::max(rep.max_deviation, d);
    }
  }
  rep.ok = rep.max_deviation <= tol;
  return rep;
}

DriftReport first_integral_numeric_check(const Polynomial& H_sys,
                                         const Polynomial& I,
                                         const std::array<Rat, 4>& alpha,
                                         const std::array<Rat, 6>& u0,
                                         const Rat& t0, const Rat& t1,
                                         int samples, double tol,
                                         const IntegrationOptions& base) {
  DriftReport rep;
  VectorField vf = compile_equations(H_sys, alpha);
  CompiledPoly ci(I, alpha);

  double td0 = alg::rat_to_double(t0), td1 = alg::rat_to_double(t1);
  IntegrationOptions opt = base;
  opt.sample_times = uniform_times(td0, td1, samples);

  std::array<double, 6> us;
  for (int k = 0; k < 6; ++k) us[k] = alg::rat_to_double(u0[k]);
  IntegrationResult run = integrate(vf, td0, td1, us, opt);
  if (run.status != IntegrationStatus::ok) return rep;
  rep.completed = true;

  double i0 = ci.eval(run.samples.front().u, run.samples.front().t);
  for (const auto& s : run.samples) {
    rep.max_drift = std::max(rep.max_drift, std::fabs(ci.eval(s.u, s.t) - i0));
  }
  rep.ok = rep.max_drift <= tol;
  return rep;
}

}  // namespace pd4::num
