#include <cmath>
#include <sstream>
#include <string>

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pd4/hamiltonian.hpp"
#include "pd4/numerics.hpp"
#include "pd4/principal.hpp"
#include "pd4/serialize.hpp"
#include "pd4/weyl.hpp"

using namespace pd4::alg;
using namespace pd4::num;

namespace {

Polynomial P(const std::string& s) { return poly_from_string(s); }

const std::array<Rat, 4> kAlpha{Rat(1, 3), Rat(1, 5), Rat(1, 7),
                                Rat(34, 105)};

std::vector<double> grid(double a, double b, int n) {
  std::vector<double> ts;
  for (int k = 1; k < n; ++k) ts.push_back(a + (b - a) * k / n);
  return ts;
}

}  // namespace

TEST_CASE("integrator reproduces closed-form flows") {
  // H = (x^2+y^2)/2 rotates (x,y); one full period returns the start.
  VectorField osc = compile_equations(P("1/2*x^2 + 1/2*y^2"), kAlpha);
  std::array<double, 6> u0{1, 0, 0, 0, 0, 0};
  double period = 8 * std::atan(1.0);
  IntegrationResult r = integrate(osc, 0, period, u0);
  REQUIRE(r.status == IntegrationStatus::ok);
  CHECK(r.steps > 50);
  CHECK(std::fabs(r.final_state[0] - 1) < 1e-8);
  CHECK(std::fabs(r.final_state[1]) < 1e-8);

  // H = x*y decouples into xdot = x, ydot = -y.
  VectorField exp_vf = compile_equations(P("x*y"), kAlpha);
  std::array<double, 6> e0{1, 1, 0, 0, 0, 0};
  IntegrationResult re = integrate(exp_vf, 0, 2, e0);
  REQUIRE(re.status == IntegrationStatus::ok);
  CHECK(std::fabs(re.final_state[0] - std::exp(2.0)) < 1e-8 * std::exp(2.0));
  CHECK(std::fabs(re.final_state[1] - std::exp(-2.0)) < 1e-8);

  // Integrating backward from the endpoint recovers the initial state.
  IntegrationResult rb = integrate(exp_vf, 2, 0, re.final_state);
  REQUIRE(rb.status == IntegrationStatus::ok);
  CHECK(std::fabs(rb.final_state[0] - 1) < 1e-8);
  CHECK(std::fabs(rb.final_state[1] - 1) < 1e-8);
}

TEST_CASE("finite-time blowup is reported, not propagated") {
  // xdot = -x^2 from x=-1 has x(t) = -1/(1-t).
  VectorField vf = compile_equations(P("-x^2*y"), kAlpha);
  std::array<double, 6> u0{-1, 0, 0, 0, 0, 0};
  IntegrationResult r = integrate(vf, 0, 2, u0);
  CHECK(r.status == IntegrationStatus::blowup);
  CHECK(r.final_time > 0.9);
  CHECK(r.final_time < 1.05);
  for (const SamplePoint& s : r.samples)
    for (double v : s.u) CHECK(std::isfinite(v));
}

TEST_CASE("forced sample times land exactly") {
  // xdot = t, so x(t) = 1 + t^2/2.
  VectorField vf = compile_equations(P("t*y"), kAlpha);
  IntegrationOptions opt;
  opt.sample_times = {0.25, 0.5, 0.75};
  std::array<double, 6> u0{1, 0, 0, 0, 0, 0};
  IntegrationResult r = integrate(vf, 0, 1, u0, opt);
  REQUIRE(r.status == IntegrationStatus::ok);
  REQUIRE(r.samples.size() == 5);
  CHECK(r.samples.front().t == 0.0);
  CHECK(r.samples[1].t == 0.25);
  CHECK(r.samples[2].t == 0.5);
  CHECK(r.samples[3].t == 0.75);
  CHECK(r.samples.back().t == 1.0);
  for (const SamplePoint& s : r.samples)
    CHECK(std::fabs(s.u[0] - (1 + s.t * s.t / 2)) < 1e-12);
}

TEST_CASE("csv output is stable and round-trips at full precision") {
  VectorField vf = compile_equations(P("x*y"), kAlpha);
  IntegrationOptions opt;
  opt.sample_times = grid(0, 1, 4);
  std::array<double, 6> u0{1.0 / 3, 0.1, 0, 0, 0, 0};
  IntegrationResult r = integrate(vf, 0, 1, u0, opt);
  std::ostringstream os;
  write_csv(os, r.samples);
  std::istringstream is(os.str());
  std::string line;
  REQUIRE(std::getline(is, line));
  CHECK(line == "t,x,y,z,w,q,p");
  size_t row = 0;
  while (std::getline(is, line)) {
    REQUIRE(row < r.samples.size());
    std::istringstream fields(line);
    std::string cell;
    std::array<double, 7> parsed{};
    for (int k = 0; k < 7; ++k) {
      REQUIRE(std::getline(fields, cell, ','));
      parsed[k] = std::strtod(cell.c_str(), nullptr);
    }
    CHECK_FALSE(std::getline(fields, cell, ','));
    CHECK(parsed[0] == r.samples[row].t);
    for (int k = 0; k < 6; ++k) CHECK(parsed[k + 1] == r.samples[row].u[k]);
    ++row;
  }
  CHECK(row == r.samples.size());
}

TEST_CASE("compiled equations match exact arithmetic") {
  Polynomial H = pd4::ham::build_hamiltonian();
  VectorField vf = compile_equations(H, kAlpha);
  std::array<Polynomial, 6> eqs = pd4::ham::equations_of_motion(H);
  std::map<int, Polynomial> subs;
  for (int k = 0; k < 4; ++k)
    subs.emplace(VA0 + k, Polynomial::constant(kAlpha[k]));
  for (auto& e : eqs) e = e.substitute(subs);

  double worst = 0;
  for (int s = 0; s < 100; ++s) {
    std::vector<Rat> pt(VT + 1);
    std::array<double, 6> u;
    for (int v = 0; v < 6; ++v) {
      pt[v] = Rat((v % 2 ? -1 : 1) * (2 * s + v + 1), 7 + v);
      u[v] = rat_to_double(pt[v]);
    }
    pt[VT] = Rat(s + 3, 5);
    double t = rat_to_double(pt[VT]);
    for (int k = 0; k < 6; ++k) {
      double exact = rat_to_double(eqs[k].evaluate(pt));
      double got = vf.f[k].eval(u, t);
      worst = std::max(worst,
                       std::fabs(got - exact) / std::max(1.0, std::fabs(exact)));
    }
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("subsystem trajectories shadow the closed forms") {
  Polynomial H = pd4::ham::build_hamiltonian();
  static const int z1[] = {VZ, VW, VQ, VP};
  static const int z3[] = {VX, VY, VZ, VW};
  Polynomial K1 = pd4::ham::restrict_hamiltonian(H, z1);
  Polynomial K3 = pd4::ham::restrict_hamiltonian(H, z3);
  pd4::prin::SolutionPair s1 = pd4::prin::k1_solution();
  pd4::prin::SolutionPair s3 = pd4::prin::k3_solution();
  const Rat c1(1, 2), c2(1, 3);
  const std::array<Rat, 4> tuples[2] = {
      {Rat(2, 7), Rat(1, 3), Rat(1, 11), Rat(67, 231)},
      {Rat(2, 5), Rat(1, 7), Rat(2, 9), Rat(74, 315)}};

  for (const auto& al : tuples) {
    IntegrationOptions opt;
    opt.sample_times = grid(1, 2, 10);

    std::array<double, 6> u1{pd4::prin::expsum_eval(s1.first, 1, al, c1, c2),
                             pd4::prin::expsum_eval(s1.second, 1, al, c1, c2),
                             0, 0, 0, 0};
    IntegrationResult r1 = integrate(compile_equations(K1, al), 1, 2, u1, opt);
    REQUIRE(r1.status == IntegrationStatus::ok);
    for (const SamplePoint& s : r1.samples) {
      double xe = pd4::prin::expsum_eval(s1.first, s.t, al, c1, c2);
      double ye = pd4::prin::expsum_eval(s1.second, s.t, al, c1, c2);
      CHECK(std::fabs(s.u[0] - xe) <= 1e-8 * std::max(1.0, std::fabs(xe)));
      CHECK(std::fabs(s.u[1] - ye) <= 1e-8 * std::max(1.0, std::fabs(ye)));
    }

    std::array<double, 6> u3{0, 0, 0, 0,
                             pd4::prin::expsum_eval(s3.first, 1, al, c1, c2),
                             pd4::prin::expsum_eval(s3.second, 1, al, c1, c2)};
    IntegrationResult r3 = integrate(compile_equations(K3, al), 1, 2, u3, opt);
    REQUIRE(r3.status == IntegrationStatus::ok);
    for (const SamplePoint& s : r3.samples) {
      double qe = pd4::prin::expsum_eval(s3.first, s.t, al, c1, c2);
      double pe = pd4::prin::expsum_eval(s3.second, s.t, al, c1, c2);
      CHECK(std::fabs(s.u[4] - qe) <= 1e-8 * std::max(1.0, std::fabs(qe)));
      CHECK(std::fabs(s.u[5] - pe) <= 1e-8 * std::max(1.0, std::fabs(pe)));
    }
  }

  // Floating-point equation residual of the closed forms themselves.
  const std::array<Rat, 4>& al = tuples[0];
  pd4::prin::ExpSum dx = s1.first.ddt(), dy = s1.second.ddt();
  CompiledPoly rhs_x(K1.derivative(VY), al), rhs_y(K1.derivative(VX), al);
  double worst = 0;
  for (int k = 0; k <= 10; ++k) {
    double t = 1 + 0.1 * k;
    std::array<double, 6> u{pd4::prin::expsum_eval(s1.first, t, al, c1, c2),
                            pd4::prin::expsum_eval(s1.second, t, al, c1, c2),
                            0, 0, 0, 0};
    double rx = pd4::prin::expsum_eval(dx, t, al, c1, c2) - rhs_x.eval(u, t);
    double ry = pd4::prin::expsum_eval(dy, t, al, c1, c2) + rhs_y.eval(u, t);
    double scale = std::max({1.0, std::fabs(u[0]), std::fabs(u[1])});
    worst = std::max(worst, std::max(std::fabs(rx), std::fabs(ry)) / scale);
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("backlund transport commutes with the numeric flow") {
  const std::array<Rat, 6> u0{Rat(0), Rat(0),      Rat(1, 8),
                              Rat(-1, 8), Rat(1, 8), Rat(1, 16)};
  for (int i = 0; i < 4; ++i) {
    CAPTURE(i);
    NumericSymmetryReport rep =
        backlund_numeric_check(i, kAlpha, u0, Rat(1), Rat(2), 20);
    REQUIRE(rep.completed);
    CHECK(rep.ok);
    CHECK(rep.max_deviation <= 1e-6);
  }
}

TEST_CASE("the scaled direction is conserved; the Hamiltonian is not") {
  Polynomial H = pd4::ham::build_hamiltonian();
  Polynomial I = P("y*t^-1 + 2*p*t^-1");
  const std::array<Rat, 6> u0{Rat(0), Rat(0),      Rat(1, 8),
                              Rat(-1, 8), Rat(1, 8), Rat(1, 16)};

  DriftReport good =
      first_integral_numeric_check(H, I, kAlpha, u0, Rat(1), Rat(2), 20);
  REQUIRE(good.completed);
  CHECK(good.ok);
  CHECK(good.max_drift <= 1e-8);

  // H itself depends on t explicitly and drifts by an O(1) amount.
  DriftReport bad =
      first_integral_numeric_check(H, H, kAlpha, u0, Rat(1), Rat(2), 20);
  REQUIRE(bad.completed);
  CHECK_FALSE(bad.ok);
  CHECK(bad.max_drift > 1e-4);

  // The rescaled middle subsystem conserves 4t K2-tilde exactly.
  Polynomial k2t = pd4::prin::k2_transform().k2_tilde;
  Polynomial I2 = P("4*t") * k2t;
  const std::array<Rat, 6> g0{Rat(0), Rat(0), Rat(1, 4),
                              Rat(-1, 4), Rat(0), Rat(0)};
  DriftReport mid =
      first_integral_numeric_check(k2t, I2, kAlpha, g0, Rat(1), Rat(2), 20);
  REQUIRE(mid.completed);
  CHECK(mid.ok);
  CHECK(mid.max_drift <= 1e-8);
}

TEST_CASE("divisor trajectories stay on the divisor") {
  // alpha1 = 0 with w(1) = 0 keeps the flow on {f1 = 0}.
  const std::array<Rat, 4> al{Rat(11, 21), Rat(0), Rat(1, 7), Rat(1, 3)};
  Polynomial H = pd4::ham::build_hamiltonian();
  VectorField vf = compile_equations(H, al);
  CompiledPoly f1(pd4::weyl::divisor(1), al);
  IntegrationOptions opt;
  opt.sample_times = grid(1, 2, 20);
  std::array<double, 6> u0{1.0 / 8, 1.0 / 16, 1.0 / 8, 0, -1.0 / 16,
                           -1.0 / 16};
  IntegrationResult r = integrate(vf, 1, 2, u0, opt);
  REQUIRE(r.status == IntegrationStatus::ok);
  double worst = 0;
  for (const SamplePoint& s : r.samples)
    worst = std::max(worst, std::fabs(f1.eval(s.u, s.t)));
  CHECK(worst <= 1e-9);
}
