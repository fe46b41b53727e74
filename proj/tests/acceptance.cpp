// Acceptance gate: eleven criteria, one verdict line each. Exits nonzero
// when any criterion fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pd4/checks.hpp"
#include "pd4/hamiltonian.hpp"
#include "pd4/holomorphy.hpp"
#include "pd4/numerics.hpp"
#include "pd4/principal.hpp"
#include "pd4/serialize.hpp"
#include "pd4/weyl.hpp"

using namespace pd4::alg;

namespace {

constexpr double kBacklundTol = 1e-6;   // numeric symmetry shadow
constexpr double kDivisorTol = 1e-9;    // numeric divisor confinement
constexpr double kClosedFormTol = 1e-8; // trajectory vs closed form
constexpr double kResidualTol = 1e-10;  // floating closed-form residual
constexpr double kDriftTol = 1e-8;      // first-integral drift
constexpr int kPointSamples = 20;       // exact random points per statement
constexpr std::uint64_t kSeed = 20260815;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Rat draw_rat(std::mt19937_64& rng, int lo, int hi, int den_max) {
  long span = hi - lo + 1;
  return Rat(lo + static_cast<long>(rng() % span),
             1 + static_cast<long>(rng() % den_max));
}

pd4::weyl::PointState draw_state(std::mt19937_64& rng) {
  pd4::weyl::PointState s;
  for (int v = 0; v < kPhase; ++v) s.u[v] = draw_rat(rng, -6, 6, 3);
  s.t = draw_rat(rng, 1, 5, 3);
  s.alpha[1] = draw_rat(rng, 1, 5, 7);
  s.alpha[2] = draw_rat(rng, 1, 5, 7);
  s.alpha[3] = draw_rat(rng, 1, 5, 7);
  s.alpha[0] = Rat(1) - s.alpha[1] - s.alpha[2] - s.alpha[3];
  return s;
}

bool criterion_backlund_exact(std::string& detail) {
  Polynomial H = pd4::ham::build_hamiltonian();
  for (int i = 0; i < 4; ++i) {
    auto rep = pd4::weyl::is_backlund_symmetry(pd4::weyl::generator(i), H);
    if (!rep.ok) {
      detail = "s" + std::to_string(i) + " leaves nonzero residuals";
      return false;
    }
  }
  detail = "pushforward residuals vanish identically for s0..s3";
  return true;
}

bool criterion_involutions_orders(std::string& detail) {
  std::mt19937_64 rng(kSeed);
  for (int i = 0; i < 4; ++i) {
    int done = 0;
    for (int tries = 0; tries < 20 * kPointSamples && done < kPointSamples;
         ++tries) {
      pd4::weyl::PointState s = draw_state(rng);
      auto once = pd4::weyl::apply_at_point(pd4::weyl::generator(i), s);
      if (!once) continue;
      auto twice = pd4::weyl::apply_at_point(pd4::weyl::generator(i), *once);
      if (!twice) continue;
      if (twice->u != s.u || twice->t != s.t || twice->alpha != s.alpha) {
        detail = "s" + std::to_string(i) + " squared moved a point";
        return false;
      }
      ++done;
    }
    if (done < kPointSamples) {
      detail = "could not collect pole-free points for s" + std::to_string(i);
      return false;
    }
  }
  struct Pair { int i, j, order; };
  for (auto [i, j, order] : {Pair{0, 1, 4}, Pair{1, 2, 3}, Pair{2, 3, 4},
                             Pair{0, 2, 2}, Pair{0, 3, 2}, Pair{1, 3, 2}}) {
    auto got = pd4::weyl::weyl_relation_order(i, j, kPointSamples, kSeed);
    if (!got) {
      detail = "order of s" + std::to_string(i) + "s" + std::to_string(j) +
               " unresolved across samples";
      return false;
    }
    if (*got != order) {
      detail = "order of s" + std::to_string(i) + "s" + std::to_string(j) +
               " is " + std::to_string(*got) + ", expected " +
               std::to_string(order);
      return false;
    }
  }
  detail = "involutions at 20 points each; orders 4,3,4 on the chain, "
           "2 off-chain";
  return true;
}

bool criterion_divisors(std::string& detail) {
  Polynomial H = pd4::ham::build_hamiltonian();
  double worst = 0;
  for (int i = 0; i < 4; ++i) {
    auto rep = pd4::weyl::invariant_divisor_check(i, H);
    if (!rep.ok) {
      detail = "f" + std::to_string(i) + " flow derivative does not reduce";
      return false;
    }
    const pd4::chk::DivisorScenario& sc = pd4::chk::divisor_scenario(i);
    pd4::num::VectorField vf = pd4::num::compile_equations(H, sc.alpha);
    pd4::num::CompiledPoly f(pd4::weyl::divisor(i), sc.alpha);
    pd4::num::IntegrationOptions opt;
    for (int k = 1; k < 20; ++k) opt.sample_times.push_back(1 + k / 20.0);
    std::array<double, 6> u0;
    for (int v = 0; v < kPhase; ++v) u0[v] = rat_to_double(sc.u0[v]);
    auto r = pd4::num::integrate(vf, 1, 2, u0, opt);
    if (r.status != pd4::num::IntegrationStatus::ok) {
      detail = "f" + std::to_string(i) + " trajectory did not finish";
      return false;
    }
    for (const auto& s : r.samples)
      worst = std::max(worst, std::fabs(f.eval(s.u, s.t)));
  }
  if (worst > kDivisorTol) {
    detail = "max |f_i| along runs " + fmt(worst);
    return false;
  }
  detail = "exact reductions vanish; max |f_i| along runs " + fmt(worst);
  return true;
}

bool criterion_translations(std::string& detail) {
  static const int expect[3][4] = {
      {-2, 2, 0, 0}, {0, -2, 2, 0}, {0, 0, -2, 2}};
  for (int k = 1; k <= 3; ++k) {
    const auto& T = pd4::weyl::translation(k);
    pd4::weyl::ParamMatrix M = pd4::weyl::compose_param(T.word);
    for (int r = 0; r < 4; ++r) {
      if (T.shift[r] != expect[k - 1][r]) {
        detail = "T" + std::to_string(k) + " stated shift differs";
        return false;
      }
      for (int c = 0; c < 4; ++c)
        if (M[r][c] - (r == c ? 1 : 0) != T.shift[r]) {
          detail = "T" + std::to_string(k) + " action is not the shift";
          return false;
        }
    }
  }
  detail = "T1,T2,T3 act by (-2,2,0,0), (0,-2,2,0), (0,0,-2,2)";
  return true;
}

bool criterion_adjoint(std::string& detail) {
  int worst_s2 = 0;
  for (int i = 0; i < 4; ++i)
    for (int u = 0; u < kPhase; ++u) {
      auto rep = pd4::weyl::adjoint_series_check(i, u);
      if (!rep.matches) {
        detail = "series for s" + std::to_string(i) + " coordinate " +
                 std::to_string(u) + " disagrees";
        return false;
      }
      if (i == 2) worst_s2 = std::max(worst_s2, rep.order);
    }
  if (worst_s2 > 2) {
    detail = "s2 series needed order " + std::to_string(worst_s2);
    return false;
  }
  detail = "all 24 series match; s2 terminates at order <= 2";
  return true;
}

bool criterion_principal(std::string& detail) {
  Polynomial H = pd4::ham::build_hamiltonian();
  static const int z1[] = {VZ, VW, VQ, VP};
  static const int z2[] = {VX, VY, VQ, VP};
  static const int z3[] = {VX, VY, VZ, VW};
  bool forms =
      pd4::ham::restrict_hamiltonian(H, z1) ==
          poly_from_string(
              "1/4*y^3*t^-1 + 3/2*y^2 + 3*alpha3*x*y*t^-1 - x*y*t^-1") &&
      pd4::ham::restrict_hamiltonian(H, z2) ==
          poly_from_string(
              "3/4*z^2*w^2*t^-1 + 3/2*z^2*w + 3/2*alpha1*z*w*t^-1 + "
              "3/2*alpha2*z*w*t^-1 - z*w*t^-1 + 3/2*alpha1*z") &&
      pd4::ham::restrict_hamiltonian(H, z3) ==
          poly_from_string(
              "-4*p^3*t^-1 - 6*p^2 - 3*alpha1*q*p*t^-1 - 3*alpha2*q*p*t^-1 "
              "- 3*alpha3*q*p*t^-1 + 2*q*p*t^-1 - 6*t*p");
  if (!forms) {
    detail = "a restriction differs from its displayed form";
    return false;
  }
  if (!pd4::prin::verify_closed_form(pd4::prin::k1_solution(), 1).ok ||
      !pd4::prin::verify_closed_form(pd4::prin::k3_solution(), 3).ok) {
    detail = "a closed-form residual is nonzero";
    return false;
  }
  double worst = 0;
  for (const auto& al : pd4::chk::closed_form_alphas())
    for (int subsystem : {1, 3}) {
      auto dev = pd4::chk::closed_form_deviation(subsystem, al);
      if (!dev) {
        detail = "closed-form trajectory did not finish";
        return false;
      }
      worst = std::max(worst, *dev);
    }
  if (worst > kClosedFormTol) {
    detail = "worst trajectory deviation " + fmt(worst);
    return false;
  }

  // The closed forms also satisfy the equations in plain floating point.
  pd4::prin::SolutionPair s1 = pd4::prin::k1_solution();
  Polynomial K1 = pd4::ham::restrict_hamiltonian(H, z1);
  const Rat c1(1, 2), c2(1, 3);
  double wres = 0;
  for (const auto& al : pd4::chk::closed_form_alphas()) {
    pd4::prin::ExpSum dx = s1.first.ddt(), dy = s1.second.ddt();
    pd4::num::CompiledPoly rx(K1.derivative(VY), al);
    pd4::num::CompiledPoly ry(K1.derivative(VX), al);
    for (int k = 0; k <= 10; ++k) {
      double t = 1 + 0.1 * k;
      std::array<double, 6> u{
          pd4::prin::expsum_eval(s1.first, t, al, c1, c2),
          pd4::prin::expsum_eval(s1.second, t, al, c1, c2), 0, 0, 0, 0};
      double r1 = pd4::prin::expsum_eval(dx, t, al, c1, c2) - rx.eval(u, t);
      double r2 = pd4::prin::expsum_eval(dy, t, al, c1, c2) + ry.eval(u, t);
      double scale = std::max({1.0, std::fabs(u[0]), std::fabs(u[1])});
      wres = std::max(wres, std::max(std::fabs(r1), std::fabs(r2)) / scale);
    }
  }
  if (wres > kResidualTol) {
    detail = "floating residual " + fmt(wres);
    return false;
  }
  detail = "restrictions, exact residuals, trajectories (worst " +
           fmt(worst) + "), floating residual " + fmt(wres);
  return true;
}

bool criterion_k2(std::string& detail) {
  pd4::prin::K2Report rep = pd4::prin::k2_transform();
  if (!rep.matches_display || !rep.symplectic) {
    detail = "rescaled Hamiltonian differs from the displayed form";
    return false;
  }
  if (!pd4::prin::first_integral_I_check()) {
    detail = "4t K2-tilde has nonzero total derivative";
    return false;
  }
  Polynomial I = poly_from_string("4*t") * rep.k2_tilde;
  std::array<Rat, 6> u0{Rat(0), Rat(0), Rat(1, 4), Rat(-1, 4), Rat(0),
                        Rat(0)};
  auto drift = pd4::num::first_integral_numeric_check(
      rep.k2_tilde, I, pd4::chk::generic_alpha(), u0, Rat(1), Rat(2), 20,
      kDriftTol);
  if (!drift.completed || !drift.ok) {
    detail = drift.completed ? "drift " + fmt(drift.max_drift)
                             : "trajectory did not finish";
    return false;
  }
  detail = "transform matches; exact zero derivative; drift " +
           fmt(drift.max_drift);
  return true;
}

bool criterion_holomorphy(std::string& detail) {
  Polynomial H = pd4::ham::build_hamiltonian();
  for (int i = 0; i < 4; ++i)
    if (!pd4::holo::check_holomorphy(H, i).ok) {
      detail = "H fails chart " + std::to_string(i);
      return false;
    }
  if (!pd4::holo::family_holomorphic_symbolic()) {
    detail = "symbolic family fails a chart";
    return false;
  }
  auto runs = pd4::chk::random_ansatz_runs(5, kSeed);
  for (const auto& run : runs) {
    const auto& res = run.result;
    bool dirs = res.contains_direction[0] && res.contains_direction[1] &&
                res.contains_direction[2] && res.contains_direction[3];
    if (!res.consistent || !res.contains_hamiltonian || !dirs ||
        res.dimension != runs.front().result.dimension) {
      detail = "an ansatz sample disagrees on the family";
      return false;
    }
  }
  detail = "charts pass; family symbolic; 5 ansatz samples agree at "
           "dimension " + std::to_string(runs.front().result.dimension);
  return true;
}

bool criterion_non_integrals(std::string& detail) {
  Polynomial H = pd4::ham::build_hamiltonian();
  if (pd4::ham::total_time_derivative(H, H).is_zero()) {
    detail = "H reported conserved";
    return false;
  }
  if (pd4::ham::total_time_derivative(poly_from_string("y + 2*p"), H)
          .is_zero()) {
    detail = "y + 2p reported conserved";
    return false;
  }
  std::map<int, Polynomial> subs;
  for (int k = 0; k < 4; ++k)
    subs.emplace(VA0 + k,
                 Polynomial::constant(pd4::chk::generic_alpha()[k]));
  Polynomial Hs = H.substitute(subs);
  auto nonneg = pd4::ham::first_integral_search(Hs, 2, 0, 3);
  if (nonneg.basis.size() != 1 || !nonneg.basis[0].is_scalar()) {
    detail = "nonnegative t-window kernel is not constants-only";
    return false;
  }
  // On the full Laurent window the scaled direction joins the kernel: the
  // search returns span{1, I, I^2} with I = (y+2p)/t, each exactly
  // conserved, so the kernel is three-dimensional rather than trivial.
  Polynomial I = poly_from_string("y*t^-1 + 2*p*t^-1");
  auto laurent = pd4::ham::first_integral_search(Hs, 2, -3, 3);
  bool conserved = pd4::ham::total_time_derivative(I, Hs).is_zero() &&
                   pd4::ham::total_time_derivative(I * I, Hs).is_zero();
  if (laurent.basis.size() != 3 || !conserved) {
    detail = "Laurent-window kernel is not span{1, I, I^2}";
    return false;
  }
  for (const Polynomial& b : laurent.basis)
    if (!pd4::ham::total_time_derivative(b, Hs).is_zero()) {
      detail = "a kernel member is not conserved";
      return false;
    }
  detail = "H and y+2p drift; [0,3] kernel constants-only; [-3,3] kernel "
           "is span{1, I, I^2}, I = (y+2p)/t";
  return true;
}

bool criterion_numeric_symmetry(std::string& detail) {
  double worst = 0;
  for (int i = 0; i < 4; ++i) {
    auto rep = pd4::num::backlund_numeric_check(
        i, pd4::chk::generic_alpha(), pd4::chk::generic_point(), Rat(1),
        Rat(2), 20, kBacklundTol);
    if (!rep.completed) {
      detail = "s" + std::to_string(i) + " trajectory did not finish";
      return false;
    }
    if (!rep.ok) {
      detail = "s" + std::to_string(i) + " deviation " +
               fmt(rep.max_deviation);
      return false;
    }
    worst = std::max(worst, rep.max_deviation);
  }
  detail = "all generators within tolerance; worst deviation " + fmt(worst);
  return true;
}

bool criterion_determinism(std::string& detail) {
  pd4::chk::RunOptions opt;
  opt.seed = 7;
  auto a = pd4::chk::run_checks(opt);
  auto b = pd4::chk::run_checks(opt);
  if (a.size() != b.size()) {
    detail = "report counts differ";
    return false;
  }
  for (size_t k = 0; k < a.size(); ++k)
    if (a[k].check_id != b[k].check_id || a[k].status != b[k].status ||
        a[k].detail != b[k].detail || a[k].elapsed_ms != b[k].elapsed_ms) {
      detail = "reports differ at " + a[k].check_id;
      return false;
    }
  detail = "two seeded full runs agree report-for-report (" +
           std::to_string(a.size()) + " checks)";
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    const char* label;
    std::function<bool(std::string&)> body;
  };
  const std::vector<Criterion> criteria{
      {"Backlund symmetry, exact", criterion_backlund_exact},
      {"involutions and Coxeter orders", criterion_involutions_orders},
      {"invariant divisors, exact and numeric", criterion_divisors},
      {"translation parameter actions", criterion_translations},
      {"Poisson-exponential adjoint series", criterion_adjoint},
      {"principal parts and closed forms", criterion_principal},
      {"middle-pair rescaling and its integral", criterion_k2},
      {"holomorphy charts, family, ansatz", criterion_holomorphy},
      {"non-integrals and kernel searches", criterion_non_integrals},
      {"numeric symmetry shadow", criterion_numeric_symmetry},
      {"deterministic verification reports", criterion_determinism},
  };

  int failed = 0;
  for (size_t k = 0; k < criteria.size(); ++k) {
    std::string detail;
    bool ok = false;
    try {
      ok = criteria[k].body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failed;
    std::printf("criterion %2zu %s %s (%s)\n", k + 1, ok ? "PASS" : "FAIL",
                criteria[k].label, detail.c_str());
  }
  if (failed) std::printf("acceptance: %d of 11 criteria failed\n", failed);
  else std::printf("acceptance: 11/11 criteria pass\n");
  return failed == 0 ? 0 : 1;
}
