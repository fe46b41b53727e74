#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "pd4/polynomial.hpp"

namespace pd4::num {

using alg::Polynomial;
using alg::Rat;

// Phase-space polynomial with parameters specialized exactly and
// coefficients flattened to doubles; t-Laurent terms allowed.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  CompiledPoly(const Polynomial& p, const std::array<Rat, 4>& alpha);

  double eval(const std::array<double, 6>& u, double t) const;
  size_t term_count() const { return terms_.size(); }

 private:
  struct Term {
    double c;
    std::array<int8_t, 7> e;  // x..p exponents, then t (signed)
  };
  std::vector<Term> terms_;
};

struct VectorField {
  std::array<CompiledPoly, 6> f;
  void eval(double t, const std::array<double, 6>& u,
            std::array<double, 6>& du) const;
};

// Equations of motion of H at numeric alpha.
VectorField compile_equations(const Polynomial& H,
                              const std::array<Rat, 4>& alpha);

struct IntegrationOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double min_step = 1e-12;
  double blowup = 1e8;
  std::vector<double> sample_times;  // forced output times inside the span
};

enum class IntegrationStatus { ok, blowup, step_underflow };

struct SamplePoint {
  double t;
  std::array<double, 6> u;
};

struct IntegrationResult {
  IntegrationStatus status = IntegrationStatus::ok;
  std::vector<SamplePoint> samples;  // t0, forced times, t1
  std::array<double, 6> final_state{};
  double final_time = 0;
  size_t steps = 0;
  size_t rejected = 0;
};

// Adaptive embedded 5(4) Runge-Kutta pair with local extrapolation and
// first-same-as-last reuse. Integrates in either time direction and lands
// exactly on every requested sample time.
IntegrationResult integrate(const VectorField& vf, double t0, double t1,
                            const std::array<double, 6>& u0,
                            const IntegrationOptions& opt = {});

// Header "t,x,y,z,w,q,p", one row per sample, 17 significant digits.
void write_csv(std::ostream& os, std::span<const SamplePoint> samples);

struct NumericSymmetryReport {
  bool ok = false;
  bool completed = false;    // both integrations ran to the end
  double max_deviation = 0;  // max over samples and coordinates
};

// Transports a trajectory of the alpha-system through generator i and
// compares it against the trajectory of the transformed parameters started
// from the transformed initial point.
NumericSymmetryReport backlund_numeric_check(
    int i, const std::array<Rat, 4>& alpha, const std::array<Rat, 6>& u0,
    const Rat& t0, const Rat& t1, int samples, double tol = 1e-6,
    const IntegrationOptions& base = {});

struct DriftReport {
  bool ok = false;
  bool completed = false;
  double max_drift = 0;  // max |I(t) - I(t0)| over samples
};

// Conservation of I along the flow of H_sys, both specialized at alpha.
DriftReport first_integral_numeric_check(
    const Polynomial& H_sys, const Polynomial& I,
    const std::array<Rat, 4>& alpha, const std::array<Rat, 6>& u0,
    const Rat& t0, const Rat& t1, int samples, double tol = 1e-8,
    const IntegrationOptions& base = {});

}  // namespace pd4::num
