#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pd4/holomorphy.hpp"
#include "pd4/rational.hpp"

namespace pd4::chk {

using alg::Rat;

enum class Status { pass, fail, skipped, unresolved };
const char* to_string(Status s);

struct CheckReport {
  std::string check_id;
  Status status = Status::unresolved;
  std::string detail;
  double elapsed_ms = 0;  // stays 0 unless RunOptions::timings
};

struct RunOptions {
  std::vector<std::string> suites;  // empty or {"all"} runs everything
  std::uint64_t seed = 0;           // mixed with the check id per check
  int samples = 3;                  // sample count for point-based checks
  int workers = 0;                  // 0: PD4_WORKERS env, else 1
  bool timings = false;
};

std::vector<std::string> suite_names();

// Runs the selected suites and returns reports sorted by check_id.
// Throws std::invalid_argument for an unknown suite name.
std::vector<CheckReport> run_checks(const RunOptions& opt = {});

// Pinned nondegenerate sample data shared by the numeric checks. The
// divisor scenario for index i starts on {f_i = 0} with the matching
// parameter zeroed; every point below survives [1,2] without a pole.
const std::array<Rat, 4>& generic_alpha();
const std::array<Rat, 6>& generic_point();

struct DivisorScenario {
  std::array<Rat, 4> alpha;
  std::array<Rat, 6> u0;
};
const DivisorScenario& divisor_scenario(int i);

// Parameter tuples keeping every closed-form exponent denominator nonzero.
std::span<const std::array<Rat, 4>> closed_form_alphas();

// Worst relative deviation between an integrated subsystem trajectory
// (subsystem 1 or 3) and its closed form over [1,2]; nullopt when the
// integration does not finish.
std::optional<double> closed_form_deviation(int subsystem,
                                            const std::array<Rat, 4>& alpha);

struct AnsatzSample {
  Rat t0;
  std::array<Rat, 4> alpha;
  holo::AnsatzResult result;
};

// Runs the holomorphy ansatz at n seeded random (t0, alpha) draws with
// t0 > 0 and the parameter sum fixed at 1.
std::vector<AnsatzSample> random_ansatz_runs(int n, std::uint64_t seed);

}  // namespace pd4::chk
