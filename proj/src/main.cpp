#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pd4/checks.hpp"
#include "pd4/hamiltonian.hpp"
#include "pd4/numerics.hpp"
#include "pd4/serialize.hpp"
#include "pd4/weyl.hpp"

using namespace pd4::alg;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "num/den" and integer literals parse exactly; anything else goes through
// strtod and keeps the binary value verbatim.
Rat parse_rat(const std::string& s, bool& decimal) {
  if (s.empty()) throw UsageError("empty number");
  if (s.find('/') != std::string::npos) {
    size_t slash = s.find('/');
    try {
      Int num(s.substr(0, slash));
      Int den(s.substr(slash + 1));
      if (den == 0) throw UsageError("zero denominator in '" + s + "'");
      return Rat(num, den);
    } catch (const std::runtime_error&) {
      throw UsageError("malformed rational '" + s + "'");
    }
  }
  if (s.find_first_of(".eE") == std::string::npos) {
    try {
      return Rat(Int(s));
    } catch (const std::runtime_error&) {
      throw UsageError("malformed integer '" + s + "'");
    }
  }
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v))
    throw UsageError("malformed number '" + s + "'");
  decimal = true;
  return Rat(v);
}

std::vector<Rat> parse_rat_list(const std::string& s, size_t n,
                                const std::string& what, bool& decimal) {
  std::vector<Rat> out;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(parse_rat(cell, decimal));
  if (out.size() != n)
    throw UsageError(what + " needs " + std::to_string(n) +
                     " comma-separated values, got " +
                     std::to_string(out.size()));
  return out;
}

// Exit 2 unless the components sum to 1: exactly for exact inputs, within
// 1e-12 for anything entered as a decimal.
std::array<Rat, 4> parse_alpha(const std::string& s) {
  bool decimal = false;
  std::vector<Rat> v = parse_rat_list(s, 4, "--alpha", decimal);
  Rat sum = v[0] + v[1] + v[2] + v[3];
  if (decimal ? std::fabs(rat_to_double(sum - Rat(1))) > 1e-12
              : sum != Rat(1))
    throw UsageError("alpha components must sum to 1");
  return {v[0], v[1], v[2], v[3]};
}

std::string rat_str(const Rat& r) { return r.str(); }

std::vector<int> parse_word(const std::string& s) {
  std::vector<int> word;
  std::stringstream ss(s);
  std::string tok;
  while (ss >> tok) {
    std::string digits = tok;
    if (digits.size() == 2 && (digits[0] == 's' || digits[0] == 'S'))
      digits = digits.substr(1);
    if (digits.size() != 1 || digits[0] < '0' || digits[0] > '3')
      throw UsageError("bad word letter '" + tok + "' (use s0..s3)");
    word.push_back(digits[0] - '0');
  }
  if (word.empty()) throw UsageError("--word is empty");
  return word;
}

json report_to_json(const pd4::chk::CheckReport& r) {
  json j;
  j["check_id"] = r.check_id;
  j["status"] = pd4::chk::to_string(r.status);
  j["detail"] = r.detail;
  j["elapsed_ms"] = static_cast<long long>(std::llround(r.elapsed_ms));
  return j;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int samples,
               int workers, bool timings) {
  pd4::chk::RunOptions opt;
  if (suite != "all") opt.suites.push_back(suite);
  opt.seed = seed;
  opt.samples = samples;
  opt.workers = workers;
  opt.timings = timings;
  std::vector<pd4::chk::CheckReport> reports = pd4::chk::run_checks(opt);
  json arr = json::array();
  bool clean = true;
  for (const auto& r : reports) {
    arr.push_back(report_to_json(r));
    clean = clean && r.status == pd4::chk::Status::pass;
  }
  std::cout << arr.dump(2) << "\n";
  return clean ? 0 : 1;
}

int cmd_integrate(const std::string& alpha_s, const std::string& init_s,
                  const std::string& t0_s, const std::string& t1_s,
                  double rel_tol, int samples, const std::string& out_path) {
  std::array<Rat, 4> alpha = parse_alpha(alpha_s);
  bool decimal = false;
  std::vector<Rat> u0r = parse_rat_list(init_s, 6, "--init", decimal);
  double t0 = rat_to_double(parse_rat(t0_s, decimal));
  double t1 = rat_to_double(parse_rat(t1_s, decimal));
  if (t0 == 0 || t1 == 0 || (t0 > 0) != (t1 > 0))
    throw UsageError("t0 and t1 must be nonzero and of the same sign");
  if (!(rel_tol > 0)) throw UsageError("--rel-tol must be positive");
  if (samples < 0) throw UsageError("--samples must be nonnegative");

  pd4::num::VectorField vf =
      pd4::num::compile_equations(pd4::ham::build_hamiltonian(), alpha);
  std::array<double, 6> u0;
  for (int v = 0; v < 6; ++v) u0[v] = rat_to_double(u0r[v]);
  pd4::num::IntegrationOptions opt;
  opt.rel_tol = rel_tol;
  for (int k = 1; k < samples; ++k)
    opt.sample_times.push_back(t0 + (t1 - t0) * k / samples);
  pd4::num::IntegrationResult r = pd4::num::integrate(vf, t0, t1, u0, opt);

  if (!out_path.empty()) {
    std::ofstream os(out_path);
    if (!os) throw UsageError("cannot open --out path " + out_path);
    pd4::num::write_csv(os, r.samples);
  }

  json j;
  j["status"] = r.status == pd4::num::IntegrationStatus::ok ? "ok"
                : r.status == pd4::num::IntegrationStatus::blowup
                    ? "blowup"
                    : "step_underflow";
  j["blowup"] = r.status == pd4::num::IntegrationStatus::blowup;
  j["steps"] = r.steps;
  j["rejected"] = r.rejected;
  j["samples"] = r.samples.size();
  j["final_time"] = r.final_time;
  j["final_state"] = r.final_state;
  if (!out_path.empty()) j["csv"] = out_path;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_apply_word(const std::string& word_s, const std::string& point_s,
                   const std::string& alpha_s) {
  std::vector<int> word = parse_word(word_s);
  bool decimal = false;
  std::vector<Rat> pt = parse_rat_list(point_s, 7, "--point", decimal);
  pd4::weyl::PointState s;
  for (int v = 0; v < kPhase; ++v) s.u[v] = pt[v];
  s.t = pt[6];
  if (s.t == 0) throw UsageError("t must be nonzero");
  s.alpha = parse_alpha(alpha_s);

  for (size_t step = 0; step < word.size(); ++step) {
    int g = word[step];
    auto img = pd4::weyl::apply_at_point(pd4::weyl::generator(g), s);
    if (!img) {
      std::cerr << "pole: denominator f" << g << " = "
                << to_string(pd4::weyl::divisor(g)) << " vanishes at letter "
                << step + 1 << " (s" << g << ")\n";
      return 1;
    }
    s = *img;
  }

  json j;
  json point = json::array();
  for (int v = 0; v < kPhase; ++v) point.push_back(rat_str(s.u[v]));
  point.push_back(rat_str(s.t));
  j["point"] = point;
  json al = json::array();
  for (int k = 0; k < 4; ++k) al.push_back(rat_str(s.alpha[k]));
  j["alpha"] = al;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_ansatz(int samples, std::uint64_t seed) {
  std::vector<pd4::chk::AnsatzSample> runs =
      pd4::chk::random_ansatz_runs(samples, seed);
  bool agree = true;
  for (const auto& run : runs) {
    const auto& res = run.result;
    agree = agree && res.consistent && res.contains_hamiltonian &&
            res.dimension == runs.front().result.dimension;
    for (bool d : res.contains_direction) agree = agree && d;
  }
  json j;
  j["samples"] = samples;
  j["seed"] = seed;
  j["verdict"] = agree ? "pass" : "unresolved";
  if (agree) j["dimension"] = runs.front().result.dimension;
  json arr = json::array();
  for (const auto& run : runs) {
    json one;
    one["t0"] = rat_str(run.t0);
    json al = json::array();
    for (int k = 0; k < 4; ++k) al.push_back(rat_str(run.alpha[k]));
    one["alpha"] = al;
    one["columns"] = run.result.columns;
    one["dimension"] = run.result.dimension;
    one["consistent"] = run.result.consistent;
    one["contains_hamiltonian"] = run.result.contains_hamiltonian;
    one["contains_direction"] = run.result.contains_direction;
    arr.push_back(one);
  }
  j["runs"] = arr;
  std::cout << j.dump(2) << "\n";
  return agree ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact verification suites and numeric integration for a coupled "
      "Painleve-type Hamiltonian system with affine Weyl symmetry"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suite = "all";
  std::uint64_t seed = 0;
  int samples = 3;
  int workers = 0;
  bool timings = false;
  std::vector<std::string> suite_choices{"all"};
  for (const std::string& s : pd4::chk::suite_names())
    suite_choices.push_back(s);
  verify->add_option("--suite", suite, "Suite to run")
      ->default_val("all")
      ->check(CLI::IsMember(suite_choices));
  verify->add_option("--seed", seed, "Seed for point-based checks")
      ->default_val(0);
  verify->add_option("--samples", samples, "Points per sampled check")
      ->default_val(3)
      ->check(CLI::PositiveNumber);
  verify->add_option("--workers", workers,
                     "Worker threads (0: PD4_WORKERS env or 1)")
      ->default_val(0);
  verify->add_flag("--timings", timings,
                   "Fill elapsed_ms (breaks byte-for-byte determinism)");

  auto* integrate =
      app.add_subcommand("integrate", "Integrate the coupled system");
  std::string alpha_s, init_s, t0_s, t1_s, out_path;
  double rel_tol = 1e-10;
  int nsamples = 20;
  integrate->add_option("--alpha", alpha_s, "a0,a1,a2,a3 summing to 1")
      ->required();
  integrate->add_option("--init", init_s, "x,y,z,w,q,p at t0")->required();
  integrate->add_option("--t0", t0_s, "Start time (nonzero)")->required();
  integrate->add_option("--t1", t1_s, "End time (same sign as t0)")
      ->required();
  integrate->add_option("--rel-tol", rel_tol, "Relative tolerance")
      ->default_val(1e-10);
  integrate->add_option("--samples", nsamples, "Forced sample count")
      ->default_val(20);
  integrate->add_option("--out", out_path, "CSV output path");

  auto* apply =
      app.add_subcommand("apply-word", "Apply a generator word at a point");
  std::string word_s, point_s, alpha2_s;
  apply->add_option("--word", word_s, "Letters, e.g. \"s1 s2 s0\"")
      ->required();
  apply->add_option("--point", point_s, "x,y,z,w,q,p,t (exact rationals)")
      ->required();
  apply->add_option("--alpha", alpha2_s, "a0,a1,a2,a3 summing to 1")
      ->required();

  auto* ansatz = app.add_subcommand(
      "ansatz", "Solve the holomorphy ansatz at random parameters");
  int an = 5;
  std::uint64_t aseed = 0;
  ansatz->add_option("--samples", an, "Number of random (t0, alpha) draws")
      ->default_val(5)
      ->check(CLI::PositiveNumber);
  ansatz->add_option("--seed", aseed, "Draw seed")->default_val(0);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (verify->parsed())
      return cmd_verify(suite, seed, samples, workers, timings);
    if (integrate->parsed())
      return cmd_integrate(alpha_s, init_s, t0_s, t1_s, rel_tol, nsamples,
                           out_path);
    if (apply->parsed()) return cmd_apply_word(word_s, point_s, alpha2_s);
    if (ansatz->parsed()) return cmd_ansatz(an, aseed);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
