#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pd4/hamiltonian.hpp"
#include "pd4/holomorphy.hpp"
#include "pd4/serialize.hpp"

using namespace pd4::alg;
using namespace pd4::holo;

namespace {

Polynomial P(const std::string& s) { return poly_from_string(s); }

RationalExpr RE(const std::string& n, const std::string& d = "1") {
  return RationalExpr(poly_from_string(n), poly_from_string(d));
}

}  // namespace

TEST_CASE("charts invert exactly") {
  for (int i = 0; i < 4; ++i) CHECK(chart_roundtrip(i));
  CHECK(chart_singular_var(0) == VX);
  CHECK(chart_singular_var(1) == VZ);
  CHECK(chart_singular_var(2) == VZ);
  CHECK(chart_singular_var(3) == VQ);
  CHECK_THROWS_AS(chart(4), std::invalid_argument);
  CHECK_THROWS_AS(chart_inverse(-1), std::invalid_argument);
}

TEST_CASE("chart images match their closed forms") {
  CHECK(chart(0).images[VX] == RE("1", "x"));
  CHECK(chart(1).images[VW] == RE("-w*z^2 - alpha1*z"));
  CHECK(chart(3).images[VP] == RE("-p*q^2 - alpha3*q"));
  CHECK(chart(2).images[VX] == RE("x - 1/2*z"));
  CHECK(chart_inverse(0).images[VY] ==
        RE("-y*x^2 - alpha0*x - 1/4*z^2"));
  CHECK(chart_inverse(2).images[VP] == RE("8*p*z^2 + 1", "8*z^2"));
  CHECK(chart_inverse(2).images[VQ] == RE("q*z + 1", "z"));

  // the first exceptional divisor straightens to a coordinate product
  std::map<int, RationalExpr> bind;
  for (int v = 0; v < kPhase; ++v) {
    bind.emplace(v, chart_inverse(0).images[v]);
  }
  RationalExpr f0 = RationalExpr(P("y + 1/4*z^2")).substitute(bind);
  CHECK(f0 == RE("-x^2*y - alpha0*x"));
}

TEST_CASE("Hamiltonian is holomorphic in every chart") {
  Polynomial H = pd4::ham::build_hamiltonian();
  for (int i = 0; i < 4; ++i) {
    HolomorphyReport rep = check_holomorphy(H, i, true);
    CHECK(rep.ok);
    CHECK(rep.offending.is_zero());
  }

  // the correction carries the whole burden in the middle chart
  HolomorphyReport bad = check_holomorphy(H, 2, false);
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.offending.is_zero());
}

TEST_CASE("family directions are chart-polynomial without the correction") {
  Polynomial dir = P("y + 2*p");
  for (int k = 1; k <= 4; ++k) {
    for (int i = 0; i < 4; ++i) {
      CHECK(check_holomorphy(dir.pow(k), i, false).ok);
    }
  }
  // the correction belongs to the Hamiltonian, not to a direction
  CHECK_FALSE(check_holomorphy(dir, 2, true).ok);
  CHECK(family_holomorphic_symbolic());
}

TEST_CASE("degree-4 ansatz cuts out the expected family") {
  AnsatzResult r =
      ansatz_solve(Rat(1), {Rat(1, 3), Rat(1, 5), Rat(1, 7), Rat(34, 105)});
  CHECK(r.columns == 210);
  CHECK(r.consistent);
  CHECK(r.dimension == 5);
  CHECK(r.contains_hamiltonian);
  for (int k = 0; k < 4; ++k) CHECK(r.contains_direction[k]);

  AnsatzResult r2 = ansatz_solve(
      Rat(3, 2), {Rat(2, 7), Rat(1, 3), Rat(1, 11), Rat(67, 231)});
  CHECK(r2.dimension == 5);
  CHECK(r2.consistent);
  CHECK(r2.contains_hamiltonian);
  for (int k = 0; k < 4; ++k) CHECK(r2.contains_direction[k]);
}
