#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pd4::alg {

// Fixed variable universe. Identity is by index and the ordering is total:
// phase block, time, parameters, integration constants, then an open-ended
// block of ansatz unknowns a1, a2, ... . Exponent vectors are trimmed, so a
// polynomial never depends on how many ansatz slots are in use.
enum Var : int {
  VX = 0,
  VY,
  VZ,
  VW,
  VQ,
  VP,
  VT,
  VA0,
  VA1,
  VA2,
  VA3,
  VC1,
  VC2,
  VANSATZ  // a1 = VANSATZ, a2 = VANSATZ+1, ...
};

inline constexpr int kPhase = 6;

// "x","y","z","w","q","p","t","alpha0".."alpha3","C1","C2","a1","a2",...
std::string var_name(int v);
// Inverse of var_name; -1 when unknown.
int var_index(const std::string& name);

// Exponent vector with trailing zeros trimmed; {} is the unit monomial.
// Only the VT slot may go negative.
using Monomial = std::vector<int32_t>;

inline int32_t exponent(const Monomial& m, int v) {
  return v < static_cast<int>(m.size()) ? m[v] : 0;
}

void set_exponent(Monomial& m, int v, int32_t e);
void trim(Monomial& m);

int total_degree(const Monomial& m);   // signed sum, t included
int phase_degree(const Monomial& m);   // x..p block only

Monomial mono_mul(const Monomial& a, const Monomial& b);
// Entrywise a <= b (t included; callers shift out negative t first).
bool mono_divides(const Monomial& a, const Monomial& b);
Monomial mono_div(const Monomial& b, const Monomial& a);
// Entrywise minimum over the longer support.
Monomial mono_min(const Monomial& a, const Monomial& b);

// Graded lexicographic: higher total degree wins; ties broken by the first
// differing exponent, larger exponent on the earlier variable first.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

}  // namespace pd4::alg
