#include "pd4/universe.hpp"

#include <algorithm>
#include <array>

namespace pd4::alg {

namespace {
const std::array<const char*, 13> kCoreNames = {
    "x", "y", "z", "w", "q", "p", "t",
    "alpha0", "alpha1", "alpha2", "alpha3", "C1", "C2"};
}

std::string var_name(int v) {
  if (v >= 0 && v < static_cast<int>(kCoreNames.size())) return kCoreNames[v];
  return "a" + std::to_string(v - VANSATZ + 1);
}

int var_index(const std::string& name) {
  for (int i = 0; i < static_cast<int>(kCoreNames.size()); ++i)
    if (name == kCoreNames[i]) return i;
  if (name.size() >= 2 && name[0] == 'a') {
    int n = 0;
    for (size_t i = 1; i < name.size(); ++i) {
      if (name[i] < '0' || name[i] > '9') return -1;
      n = n * 10 + (name[i] - '0');
    }
    if (n >= 1) return VANSATZ + n - 1;
  }
  return -1;
}

void trim(Monomial& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

void set_exponent(Monomial& m, int v, int32_t e) {
  if (v >= static_cast<int>(m.size())) {
    if (e == 0) return;
    m.resize(v + 1, 0);
  }
  m[v] = e;
  trim(m);
}

int total_degree(const Monomial& m) {
  int d = 0;
  for (int32_t e : m) d += e;
  return d;
}

int phase_degree(const Monomial& m) {
  int d = 0;
  for (int v = 0; v < kPhase && v < static_cast<int>(m.size()); ++v) d += m[v];
  return d;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

bool mono_divides(const Monomial& a, const Monomial& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > exponent(b, static_cast<int>(i))) return false;
  return true;
}

Monomial mono_div(const Monomial& b, const Monomial& a) {
  Monomial r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < b.size(); ++i) r[i] = b[i];
  for (size_t i = 0; i < a.size(); ++i) r[i] -= a[i];
  trim(r);
  return r;
}

Monomial mono_min(const Monomial& a, const Monomial& b) {
  Monomial r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i)
    r[i] = std::min(exponent(a, static_cast<int>(i)),
                    exponent(b, static_cast<int>(i)));
  trim(r);
  return r;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  size_t n = std::max(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    int32_t ea = exponent(a, static_cast<int>(i));
    int32_t eb = exponent(b, static_cast<int>(i));
    if (ea != eb) return ea < eb;
  }
  return false;
}

}  // namespace pd4::alg
