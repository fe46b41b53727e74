#include "pd4/rational.hpp"

namespace pd4::alg {

std::string rat_to_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::optional<Rat> rat_from_string(std::string_view s) {
  if (s.empty()) return std::nullopt;
  auto is_int = [](std::string_view v) {
    if (v.empty()) return false;
    size_t i = (v[0] == '-' || v[0] == '+') ? 1 : 0;
    if (i == v.size()) return false;
    for (; i < v.size(); ++i)
      if (v[i] < '0' || v[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    auto ns = s.substr(0, slash), ds = s.substr(slash + 1);
    if (!is_int(ns) || !is_int(ds)) return std::nullopt;
    Int n{std::string(ns)};
    Int d{std::string(ds)};
    if (d == 0) return std::nullopt;
    return Rat(n) / Rat(d);
  }
  auto dot = s.find('.');
  if (dot != std::string_view::npos) {
    auto ip = s.substr(0, dot), fp = s.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip = ip.substr(1);
    if (ip.empty() && fp.empty()) return std::nullopt;
    for (char c : ip)
      if (c < '0' || c > '9') return std::nullopt;
    for (char c : fp)
      if (c < '0' || c > '9') return std::nullopt;
    Int n = ip.empty() ? Int(0) : Int(std::string(ip));
    Int scale = 1;
    for (char c : fp) {
      n = n * 10 + (c - '0');
      scale *= 10;
    }
    Rat r = Rat(n) / Rat(scale);
    return neg ? Rat(-r) : r;
  }
  if (!is_int(s)) return std::nullopt;
  return Rat(Int(std::string(s)));
}

Rat rat_pow(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  bool inv = e < 0;
  unsigned long n = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  if (inv && base == 0) throw PoleAtPoint("0 raised to a negative power");
  Rat acc(1), b = base;
  while (n) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  return inv ? Rat(1) / acc : acc;
}

double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

}  // namespace pd4::alg
