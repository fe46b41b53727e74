#include "pd4/serialize.hpp"

#include <cctype>
#include <stdexcept>

namespace pd4::alg {

namespace {

std::string term_body(const Monomial& m, const Rat& abs_coeff) {
  std::string factors;
  for (int v = 0; v < static_cast<int>(m.size()); ++v) {
    if (m[v] == 0) continue;
    if (!factors.empty()) factors += "*";
    factors += var_name(v);
    if (m[v] != 1) factors += "^" + std::to_string(m[v]);
  }
  if (factors.empty()) return rat_to_string(abs_coeff);
  if (abs_coeff == 1) return factors;
  return rat_to_string(abs_coeff) + "*" + factors;
}

}  // namespace

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    bool neg = c < 0;
    Rat a = neg ? Rat(-c) : c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    out += term_body(m, a);
  }
  return out;
}

std::string to_string(const RationalExpr& e) {
  if (e.is_polynomial()) return to_string(e.num());
  return "(" + to_string(e.num()) + ") / (" + to_string(e.den()) + ")";
}

namespace {

struct Cursor {
  std::string_view s;
  size_t i = 0;
  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() { return i < s.size() ? s[i] : '\0'; }
  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("polynomial parse error at offset " +
                                std::to_string(i) + ": " + why);
  }
};

Int parse_uint(Cursor& c) {
  c.skip_ws();
  if (!std::isdigit(static_cast<unsigned char>(c.peek()))) c.fail("digit expected");
  std::string d;
  while (std::isdigit(static_cast<unsigned char>(c.peek()))) d += c.s[c.i++];
  return Int(d);
}

int32_t parse_int(Cursor& c) {
  c.skip_ws();
  bool neg = false;
  if (c.peek() == '-') {
    neg = true;
    ++c.i;
  } else if (c.peek() == '+') {
    ++c.i;
  }
  if (!std::isdigit(static_cast<unsigned char>(c.peek()))) c.fail("digit expected");
  int32_t n = 0;
  while (std::isdigit(static_cast<unsigned char>(c.peek())))
    n = n * 10 + (c.s[c.i++] - '0');
  return neg ? -n : n;
}

std::string parse_name(Cursor& c) {
  c.skip_ws();
  if (!std::isalpha(static_cast<unsigned char>(c.peek()))) c.fail("name expected");
  std::string n;
  while (std::isalnum(static_cast<unsigned char>(c.peek()))) n += c.s[c.i++];
  return n;
}

}  // namespace

Polynomial poly_from_string(std::string_view s) {
  Cursor c{s};
  Polynomial p;
  c.skip_ws();
  if (c.done()) c.fail("empty input");
  bool first = true;
  while (!c.done()) {
    int sign = 1;
    c.skip_ws();
    if (!first) {
      if (c.peek() == '+') {
        ++c.i;
      } else if (c.peek() == '-') {
        sign = -1;
        ++c.i;
      } else {
        c.fail("'+' or '-' expected between terms");
      }
    } else if (c.peek() == '-') {
      sign = -1;
      ++c.i;
    }
    first = false;
    c.skip_ws();
    Rat coeff(1);
    Monomial m;
    bool saw_factor = false;
    bool expect_more = true;
    while (expect_more) {
      c.skip_ws();
      if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
        if (saw_factor) c.fail("coefficient must lead the term");
        Int num = parse_uint(c);
        Int den(1);
        c.skip_ws();
        if (c.peek() == '/') {
          ++c.i;
          den = parse_uint(c);
          if (den == 0) c.fail("zero denominator");
        }
        coeff = Rat(num) / Rat(den);
      } else if (std::isalpha(static_cast<unsigned char>(c.peek()))) {
        std::string name = parse_name(c);
        int v = var_index(name);
        if (v < 0) c.fail("unknown variable '" + name + "'");
        int32_t e = 1;
        c.skip_ws();
        if (c.peek() == '^') {
          ++c.i;
          e = parse_int(c);
        }
        if (e < 0 && v != VT) c.fail("negative exponent on " + name);
        set_exponent(m, v, exponent(m, v) + e);
      } else {
        c.fail("term expected");
      }
      saw_factor = true;
      c.skip_ws();
      if (c.peek() == '*') {
        ++c.i;
      } else {
        expect_more = false;
      }
    }
    p.add_term(m, sign < 0 ? Rat(-coeff) : coeff);
  }
  return p;
}

}  // namespace pd4::alg
