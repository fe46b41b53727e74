#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pd4::alg {

// Exact rational scalar. Always canonical: lowest terms, positive denominator
// (mpq_rational maintains this on every operation).
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

// "num/den" when den != 1, plain integer otherwise.
std::string rat_to_string(const Rat& r);

// Accepts "num", "num/den", and plain decimals like "-0.125" (converted to
// the exact rational they denote). Returns nullopt on malformed input or
// zero denominator.
std::optional<Rat> rat_from_string(std::string_view s);

// base^e with integer e; negative e inverts (base must be nonzero then).
Rat rat_pow(const Rat& base, long e);

double rat_to_double(const Rat& r);

struct PoleAtPoint : std::runtime_error {
  explicit PoleAtPoint(const std::string& what) : std::runtime_error(what) {}
};

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateParameters : std::runtime_error {
  explicit DegenerateParameters(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace pd4::alg
