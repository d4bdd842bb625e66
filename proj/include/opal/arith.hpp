#pragma once

#include <gmpxx.h>

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

// Exact arithmetic primitives: arbitrary-precision integers and positive
// rationals, perfect-power extraction, reduced roots, and supernatural
// numbers with their equivalence relations.
namespace opal::arith {

using Int = mpz_class;
using Rat = mpq_class;  // invariant at module boundaries: positive, reduced

// Parse a nonnegative integer from a decimal string.  Throws
// std::invalid_argument on malformed input.
Int int_parse(const std::string& s);

// Parse "a" or "a/b" with a, b positive.  Throws std::invalid_argument on
// malformed input or nonpositive values.
Rat rat_parse(const std::string& s);

// Render as "a/b" (always with an explicit denominator, e.g. "3/1").
std::string rat_str(const Rat& q);

// q^e for e >= 0.
Rat rat_pow(const Rat& q, unsigned long e);

// Prime factorization of n >= 1 by trial division; empty map for n = 1.
std::map<Int, unsigned long> factorize(const Int& n);

// Largest d such that n = b^d for integer b; returns (b, d).  For n = 1
// returns (1, 1).  Requires n >= 1.
std::pair<Int, unsigned long> perfect_power(const Int& n);

// Largest d such that q = r^d for rational r; returns (r, d).  d is the gcd
// of all prime exponents of numerator and denominator.  reduced_root(1) is
// (1, 1) by convention.  Requires q > 0.
std::pair<Rat, unsigned long> reduced_root(const Rat& q);

// A supernatural number: formal product of primes with exponents in
// {0, 1, 2, ...} u {infinity}.  `finite` holds the primes with finite
// nonzero exponent, `infinite` the primes with exponent infinity (a prime
// appears in at most one of the two).
struct Supernatural {
  std::map<Int, unsigned long> finite;
  std::set<Int> infinite;

  bool operator==(const Supernatural&) const = default;
};

enum class SnRelation { Equal, FinitelyEquivalent, Inequivalent };

// The supernatural number prod(prefix) * prod(period)^infinity.  Every
// entry must be >= 1.  Primes dividing some period entry get exponent
// infinity; primes dividing only prefix entries keep their finite exponent.
Supernatural sn_from_periodic(const std::vector<Int>& prefix,
                              const std::vector<Int>& period);

// Equal: identical exponent functions.  FinitelyEquivalent: same set of
// infinity-exponent primes (the two differ by a finite rational factor).
SnRelation sn_compare(const Supernatural& a, const Supernatural& b);

// Human-readable form, e.g. "2^3 * 3^inf * 7" ("1" for the empty product).
std::string to_string(const Supernatural& s);

}  // namespace opal::arith
