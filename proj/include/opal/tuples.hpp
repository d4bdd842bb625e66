#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "opal/arith.hpp"

// The composition monoid of refinement-multiplicity tuples and its unique
// factorization theory.
//
// Convention: compose(outer, inner) applies `inner` first; the inner tuple
// is the initial segment of the result.  Factorization sequences are stored
// outermost-first (c_1, ..., c_k with t = c_1 o c_2 o ... o c_k).
namespace opal::tuples {

using arith::Int;
using arith::Rat;

// Nonempty sequence of positive integers (a_0, ..., a_{n-1}).
using IntTuple = std::vector<Int>;

// Normalized tuple: nonempty, positive rational entries, first entry 1.
struct NormTuple {
  std::vector<Rat> entries;

  bool operator==(const NormTuple&) const = default;
  std::size_t len() const { return entries.size(); }
};

// Throws std::invalid_argument if t violates the IntTuple invariants.
void check_int_tuple(const IntTuple& t);

std::string to_string(const IntTuple& t);
std::string to_string(const NormTuple& t);

// Divide through by the leading entry: returns (a_0, (1, a_1/a_0, ...)).
std::pair<Rat, NormTuple> normalize(const IntTuple& t);

// Entry at index i*len(inner)+j is outer[i]*inner[j].
NormTuple compose(const NormTuple& outer, const NormTuple& inner);
IntTuple compose_int(const IntTuple& outer, const IntTuple& inner);

enum class Divisibility { None, Divisible, StronglyDivisible };

// m-divisibility of t = (1, a_1, ..., a_{n-1}): Divisible iff m | n and the
// consecutive ratios a_i/a_{i-1} agree within every nonzero residue class
// of indices mod m; StronglyDivisible iff the class-0 ratios agree among
// themselves as well.  Throws std::invalid_argument for m = 0.
Divisibility divisibility(const NormTuple& t, std::size_t m);

// Split t = outer o inner with len(inner) = m: inner = (1, a_1, ..., a_{m-1}),
// outer = (1, a_m, a_{2m}, ...).  Throws NotDivisible when
// divisibility(t, m) = None.
struct NotDivisible : std::runtime_error {
  using std::runtime_error::runtime_error;
};
std::pair<NormTuple, NormTuple> factor_by_length(const NormTuple& t,
                                                 std::size_t m);

// Peel the irreducible inner factor of minimal length m > 1.  When t is
// irreducible (no proper m works) returns ((1), t); peel_minimal((1)) is
// ((1), (1)).
std::pair<NormTuple, NormTuple> peel_minimal(const NormTuple& t);

// Geometric-ratio witness.  A length-1 tuple constrains nothing, so it
// carries the AnyRatio sentinel, compatible with every concrete ratio.
struct GeoRatio {
  bool any = false;
  Rat value = 1;
};

// Returns the ratio x when t = (1, x, x^2, ...); AnyRatio for length 1;
// absent when t is not geometric.
std::optional<GeoRatio> is_geometric(const NormTuple& t);

// Unique factorization into irreducibles c_1, ..., c_k (outermost first)
// such that whenever c_i o c_{i+1} is geometric, len(c_i) >= len(c_{i+1}).
// canonical_factorization((1)) is the empty sequence.
std::vector<NormTuple> canonical_factorization(const NormTuple& t);

// Merge maximal adjacent runs of the canonical factorization whose
// composition is geometric; in the result no adjacent pair composes to a
// geometric sequence.
std::vector<NormTuple> compressed_factorization(const NormTuple& t);

// Commutation classification of a pair of normalized tuples.
struct CommuteResult {
  enum Kind { TrivialFactor, BothAllOnes, CommonPower, NonCommuting } kind;
  // CommonPower only: a = c^m, b = c^n with c of minimal length.
  NormTuple c;
  unsigned long m = 0;
  unsigned long n = 0;
};
CommuteResult commute_class(const NormTuple& a, const NormTuple& b);

}  // namespace opal::tuples
