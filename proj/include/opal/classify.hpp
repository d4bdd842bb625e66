#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "opal/arith.hpp"
#include "opal/presentation.hpp"

// Classification invariants for eventually periodic order-preserving
// presentations and the isomorphism decision.
namespace opal::classify {

using arith::Rat;
using arith::Supernatural;

// Thrown when the canonical factor stream of a non-geometric presentation
// is not stable under composing periods; invariants would be unreliable.
struct FactorStreamInstability : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotAlternation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Supernatural number of the enveloping UHF algebra: entry sums per level.
Supernatural envelope_supernatural(const Presentation& p);

// Supernatural number of the first refinement summand: first entries per
// level.
Supernatural first_summand_supernatural(const Presentation& p);

// Present iff, beyond some level, every composed window has a geometric
// tuple.  For a periodic presentation this reduces to the tuple composed
// over two periods being geometric; the witness ratio is the eventual
// geometric ratio (necessarily 1 for a nontrivial period, by wrap-around).
struct GeometricWitness {
  Rat ratio = 1;
};
std::optional<GeometricWitness> has_geometric_character(const Presentation& p);

struct InvariantSet {
  Supernatural envelope;
  Supernatural first_summand;
  bool geometric = false;
  // Geometric mode:
  Supernatural lengths;  // supernatural number of the tuple lengths
  Rat root = 1;          // reduced root of the eventual ratio
  // NonGeometric mode:
  std::vector<tuples::NormTuple> prefix_factors;
  std::vector<tuples::NormTuple> cycle_factors;  // primitive under rotation
};

// Computes the full invariant set.  For non-geometric presentations the
// canonical factor stream is checked for stability over up to four periods;
// FactorStreamInstability is thrown if it wobbles.
InvariantSet invariants(const Presentation& p);

struct IsoReport {
  bool verdict = false;
  std::vector<std::string> lines;
};

// The classification decision: envelopes equal, first summands at least
// finitely equivalent, and matching mode data (length class + reduced root,
// or rotation-equal primitive factor cycles).
IsoReport isomorphic(const Presentation& p1, const Presentation& p2);

// For presentations whose tuples all have equal entries (alternation
// algebras): the standard and refinement multiplicity classes.
struct AlternationInvariants {
  Supernatural standard_sn;    // tuple lengths
  Supernatural refinement_sn;  // tuple entries
};
AlternationInvariants alternation_invariants(const Presentation& p);

// One-period telescoping: the period composed into a single tuple.
Presentation telescope(const Presentation& p);

}  // namespace opal::classify
