#pragma once

#include <string>
#include <utility>
#include <vector>

#include "opal/tuples.hpp"

// Ordered diagrams with multiplicity ("Bratelli" in the source definitions;
// conventionally spelled Bratteli), their contraction, order equivalence,
// associated embeddings between direct sums of upper-triangular algebras,
// and a finite-horizon intertwining verifier.
namespace opal::bratelli {

using arith::Int;

struct Edge {
  int src = 0;  // 1-based source vertex
  int dst = 0;  // 1-based destination vertex
  Int mult;     // multiplicity, >= 1

  bool operator==(const Edge&) const = default;
};

// Edges with the same dst are totally ordered by fiber_order; edges with
// different dsts are incomparable.
struct OrderedDiagram {
  int src_count = 0;
  int dst_count = 0;
  std::vector<Edge> edges;
  // fiber_order[d-1]: the 0-based edge indices with dst d, in order.
  std::vector<std::vector<int>> fiber_order;

  bool operator==(const OrderedDiagram&) const = default;
};

// n vertices on both sides, one mult-1 edge per vertex.
OrderedDiagram identity_diagram(int n);

// One source, one destination, one edge per tuple entry, fiber-ordered as
// the tuple reads.
OrderedDiagram tuple_diagram(const tuples::IntTuple& r);

struct ValidationResult {
  bool ok = true;
  std::vector<std::string> diagnostics;
};

// Checks the type invariants: edge endpoints in range, mults >= 1,
// fiber_order a permutation of each dst fiber, every dst (and src) vertex
// covered so that the associated embedding is unital and injective.
ValidationResult validate(const OrderedDiagram& d);

// n_j = sum over edges e with dst j of src_dims[s(e)] * mult(e).
std::vector<Int> target_dimensions(const OrderedDiagram& d,
                                   const std::vector<Int>& src_dims);

// For each dst vertex, the fiber-ordered (src, mult) pairs -- the complete
// description of the associated embedding.  Throws on invalid diagrams.
std::vector<std::vector<std::pair<int, Int>>> embedding_blocks(
    const OrderedDiagram& d);

// Contraction with `first` applied first (first.dst_count must equal
// second.src_count).  Composite edges are pairs (e1, e2) with matching
// middle vertex; mults multiply; fibers order by e2 first, then e1.
OrderedDiagram contract(const OrderedDiagram& first,
                        const OrderedDiagram& second);

// Contract a chain left to right (chain[0] applied first).  The empty chain
// is the identity diagram on `n` vertices.
OrderedDiagram contract_chain(const std::vector<OrderedDiagram>& chain, int n);

// Order isomorphism preserving src, dst, mult, and fiber order; decided by
// canonical fiber-sequence comparison.
bool order_equivalent(const OrderedDiagram& d1, const OrderedDiagram& d2);

// Finite-horizon intertwining verifier for the two defining order
// equivalences:
//   contract(eprime[n], fprime[f(n)])  ~ chainA[n+1 .. g(f(n))]
//   contract(fprime[n], eprime[g(n)])  ~ chainB[n+1 .. f(g(n))]
// for all n <= horizon.  f_map and g_map are 1-based strictly increasing
// index maps (f_map[n-1] = f(n)).  Throws std::out_of_range when a needed
// index exceeds the supplied data, std::invalid_argument when a map is not
// strictly increasing.
bool verify_intertwining(const std::vector<OrderedDiagram>& chainA,
                         const std::vector<OrderedDiagram>& chainB,
                         const std::vector<OrderedDiagram>& eprime,
                         const std::vector<OrderedDiagram>& fprime,
                         const std::vector<int>& f_map,
                         const std::vector<int>& g_map, int horizon);

}  // namespace opal::bratelli
