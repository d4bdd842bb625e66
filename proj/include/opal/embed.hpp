#pragma once

#include <utility>
#include <vector>

#include "opal/tuples.hpp"

// Finite-level embedding recognition: grid orders on [n]x[k], local order
// preservation (condition (3)), order preservation (Lemma 3 pair test with
// Theorem 5 extraction as cross-check), matrix-unit images, and membership
// in the order-preserving normalizer.
namespace opal::embed {

// A diagonal ordering of [n]x[k], positions 1..n*k.  The indexing follows
// the canonical scheme: (i, j) is the image of (1, j) under conjugation by
// the embedded matrix unit e_{1i}, with row 1 listed in diagonal order.
struct GridOrder {
  int n = 0;
  int k = 0;
  std::vector<int> rank;  // rank[(i-1)*k + (j-1)] in 1..n*k, a bijection

  int at(int i, int j) const { return rank[(i - 1) * k + (j - 1)]; }
  int& at(int i, int j) { return rank[(i - 1) * k + (j - 1)]; }
  bool operator==(const GridOrder&) const = default;
};

// Throws std::invalid_argument unless g.rank is a bijection of the right size.
void check_grid(const GridOrder& g);

// The grid order of the direct sum of refinement embeddings with
// multiplicity tuple r (entries small enough for int arithmetic):
// block F_1 = {1..r_1} enumerated lexicographically over (i, j) with i
// outer, then F_2, and so on.
GridOrder grid_order_from_tuple(int n, const tuples::IntTuple& r);

struct Classification {
  enum Kind { NotLOP, LOP, OP } kind;
  tuples::IntTuple tuple;  // populated when kind == OP
};

// NotLOP if condition (3) fails; OP if the grid is a direct sum of
// refinement embeddings, with the multiplicity tuple recovered by
// run-length extraction and verified by reconstruction; LOP otherwise.
// The two-unit pair test cross-checks the verdict: a refinement-sum grid
// with a pair witness, or (for n >= 3) a witness-free grid that is not a
// refinement sum, throws std::logic_error.  For n <= 2 the pair test is
// vacuous and witness-free non-refinement grids are classified LOP.
Classification classify_grid_order(const GridOrder& g);

// Image of e_{ij}: the position pairs {(rank(i,l), rank(j,l)) : l in [k]}.
// Requires 1 <= i <= j <= n.
std::vector<std::pair<int, int>> matrix_unit_image(const GridOrder& g, int i,
                                                   int j);

// A normalizer element of T_n up to diagonal phase: a 0/1 partial
// permutation with support pairs (row, col), row <= col, rows and columns
// each distinct.
struct NormalizerElem {
  int n = 0;
  std::vector<std::pair<int, int>> pairs;
};

// True iff w lies in the order-preserving normalizer: all pairs upper
// triangular and the partial map row -> col strictly increasing.
bool nop_membership(const NormalizerElem& w);

// Push w through the embedding encoded by g: pairs
// {(rank(r,l), rank(c,l)) : (r,c) in w.pairs, l in [k]}.  Requires
// w.n = g.n (std::invalid_argument otherwise).
NormalizerElem conjugate_normalizer(const GridOrder& g, const NormalizerElem& w);

// Both lines of condition (3): positions increase down each column of the
// grid and rightward along each row.
bool satisfies_condition3(const GridOrder& g);

// Grid order of the composition, with `first` applied first.  Column j of
// the result corresponds to a pair (l1, l2) of columns of the factors; the
// pairing is recovered from the positions of row 1 through both grids.
GridOrder compose_grids(const GridOrder& first, const GridOrder& second);

}  // namespace opal::embed
