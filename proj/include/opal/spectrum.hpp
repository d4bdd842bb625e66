#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "opal/embed.hpp"
#include "opal/presentation.hpp"

// Finite-level spectrum orders for order-preserving systems, coherence and
// hypercoherence validation, orbit-closure and gap-point decisions, and the
// locally constant cocycle.
namespace opal::spectrum {

using arith::Int;
using arith::Rat;

// Thrown when a materialization would exceed the configured size cap.
struct SizeLimitExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Level data derived from a presentation: per level n, the tuple r^{(n)},
// k_n = sum of its entries, and the F-set partition F_1, ..., F_{t_n} of
// [k_n] (F_1 = {1..r_1}, then consecutive blocks).
class SystemLevels {
 public:
  explicit SystemLevels(Presentation p);

  const Presentation& presentation() const { return pres_; }
  std::size_t prefix_len() const { return pres_.prefix.size(); }
  std::size_t period_len() const { return pres_.period.size(); }
  // max(prefix length, 0): levels beyond this are fully periodic in both
  // tuple and tail phase.
  std::size_t stabilization() const { return pres_.prefix.size(); }

  // Tuple entries at level n >= 1, as machine integers.
  const std::vector<long>& level_sizes(std::size_t n) const;
  long k(std::size_t n) const;
  std::size_t parts(std::size_t n) const;
  // Unique s with x in F^{(n)}_s; throws std::out_of_range for bad x.
  std::size_t i_fn(std::size_t n, long x) const;
  long f_min(std::size_t n, std::size_t s) const;
  long f_max(std::size_t n, std::size_t s) const;

 private:
  Presentation pres_;
  mutable std::vector<std::vector<long>> cache_;  // per level, 1-based
  void ensure(std::size_t n) const;
};

enum class Cmp { LT, EQ, GT };

// The spectrum order on equal-length prefixes: reverse lexicographic on the
// F-set indices i_q, then lexicographic on the coordinates.
Cmp compare_prefix(const SystemLevels& sys, const std::vector<long>& x,
                   const std::vector<long>& y);

// The full chain of X_m in spectrum order.  Throws SizeLimitExceeded when
// |X_m| > cap.
std::vector<std::vector<long>> materialize_order(const SystemLevels& sys,
                                                 std::size_t m,
                                                 std::size_t cap = 10000);

// Independent construction of the same chain by iterating grid orders level
// by level (the level-m chain indexes the rows of the level-(m+1) grid).
std::vector<std::vector<long>> materialize_by_grids(const SystemLevels& sys,
                                                    std::size_t m,
                                                    std::size_t cap = 10000);

// User-supplied explicit total orders on X_1..X_L, given as rankings.
// ranks[m-1] has size k_1*...*k_m; index by flatten() below; values are
// 1-based positions.
struct ExplicitOrders {
  std::vector<long> dims;
  std::vector<std::vector<long>> ranks;
};

std::size_t flatten(const std::vector<long>& dims, const std::vector<long>& x);

// Build ExplicitOrders from materialized chains of sys up to level L.
ExplicitOrders orders_from_system(const SystemLevels& sys, std::size_t L,
                                  std::size_t cap = 10000);

// Coherence properties b) and c) across all adjacent levels; with hyper
// also the stem-independence of restricted orders for all i < j <= L.
// Diagnostics are appended to *diag when given.
bool check_coherence(const ExplicitOrders& orders, bool hyper,
                     std::vector<std::string>* diag = nullptr);

// Eventually periodic point: explicit prefix coordinates, then per-phase
// tail selectors.  tail has one selector per period position; the selector
// governing level n > len(prefix) is tail[(n - L0 - 1) mod P] where L0 is
// the presentation prefix length and P the period length.
struct TailSel {
  enum Kind { Index, MinOfF, MaxOfF } kind = Index;
  long arg = 1;  // coordinate for Index, F-set index for MinOfF/MaxOfF

  bool operator==(const TailSel&) const = default;
};

struct Point {
  std::vector<long> prefix;
  std::vector<TailSel> tail;

  bool operator==(const Point&) const = default;
};

// Throws std::invalid_argument when a coordinate or selector is out of
// range at some reachable level.
void validate_point(const SystemLevels& sys, const Point& pt);

// Coordinate x_n of the point (resolving tail selectors beyond the prefix).
long coordinate(const SystemLevels& sys, const Point& pt, std::size_t n);

enum class Related { Forward, Backward, Equal, Unrelated };

// Decides the spectrum relation for syntactically tail-equal points;
// conservative Unrelated when the tail descriptions differ.
Related related_points(const SystemLevels& sys, const Point& x, const Point& y);

// True iff infinitely many n have i_n(x_n) > 1 (one period scan).
bool orbit_dense(const SystemLevels& sys, const Point& x);

// Decides x in closure(orbit(y)) for eventually periodic points.
bool closure_member(const SystemLevels& sys, const Point& x, const Point& y);

enum class GapStatus { Gap, NotGap, ExceptionalXInfinity };

// Gap iff eventually x_n = max F^{(n)}_1; the point x^infinity (all
// coordinates maximal) is reported separately.
GapStatus is_gap_point(const SystemLevels& sys, const Point& x);

// The immediate successor of a gap point (throws std::invalid_argument when
// is_gap_point(sys, x) != Gap).
Point gap_successor(const SystemLevels& sys, const Point& x);

// Gap-value tables of the locally constant cocycle: chains[m-1] is the
// level-m chain, gaps[m-1][i] the value between chain elements i and i+1.
struct CocycleTable {
  std::size_t depth = 0;
  std::vector<long> dims;  // k_1 .. k_depth
  std::vector<std::vector<std::vector<long>>> chains;
  std::vector<std::vector<Rat>> gaps;
  // Derived lookup data: chain position by flattened prefix, and prefix
  // sums of the gap values.
  std::vector<std::vector<long>> pos;
  std::vector<std::vector<Rat>> csum;
};

// Build tables for levels 1..depth from the level-1 gaps; within-block gaps
// at level m+1 are d/r_t, row-crossing gaps c_m(i,i+1) - (r_t-1)d/r_t with
// d the minimal level-m gap, and block transitions get transition_value.
// Properties (1) (sign iff order) and (2) (level consistency) are
// re-verified after construction.
CocycleTable build_cocycle(const SystemLevels& sys, std::size_t depth,
                           const std::vector<Rat>& c1_gaps,
                           const Rat& transition_value = Rat(1),
                           std::size_t cap = 10000);

// Signed cocycle value c_m(x, y): sum of the gaps between the two chain
// positions.
mpq_class cocycle_eval(const CocycleTable& table, std::size_t m,
                       const std::vector<long>& x, const std::vector<long>& y);

}  // namespace opal::spectrum
