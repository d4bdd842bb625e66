#include "opal/spectrum.hpp"

#include <algorithm>
#include <numeric>

namespace opal::spectrum {

namespace {

// Levels are fully periodic (tuple and tail phase alike) beyond
// max(point prefix length, presentation prefix length).
std::size_t periodic_from(const SystemLevels& sys, const Point& pt) {
  return std::max(pt.prefix.size(), sys.prefix_len());
}

}  // namespace

SystemLevels::SystemLevels(Presentation p) : pres_(std::move(p)) {
  check_presentation(pres_);
}

void SystemLevels::ensure(std::size_t n) const {
  if (n == 0) throw std::out_of_range("levels are 1-based");
  while (cache_.size() < n) {
    std::size_t lvl = cache_.size() + 1;
    const tuples::IntTuple& t =
        lvl <= pres_.prefix.size()
            ? pres_.prefix[lvl - 1]
            : pres_.period[(lvl - pres_.prefix.size() - 1) % pres_.period.size()];
    std::vector<long> sizes;
    for (const Int& v : t) {
      if (!v.fits_slong_p())
        throw std::invalid_argument("level tuple entry too large to materialize");
      sizes.push_back(v.get_si());
    }
    cache_.push_back(std::move(sizes));
  }
}

const std::vector<long>& SystemLevels::level_sizes(std::size_t n) const {
  ensure(n);
  return cache_[n - 1];
}

long SystemLevels::k(std::size_t n) const {
  const auto& s = level_sizes(n);
  return std::accumulate(s.begin(), s.end(), 0L);
}

std::size_t SystemLevels::parts(std::size_t n) const {
  return level_sizes(n).size();
}

std::size_t SystemLevels::i_fn(std::size_t n, long x) const {
  const auto& s = level_sizes(n);
  long acc = 0;
  for (std::size_t idx = 0; idx < s.size(); ++idx) {
    acc += s[idx];
    if (x <= acc) {
      if (x < 1) break;
      return idx + 1;
    }
  }
  throw std::out_of_range("coordinate out of range at level " + std::to_string(n));
}

long SystemLevels::f_min(std::size_t n, std::size_t s) const {
  const auto& sz = level_sizes(n);
  if (s < 1 || s > sz.size())
    throw std::out_of_range("F-set index out of range at level " + std::to_string(n));
  long acc = 0;
  for (std::size_t idx = 0; idx + 1 < s; ++idx) acc += sz[idx];
  return acc + 1;
}

long SystemLevels::f_max(std::size_t n, std::size_t s) const {
  return f_min(n, s) + level_sizes(n)[s - 1] - 1;
}

Cmp compare_prefix(const SystemLevels& sys, const std::vector<long>& x,
                   const std::vector<long>& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("compare_prefix: length mismatch");
  // Reverse lexicographic on the F-set indices, then lexicographic on the
  // coordinates.
  for (std::size_t q = x.size(); q >= 1; --q) {
    std::size_t ix = sys.i_fn(q, x[q - 1]);
    std::size_t iy = sys.i_fn(q, y[q - 1]);
    if (ix != iy) return ix < iy ? Cmp::LT : Cmp::GT;
  }
  for (std::size_t q = 1; q <= x.size(); ++q)
    if (x[q - 1] != y[q - 1]) return x[q - 1] < y[q - 1] ? Cmp::LT : Cmp::GT;
  return Cmp::EQ;
}

namespace {

std::size_t checked_size(const SystemLevels& sys, std::size_t m,
                         std::size_t cap) {
  Int total = 1;
  for (std::size_t n = 1; n <= m; ++n) total *= sys.k(n);
  if (total > static_cast<unsigned long>(cap))
    throw SizeLimitExceeded("|X_" + std::to_string(m) + "| = " + total.get_str() +
                            " exceeds the materialization cap of " +
                            std::to_string(cap));
  return total.get_ui();
}

std::vector<std::vector<long>> all_prefixes(const SystemLevels& sys,
                                            std::size_t m) {
  std::vector<std::vector<long>> out{{}};
  for (std::size_t n = 1; n <= m; ++n) {
    std::vector<std::vector<long>> next;
    next.reserve(out.size() * sys.k(n));
    for (const auto& p : out)
      for (long j = 1; j <= sys.k(n); ++j) {
        next.push_back(p);
        next.back().push_back(j);
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<std::vector<long>> materialize_order(const SystemLevels& sys,
                                                 std::size_t m,
                                                 std::size_t cap) {
  checked_size(sys, m, cap);
  std::vector<std::vector<long>> chain = all_prefixes(sys, m);
  std::sort(chain.begin(), chain.end(),
            [&sys](const std::vector<long>& a, const std::vector<long>& b) {
              return compare_prefix(sys, a, b) == Cmp::LT;
            });
  return chain;
}

std::vector<std::vector<long>> materialize_by_grids(const SystemLevels& sys,
                                                    std::size_t m,
                                                    std::size_t cap) {
  checked_size(sys, m, cap);
  std::vector<std::vector<long>> chain;
  for (long j = 1; j <= sys.k(1); ++j) chain.push_back({j});
  for (std::size_t n = 2; n <= m; ++n) {
    tuples::IntTuple r;
    for (long v : sys.level_sizes(n)) r.push_back(Int(v));
    embed::GridOrder g =
        embed::grid_order_from_tuple(static_cast<int>(chain.size()), r);
    std::vector<std::vector<long>> next(chain.size() * g.k);
    for (int i = 1; i <= g.n; ++i)
      for (int j = 1; j <= g.k; ++j) {
        std::vector<long> elem = chain[i - 1];
        elem.push_back(j);
        next[g.at(i, j) - 1] = std::move(elem);
      }
    chain = std::move(next);
  }
  return chain;
}

std::size_t flatten(const std::vector<long>& dims, const std::vector<long>& x) {
  if (x.size() > dims.size())
    throw std::invalid_argument("flatten: prefix longer than dims");
  std::size_t idx = 0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    if (x[n] < 1 || x[n] > dims[n])
      throw std::out_of_range("flatten: coordinate out of range");
    idx = idx * dims[n] + (x[n] - 1);
  }
  return idx;
}

ExplicitOrders orders_from_system(const SystemLevels& sys, std::size_t L,
                                  std::size_t cap) {
  ExplicitOrders out;
  for (std::size_t n = 1; n <= L; ++n) out.dims.push_back(sys.k(n));
  for (std::size_t m = 1; m <= L; ++m) {
    auto chain = materialize_order(sys, m, cap);
    std::vector<long> rank(chain.size());
    std::vector<long> d(out.dims.begin(), out.dims.begin() + m);
    for (std::size_t p = 0; p < chain.size(); ++p)
      rank[flatten(d, chain[p])] = static_cast<long>(p) + 1;
    out.ranks.push_back(std::move(rank));
  }
  return out;
}

namespace {

std::vector<std::vector<long>> enumerate_box(const std::vector<long>& dims) {
  std::vector<std::vector<long>> out{{}};
  for (long k : dims) {
    std::vector<std::vector<long>> next;
    next.reserve(out.size() * k);
    for (const auto& p : out)
      for (long j = 1; j <= k; ++j) {
        next.push_back(p);
        next.back().push_back(j);
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

bool check_coherence(const ExplicitOrders& orders, bool hyper,
                     std::vector<std::string>* diag) {
  const std::size_t L = orders.ranks.size();
  if (orders.dims.size() != L)
    throw std::invalid_argument("check_coherence: dims/ranks size mismatch");
  bool ok = true;
  auto fail = [&ok, diag](const std::string& msg) {
    ok = false;
    if (diag) diag->push_back(msg);
  };
  std::vector<std::vector<std::vector<long>>> boxes(L + 1);
  for (std::size_t m = 1; m <= L; ++m) {
    std::vector<long> d(orders.dims.begin(), orders.dims.begin() + m);
    boxes[m] = enumerate_box(d);
    if (orders.ranks[m - 1].size() != boxes[m].size())
      throw std::invalid_argument("check_coherence: ranking has wrong size at level " +
                                  std::to_string(m));
  }
  auto rank_of = [&orders](std::size_t m, const std::vector<long>& x) {
    std::vector<long> d(orders.dims.begin(), orders.dims.begin() + m);
    return orders.ranks[m - 1][flatten(d, x)];
  };
  for (std::size_t m = 1; m + 1 <= L; ++m) {
    long kn = orders.dims[m];
    // b): appending a larger last coordinate moves forward.
    for (const auto& x : boxes[m])
      for (long j = 1; j < kn; ++j) {
        std::vector<long> a = x, b = x;
        a.push_back(j);
        b.push_back(j + 1);
        if (rank_of(m + 1, a) >= rank_of(m + 1, b)) {
          fail("coherence b) fails between levels " + std::to_string(m) + " and " +
               std::to_string(m + 1));
          j = kn;
        }
      }
    // c): the level-m order is preserved under appending any fixed j.
    std::vector<std::vector<long>> chain = boxes[m];
    std::sort(chain.begin(), chain.end(),
              [&](const std::vector<long>& a, const std::vector<long>& b) {
                return rank_of(m, a) < rank_of(m, b);
              });
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
      for (long j = 1; j <= kn; ++j) {
        std::vector<long> a = chain[i], b = chain[i + 1];
        a.push_back(j);
        b.push_back(j);
        if (rank_of(m + 1, a) >= rank_of(m + 1, b)) {
          fail("coherence c) fails between levels " + std::to_string(m) + " and " +
               std::to_string(m + 1));
          i = chain.size();
          break;
        }
      }
  }
  if (hyper) {
    // Stem independence: for i < j, the order induced on the suffix box by
    // any stem in X_i is the same.
    for (std::size_t i = 1; i < L; ++i)
      for (std::size_t j = i + 1; j <= L; ++j) {
        std::vector<long> sufdims(orders.dims.begin() + i, orders.dims.begin() + j);
        std::vector<std::vector<long>> suffixes = enumerate_box(sufdims);
        std::vector<std::size_t> reference;
        for (const auto& stem : boxes[i]) {
          std::vector<std::size_t> perm(suffixes.size());
          std::iota(perm.begin(), perm.end(), std::size_t{0});
          std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
            std::vector<long> xa = stem, xb = stem;
            xa.insert(xa.end(), suffixes[a].begin(), suffixes[a].end());
            xb.insert(xb.end(), suffixes[b].begin(), suffixes[b].end());
            return rank_of(j, xa) < rank_of(j, xb);
          });
          if (reference.empty()) {
            reference = perm;
          } else if (perm != reference) {
            fail("hypercoherence fails for levels i=" + std::to_string(i) +
                 ", j=" + std::to_string(j) + ": restricted order depends on the stem");
            break;
          }
        }
      }
  }
  return ok;
}

namespace {

const TailSel& selector_for(const SystemLevels& sys, const Point& pt,
                            std::size_t n) {
  const std::size_t P = sys.period_len();
  const long L0 = static_cast<long>(sys.prefix_len());
  long phase = (static_cast<long>(n) - L0 - 1) % static_cast<long>(P);
  if (phase < 0) phase += static_cast<long>(P);
  return pt.tail[static_cast<std::size_t>(phase)];
}

long resolve_selector(const SystemLevels& sys, const TailSel& sel,
                      std::size_t n) {
  switch (sel.kind) {
    case TailSel::Index:
      if (sel.arg < 1 || sel.arg > sys.k(n))
        throw std::invalid_argument("tail coordinate out of range at level " +
                                    std::to_string(n));
      return sel.arg;
    case TailSel::MinOfF:
      return sys.f_min(n, static_cast<std::size_t>(sel.arg));
    case TailSel::MaxOfF:
      return sys.f_max(n, static_cast<std::size_t>(sel.arg));
  }
  throw std::logic_error("unreachable selector kind");
}

}  // namespace

void validate_point(const SystemLevels& sys, const Point& pt) {
  if (pt.tail.size() != sys.period_len())
    throw std::invalid_argument("point tail must have one selector per period position");
  for (std::size_t n = 1; n <= pt.prefix.size(); ++n)
    if (pt.prefix[n - 1] < 1 || pt.prefix[n - 1] > sys.k(n))
      throw std::invalid_argument("point coordinate out of range at level " +
                                  std::to_string(n));
  // One full period beyond the stabilization level covers every
  // (tuple, selector) phase; the levels in between are checked directly.
  std::size_t top = std::max(pt.prefix.size(), sys.prefix_len()) + sys.period_len();
  for (std::size_t n = pt.prefix.size() + 1; n <= top; ++n) {
    try {
      resolve_selector(sys, selector_for(sys, pt, n), n);
    } catch (const std::out_of_range& e) {
      throw std::invalid_argument(e.what());
    }
  }
}

long coordinate(const SystemLevels& sys, const Point& pt, std::size_t n) {
  if (n == 0) throw std::out_of_range("levels are 1-based");
  if (n <= pt.prefix.size()) return pt.prefix[n - 1];
  return resolve_selector(sys, selector_for(sys, pt, n), n);
}

namespace {

bool points_equal(const SystemLevels& sys, const Point& x, const Point& y) {
  if (x.tail != y.tail) return false;
  std::size_t M = std::max(x.prefix.size(), y.prefix.size());
  for (std::size_t n = 1; n <= M; ++n)
    if (coordinate(sys, x, n) != coordinate(sys, y, n)) return false;
  return true;
}

std::vector<long> coords_upto(const SystemLevels& sys, const Point& pt,
                              std::size_t m) {
  std::vector<long> out;
  out.reserve(m);
  for (std::size_t n = 1; n <= m; ++n) out.push_back(coordinate(sys, pt, n));
  return out;
}

}  // namespace

Related related_points(const SystemLevels& sys, const Point& x, const Point& y) {
  validate_point(sys, x);
  validate_point(sys, y);
  if (x.tail != y.tail) return Related::Unrelated;
  std::size_t M = std::max(x.prefix.size(), y.prefix.size());
  M = std::max<std::size_t>(M, 1);
  Cmp c = compare_prefix(sys, coords_upto(sys, x, M), coords_upto(sys, y, M));
  if (c == Cmp::EQ) return Related::Equal;
  return c == Cmp::LT ? Related::Forward : Related::Backward;
}

bool orbit_dense(const SystemLevels& sys, const Point& x) {
  validate_point(sys, x);
  std::size_t S = periodic_from(sys, x);
  for (std::size_t n = S + 1; n <= S + sys.period_len(); ++n)
    if (sys.i_fn(n, coordinate(sys, x, n)) > 1) return true;
  return false;
}

GapStatus is_gap_point(const SystemLevels& sys, const Point& x) {
  validate_point(sys, x);
  std::size_t S = periodic_from(sys, x);
  bool all_max = true;
  for (std::size_t n = 1; n <= S + sys.period_len() && all_max; ++n)
    if (coordinate(sys, x, n) != sys.k(n)) all_max = false;
  if (all_max) return GapStatus::ExceptionalXInfinity;
  for (std::size_t n = S + 1; n <= S + sys.period_len(); ++n)
    if (coordinate(sys, x, n) != sys.f_max(n, 1)) return GapStatus::NotGap;
  return GapStatus::Gap;
}

Point gap_successor(const SystemLevels& sys, const Point& x) {
  if (is_gap_point(sys, x) != GapStatus::Gap)
    throw std::invalid_argument("gap_successor: point is not a gap point");
  std::size_t S = periodic_from(sys, x);
  // Case 1: a maximal level m where x_m is not the top of its own F-set.
  // Beyond S every coordinate is max F_1, so m can only lie in 1..S.
  std::size_t m = 0;
  for (std::size_t n = 1; n <= S; ++n) {
    long c = coordinate(sys, x, n);
    if (c != sys.f_max(n, sys.i_fn(n, c))) m = n;
  }
  std::size_t cut;  // level whose coordinate is incremented
  if (m == 0) {
    // Case 2: every coordinate tops its F-set; find the least level whose
    // coordinate is not k_n (it exists, since x is not x^infinity).
    std::size_t q = 0;
    for (std::size_t n = 1; n <= S + sys.period_len(); ++n)
      if (coordinate(sys, x, n) != sys.k(n)) {
        q = n;
        break;
      }
    if (q == 0)
      throw std::logic_error("gap_successor: gap point looks like x^infinity");
    cut = q;
  } else {
    cut = m;
  }
  std::size_t Ly = std::max(S, cut);
  Point y;
  for (std::size_t n = 1; n <= Ly; ++n) {
    long c;
    if (n < cut)
      c = m == 0 ? 1 : coordinate(sys, x, n);  // Case 2 resets, Case 1 copies
    else if (n == cut)
      c = coordinate(sys, x, n) + 1;
    else
      c = sys.f_min(n, sys.i_fn(n, coordinate(sys, x, n)));
    y.prefix.push_back(c);
  }
  y.tail.assign(sys.period_len(), TailSel{TailSel::MinOfF, 1});
  validate_point(sys, y);
  return y;
}

bool closure_member(const SystemLevels& sys, const Point& x, const Point& y) {
  validate_point(sys, x);
  validate_point(sys, y);
  if (points_equal(sys, x, y)) return true;
  if (orbit_dense(sys, y)) return true;
  // y's orbit is not dense, so beyond Sy its coordinates stay in F_1; x can
  // only lie in the closure if its coordinates do too, from that point on.
  std::size_t Sy = periodic_from(sys, y);
  std::size_t Sx = periodic_from(sys, x);
  std::size_t s0 = std::max(Sx, Sy);
  for (std::size_t n = Sy + 1; n <= s0 + sys.period_len(); ++n)
    if (sys.i_fn(n, coordinate(sys, x, n)) > 1) return false;
  s0 = std::max<std::size_t>(s0, 1);
  Cmp c = compare_prefix(sys, coords_upto(sys, x, s0), coords_upto(sys, y, s0));
  if (c != Cmp::EQ) return c == Cmp::LT;
  // Prefixes agree through s0 and all later F-indices are 1, so the lowest
  // differing coordinate (periodic beyond s0) decides lexicographically.
  for (std::size_t n = s0 + 1; n <= s0 + sys.period_len(); ++n) {
    long a = coordinate(sys, x, n);
    long b = coordinate(sys, y, n);
    if (a != b) return a < b;
  }
  return true;  // the points agree from s0 on
}

CocycleTable build_cocycle(const SystemLevels& sys, std::size_t depth,
                           const std::vector<Rat>& c1_gaps,
                           const Rat& transition_value, std::size_t cap) {
  if (depth < 1) throw std::invalid_argument("build_cocycle: depth must be >= 1");
  Rat transition = transition_value;
  transition.canonicalize();
  if (transition <= 0)
    throw std::invalid_argument("build_cocycle: transition value must be positive");
  if (c1_gaps.size() != static_cast<std::size_t>(sys.k(1)) - 1)
    throw std::invalid_argument("build_cocycle: need k_1 - 1 level-1 gaps");
  // Callers may hand over rationals assembled from raw numerator/denominator
  // pairs; canonicalize so that exact comparisons behave.
  std::vector<Rat> c1 = c1_gaps;
  for (Rat& g : c1) {
    g.canonicalize();
    if (g <= 0)
      throw std::invalid_argument("build_cocycle: gap values must be positive");
  }
  checked_size(sys, depth, cap);

  CocycleTable t;
  t.depth = depth;
  for (std::size_t n = 1; n <= depth; ++n) t.dims.push_back(sys.k(n));
  t.chains.push_back(materialize_order(sys, 1, cap));
  t.gaps.push_back(c1);
  for (std::size_t m = 1; m < depth; ++m) {
    const auto& chain = t.chains[m - 1];
    const auto& gaps = t.gaps[m - 1];
    const std::size_t K = chain.size();
    // d: minimal level-m gap; the value is irrelevant when the level has a
    // single element (no within-row step ever combines with a crossing).
    Rat d = gaps.empty() ? Rat(1) : *std::min_element(gaps.begin(), gaps.end());
    std::vector<std::vector<long>> next;
    std::vector<Rat> ngaps;
    const auto& sizes = sys.level_sizes(m + 1);
    for (std::size_t tb = 0; tb < sizes.size(); ++tb) {
      long r = sizes[tb];
      long base = sys.f_min(m + 1, tb + 1);
      if (tb > 0) ngaps.push_back(transition);
      for (std::size_t i = 0; i < K; ++i) {
        if (i > 0) ngaps.push_back(gaps[i - 1] - Rat(r - 1) * d / r);
        for (long j = 0; j < r; ++j) {
          if (j > 0) ngaps.push_back(d / r);
          std::vector<long> elem = chain[i];
          elem.push_back(base + j);
          next.push_back(std::move(elem));
        }
      }
    }
    if (!(next == materialize_order(sys, m + 1, cap)))
      throw std::logic_error("build_cocycle: block enumeration disagrees with the "
                             "spectrum order");
    t.chains.push_back(std::move(next));
    t.gaps.push_back(std::move(ngaps));
  }
  // Lookup data.
  for (std::size_t m = 1; m <= depth; ++m) {
    const auto& chain = t.chains[m - 1];
    std::vector<long> d(t.dims.begin(), t.dims.begin() + m);
    std::vector<long> pos(chain.size());
    for (std::size_t p = 0; p < chain.size(); ++p)
      pos[flatten(d, chain[p])] = static_cast<long>(p);
    t.pos.push_back(std::move(pos));
    std::vector<Rat> csum{Rat(0)};
    for (const Rat& g : t.gaps[m - 1]) csum.push_back(csum.back() + g);
    t.csum.push_back(std::move(csum));
  }
  // Re-verify property (1): strictly positive gaps (sign iff order).
  for (const auto& gs : t.gaps)
    for (const Rat& g : gs)
      if (g <= 0)
        throw std::logic_error("build_cocycle: nonpositive gap violates property (1)");
  // Re-verify property (2): appending a common coordinate preserves values.
  for (std::size_t m = 1; m < depth; ++m) {
    const auto& chain = t.chains[m - 1];
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
      for (long j = 1; j <= t.dims[m]; ++j) {
        std::vector<long> a = chain[i], b = chain[i + 1];
        a.push_back(j);
        b.push_back(j);
        if (cocycle_eval(t, m + 1, a, b) != t.gaps[m - 1][i])
          throw std::logic_error(
              "build_cocycle: level consistency (property 2) fails");
      }
  }
  return t;
}

mpq_class cocycle_eval(const CocycleTable& table, std::size_t m,
                       const std::vector<long>& x, const std::vector<long>& y) {
  if (m < 1 || m > table.depth)
    throw std::out_of_range("cocycle_eval: level out of depth");
  if (x.size() != m || y.size() != m)
    throw std::invalid_argument("cocycle_eval: prefix length must equal the level");
  std::vector<long> d(table.dims.begin(), table.dims.begin() + m);
  long px = table.pos[m - 1][flatten(d, x)];
  long py = table.pos[m - 1][flatten(d, y)];
  return table.csum[m - 1][py] - table.csum[m - 1][px];
}

}  // namespace opal::spectrum
