// Acceptance suite: ten oracle- and property-based criteria, one line each.
#include <algorithm>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <vector>

#include "opal/bratelli.hpp"
#include "opal/classify.hpp"
#include "opal/embed.hpp"
#include "opal/json_io.hpp"
#include "opal/spectrum.hpp"
#include "opal/tuples.hpp"

using namespace opal;
using tuples::IntTuple;
using tuples::NormTuple;
using arith::Int;
using arith::Rat;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool ok) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << idx << ": " << name
            << "\n";
  if (!ok) ++failures;
}

IntTuple it(std::vector<long> v) {
  IntTuple t;
  for (long e : v) t.push_back(Int(e));
  return t;
}

Presentation pres(std::vector<std::vector<long>> prefix,
                  std::vector<std::vector<long>> period) {
  Presentation p;
  for (auto& t : prefix) p.prefix.push_back(it(t));
  for (auto& t : period) p.period.push_back(it(t));
  return p;
}

// Enumerate all IntTuples with entries in [1, max_entry] of length len.
template <typename F>
void odometer(int len, int max_entry, F&& visit) {
  std::vector<long> v(len, 1);
  while (true) {
    visit(v);
    int i = len - 1;
    while (i >= 0 && v[i] == max_entry) v[i--] = 1;
    if (i < 0) return;
    ++v[i];
  }
}

NormTuple norm_of(const std::vector<long>& v) {
  return tuples::normalize(it(v)).second;
}

bool is_irreducible(const NormTuple& t) {
  if (t.len() <= 1) return false;
  for (std::size_t m = 2; m < t.len(); ++m)
    if (t.len() % m == 0 &&
        tuples::divisibility(t, m) != tuples::Divisibility::None)
      return false;
  return true;
}

void all_chains(const NormTuple& t, std::vector<NormTuple>& cur,
                std::vector<std::vector<NormTuple>>& out) {
  if (t.len() == 1) {
    out.emplace_back(cur.rbegin(), cur.rend());
    return;
  }
  for (std::size_t m = 2; m <= t.len(); ++m) {
    if (t.len() % m != 0 ||
        tuples::divisibility(t, m) == tuples::Divisibility::None)
      continue;
    auto [outer, inner] = tuples::factor_by_length(t, m);
    if (!is_irreducible(inner)) continue;
    cur.push_back(inner);
    all_chains(outer, cur, out);
    cur.pop_back();
  }
}

bool chain_constraint(const std::vector<NormTuple>& chain) {
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (tuples::is_geometric(tuples::compose(chain[i], chain[i + 1])) &&
        chain[i].len() < chain[i + 1].len())
      return false;
  return true;
}

NormTuple random_norm(std::mt19937& rng, int max_len, int max_entry) {
  std::uniform_int_distribution<int> len(1, max_len), entry(1, max_entry);
  std::vector<long> v(len(rng));
  for (auto& e : v) e = entry(rng);
  return norm_of(v);
}

void criterion1() {
  bool ok = true;
  for (int len = 1; len <= 8 && ok; ++len)
    odometer(len, 4, [&](const std::vector<long>& v) {
      if (!ok) return;
      NormTuple t = norm_of(v);
      std::vector<std::vector<NormTuple>> chains;
      std::vector<NormTuple> cur;
      all_chains(t, cur, chains);
      std::vector<NormTuple> winner;
      int count = 0;
      for (const auto& c : chains)
        if (chain_constraint(c)) {
          ++count;
          winner = c;
        }
      if (count != 1 || winner != tuples::canonical_factorization(t)) ok = false;
    });
  report(1, "factorization chains are unique under the length constraint", ok);
}

void criterion2() {
  std::mt19937 rng(101);
  bool ok = true;
  for (int trial = 0; trial < 10000 && ok; ++trial) {
    NormTuple a = random_norm(rng, 4, 4);
    NormTuple b = random_norm(rng, 4, 4);
    NormTuple c = random_norm(rng, 4, 4);
    if (tuples::compose(tuples::compose(a, b), c) !=
        tuples::compose(a, tuples::compose(b, c)))
      ok = false;
    auto [ra, rb] = tuples::factor_by_length(tuples::compose(a, b), b.len());
    if (ra != a || rb != b) ok = false;
  }
  report(2, "monoid associativity and cancellation on random triples", ok);
}

void criterion3() {
  bool ok = true;
  for (int len = 1; len <= 6 && ok; ++len)
    odometer(len, 3, [&](const std::vector<long>& v) {
      if (!ok) return;
      NormTuple t = norm_of(v);
      std::size_t n = t.len();
      std::vector<std::size_t> divs;
      for (std::size_t m = 1; m <= n; ++m) {
        if (n % m != 0) continue;
        // Factorability is decided by the single candidate split.
        NormTuple inner, outer;
        inner.entries.assign(t.entries.begin(), t.entries.begin() + m);
        for (std::size_t i = 0; i < n; i += m)
          outer.entries.push_back(t.entries[i]);
        bool factorable = tuples::compose(outer, inner) == t;
        bool divisible = tuples::divisibility(t, m) != tuples::Divisibility::None;
        if (factorable != divisible) ok = false;
        if (divisible) divs.push_back(m);
      }
      for (std::size_t p : divs)
        for (std::size_t q : divs) {
          std::size_t l = std::lcm(p, q), g = std::gcd(p, q);
          if (l > n || n % l != 0) continue;
          if (std::find(divs.begin(), divs.end(), l) == divs.end()) {
            ok = false;
            continue;
          }
          auto [b, c] = tuples::factor_by_length(t, l);
          if (p % q == 0 || q % p == 0) {
            // When one length divides the other the strong form can fail
            // (e.g. (1,1,2,2,3,3) with p = 6, q = 2), but plain
            // divisibility at the gcd still holds.
            if (tuples::divisibility(c, g) == tuples::Divisibility::None)
              ok = false;
          } else if (tuples::divisibility(c, g) !=
                     tuples::Divisibility::StronglyDivisible) {
            ok = false;
          }
        }
    });
  report(3, "factorability matches divisibility; lcm/gcd law holds", ok);
}

void criterion4() {
  std::vector<NormTuple> all;
  for (int len = 1; len <= 4; ++len)
    odometer(len, 3, [&](const std::vector<long>& v) {
      NormTuple t = norm_of(v);
      if (std::find(all.begin(), all.end(), t) == all.end()) all.push_back(t);
    });
  bool ok = true;
  for (const auto& a : all)
    for (const auto& b : all) {
      bool commute = tuples::compose(a, b) == tuples::compose(b, a);
      auto r = tuples::commute_class(a, b);
      if ((r.kind != tuples::CommuteResult::NonCommuting) != commute) ok = false;
      if (r.kind == tuples::CommuteResult::CommonPower) {
        NormTuple pa{{Rat(1)}}, pb{{Rat(1)}};
        for (unsigned long i = 0; i < r.m; ++i) pa = tuples::compose(pa, r.c);
        for (unsigned long i = 0; i < r.n; ++i) pb = tuples::compose(pb, r.c);
        if (pa != a || pb != b) ok = false;
      }
    }
  report(4, "commutation trichotomy with recomposing witnesses", ok);
}

// Direct verdicts for criterion 5, computed without classify_grid_order.
bool direct_lop(const embed::GridOrder& g) {
  for (int j = 2; j <= g.k; ++j)
    if (g.at(1, j - 1) >= g.at(1, j)) return false;
  for (int i = 1; i <= g.n; ++i)
    for (int j = i; j <= g.n; ++j) {
      embed::NormalizerElem img{g.n * g.k, embed::matrix_unit_image(g, i, j)};
      if (!embed::nop_membership(img)) return false;
    }
  return true;
}

bool direct_op_lemma3(const embed::GridOrder& g) {
  if (!direct_lop(g)) return false;
  for (int a1 = 1; a1 <= g.n; ++a1)
    for (int b1 = a1; b1 <= g.n; ++b1)
      for (int a2 = 1; a2 <= g.n; ++a2)
        for (int b2 = a2; b2 <= g.n; ++b2) {
          if (a1 == a2 || b1 == b2) continue;
          if ((a1 < a2) != (b1 < b2)) continue;
          embed::NormalizerElem w{g.n, {{a1, b1}, {a2, b2}}};
          if (!embed::nop_membership(w)) continue;
          if (!embed::nop_membership(embed::conjugate_normalizer(g, w)))
            return false;
        }
  return true;
}

bool direct_op_theorem5(const embed::GridOrder& g) {
  // OP iff the grid equals the tuple grid for some composition of k.
  std::vector<std::vector<long>> comps;
  std::vector<long> cur;
  std::function<void(long)> rec = [&](long rest) {
    if (rest == 0) {
      comps.push_back(cur);
      return;
    }
    for (long first = 1; first <= rest; ++first) {
      cur.push_back(first);
      rec(rest - first);
      cur.pop_back();
    }
  };
  rec(g.k);
  for (const auto& comp : comps)
    if (g == embed::grid_order_from_tuple(g.n, it(comp))) return true;
  return false;
}

void criterion5() {
  bool ok = true;
  bool edge_case_seen = false;  // n = 2: witness-free non-refinement grids
  for (auto [n, k] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}}) {
    std::vector<int> perm(n * k);
    std::iota(perm.begin(), perm.end(), 1);
    do {
      embed::GridOrder g{n, k, perm};
      auto cls = embed::classify_grid_order(g);
      bool lop = direct_lop(g);
      bool op3 = direct_op_lemma3(g);
      bool op5 = direct_op_theorem5(g);
      bool op = cls.kind == embed::Classification::OP;
      if ((cls.kind != embed::Classification::NotLOP) != lop) ok = false;
      if (op != op5) ok = false;
      if (n >= 3 && op3 != op) ok = false;
      // With two rows the two-unit test is vacuous; refinement sums still
      // pass it, but the converse fails on a known family of grids.
      if (n == 2 && op && !op3) ok = false;
      if (n == 2 && op3 && !op) edge_case_seen = true;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  if (!edge_case_seen) ok = false;
  // The three fixed examples.
  embed::GridOrder phi{2, 2, {1, 2, 4, 3}};
  if (embed::classify_grid_order(phi).kind != embed::Classification::NotLOP)
    ok = false;
  embed::GridOrder psi{4, 2, {1, 3, 2, 4, 5, 7, 6, 8}};
  if (embed::classify_grid_order(psi).kind != embed::Classification::LOP)
    ok = false;
  if (embed::nop_membership(embed::NormalizerElem{4, {{1, 4}, {2, 3}}}))
    ok = false;
  report(5, "exhaustive three-way embedding recognition agreement", ok);
}

Presentation random_presentation(std::mt19937& rng, int max_tuples = 2,
                                 int max_len = 3, int max_entry = 2) {
  std::uniform_int_distribution<int> count(1, max_tuples), len(1, max_len),
      entry(1, max_entry), plen(0, 1);
  Presentation p;
  int pre = plen(rng);
  for (int i = 0; i < pre; ++i) {
    std::vector<long> v(len(rng));
    for (auto& e : v) e = entry(rng);
    p.prefix.push_back(it(v));
  }
  int per = count(rng);
  for (int i = 0; i < per; ++i) {
    std::vector<long> v(len(rng));
    for (auto& e : v) e = entry(rng);
    p.period.push_back(it(v));
  }
  return p;
}

void criterion6() {
  std::mt19937 rng(103);
  bool ok = true;
  for (int trial = 0; trial < 20 && ok; ++trial) {
    spectrum::SystemLevels sys(random_presentation(rng));
    for (std::size_t m = 1; m <= 5; ++m) {
      try {
        auto a = spectrum::materialize_order(sys, m, 4000);
        auto b = spectrum::materialize_by_grids(sys, m, 4000);
        if (a != b) ok = false;
      } catch (const spectrum::SizeLimitExceeded&) {
        break;
      }
    }
    try {
      auto orders = spectrum::orders_from_system(sys, 4, 4000);
      if (!spectrum::check_coherence(orders, true)) ok = false;
    } catch (const spectrum::SizeLimitExceeded&) {
    }
  }
  // The locally-order-preserving 3-adic system: coherent at three levels but
  // not hypercoherent.
  auto row = [](long p) -> std::vector<long> {
    if (p == 1) return {1, 2, 4};
    if (p == 9) return {24, 26, 27};
    return {3 * p - 3, 3 * p - 1, 3 * p + 1};
  };
  std::vector<std::vector<long>> phi1{{1, 2, 4}, {3, 5, 7}, {6, 8, 9}};
  spectrum::ExplicitOrders orders;
  orders.dims = {3, 3, 3};
  orders.ranks = {std::vector<long>(3), std::vector<long>(9),
                  std::vector<long>(27)};
  orders.ranks[0] = {1, 2, 3};
  for (long x1 = 1; x1 <= 3; ++x1)
    for (long x2 = 1; x2 <= 3; ++x2) {
      long p = phi1[x1 - 1][x2 - 1];
      orders.ranks[1][spectrum::flatten({3, 3}, {x1, x2})] = p;
      for (long x3 = 1; x3 <= 3; ++x3)
        orders.ranks[2][spectrum::flatten({3, 3, 3}, {x1, x2, x3})] =
            row(p)[x3 - 1];
    }
  if (!spectrum::check_coherence(orders, false)) ok = false;
  if (spectrum::check_coherence(orders, true)) ok = false;
  report(6, "spectrum orders cross-validate; hypercoherence separates", ok);
}

void criterion7() {
  using spectrum::GapStatus;
  using spectrum::Point;
  using spectrum::TailSel;
  bool ok = true;
  struct Case {
    Presentation p;
    Point x;
    GapStatus expect;
  };
  std::vector<Case> cases{
      {pres({}, {{2}}), Point{{1}, {TailSel{TailSel::MaxOfF, 1}}},
       GapStatus::Gap},
      {pres({}, {{2}}), Point{{}, {TailSel{TailSel::MaxOfF, 1}}},
       GapStatus::ExceptionalXInfinity},
      {pres({}, {{1, 1}}), Point{{}, {TailSel{TailSel::Index, 1}}},
       GapStatus::Gap},
      {pres({}, {{1, 1}}), Point{{}, {TailSel{TailSel::Index, 2}}},
       GapStatus::ExceptionalXInfinity},
      {pres({}, {{1, 1}}), Point{{1}, {TailSel{TailSel::Index, 2}}},
       GapStatus::NotGap},
      {pres({}, {{1, 1}, {2}}),
       Point{{2},
             {TailSel{TailSel::MaxOfF, 1}, TailSel{TailSel::MaxOfF, 1}}},
       GapStatus::Gap},
      {pres({}, {{1, 1}, {2}}),
       Point{{},
             {TailSel{TailSel::MinOfF, 1}, TailSel{TailSel::MinOfF, 1}}},
       GapStatus::NotGap},
      {pres({}, {{1, 1}, {2}}),
       Point{{1},
             {TailSel{TailSel::MaxOfF, 2}, TailSel{TailSel::MaxOfF, 1}}},
       GapStatus::NotGap},
      {pres({{3}}, {{2}}), Point{{2}, {TailSel{TailSel::Index, 2}}},
       GapStatus::Gap},
  };
  for (const auto& c : cases) {
    spectrum::SystemLevels sys(c.p);
    if (spectrum::is_gap_point(sys, c.x) != c.expect) {
      ok = false;
      continue;
    }
    if (c.expect != GapStatus::Gap) continue;
    Point y = spectrum::gap_successor(sys, c.x);
    auto chain = spectrum::materialize_order(sys, 6, 5000);
    std::vector<long> px, py;
    for (std::size_t n = 1; n <= 6; ++n) {
      px.push_back(spectrum::coordinate(sys, c.x, n));
      py.push_back(spectrum::coordinate(sys, y, n));
    }
    std::size_t ix = chain.size(), iy = chain.size();
    for (std::size_t i = 0; i < chain.size(); ++i) {
      if (chain[i] == px) ix = i;
      if (chain[i] == py) iy = i;
    }
    if (iy != ix + 1) ok = false;
    if (!spectrum::closure_member(sys, c.x, c.x)) ok = false;
  }
  // Corollary 12 transitivity over a point sample.
  spectrum::SystemLevels alt(pres({}, {{1, 1}, {2}}));
  std::vector<Point> sample{
      Point{{1}, {TailSel{TailSel::MaxOfF, 2}, TailSel{TailSel::MinOfF, 1}}},
      Point{{2}, {TailSel{TailSel::MinOfF, 1}, TailSel{TailSel::MinOfF, 1}}},
      Point{{1, 1}, {TailSel{TailSel::MinOfF, 1}, TailSel{TailSel::MinOfF, 1}}},
      Point{{2, 2, 1},
            {TailSel{TailSel::MaxOfF, 2}, TailSel{TailSel::MinOfF, 1}}}};
  for (const auto& x : sample)
    for (const auto& y : sample) {
      if (!spectrum::closure_member(alt, x, y)) continue;
      for (const auto& z : sample)
        if (spectrum::closure_member(alt, z, x) &&
            !spectrum::closure_member(alt, z, y))
          ok = false;
    }
  report(7, "gap statuses, verified successors, closure laws", ok);
}

void criterion8() {
  std::mt19937 rng(107);
  std::uniform_int_distribution<long> gap(1, 4);
  bool ok = true;
  for (int trial = 0; trial < 20 && ok; ++trial) {
    Presentation p = random_presentation(rng);
    spectrum::SystemLevels sys(p);
    std::vector<Rat> c1;
    for (long i = 1; i < sys.k(1); ++i) c1.push_back(Rat(gap(rng), gap(rng)));
    try {
      // Construction re-verifies sign-iff-order and level consistency.
      auto table = spectrum::build_cocycle(sys, 5, c1, Rat(1), 4000);
      const auto& chain = table.chains.back();
      std::size_t step = std::max<std::size_t>(1, chain.size() / 7);
      for (std::size_t i = 0; i < chain.size(); i += step)
        for (std::size_t j = 0; j < chain.size(); j += step)
          for (std::size_t l = 0; l < chain.size(); l += step) {
            mpq_class xy = spectrum::cocycle_eval(table, 5, chain[i], chain[j]);
            mpq_class yz = spectrum::cocycle_eval(table, 5, chain[j], chain[l]);
            mpq_class xz = spectrum::cocycle_eval(table, 5, chain[i], chain[l]);
            if (xy + yz != xz) ok = false;
            if ((xy >= 0) != (i <= j)) ok = false;
            if ((xy == 0) != (i == j)) ok = false;
          }
    } catch (const spectrum::SizeLimitExceeded&) {
    }
  }
  report(8, "cocycle identity and both defining properties at depth 5", ok);
}

void criterion9() {
  bool ok = true;
  auto expect = [&ok](const Presentation& a, const Presentation& b, bool want) {
    if (classify::isomorphic(a, b).verdict != want) ok = false;
  };
  expect(pres({}, {{2}}), pres({}, {{4}}), true);
  expect(pres({}, {{2}}), pres({}, {{1, 1}}), false);
  expect(pres({}, {{1, 1}, {2}}), pres({}, {{2}, {1, 1}}), true);
  expect(pres({}, {{1, 2}}), pres({}, {{1, 3}}), false);
  // Telescoping and prefix-padding invariance over a corpus.
  std::vector<Presentation> corpus{
      pres({}, {{2}}),           pres({}, {{1, 1}}),
      pres({}, {{1, 1}, {2}}),   pres({}, {{1, 2}}),
      pres({}, {{1, 2}, {1, 3}}), pres({{3}}, {{2, 1}, {1, 2}}),
      pres({{2, 2}}, {{1, 2}})};
  for (const auto& p : corpus) {
    if (!classify::isomorphic(p, classify::telescope(p)).verdict) ok = false;
    // Pad the prefix with one period tuple and rotate the period.
    Presentation padded = p;
    padded.prefix.push_back(p.period.front());
    std::rotate(padded.period.begin(), padded.period.begin() + 1,
                padded.period.end());
    if (!classify::isomorphic(p, padded).verdict) ok = false;
  }
  report(9, "classification regressions and presentation invariances", ok);
}

bratelli::OrderedDiagram random_diag(std::mt19937& rng, int s, int d) {
  std::uniform_int_distribution<int> src(1, s), mult(1, 3), extra(0, 2);
  bratelli::OrderedDiagram out;
  out.src_count = s;
  out.dst_count = d;
  for (int dst = 1; dst <= d; ++dst) {
    int count = 1 + extra(rng);
    for (int c = 0; c < count; ++c)
      out.edges.push_back({src(rng), dst, Int(mult(rng))});
  }
  for (int sv = 1; sv <= s; ++sv) {
    bool covered = false;
    for (const auto& e : out.edges) covered = covered || e.src == sv;
    if (!covered)
      out.edges.push_back({sv, 1 + static_cast<int>(rng() % d), Int(1)});
  }
  out.fiber_order.assign(d, {});
  for (std::size_t i = 0; i < out.edges.size(); ++i)
    out.fiber_order[out.edges[i].dst - 1].push_back(static_cast<int>(i));
  for (auto& f : out.fiber_order) std::shuffle(f.begin(), f.end(), rng);
  return out;
}

void criterion10() {
  std::mt19937 rng(109);
  std::uniform_int_distribution<int> verts(1, 3), len(1, 3), entry(1, 3);
  bool ok = true;
  for (int trial = 0; trial < 100 && ok; ++trial) {
    int a = verts(rng), b = verts(rng), c = verts(rng), d = verts(rng);
    auto d1 = random_diag(rng, a, b);
    auto d2 = random_diag(rng, b, c);
    auto d3 = random_diag(rng, c, d);
    if (!bratelli::order_equivalent(
            bratelli::contract(bratelli::contract(d1, d2), d3),
            bratelli::contract(d1, bratelli::contract(d2, d3))))
      ok = false;
    IntTuple ta, tb;
    int la = len(rng), lb = len(rng);
    for (int i = 0; i < la; ++i) ta.push_back(Int(entry(rng)));
    for (int i = 0; i < lb; ++i) tb.push_back(Int(entry(rng)));
    if (!bratelli::order_equivalent(
            bratelli::contract(bratelli::tuple_diagram(ta),
                               bratelli::tuple_diagram(tb)),
            bratelli::tuple_diagram(tuples::compose_int(tb, ta))))
      ok = false;
  }
  // Telescoped intertwining at horizon 5: chainB pairs up chainA, f(n) = n,
  // g(n) = 4n, eprime[n] = chainA[n+1..2n], fprime[n] = chainA[2n+1..4n].
  // Contraction edge counts multiply along a span (the widest check spans 30
  // chain steps), so the chain is mostly single-edge refinement diagrams with
  // an occasional two-edge one to keep the orders non-trivial.
  const int LA = 40;
  std::vector<bratelli::OrderedDiagram> chainA, chainB, eprime, fprime;
  std::vector<int> f_map, g_map;
  for (int i = 0; i < LA; ++i) {
    IntTuple t;
    int l = (i % 7 == 0) ? 2 : 1;
    for (int j = 0; j < l; ++j) t.push_back(Int(entry(rng)));
    chainA.push_back(bratelli::tuple_diagram(t));
  }
  for (int m = 0; m < LA / 2; ++m)
    chainB.push_back(bratelli::contract(chainA[2 * m], chainA[2 * m + 1]));
  for (int n = 1; n <= LA / 2; ++n) {
    f_map.push_back(n);
    g_map.push_back(4 * n);
    std::vector<bratelli::OrderedDiagram> seg(chainA.begin() + n,
                                              chainA.begin() + 2 * n);
    eprime.push_back(bratelli::contract_chain(seg, 1));
  }
  for (int n = 1; n <= LA / 4; ++n) {
    std::vector<bratelli::OrderedDiagram> seg(chainA.begin() + 2 * n,
                                              chainA.begin() + 4 * n);
    fprime.push_back(bratelli::contract_chain(seg, 1));
  }
  if (!bratelli::verify_intertwining(chainA, chainB, eprime, fprime, f_map,
                                     g_map, 5))
    ok = false;
  auto broken = eprime;
  broken[0].edges[0].mult += 1;
  if (bratelli::verify_intertwining(chainA, chainB, broken, fprime, f_map,
                                    g_map, 5))
    ok = false;
  report(10, "diagram algebra laws and intertwining verification", ok);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  if (failures) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all 10 criteria passed\n";
  return 0;
}
