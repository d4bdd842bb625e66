#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "opal/tuples.hpp"

using namespace opal::tuples;
using opal::arith::Int;
using opal::arith::Rat;

namespace {

NormTuple nt(std::vector<long> entries) {
  NormTuple t;
  for (long e : entries) t.entries.push_back(Rat(e));
  return t;
}

IntTuple it(std::vector<long> entries) {
  IntTuple t;
  for (long e : entries) t.push_back(Int(e));
  return t;
}

bool is_irreducible(const NormTuple& t) {
  if (t.len() <= 1) return false;
  for (std::size_t m = 2; m < t.len(); ++m)
    if (t.len() % m == 0 && divisibility(t, m) != Divisibility::None) return false;
  return true;
}

// All factorization chains of t into irreducibles, outermost-first.  The
// innermost factor of a given length is determined (it is the initial
// segment), so chains branch only on the length choices.
void all_chains(const NormTuple& t, std::vector<NormTuple>& current,
                std::vector<std::vector<NormTuple>>& out) {
  if (t.len() == 1) {
    std::vector<NormTuple> chain(current.rbegin(), current.rend());
    out.push_back(chain);
    return;
  }
  for (std::size_t m = 2; m <= t.len(); ++m) {
    if (t.len() % m != 0 || divisibility(t, m) == Divisibility::None) continue;
    auto [outer, inner] = factor_by_length(t, m);
    if (!is_irreducible(inner)) continue;
    current.push_back(inner);
    all_chains(outer, current, out);
    current.pop_back();
  }
}

bool satisfies_length_constraint(const std::vector<NormTuple>& chain) {
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (is_geometric(compose(chain[i], chain[i + 1])) &&
        chain[i].len() < chain[i + 1].len())
      return false;
  return true;
}

NormTuple random_norm_tuple(std::mt19937& rng, int max_len, int max_entry) {
  std::uniform_int_distribution<int> len(1, max_len), entry(1, max_entry);
  IntTuple t;
  int n = len(rng);
  for (int i = 0; i < n; ++i) t.push_back(Int(entry(rng)));
  return normalize(t).second;
}

}  // namespace

TEST_CASE("normalize") {
  auto [lead, n] = normalize(it({2, 4, 6}));
  CHECK(lead == Rat(2));
  CHECK(n == nt({1, 2, 3}));
  CHECK(normalize(it({5})) == std::pair<Rat, NormTuple>{Rat(5), nt({1})});
  CHECK(normalize(it({1, 1, 1})).second == nt({1, 1, 1}));
}

TEST_CASE("compose") {
  CHECK(compose(nt({1, 2}), nt({1, 3})) == nt({1, 3, 2, 6}));
  CHECK(compose(nt({1}), nt({1, 5, 7})) == nt({1, 5, 7}));
  CHECK(compose(nt({1, 5, 7}), nt({1})) == nt({1, 5, 7}));
  CHECK(compose(nt({1, 4, 16}), nt({1, 2})) == nt({1, 2, 4, 8, 16, 32}));
  CHECK(compose_int(it({1, 2}), it({2, 6})) == it({2, 6, 4, 12}));
}

TEST_CASE("divisibility") {
  CHECK(divisibility(nt({1, 2, 2, 4}), 2) == Divisibility::StronglyDivisible);
  // The outer factor of (1,2,3,6) at m = 2 is (1,3), which has length 2 and
  // is therefore geometric, so strong divisibility holds (class-0 ratio
  // comparison is vacuous).
  CHECK(divisibility(nt({1, 2, 3, 6}), 2) == Divisibility::StronglyDivisible);
  // A genuinely non-strong case: two class-0 ratios that disagree.
  // (1,2,2,4,8,16): ratios 2, 1, 2, 2, 2 -> class 1 = {2,2,2} uniform,
  // class 0 = {1, 2} not.
  CHECK(divisibility(nt({1, 2, 2, 4, 8, 16}), 2) == Divisibility::Divisible);
  CHECK(divisibility(nt({1, 2, 3}), 3) != Divisibility::None);
  CHECK(divisibility(nt({1, 2, 3}), 2) == Divisibility::None);
  CHECK(divisibility(nt({1, 2, 4}), 1) == Divisibility::StronglyDivisible);
  CHECK(divisibility(nt({1, 2, 3}), 1) == Divisibility::Divisible);
  CHECK_THROWS_AS(divisibility(nt({1, 2}), 0), std::invalid_argument);
}

TEST_CASE("factor_by_length") {
  CHECK(factor_by_length(nt({1, 3, 2, 6}), 2) ==
        std::pair<NormTuple, NormTuple>{nt({1, 2}), nt({1, 3})});
  CHECK(factor_by_length(nt({1, 5, 7}), 3) ==
        std::pair<NormTuple, NormTuple>{nt({1}), nt({1, 5, 7})});
  CHECK(factor_by_length(nt({1, 2, 2, 4}), 2) ==
        std::pair<NormTuple, NormTuple>{nt({1, 2}), nt({1, 2})});
  CHECK_THROWS_AS(factor_by_length(nt({1, 2, 3}), 2), NotDivisible);
}

TEST_CASE("peel_minimal") {
  CHECK(peel_minimal(nt({1, 2, 2, 4})) ==
        std::pair<NormTuple, NormTuple>{nt({1, 2}), nt({1, 2})});
  CHECK(peel_minimal(nt({1, 5, 7})) ==
        std::pair<NormTuple, NormTuple>{nt({1}), nt({1, 5, 7})});
  CHECK(peel_minimal(nt({1})) == std::pair<NormTuple, NormTuple>{nt({1}), nt({1})});
  // The peeled inner factor is always irreducible.
  std::mt19937 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    NormTuple t = random_norm_tuple(rng, 8, 4);
    auto [outer, inner] = peel_minimal(t);
    CHECK(compose(outer, inner) == t);
    if (t.len() > 1) CHECK((is_irreducible(inner) || inner == t));
    if (inner.len() > 1) CHECK(is_irreducible(inner));
  }
}

TEST_CASE("is_geometric") {
  auto g = is_geometric(nt({1, 2, 4, 8}));
  REQUIRE(g);
  CHECK(!g->any);
  CHECK(g->value == Rat(2));
  auto ones = is_geometric(nt({1, 1, 1}));
  REQUIRE(ones);
  CHECK(ones->value == Rat(1));
  CHECK(!is_geometric(nt({1, 2, 3})));
  auto single = is_geometric(nt({1}));
  REQUIRE(single);
  CHECK(single->any);
}

TEST_CASE("canonical_factorization") {
  CHECK(canonical_factorization(nt({1, 2, 4, 8, 16, 32})) ==
        std::vector<NormTuple>{nt({1, 4, 16}), nt({1, 2})});
  CHECK(canonical_factorization(nt({1, 2, 2, 4})) ==
        std::vector<NormTuple>{nt({1, 2}), nt({1, 2})});
  CHECK(canonical_factorization(nt({1, 5, 7})) ==
        std::vector<NormTuple>{nt({1, 5, 7})});
  CHECK(canonical_factorization(nt({1})).empty());
}

TEST_CASE("canonical factorization is the unique constrained chain") {
  // Desk-scale uniqueness check; the exhaustive corpus runs in acceptance.
  std::mt19937 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    NormTuple t = random_norm_tuple(rng, 8, 4);
    std::vector<std::vector<NormTuple>> chains;
    std::vector<NormTuple> current;
    all_chains(t, current, chains);
    std::vector<std::vector<NormTuple>> good;
    for (const auto& c : chains)
      if (satisfies_length_constraint(c)) good.push_back(c);
    REQUIRE(good.size() == 1);
    CHECK(good[0] == canonical_factorization(t));
  }
}

TEST_CASE("compressed_factorization") {
  CHECK(compressed_factorization(nt({1, 2, 4, 8, 16, 32})) ==
        std::vector<NormTuple>{nt({1, 2, 4, 8, 16, 32})});
  CHECK(compressed_factorization(nt({1, 2, 2, 4})) ==
        std::vector<NormTuple>{nt({1, 2}), nt({1, 2})});
  CHECK(compressed_factorization(nt({1, 5, 7})) ==
        std::vector<NormTuple>{nt({1, 5, 7})});

  std::mt19937 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    NormTuple t = random_norm_tuple(rng, 8, 4);
    auto comp = compressed_factorization(t);
    // Recomposes to t; no adjacent pair composes to geometric.
    NormTuple acc = nt({1});
    for (const auto& f : comp) acc = compose(acc, f);
    if (t.len() > 1) CHECK(acc == t);
    for (std::size_t i = 0; i + 1 < comp.size(); ++i)
      CHECK(!is_geometric(compose(comp[i], comp[i + 1])));
    for (const auto& f : comp) CHECK((is_irreducible(f) || is_geometric(f)));
  }
}

TEST_CASE("commute_class") {
  CHECK(commute_class(nt({1}), nt({1, 3, 5})).kind == CommuteResult::TrivialFactor);
  CHECK(commute_class(nt({1, 1}), nt({1, 1, 1})).kind == CommuteResult::BothAllOnes);
  auto cp = commute_class(nt({1, 2}), nt({1, 2, 2, 4}));
  REQUIRE(cp.kind == CommuteResult::CommonPower);
  CHECK(cp.c == nt({1, 2}));
  CHECK(cp.m == 1);
  CHECK(cp.n == 2);
  CHECK(commute_class(nt({1, 2}), nt({1, 3})).kind == CommuteResult::NonCommuting);
}

TEST_CASE("monoid laws and cancellation") {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 500; ++trial) {
    NormTuple a = random_norm_tuple(rng, 4, 4);
    NormTuple b = random_norm_tuple(rng, 4, 4);
    NormTuple c = random_norm_tuple(rng, 4, 4);
    CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    // Lemma 21 cancellation.
    CHECK(factor_by_length(compose(a, b), b.len()) ==
          std::pair<NormTuple, NormTuple>{a, b});
  }
}

TEST_CASE("factorability iff divisibility") {
  // Any factorization with inner length m forces the inner factor to be the
  // normalized initial segment and determines the outer factor, so checking
  // that single candidate decides existence.
  std::mt19937 rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    NormTuple t = random_norm_tuple(rng, 8, 4);
    for (std::size_t m = 1; m <= t.len(); ++m) {
      if (t.len() % m != 0) continue;
      NormTuple inner;
      inner.entries.assign(t.entries.begin(), t.entries.begin() + m);
      for (auto& e : inner.entries) e /= t.entries.front();
      NormTuple outer;
      for (std::size_t i = 0; i < t.len(); i += m)
        outer.entries.push_back(t.entries[i] / t.entries.front());
      bool factorable = compose(outer, inner) == t;
      bool divisible = divisibility(t, m) != Divisibility::None;
      CHECK(factorable == divisible);
      if (divisible)
        CHECK(factor_by_length(t, m) ==
              std::pair<NormTuple, NormTuple>{outer, inner});
    }
  }
}
