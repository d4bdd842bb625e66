#include "opal/classify.hpp"

#include <algorithm>
#include <numeric>

#include "opal/tuples.hpp"

namespace opal::classify {

using arith::Int;
using arith::SnRelation;
using tuples::NormTuple;

namespace {

Int tuple_sum(const tuples::IntTuple& t) {
  Int s = 0;
  for (const Int& v : t) s += v;
  return s;
}

std::vector<Int> map_levels(const std::vector<tuples::IntTuple>& ts,
                            Int (*f)(const tuples::IntTuple&)) {
  std::vector<Int> out;
  out.reserve(ts.size());
  for (const auto& t : ts) out.push_back(f(t));
  return out;
}

Int tuple_first(const tuples::IntTuple& t) { return t[0]; }
Int tuple_len(const tuples::IntTuple& t) { return Int(t.size()); }

// The normalized tuple composed over one period (period[0] applied first,
// hence innermost).
NormTuple period_tuple(const Presentation& p) {
  NormTuple acc = tuples::normalize(p.period[0]).second;
  for (std::size_t i = 1; i < p.period.size(); ++i)
    acc = tuples::compose(tuples::normalize(p.period[i]).second, acc);
  return acc;
}

// Canonical factor sequence of one period, outermost-first: the last
// period tuple is outermost.
std::vector<NormTuple> period_factor_stream(const Presentation& p) {
  std::vector<NormTuple> out;
  for (std::size_t i = p.period.size(); i >= 1; --i) {
    auto fs = tuples::canonical_factorization(tuples::normalize(p.period[i - 1]).second);
    out.insert(out.end(), fs.begin(), fs.end());
  }
  return out;
}

std::vector<NormTuple> repeat_stream(const std::vector<NormTuple>& s,
                                     std::size_t j) {
  std::vector<NormTuple> out;
  for (std::size_t i = 0; i < j; ++i) out.insert(out.end(), s.begin(), s.end());
  return out;
}

// Smallest rotation period of s.
std::vector<NormTuple> primitive_cycle(const std::vector<NormTuple>& s) {
  for (std::size_t d = 1; d <= s.size(); ++d) {
    if (s.size() % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < s.size() && ok; ++i)
      if (!(s[i] == s[i % d])) ok = false;
    if (ok) return {s.begin(), s.begin() + d};
  }
  return s;  // unreachable
}

bool rotation_equal(const std::vector<NormTuple>& a,
                    const std::vector<NormTuple>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t r = 0; r < a.size(); ++r) {
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i)
      if (!(a[(i + r) % a.size()] == b[i])) ok = false;
    if (ok) return true;
  }
  return a.empty();
}

std::string relation_name(SnRelation r) {
  switch (r) {
    case SnRelation::Equal: return "Equal";
    case SnRelation::FinitelyEquivalent: return "FinitelyEquivalent";
    case SnRelation::Inequivalent: return "Inequivalent";
  }
  return "?";
}

std::string stream_str(const std::vector<NormTuple>& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i)
    out += (i ? " " : "") + tuples::to_string(s[i]);
  return out + "]";
}

}  // namespace

Supernatural envelope_supernatural(const Presentation& p) {
  check_presentation(p);
  return arith::sn_from_periodic(map_levels(p.prefix, tuple_sum),
                                 map_levels(p.period, tuple_sum));
}

Supernatural first_summand_supernatural(const Presentation& p) {
  check_presentation(p);
  return arith::sn_from_periodic(map_levels(p.prefix, tuple_first),
                                 map_levels(p.period, tuple_first));
}

std::optional<GeometricWitness> has_geometric_character(const Presentation& p) {
  check_presentation(p);
  // Every sufficiently deep composed window is a middle factor of a power
  // of the period tuple, and outer/inner/middle factors of a geometric
  // tuple are geometric; conversely aligned windows of two full periods
  // realize the squared period tuple.  So the two-period composition
  // decides the character, prefix ignored.
  NormTuple c = period_tuple(p);
  auto geo = tuples::is_geometric(tuples::compose(c, c));
  if (!geo) return std::nullopt;
  return GeometricWitness{geo->any ? Rat(1) : geo->value};
}

InvariantSet invariants(const Presentation& p) {
  check_presentation(p);
  InvariantSet inv;
  inv.envelope = envelope_supernatural(p);
  inv.first_summand = first_summand_supernatural(p);
  auto geo = has_geometric_character(p);
  inv.geometric = geo.has_value();
  if (geo) {
    inv.lengths = arith::sn_from_periodic(map_levels(p.prefix, tuple_len),
                                          map_levels(p.period, tuple_len));
    inv.root = arith::reduced_root(geo->ratio).first;
    return inv;
  }
  // Non-geometric: the canonical factor stream must be stable under
  // composing periods, else the cycle invariant is meaningless.
  std::vector<NormTuple> stream = period_factor_stream(p);
  NormTuple c = period_tuple(p);
  NormTuple acc = c;
  const std::size_t kMaxEntries = 65536;
  for (std::size_t j = 1; j <= 4; ++j) {
    if (j > 1) {
      if (acc.len() * c.len() > kMaxEntries) break;
      acc = tuples::compose(c, acc);
    }
    if (!(tuples::canonical_factorization(acc) == repeat_stream(stream, j)))
      throw FactorStreamInstability(
          "canonical factor stream not stable over " + std::to_string(j) +
          " period(s); cycle invariant unavailable");
  }
  for (std::size_t i = p.prefix.size(); i >= 1; --i) {
    auto fs = tuples::canonical_factorization(tuples::normalize(p.prefix[i - 1]).second);
    inv.prefix_factors.insert(inv.prefix_factors.end(), fs.begin(), fs.end());
  }
  inv.cycle_factors = primitive_cycle(stream);
  return inv;
}

IsoReport isomorphic(const Presentation& p1, const Presentation& p2) {
  InvariantSet a = invariants(p1);
  InvariantSet b = invariants(p2);
  IsoReport rep;
  rep.verdict = true;

  SnRelation env = arith::sn_compare(a.envelope, b.envelope);
  rep.lines.push_back("envelope supernatural numbers: " + to_string(a.envelope) +
                      " vs " + to_string(b.envelope) + " -> " +
                      relation_name(env) + " [Theorem 29]");
  if (env != SnRelation::Equal) rep.verdict = false;

  SnRelation fs = arith::sn_compare(a.first_summand, b.first_summand);
  rep.lines.push_back("first-summand supernatural numbers: " +
                      to_string(a.first_summand) + " vs " +
                      to_string(b.first_summand) + " -> " + relation_name(fs) +
                      " [Theorem 13]");
  if (fs == SnRelation::Inequivalent) rep.verdict = false;

  if (a.geometric != b.geometric) {
    rep.lines.push_back("geometric character differs (" +
                        std::string(a.geometric ? "geometric" : "non-geometric") +
                        " vs " + (b.geometric ? "geometric" : "non-geometric") +
                        ") [Theorem 29]");
    rep.verdict = false;
  } else if (a.geometric) {
    SnRelation len = arith::sn_compare(a.lengths, b.lengths);
    rep.lines.push_back("length supernatural numbers: " + to_string(a.lengths) +
                        " vs " + to_string(b.lengths) + " -> " +
                        relation_name(len) + " [Theorem 29]");
    if (len == SnRelation::Inequivalent) rep.verdict = false;
    bool roots = a.root == b.root;
    rep.lines.push_back("reduced roots: " + arith::rat_str(a.root) + " vs " +
                        arith::rat_str(b.root) + " -> " +
                        (roots ? "identical" : "different") + " [Theorem 29]");
    if (!roots) rep.verdict = false;
  } else {
    bool cyc = rotation_equal(a.cycle_factors, b.cycle_factors);
    rep.lines.push_back("primitive factor cycles: " + stream_str(a.cycle_factors) +
                        " vs " + stream_str(b.cycle_factors) + " -> " +
                        (cyc ? "rotation-equal" : "distinct") +
                        " [Theorem 26, Theorem 29]");
    if (!cyc) rep.verdict = false;
  }
  rep.lines.push_back(std::string("verdict: ") +
                      (rep.verdict ? "isomorphic" : "not isomorphic") +
                      " [Theorem 29]");
  return rep;
}

AlternationInvariants alternation_invariants(const Presentation& p) {
  check_presentation(p);
  auto check_alt = [](const std::vector<tuples::IntTuple>& ts) {
    for (const auto& t : ts)
      for (const Int& v : t)
        if (v != t[0])
          throw NotAlternation("tuple " + tuples::to_string(t) +
                               " has unequal entries");
  };
  check_alt(p.prefix);
  check_alt(p.period);
  AlternationInvariants out;
  out.standard_sn = arith::sn_from_periodic(map_levels(p.prefix, tuple_len),
                                            map_levels(p.period, tuple_len));
  out.refinement_sn = first_summand_supernatural(p);
  return out;
}

Presentation telescope(const Presentation& p) {
  check_presentation(p);
  tuples::IntTuple acc = p.period[0];
  for (std::size_t i = 1; i < p.period.size(); ++i)
    acc = tuples::compose_int(p.period[i], acc);
  return Presentation{p.prefix, {acc}};
}

}  // namespace opal::classify
