#include "opal/tuples.hpp"

#include <algorithm>
#include <sstream>

namespace opal::tuples {

void check_int_tuple(const IntTuple& t) {
  if (t.empty()) throw std::invalid_argument("tuple must be nonempty");
  for (const Int& v : t)
    if (v < 1) throw std::invalid_argument("tuple entries must be >= 1");
}

std::string to_string(const IntTuple& t) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < t.size(); ++i)
    os << (i ? "," : "") << t[i].get_str();
  os << ")";
  return os.str();
}

std::string to_string(const NormTuple& t) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    const Rat& q = t.entries[i];
    os << (i ? "," : "") << q.get_num().get_str();
    if (q.get_den() != 1) os << "/" << q.get_den().get_str();
  }
  os << ")";
  return os.str();
}

std::pair<Rat, NormTuple> normalize(const IntTuple& t) {
  check_int_tuple(t);
  NormTuple n;
  n.entries.reserve(t.size());
  for (const Int& v : t) {
    Rat q(v, t[0]);
    q.canonicalize();
    n.entries.push_back(q);
  }
  return {Rat(t[0]), n};
}

NormTuple compose(const NormTuple& outer, const NormTuple& inner) {
  NormTuple r;
  r.entries.reserve(outer.len() * inner.len());
  for (const Rat& a : outer.entries)
    for (const Rat& b : inner.entries) r.entries.push_back(a * b);
  return r;
}

IntTuple compose_int(const IntTuple& outer, const IntTuple& inner) {
  IntTuple r;
  r.reserve(outer.size() * inner.size());
  for (const Int& a : outer)
    for (const Int& b : inner) r.push_back(a * b);
  return r;
}

Divisibility divisibility(const NormTuple& t, std::size_t m) {
  if (m == 0) throw std::invalid_argument("divisibility: m must be >= 1");
  std::size_t n = t.len();
  if (n % m != 0) return Divisibility::None;
  // ratio[i] = a_i / a_{i-1}, i = 1..n-1; compare within residue classes of
  // i mod m.  Classes 1..m-1 uniform => Divisible; class 0 uniform as well
  // => StronglyDivisible.
  std::vector<std::optional<Rat>> cls(m);
  bool weak_ok = true, class0_ok = true;
  for (std::size_t i = 1; i < n; ++i) {
    Rat ratio = t.entries[i] / t.entries[i - 1];
    std::size_t r = i % m;
    if (!cls[r]) {
      cls[r] = ratio;
    } else if (*cls[r] != ratio) {
      if (r == 0)
        class0_ok = false;
      else
        weak_ok = false;
    }
  }
  if (!weak_ok) return Divisibility::None;
  return class0_ok ? Divisibility::StronglyDivisible : Divisibility::Divisible;
}

std::pair<NormTuple, NormTuple> factor_by_length(const NormTuple& t,
                                                 std::size_t m) {
  if (divisibility(t, m) == Divisibility::None)
    throw NotDivisible("tuple is not " + std::to_string(m) + "-divisible");
  NormTuple inner, outer;
  inner.entries.assign(t.entries.begin(), t.entries.begin() + m);
  for (std::size_t i = 0; i < t.len(); i += m) outer.entries.push_back(t.entries[i]);
  return {outer, inner};
}

std::pair<NormTuple, NormTuple> peel_minimal(const NormTuple& t) {
  std::size_t n = t.len();
  for (std::size_t m = 2; m < n; ++m) {
    if (n % m != 0) continue;
    if (divisibility(t, m) != Divisibility::None) return factor_by_length(t, m);
  }
  // Irreducible (or length 1): the whole tuple is the inner factor.
  NormTuple unit;
  unit.entries.push_back(Rat(1));
  return {unit, t};
}

std::optional<GeoRatio> is_geometric(const NormTuple& t) {
  if (t.len() == 1) return GeoRatio{true, Rat(1)};
  Rat x = t.entries[1];
  for (std::size_t i = 1; i < t.len(); ++i)
    if (t.entries[i] != t.entries[i - 1] * x) return std::nullopt;
  return GeoRatio{false, x};
}

std::vector<NormTuple> canonical_factorization(const NormTuple& t) {
  std::vector<NormTuple> factors;  // collected innermost-first
  NormTuple rest = t;
  while (rest.len() > 1) {
    auto [outer, inner] = peel_minimal(rest);
    factors.push_back(inner);
    rest = outer;
  }
  std::reverse(factors.begin(), factors.end());
  return factors;
}

std::vector<NormTuple> compressed_factorization(const NormTuple& t) {
  std::vector<NormTuple> canon = canonical_factorization(t);
  std::vector<NormTuple> out;
  for (const NormTuple& f : canon) {
    if (!out.empty()) {
      NormTuple merged = compose(out.back(), f);
      if (is_geometric(merged)) {
        out.back() = merged;
        continue;
      }
    }
    out.push_back(f);
  }
  return out;
}

namespace {

bool all_ones(const NormTuple& t) {
  return std::all_of(t.entries.begin(), t.entries.end(),
                     [](const Rat& q) { return q == 1; });
}

// t == c^e under composition (e >= 1)?
bool is_power_of(const NormTuple& t, const NormTuple& c, unsigned long e) {
  NormTuple acc = c;
  for (unsigned long i = 1; i < e; ++i) acc = compose(acc, c);
  return acc == t;
}

// e with L^e = n, if any.
std::optional<unsigned long> log_exact(std::size_t L, std::size_t n) {
  unsigned long e = 0;
  std::size_t acc = 1;
  while (acc < n) {
    acc *= L;
    ++e;
  }
  if (acc == n && e >= 1) return e;
  return std::nullopt;
}

}  // namespace

CommuteResult commute_class(const NormTuple& a, const NormTuple& b) {
  if (compose(a, b) != compose(b, a)) return {CommuteResult::NonCommuting, {}, 0, 0};
  if (a.len() == 1 || b.len() == 1) return {CommuteResult::TrivialFactor, {}, 0, 0};
  if (all_ones(a) && all_ones(b)) return {CommuteResult::BothAllOnes, {}, 0, 0};
  // Common-power root of minimal length: c must be the initial segment of a
  // with len(a) = len(c)^m and len(b) = len(c)^n.
  for (std::size_t L = 2; L <= std::min(a.len(), b.len()); ++L) {
    auto m = log_exact(L, a.len());
    auto n = log_exact(L, b.len());
    if (!m || !n) continue;
    NormTuple c;
    c.entries.assign(a.entries.begin(), a.entries.begin() + L);
    if (is_power_of(a, c, *m) && is_power_of(b, c, *n))
      return {CommuteResult::CommonPower, c, *m, *n};
  }
  // Unreachable for genuinely commuting tuples: a common-power root exists
  // whenever compose(a,b) = compose(b,a) outside the two trivial cases.
  throw std::logic_error("commute_class: commuting pair without common-power root");
}

}  // namespace opal::tuples
