#include "opal/arith.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace opal::arith {

Int int_parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  for (char c : s)
    if (c < '0' || c > '9')
      throw std::invalid_argument("malformed integer literal: " + s);
  return Int(s);
}

Rat rat_parse(const std::string& s) {
  auto slash = s.find('/');
  Int num, den = 1;
  if (slash == std::string::npos) {
    num = int_parse(s);
  } else {
    num = int_parse(s.substr(0, slash));
    den = int_parse(s.substr(slash + 1));
  }
  if (num <= 0 || den <= 0)
    throw std::invalid_argument("rational must be positive: " + s);
  Rat q(num, den);
  q.canonicalize();
  return q;
}

std::string rat_str(const Rat& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat rat_pow(const Rat& q, unsigned long e) {
  Rat r = 1;
  for (unsigned long i = 0; i < e; ++i) r *= q;
  return r;
}

std::map<Int, unsigned long> factorize(const Int& n) {
  if (n < 1) throw std::invalid_argument("factorize: argument must be >= 1");
  std::map<Int, unsigned long> out;
  Int m = n;
  for (Int p = 2; p * p <= m; ++p) {
    unsigned long e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e > 0) out[p] = e;
  }
  if (m > 1) out[m] += 1;
  return out;
}

std::pair<Int, unsigned long> perfect_power(const Int& n) {
  if (n < 1) throw std::invalid_argument("perfect_power: argument must be >= 1");
  if (n == 1) return {Int(1), 1};
  auto f = factorize(n);
  unsigned long d = 0;
  for (const auto& [p, e] : f) d = std::gcd(d, e);
  Int base = 1;
  for (const auto& [p, e] : f) {
    Int pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e / d);
    base *= pe;
  }
  return {base, d};
}

std::pair<Rat, unsigned long> reduced_root(const Rat& q) {
  if (q <= 0) throw std::invalid_argument("reduced_root: argument must be positive");
  if (q == 1) return {Rat(1), 1};
  auto fn = factorize(q.get_num());
  auto fd = factorize(q.get_den());
  unsigned long d = 0;
  for (const auto& [p, e] : fn) d = std::gcd(d, e);
  for (const auto& [p, e] : fd) d = std::gcd(d, e);
  Int num = 1, den = 1;
  for (const auto& [p, e] : fn) {
    Int pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e / d);
    num *= pe;
  }
  for (const auto& [p, e] : fd) {
    Int pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e / d);
    den *= pe;
  }
  Rat root(num, den);
  root.canonicalize();
  return {root, d};
}

Supernatural sn_from_periodic(const std::vector<Int>& prefix,
                              const std::vector<Int>& period) {
  Supernatural s;
  for (const Int& v : prefix) {
    if (v < 1) throw std::invalid_argument("sn_from_periodic: entries must be >= 1");
    for (const auto& [p, e] : factorize(v)) s.finite[p] += e;
  }
  for (const Int& v : period) {
    if (v < 1) throw std::invalid_argument("sn_from_periodic: entries must be >= 1");
    for (const auto& [p, e] : factorize(v)) s.infinite.insert(p);
  }
  for (const Int& p : s.infinite) s.finite.erase(p);
  return s;
}

SnRelation sn_compare(const Supernatural& a, const Supernatural& b) {
  if (a == b) return SnRelation::Equal;
  if (a.infinite == b.infinite) return SnRelation::FinitelyEquivalent;
  return SnRelation::Inequivalent;
}

std::string to_string(const Supernatural& s) {
  // Merge the two exponent maps into one prime-sorted rendering.
  std::map<Int, std::string> parts;
  for (const auto& [p, e] : s.finite)
    parts[p] = e == 1 ? p.get_str() : p.get_str() + "^" + std::to_string(e);
  for (const Int& p : s.infinite) parts[p] = p.get_str() + "^inf";
  if (parts.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, txt] : parts) {
    if (!first) os << " * ";
    os << txt;
    first = false;
  }
  return os.str();
}

}  // namespace opal::arith
