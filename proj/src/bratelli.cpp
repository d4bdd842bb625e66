#include "opal/bratelli.hpp"

#include <algorithm>
#include <stdexcept>

namespace opal::bratelli {

OrderedDiagram identity_diagram(int n) {
  if (n < 1) throw std::invalid_argument("identity_diagram: n must be >= 1");
  OrderedDiagram d{n, n, {}, {}};
  d.fiber_order.resize(n);
  for (int v = 1; v <= n; ++v) {
    d.edges.push_back({v, v, Int(1)});
    d.fiber_order[v - 1].push_back(v - 1);
  }
  return d;
}

OrderedDiagram tuple_diagram(const tuples::IntTuple& r) {
  tuples::check_int_tuple(r);
  OrderedDiagram d{1, 1, {}, {}};
  d.fiber_order.resize(1);
  for (std::size_t i = 0; i < r.size(); ++i) {
    d.edges.push_back({1, 1, r[i]});
    d.fiber_order[0].push_back(static_cast<int>(i));
  }
  return d;
}

ValidationResult validate(const OrderedDiagram& d) {
  ValidationResult res;
  auto fail = [&res](const std::string& msg) {
    res.ok = false;
    res.diagnostics.push_back(msg);
  };
  if (d.src_count < 1 || d.dst_count < 1) {
    fail("vertex counts must be >= 1");
    return res;
  }
  std::vector<bool> src_covered(d.src_count, false), dst_covered(d.dst_count, false);
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    const Edge& e = d.edges[i];
    if (e.src < 1 || e.src > d.src_count)
      fail("edge " + std::to_string(i) + ": src out of range");
    else
      src_covered[e.src - 1] = true;
    if (e.dst < 1 || e.dst > d.dst_count)
      fail("edge " + std::to_string(i) + ": dst out of range");
    else
      dst_covered[e.dst - 1] = true;
    if (e.mult < 1) fail("edge " + std::to_string(i) + ": mult must be >= 1");
  }
  if (!res.ok) return res;
  for (int v = 1; v <= d.dst_count; ++v)
    if (!dst_covered[v - 1])
      fail("dst vertex " + std::to_string(v) +
           " has no incoming edge (embedding would not be unital)");
  for (int v = 1; v <= d.src_count; ++v)
    if (!src_covered[v - 1])
      fail("src vertex " + std::to_string(v) +
           " has no outgoing edge (embedding would not be injective)");
  if (d.fiber_order.size() != static_cast<std::size_t>(d.dst_count)) {
    fail("fiber_order must have one entry per dst vertex");
    return res;
  }
  for (int v = 1; v <= d.dst_count; ++v) {
    std::vector<int> expect;
    for (std::size_t i = 0; i < d.edges.size(); ++i)
      if (d.edges[i].dst == v) expect.push_back(static_cast<int>(i));
    std::vector<int> got = d.fiber_order[v - 1];
    std::sort(got.begin(), got.end());
    if (got != expect)
      fail("fiber_order of dst " + std::to_string(v) +
           " is not a permutation of its incoming edges");
  }
  return res;
}

std::vector<Int> target_dimensions(const OrderedDiagram& d,
                                   const std::vector<Int>& src_dims) {
  if (src_dims.size() != static_cast<std::size_t>(d.src_count))
    throw std::invalid_argument("target_dimensions: dimension count mismatch");
  std::vector<Int> out(d.dst_count, Int(0));
  for (const Edge& e : d.edges) out[e.dst - 1] += src_dims[e.src - 1] * e.mult;
  return out;
}

std::vector<std::vector<std::pair<int, Int>>> embedding_blocks(
    const OrderedDiagram& d) {
  ValidationResult v = validate(d);
  if (!v.ok)
    throw std::invalid_argument("embedding_blocks: invalid diagram: " +
                                (v.diagnostics.empty() ? "" : v.diagnostics[0]));
  std::vector<std::vector<std::pair<int, Int>>> out(d.dst_count);
  for (int dst = 1; dst <= d.dst_count; ++dst)
    for (int e : d.fiber_order[dst - 1])
      out[dst - 1].emplace_back(d.edges[e].src, d.edges[e].mult);
  return out;
}

OrderedDiagram contract(const OrderedDiagram& first,
                        const OrderedDiagram& second) {
  if (first.dst_count != second.src_count)
    throw std::invalid_argument("contract: middle vertex counts disagree");
  OrderedDiagram out{first.src_count, second.dst_count, {}, {}};
  out.fiber_order.resize(second.dst_count);
  // Composite edges (e1, e2) fiber-ordered by e2 first, then e1.
  for (int dst = 1; dst <= second.dst_count; ++dst)
    for (int e2 : second.fiber_order[dst - 1]) {
      int mid = second.edges[e2].src;
      for (int e1 : first.fiber_order[mid - 1]) {
        out.edges.push_back(
            {first.edges[e1].src, dst, first.edges[e1].mult * second.edges[e2].mult});
        out.fiber_order[dst - 1].push_back(static_cast<int>(out.edges.size()) - 1);
      }
    }
  return out;
}

OrderedDiagram contract_chain(const std::vector<OrderedDiagram>& chain, int n) {
  if (chain.empty()) return identity_diagram(n);
  OrderedDiagram acc = chain[0];
  for (std::size_t i = 1; i < chain.size(); ++i) acc = contract(acc, chain[i]);
  return acc;
}

bool order_equivalent(const OrderedDiagram& d1, const OrderedDiagram& d2) {
  if (d1.src_count != d2.src_count || d1.dst_count != d2.dst_count) return false;
  if (d1.edges.size() != d2.edges.size()) return false;
  for (int dst = 1; dst <= d1.dst_count; ++dst) {
    const auto& f1 = d1.fiber_order[dst - 1];
    const auto& f2 = d2.fiber_order[dst - 1];
    if (f1.size() != f2.size()) return false;
    for (std::size_t i = 0; i < f1.size(); ++i) {
      const Edge& e1 = d1.edges[f1[i]];
      const Edge& e2 = d2.edges[f2[i]];
      if (e1.src != e2.src || e1.mult != e2.mult) return false;
    }
  }
  return true;
}

namespace {

void check_strictly_increasing(const std::vector<int>& m, const char* name) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] < 1) throw std::invalid_argument(std::string(name) + ": indices must be >= 1");
    if (i > 0 && m[i] <= m[i - 1])
      throw std::invalid_argument(std::string(name) + ": map must be strictly increasing");
  }
}

int map_at(const std::vector<int>& m, int n, const char* name) {
  if (n < 1 || static_cast<std::size_t>(n) > m.size())
    throw std::out_of_range(std::string(name) + ": index " + std::to_string(n) +
                            " out of range");
  return m[n - 1];
}

const OrderedDiagram& chain_at(const std::vector<OrderedDiagram>& c, int n,
                               const char* name) {
  if (n < 1 || static_cast<std::size_t>(n) > c.size())
    throw std::out_of_range(std::string(name) + ": diagram " + std::to_string(n) +
                            " out of range");
  return c[n - 1];
}

// chain[from .. to] contracted left to right; identity on `n` vertices when
// to < from.
OrderedDiagram chain_segment(const std::vector<OrderedDiagram>& c, int from,
                             int to, int n, const char* name) {
  if (to < from - 1)
    throw std::invalid_argument(std::string(name) + ": index map runs backwards");
  std::vector<OrderedDiagram> seg;
  for (int i = from; i <= to; ++i) seg.push_back(chain_at(c, i, name));
  return contract_chain(seg, n);
}

}  // namespace

bool verify_intertwining(const std::vector<OrderedDiagram>& chainA,
                         const std::vector<OrderedDiagram>& chainB,
                         const std::vector<OrderedDiagram>& eprime,
                         const std::vector<OrderedDiagram>& fprime,
                         const std::vector<int>& f_map,
                         const std::vector<int>& g_map, int horizon) {
  if (horizon < 1) throw std::invalid_argument("verify_intertwining: horizon must be >= 1");
  check_strictly_increasing(f_map, "f_map");
  check_strictly_increasing(g_map, "g_map");
  for (int n = 1; n <= horizon; ++n) {
    // First equivalence: F'_{f(n)} after E'_n matches E_{n+1} .. E_{g(f(n))}.
    const OrderedDiagram& en = chain_at(eprime, n, "eprime");
    int fn = map_at(f_map, n, "f_map");
    const OrderedDiagram& ffn = chain_at(fprime, fn, "fprime");
    int gfn = map_at(g_map, fn, "g_map");
    OrderedDiagram lhs1 = contract(en, ffn);
    OrderedDiagram rhs1 = chain_segment(chainA, n + 1, gfn, en.src_count, "chainA");
    if (!order_equivalent(lhs1, rhs1)) return false;
    // Second equivalence: E'_{g(n)} after F'_n matches F_{n+1} .. F_{f(g(n))}.
    const OrderedDiagram& fprime_n = chain_at(fprime, n, "fprime");
    int gn = map_at(g_map, n, "g_map");
    const OrderedDiagram& egn = chain_at(eprime, gn, "eprime");
    int fgn = map_at(f_map, gn, "f_map");
    OrderedDiagram lhs2 = contract(fprime_n, egn);
    OrderedDiagram rhs2 =
        chain_segment(chainB, n + 1, fgn, fprime_n.src_count, "chainB");
    if (!order_equivalent(lhs2, rhs2)) return false;
  }
  return true;
}

}  // namespace opal::bratelli
