#include "opal/json_io.hpp"

#include <fstream>
#include <sstream>

namespace opal::io {

namespace {

const json& expect(const json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError("expected an object with field \"" + key + "\"");
  return j.at(key);
}

long parse_small_int(const json& j, const std::string& field) {
  arith::Int v = parse_int(j, field);
  if (!v.fits_slong_p()) throw ParseError(field + ": value too large");
  return v.get_si();
}

json emit_int(const arith::Int& v) {
  if (v.fits_slong_p()) return json(v.get_si());
  return json(v.get_str());
}

json emit_rat(const arith::Rat& q) { return json(arith::rat_str(q)); }

arith::Rat parse_rat(const json& j, const std::string& field) {
  if (!j.is_string()) throw ParseError(field + ": expected a \"num/den\" string");
  try {
    return arith::rat_parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(field + ": " + e.what());
  }
}

}  // namespace

arith::Int parse_int(const json& j, const std::string& field) {
  if (j.is_number_unsigned()) return arith::Int(static_cast<unsigned long>(j.get<std::uint64_t>()));
  if (j.is_number_integer()) {
    long long v = j.get<std::int64_t>();
    if (v < 0) throw ParseError(field + ": negative integer");
    return arith::Int(static_cast<long>(v));
  }
  if (j.is_string()) {
    try {
      return arith::int_parse(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(field + ": " + e.what());
    }
  }
  throw ParseError(field + ": expected an integer (number or decimal string)");
}

json emit(const tuples::IntTuple& t) {
  json arr = json::array();
  for (const auto& v : t) arr.push_back(emit_int(v));
  return json{{"tuple", arr}};
}

tuples::IntTuple parse_int_tuple(const json& j) {
  const json& arr = expect(j, "tuple");
  if (!arr.is_array() || arr.empty())
    throw ParseError("tuple: expected a nonempty array");
  tuples::IntTuple t;
  for (const auto& e : arr) t.push_back(parse_int(e, "tuple entry"));
  try {
    tuples::check_int_tuple(t);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("tuple: ") + e.what());
  }
  return t;
}

json emit(const tuples::NormTuple& t) {
  json arr = json::array();
  for (const auto& q : t.entries) arr.push_back(emit_rat(q));
  return json{{"ntuple", arr}};
}

tuples::NormTuple parse_norm_tuple(const json& j) {
  const json& arr = expect(j, "ntuple");
  if (!arr.is_array() || arr.empty())
    throw ParseError("ntuple: expected a nonempty array");
  tuples::NormTuple t;
  for (const auto& e : arr) t.entries.push_back(parse_rat(e, "ntuple entry"));
  if (t.entries[0] != 1) throw ParseError("ntuple: first entry must be 1/1");
  return t;
}

namespace {

json emit_tuple_list(const std::vector<tuples::IntTuple>& ts) {
  json arr = json::array();
  for (const auto& t : ts) arr.push_back(emit(t).at("tuple"));
  return arr;
}

std::vector<tuples::IntTuple> parse_tuple_list(const json& arr,
                                               const std::string& field) {
  if (!arr.is_array()) throw ParseError(field + ": expected an array of tuples");
  std::vector<tuples::IntTuple> out;
  for (const auto& e : arr) out.push_back(parse_int_tuple(json{{"tuple", e}}));
  return out;
}

}  // namespace

json emit(const Presentation& p) {
  return json{{"presentation",
               {{"prefix", emit_tuple_list(p.prefix)},
                {"period", emit_tuple_list(p.period)}}}};
}

Presentation parse_presentation(const json& j) {
  const json& obj = expect(j, "presentation");
  Presentation p;
  p.prefix = parse_tuple_list(expect(obj, "prefix"), "prefix");
  p.period = parse_tuple_list(expect(obj, "period"), "period");
  try {
    check_presentation(p);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("presentation: ") + e.what());
  }
  return p;
}

json emit(const spectrum::Point& p) {
  json tail = json::array();
  for (const auto& sel : p.tail) {
    switch (sel.kind) {
      case spectrum::TailSel::Index: tail.push_back(json{{"index", sel.arg}}); break;
      case spectrum::TailSel::MinOfF: tail.push_back(json{{"minF", sel.arg}}); break;
      case spectrum::TailSel::MaxOfF: tail.push_back(json{{"maxF", sel.arg}}); break;
    }
  }
  json prefix = json::array();
  for (long c : p.prefix) prefix.push_back(c);
  return json{{"point", {{"prefix", prefix}, {"tail", tail}}}};
}

spectrum::Point parse_point(const json& j) {
  const json& obj = expect(j, "point");
  spectrum::Point p;
  const json& prefix = expect(obj, "prefix");
  if (!prefix.is_array()) throw ParseError("point.prefix: expected an array");
  for (const auto& e : prefix) p.prefix.push_back(parse_small_int(e, "point.prefix"));
  const json& tail = expect(obj, "tail");
  if (!tail.is_array()) throw ParseError("point.tail: expected an array");
  for (const auto& e : tail) {
    if (!e.is_object() || e.size() != 1)
      throw ParseError("point.tail: each selector is a one-field object");
    spectrum::TailSel sel;
    if (e.contains("index")) {
      sel.kind = spectrum::TailSel::Index;
      sel.arg = parse_small_int(e.at("index"), "point.tail.index");
    } else if (e.contains("minF")) {
      sel.kind = spectrum::TailSel::MinOfF;
      sel.arg = parse_small_int(e.at("minF"), "point.tail.minF");
    } else if (e.contains("maxF")) {
      sel.kind = spectrum::TailSel::MaxOfF;
      sel.arg = parse_small_int(e.at("maxF"), "point.tail.maxF");
    } else {
      throw ParseError("point.tail: selector must be index, minF, or maxF");
    }
    p.tail.push_back(sel);
  }
  return p;
}

json emit(const embed::GridOrder& g) {
  json rank = json::array();
  for (int v : g.rank) rank.push_back(v);
  return json{{"grid", {{"n", g.n}, {"k", g.k}, {"rank", rank}}}};
}

embed::GridOrder parse_grid(const json& j) {
  const json& obj = expect(j, "grid");
  embed::GridOrder g;
  g.n = static_cast<int>(parse_small_int(expect(obj, "n"), "grid.n"));
  g.k = static_cast<int>(parse_small_int(expect(obj, "k"), "grid.k"));
  const json& rank = expect(obj, "rank");
  if (!rank.is_array()) throw ParseError("grid.rank: expected a flat array");
  for (const auto& e : rank)
    g.rank.push_back(static_cast<int>(parse_small_int(e, "grid.rank")));
  try {
    embed::check_grid(g);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("grid: ") + e.what());
  }
  return g;
}

json emit(const bratelli::OrderedDiagram& d) {
  json edges = json::array();
  for (const auto& e : d.edges)
    edges.push_back(json{{"src", e.src}, {"dst", e.dst}, {"mult", emit_int(e.mult)}});
  json fibers = json::object();
  for (std::size_t v = 0; v < d.fiber_order.size(); ++v) {
    json arr = json::array();
    for (int e : d.fiber_order[v]) arr.push_back(e);
    fibers[std::to_string(v + 1)] = arr;
  }
  return json{{"diagram",
               {{"src_count", d.src_count},
                {"dst_count", d.dst_count},
                {"edges", edges},
                {"fiber_order", fibers}}}};
}

bratelli::OrderedDiagram parse_diagram(const json& j) {
  const json& obj = expect(j, "diagram");
  bratelli::OrderedDiagram d;
  d.src_count = static_cast<int>(parse_small_int(expect(obj, "src_count"), "diagram.src_count"));
  d.dst_count = static_cast<int>(parse_small_int(expect(obj, "dst_count"), "diagram.dst_count"));
  const json& edges = expect(obj, "edges");
  if (!edges.is_array()) throw ParseError("diagram.edges: expected an array");
  for (const auto& e : edges) {
    bratelli::Edge edge;
    edge.src = static_cast<int>(parse_small_int(expect(e, "src"), "edge.src"));
    edge.dst = static_cast<int>(parse_small_int(expect(e, "dst"), "edge.dst"));
    edge.mult = parse_int(expect(e, "mult"), "edge.mult");
    d.edges.push_back(edge);
  }
  const json& fibers = expect(obj, "fiber_order");
  if (!fibers.is_object())
    throw ParseError("diagram.fiber_order: expected an object keyed by dst");
  d.fiber_order.assign(std::max(d.dst_count, 0), {});
  for (const auto& [key, arr] : fibers.items()) {
    long dst = 0;
    try {
      dst = std::stol(key);
    } catch (...) {
      throw ParseError("diagram.fiber_order: non-numeric dst key \"" + key + "\"");
    }
    if (dst < 1 || dst > d.dst_count)
      throw ParseError("diagram.fiber_order: dst key out of range");
    if (!arr.is_array())
      throw ParseError("diagram.fiber_order: expected edge-index arrays");
    for (const auto& e : arr)
      d.fiber_order[dst - 1].push_back(
          static_cast<int>(parse_small_int(e, "fiber_order entry")));
  }
  auto res = bratelli::validate(d);
  if (!res.ok)
    throw ParseError("diagram: " +
                     (res.diagnostics.empty() ? "invalid" : res.diagnostics[0]));
  return d;
}

json emit(const spectrum::ExplicitOrders& o) {
  json dims = json::array();
  for (long k : o.dims) dims.push_back(k);
  json ranks = json::array();
  for (const auto& r : o.ranks) {
    json arr = json::array();
    for (long v : r) arr.push_back(v);
    ranks.push_back(arr);
  }
  return json{{"orders", {{"dims", dims}, {"ranks", ranks}}}};
}

spectrum::ExplicitOrders parse_orders(const json& j) {
  const json& obj = expect(j, "orders");
  spectrum::ExplicitOrders o;
  const json& dims = expect(obj, "dims");
  if (!dims.is_array()) throw ParseError("orders.dims: expected an array");
  for (const auto& e : dims) o.dims.push_back(parse_small_int(e, "orders.dims"));
  const json& ranks = expect(obj, "ranks");
  if (!ranks.is_array()) throw ParseError("orders.ranks: expected an array");
  for (const auto& r : ranks) {
    if (!r.is_array()) throw ParseError("orders.ranks: expected rank arrays");
    std::vector<long> rank;
    for (const auto& e : r) rank.push_back(parse_small_int(e, "orders.ranks"));
    o.ranks.push_back(std::move(rank));
  }
  return o;
}

json emit(const arith::Supernatural& s) {
  json finite = json::object();
  for (const auto& [p, e] : s.finite) finite[p.get_str()] = e;
  json infinite = json::array();
  for (const auto& p : s.infinite) infinite.push_back(p.get_str());
  return json{{"finite", finite},
              {"infinite", infinite},
              {"display", arith::to_string(s)}};
}

namespace {

json emit_diagram_list(const std::vector<bratelli::OrderedDiagram>& ds) {
  json arr = json::array();
  for (const auto& d : ds) arr.push_back(emit(d).at("diagram"));
  return arr;
}

std::vector<bratelli::OrderedDiagram> parse_diagram_list(const json& arr,
                                                         const std::string& field) {
  if (!arr.is_array()) throw ParseError(field + ": expected an array of diagrams");
  std::vector<bratelli::OrderedDiagram> out;
  for (const auto& e : arr) out.push_back(parse_diagram(json{{"diagram", e}}));
  return out;
}

}  // namespace

json emit(const IntertwiningBundle& b) {
  json f = json::array(), g = json::array();
  for (int v : b.f_map) f.push_back(v);
  for (int v : b.g_map) g.push_back(v);
  return json{{"intertwining",
               {{"chainA", emit_diagram_list(b.chainA)},
                {"chainB", emit_diagram_list(b.chainB)},
                {"eprime", emit_diagram_list(b.eprime)},
                {"fprime", emit_diagram_list(b.fprime)},
                {"f", f},
                {"g", g}}}};
}

IntertwiningBundle parse_intertwining(const json& j) {
  const json& obj = expect(j, "intertwining");
  IntertwiningBundle b;
  b.chainA = parse_diagram_list(expect(obj, "chainA"), "chainA");
  b.chainB = parse_diagram_list(expect(obj, "chainB"), "chainB");
  b.eprime = parse_diagram_list(expect(obj, "eprime"), "eprime");
  b.fprime = parse_diagram_list(expect(obj, "fprime"), "fprime");
  const json& f = expect(obj, "f");
  const json& g = expect(obj, "g");
  if (!f.is_array() || !g.is_array())
    throw ParseError("intertwining: f and g must be index arrays");
  for (const auto& e : f) b.f_map.push_back(static_cast<int>(parse_small_int(e, "f")));
  for (const auto& e : g) b.g_map.push_back(static_cast<int>(parse_small_int(e, "g")));
  return b;
}

json load_argument(const std::string& path_or_literal) {
  std::string text;
  if (!path_or_literal.empty() && path_or_literal[0] == '{') {
    text = path_or_literal;
  } else {
    std::ifstream in(path_or_literal);
    if (!in) throw ParseError("cannot open input file: " + path_or_literal);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON input: " + path_or_literal);
  return j;
}

}  // namespace opal::io
