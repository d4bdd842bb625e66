#pragma once

#include <nlohmann/json.hpp>

#include "opal/bratelli.hpp"
#include "opal/classify.hpp"
#include "opal/embed.hpp"
#include "opal/presentation.hpp"
#include "opal/spectrum.hpp"

// JSON schemas for the domain values exchanged through the CLI:
//   tuple        {"tuple": [2, 4, 6]}                      (ints or strings)
//   norm tuple   {"ntuple": ["1/1", "2/1", "3/1"]}
//   presentation {"presentation": {"prefix": [...], "period": [...]}}
//   point        {"point": {"prefix": [1, 2],
//                           "tail": [{"index": 1} | {"minF": 1} | {"maxF": 2}]}}
//   grid order   {"grid": {"n": 2, "k": 2, "rank": [1, 2, 4, 3]}}
//   diagram      {"diagram": {"src_count": 1, "dst_count": 1,
//                             "edges": [{"src": 1, "dst": 1, "mult": 2}],
//                             "fiber_order": {"1": [0]}}}
//   orders       {"orders": {"dims": [2, 2], "ranks": [[1, 2], [1, 3, 2, 4]]}}
//   intertwining {"intertwining": {"chainA": [...], "chainB": [...],
//                                  "eprime": [...], "fprime": [...],
//                                  "f": [...], "g": [...]}}
// All integers may be given as JSON numbers or decimal strings (arbitrary
// precision); rationals are "num/den" strings.
namespace opal::io {

using json = nlohmann::json;

// Thrown for malformed or invariant-violating input; the message names the
// offending field.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

arith::Int parse_int(const json& j, const std::string& field);

json emit(const tuples::IntTuple& t);
tuples::IntTuple parse_int_tuple(const json& j);

json emit(const tuples::NormTuple& t);
tuples::NormTuple parse_norm_tuple(const json& j);

json emit(const Presentation& p);
Presentation parse_presentation(const json& j);

json emit(const spectrum::Point& p);
spectrum::Point parse_point(const json& j);

json emit(const embed::GridOrder& g);
embed::GridOrder parse_grid(const json& j);

json emit(const bratelli::OrderedDiagram& d);
bratelli::OrderedDiagram parse_diagram(const json& j);

json emit(const spectrum::ExplicitOrders& o);
spectrum::ExplicitOrders parse_orders(const json& j);

json emit(const arith::Supernatural& s);

struct IntertwiningBundle {
  std::vector<bratelli::OrderedDiagram> chainA, chainB, eprime, fprime;
  std::vector<int> f_map, g_map;
};
json emit(const IntertwiningBundle& b);
IntertwiningBundle parse_intertwining(const json& j);

// Reads a file or, when the argument starts with '{', parses it inline.
json load_argument(const std::string& path_or_literal);

}  // namespace opal::io
