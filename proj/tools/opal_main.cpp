#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "opal/json_io.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

using opal::io::json;

struct Output {
  json result;
  json limits = json::object();
  std::vector<std::string> human;
};

std::string join_factors(const std::vector<opal::tuples::NormTuple>& fs) {
  if (fs.empty()) return "(empty product)";
  std::string out;
  for (std::size_t i = 0; i < fs.size(); ++i)
    out += (i ? " o " : "") + opal::tuples::to_string(fs[i]);
  return out;
}

json factor_list(const std::vector<opal::tuples::NormTuple>& fs) {
  json arr = json::array();
  for (const auto& f : fs) arr.push_back(opal::io::emit(f).at("ntuple"));
  return arr;
}

json chain_json(const std::vector<std::vector<long>>& chain) {
  json arr = json::array();
  for (const auto& x : chain) {
    json row = json::array();
    for (long c : x) row.push_back(c);
    arr.push_back(row);
  }
  return arr;
}

std::string prefix_str(const std::vector<long>& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i)
    out += (i ? "," : "") + std::to_string(x[i]);
  return out + ")";
}

std::vector<opal::arith::Rat> parse_gap_list(const std::string& s) {
  std::vector<opal::arith::Rat> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(opal::arith::rat_parse(item));
  return out;
}

void emit_output(const std::string& verb, const Output& out,
                 const std::string& format) {
  if (format == "machine") {
    json doc{{"version", kVersion},
             {"verb", verb},
             {"limits", out.limits},
             {"result", out.result}};
    std::cout << doc.dump(2) << "\n";
  } else {
    for (const auto& line : out.human) std::cout << line << "\n";
  }
}

Output run_factor(const json& in) {
  auto t = opal::io::parse_int_tuple(in);
  auto [lead, nt] = opal::tuples::normalize(t);
  auto canon = opal::tuples::canonical_factorization(nt);
  auto comp = opal::tuples::compressed_factorization(nt);
  Output out;
  out.result = {{"normalized", opal::io::emit(nt).at("ntuple")},
                {"leading", lead.get_num().get_str()},
                {"canonical", factor_list(canon)},
                {"compressed", factor_list(comp)}};
  out.human.push_back("tuple " + opal::tuples::to_string(t) + " normalizes to " +
                      opal::tuples::to_string(nt));
  out.human.push_back("canonical factorization: " + join_factors(canon) +
                      " [Theorem 26]");
  out.human.push_back("compressed factorization: " + join_factors(comp) +
                      " [Theorem 27]");
  return out;
}

Output run_compose(const json& a, const json& b) {
  auto outer = opal::io::parse_int_tuple(a);
  auto inner = opal::io::parse_int_tuple(b);
  auto r = opal::tuples::compose_int(outer, inner);
  Output out;
  out.result = opal::io::emit(r);
  out.human.push_back("compose(outer " + opal::tuples::to_string(outer) +
                      ", inner " + opal::tuples::to_string(inner) + ") = " +
                      opal::tuples::to_string(r) +
                      " (inner applied first) [Lemma 21]");
  return out;
}

Output run_check_embedding(const json& in) {
  auto g = opal::io::parse_grid(in);
  auto cls = opal::embed::classify_grid_order(g);
  Output out;
  switch (cls.kind) {
    case opal::embed::Classification::NotLOP:
      out.result = {{"classification", "NotLOP"}};
      out.human.push_back(
          "not locally order preserving: condition (3) fails [Lemma 2]");
      break;
    case opal::embed::Classification::LOP:
      out.result = {{"classification", "LOP"}};
      out.human.push_back(
          "locally order preserving but not a direct sum of refinement "
          "embeddings [Lemma 3, Theorem 5]");
      break;
    case opal::embed::Classification::OP:
      out.result = {{"classification", "OP"},
                    {"tuple", opal::io::emit(cls.tuple).at("tuple")}};
      out.human.push_back("order preserving: direct sum of refinement embeddings "
                          "with tuple " + opal::tuples::to_string(cls.tuple) +
                          " [Theorem 5]");
      break;
  }
  return out;
}

Output run_contract(const json& a, const json& b) {
  auto d1 = opal::io::parse_diagram(a);
  auto d2 = opal::io::parse_diagram(b);
  auto c = opal::bratelli::contract(d1, d2);
  Output out;
  out.result = opal::io::emit(c);
  out.human.push_back("contraction (first argument applied first): " +
                      std::to_string(c.edges.size()) + " composite edges");
  return out;
}

Output run_equiv(const json& a, const json& b) {
  auto d1 = opal::io::parse_diagram(a);
  auto d2 = opal::io::parse_diagram(b);
  bool eq = opal::bratelli::order_equivalent(d1, d2);
  Output out;
  out.result = {{"equivalent", eq}};
  out.human.push_back(std::string("diagrams are ") + (eq ? "" : "not ") +
                      "order equivalent");
  return out;
}

Output run_intertwining(const json& in, int horizon) {
  auto b = opal::io::parse_intertwining(in);
  bool ok = opal::bratelli::verify_intertwining(b.chainA, b.chainB, b.eprime,
                                                b.fprime, b.f_map, b.g_map,
                                                horizon);
  Output out;
  out.limits["horizon"] = horizon;
  out.result = {{"verified", ok}, {"horizon", horizon}};
  out.human.push_back(ok ? "intertwining equivalences verified to level " +
                               std::to_string(horizon) + " [Theorem 20]"
                         : "intertwining fails within horizon " +
                               std::to_string(horizon) + " [Theorem 20]");
  return out;
}

Output run_order(const json& in, std::size_t level, std::size_t cap) {
  opal::spectrum::SystemLevels sys(opal::io::parse_presentation(in));
  auto chain = opal::spectrum::materialize_order(sys, level, cap);
  Output out;
  out.limits["level"] = level;
  out.limits["cap"] = cap;
  out.result = {{"level", level}, {"chain", chain_json(chain)}};
  std::string line = "spectrum order at level " + std::to_string(level) + ":";
  for (const auto& x : chain) line += " " + prefix_str(x);
  out.human.push_back(line + " [Theorem 7]");
  return out;
}

Output run_coherence(const json& in, std::size_t level, std::size_t cap) {
  opal::spectrum::ExplicitOrders orders;
  if (in.contains("presentation")) {
    opal::spectrum::SystemLevels sys(opal::io::parse_presentation(in));
    orders = opal::spectrum::orders_from_system(sys, level, cap);
  } else {
    orders = opal::io::parse_orders(in);
  }
  std::vector<std::string> diag;
  bool coherent = opal::spectrum::check_coherence(orders, false, &diag);
  bool hyper = opal::spectrum::check_coherence(orders, true, &diag);
  Output out;
  out.limits["level"] = orders.ranks.size();
  out.limits["cap"] = cap;
  out.result = {{"coherent", coherent},
                {"hypercoherent", hyper},
                {"diagnostics", diag}};
  out.human.push_back(std::string("coherent: ") + (coherent ? "yes" : "no") +
                      " [Theorem 7]");
  out.human.push_back(std::string("hypercoherent: ") + (hyper ? "yes" : "no") +
                      " [Theorem 8]");
  for (const auto& d : diag) out.human.push_back("  " + d);
  return out;
}

Output run_gap(const json& pres, const json& pt) {
  opal::spectrum::SystemLevels sys(opal::io::parse_presentation(pres));
  auto x = opal::io::parse_point(pt);
  auto status = opal::spectrum::is_gap_point(sys, x);
  Output out;
  switch (status) {
    case opal::spectrum::GapStatus::Gap: {
      auto y = opal::spectrum::gap_successor(sys, x);
      out.result = {{"status", "Gap"}, {"successor", opal::io::emit(y).at("point")}};
      out.human.push_back("gap point: immediate successor exists [Theorem 9]");
      out.human.push_back("successor prefix " + prefix_str(y.prefix) +
                          " with tail min-of-F(1) [Theorem 9]");
      break;
    }
    case opal::spectrum::GapStatus::NotGap:
      out.result = {{"status", "NotGap"}};
      out.human.push_back("not a gap point [Theorem 9]");
      break;
    case opal::spectrum::GapStatus::ExceptionalXInfinity:
      out.result = {{"status", "ExceptionalXInfinity"}};
      out.human.push_back(
          "the exceptional point x^infinity: gap-ness depends on the algebra "
          "class, not decided here [Theorem 9]");
      break;
  }
  return out;
}

Output run_closure(const json& pres, const json& px, const json& py) {
  opal::spectrum::SystemLevels sys(opal::io::parse_presentation(pres));
  auto x = opal::io::parse_point(px);
  auto y = opal::io::parse_point(py);
  bool xy = opal::spectrum::closure_member(sys, x, y);
  bool yx = opal::spectrum::closure_member(sys, y, x);
  auto rel = opal::spectrum::related_points(sys, x, y);
  const char* rel_name = rel == opal::spectrum::Related::Forward    ? "Forward"
                         : rel == opal::spectrum::Related::Backward ? "Backward"
                         : rel == opal::spectrum::Related::Equal    ? "Equal"
                                                                   : "Unrelated";
  Output out;
  out.result = {{"x_in_closure_orbit_y", xy},
                {"y_in_closure_orbit_x", yx},
                {"related", rel_name}};
  out.human.push_back(std::string("x in closure(orbit(y)): ") +
                      (xy ? "yes" : "no") + " [Lemma 11]");
  out.human.push_back(std::string("y in closure(orbit(x)): ") +
                      (yx ? "yes" : "no") + " [Lemma 11]");
  out.human.push_back(std::string("spectrum relation: ") + rel_name +
                      (rel == opal::spectrum::Related::Unrelated
                           ? " (not decided for differing tail descriptions)"
                           : ""));
  return out;
}

Output run_cocycle(const json& pres, std::size_t depth, const std::string& gaps,
                   const std::string& transition, std::size_t cap) {
  opal::spectrum::SystemLevels sys(opal::io::parse_presentation(pres));
  std::vector<opal::arith::Rat> c1;
  if (gaps.empty()) {
    long k1 = sys.k(1);
    c1.assign(k1 > 1 ? k1 - 1 : 0, opal::arith::Rat(1));
  } else {
    c1 = parse_gap_list(gaps);
  }
  auto table = opal::spectrum::build_cocycle(sys, depth, c1,
                                             opal::arith::rat_parse(transition), cap);
  Output out;
  out.limits["depth"] = depth;
  out.limits["cap"] = cap;
  json gj = json::array();
  for (const auto& level : table.gaps) {
    json row = json::array();
    for (const auto& g : level) row.push_back(opal::arith::rat_str(g));
    gj.push_back(row);
  }
  json cj = json::array();
  for (const auto& level : table.chains) cj.push_back(chain_json(level));
  out.result = {{"depth", depth}, {"gaps", gj}, {"chains", cj}};
  out.human.push_back("locally constant cocycle built to depth " +
                      std::to_string(depth) +
                      "; sign-iff-order and level consistency re-verified "
                      "[Theorem 14]");
  for (std::size_t m = 1; m <= depth; ++m) {
    std::string line = "level " + std::to_string(m) + " gaps:";
    for (const auto& g : table.gaps[m - 1])
      line += " " + opal::arith::rat_str(g);
    out.human.push_back(line);
  }
  return out;
}

Output run_invariants(const json& pres) {
  auto p = opal::io::parse_presentation(pres);
  auto inv = opal::classify::invariants(p);
  Output out;
  out.result = {{"envelope", opal::io::emit(inv.envelope)},
                {"first_summand", opal::io::emit(inv.first_summand)},
                {"mode", inv.geometric ? "geometric" : "non-geometric"}};
  out.human.push_back("envelope supernatural number: " +
                      to_string(inv.envelope) + " [Theorem 29]");
  out.human.push_back("first-summand supernatural number: " +
                      to_string(inv.first_summand) + " [Theorem 13]");
  if (inv.geometric) {
    out.result["lengths"] = opal::io::emit(inv.lengths);
    out.result["root"] = opal::arith::rat_str(inv.root);
    out.human.push_back("geometric character: yes; length supernatural number " +
                        to_string(inv.lengths) + ", reduced root " +
                        opal::arith::rat_str(inv.root) + " [Theorem 29]");
  } else {
    out.result["prefix_factors"] = factor_list(inv.prefix_factors);
    out.result["cycle_factors"] = factor_list(inv.cycle_factors);
    out.human.push_back("geometric character: no; primitive factor cycle " +
                        join_factors(inv.cycle_factors) +
                        " [Theorem 26, Theorem 29]");
  }
  return out;
}

Output run_iso(const json& a, const json& b) {
  auto p1 = opal::io::parse_presentation(a);
  auto p2 = opal::io::parse_presentation(b);
  auto rep = opal::classify::isomorphic(p1, p2);
  Output out;
  out.result = {{"verdict", rep.verdict}, {"report", rep.lines}};
  out.human = rep.lines;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"opal: exact combinatorics of order-preserving limit-algebra "
               "presentations"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string format = "human";
  app.add_option("--format", format, "Output format: human or machine")
      ->check(CLI::IsMember({"human", "machine"}))
      ->capture_default_str();

  std::vector<std::string> args;
  std::size_t level = 2, depth = 2, cap = 10000;
  int horizon = 3;
  std::string gaps, transition = "1";

  auto add_verb = [&](const std::string& name, const std::string& desc,
                      std::size_t nargs) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("inputs", args, "Input files or inline JSON literals")
        ->expected(static_cast<int>(nargs));
    return sub;
  };

  CLI::App* factor = add_verb("factor", "Factor a multiplicity tuple", 1);
  CLI::App* compose = add_verb("compose", "Compose two tuples (outer, inner)", 2);
  CLI::App* checkemb = add_verb("check-embedding", "Classify a grid order", 1);
  CLI::App* dcontract = add_verb("diagram-contract", "Contract two diagrams", 2);
  CLI::App* dequiv = add_verb("diagram-equiv", "Order equivalence of diagrams", 2);
  CLI::App* verify = add_verb("verify-intertwining",
                              "Verify intertwining equivalences", 1);
  verify->add_option("--horizon", horizon, "Levels to verify")->capture_default_str();
  CLI::App* order = add_verb("order", "Materialize the spectrum order", 1);
  order->add_option("--level", level, "Level to materialize")->capture_default_str();
  order->add_option("--cap", cap, "Materialization cap")->capture_default_str();
  CLI::App* coherence =
      add_verb("coherence", "Check coherence and hypercoherence", 1);
  coherence->add_option("--level", level, "Levels to check (presentations)")
      ->capture_default_str();
  coherence->add_option("--cap", cap, "Materialization cap")->capture_default_str();
  CLI::App* gap = add_verb("gap", "Gap-point status and successor", 2);
  CLI::App* closure = add_verb("closure", "Orbit-closure membership", 3);
  CLI::App* cocycle = add_verb("cocycle", "Build the locally constant cocycle", 1);
  cocycle->add_option("--depth", depth, "Table depth")->capture_default_str();
  cocycle->add_option("--gaps", gaps, "Comma-separated level-1 gap values");
  cocycle->add_option("--transition", transition, "Block-transition constant")
      ->capture_default_str();
  cocycle->add_option("--cap", cap, "Materialization cap")->capture_default_str();
  CLI::App* invariants = add_verb("invariants", "Classification invariants", 1);
  CLI::App* iso = add_verb("iso", "Isomorphism decision", 2);

  CLI11_PARSE(app, argc, argv);

  try {
    std::vector<opal::io::json> in;
    for (const auto& a : args) in.push_back(opal::io::load_argument(a));
    Output out;
    std::string verb;
    if (factor->parsed()) {
      verb = "factor";
      out = run_factor(in[0]);
    } else if (compose->parsed()) {
      verb = "compose";
      out = run_compose(in[0], in[1]);
    } else if (checkemb->parsed()) {
      verb = "check-embedding";
      out = run_check_embedding(in[0]);
    } else if (dcontract->parsed()) {
      verb = "diagram-contract";
      out = run_contract(in[0], in[1]);
    } else if (dequiv->parsed()) {
      verb = "diagram-equiv";
      out = run_equiv(in[0], in[1]);
    } else if (verify->parsed()) {
      verb = "verify-intertwining";
      out = run_intertwining(in[0], horizon);
    } else if (order->parsed()) {
      verb = "order";
      out = run_order(in[0], level, cap);
    } else if (coherence->parsed()) {
      verb = "coherence";
      out = run_coherence(in[0], level, cap);
    } else if (gap->parsed()) {
      verb = "gap";
      out = run_gap(in[0], in[1]);
    } else if (closure->parsed()) {
      verb = "closure";
      out = run_closure(in[0], in[1], in[2]);
    } else if (cocycle->parsed()) {
      verb = "cocycle";
      out = run_cocycle(in[0], depth, gaps, transition, cap);
    } else if (invariants->parsed()) {
      verb = "invariants";
      out = run_invariants(in[0]);
    } else if (iso->parsed()) {
      verb = "iso";
      out = run_iso(in[0], in[1]);
    }
    emit_output(verb, out, format);
    return 0;
  } catch (const opal::classify::FactorStreamInstability& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
