#include "ucnet/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ucnet/error.hpp"

namespace ucnet {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string id_of(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  parse_fail("ids must be strings or integers");
}

std::vector<std::string> labels(const Json& j, std::size_t n) {
  std::vector<std::string> out;
  if (j.is_null()) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
    return out;
  }
  if (!j.is_array()) parse_fail("alphabet must be an array");
  for (const auto& v : j) out.push_back(v.is_string() ? v.get<std::string>() : v.dump());
  return out;
}

std::string fmt(double v, const char* f = "%.6f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string vec_text(const Vec4& v) {
  return "(" + fmt(v[0]) + ", " + fmt(v[1]) + ", " + fmt(v[2]) + ", " + fmt(v[3]) + ")";
}

std::string join(const std::vector<std::string>& v, const char* sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    parse_fail(path + ": " + e.what());
  }
}

JointDistribution distribution_from_json(const Json& j) {
  const Json& pmf = field(j, "pmf");
  if (!pmf.is_array() || pmf.empty()) parse_fail("pmf must be a non-empty array of rows");
  std::vector<std::vector<double>> rows;
  try {
    for (const auto& r : pmf) rows.push_back(r.get<std::vector<double>>());
  } catch (const nlohmann::json::exception&) {
    parse_fail("pmf rows must be arrays of numbers");
  }
  const JointDistribution base = JointDistribution::from_rows(rows);
  auto xs = labels(j.contains("x_alphabet") ? j["x_alphabet"] : Json(), base.nx());
  auto ys = labels(j.contains("y_alphabet") ? j["y_alphabet"] : Json(), base.ny());
  return JointDistribution(std::move(xs), std::move(ys), std::vector<double>(base.pmf().begin(), base.pmf().end()));
}

JointDistribution load_distribution(const std::string& path) { return distribution_from_json(read_json_file(path)); }

Json to_json(const JointDistribution& p) {
  Json rows = Json::array();
  for (std::size_t x = 0; x < p.nx(); ++x) {
    Json r = Json::array();
    for (std::size_t y = 0; y < p.ny(); ++y) r.push_back(p(x, y));
    rows.push_back(r);
  }
  return {{"x_alphabet", p.x_alphabet()}, {"y_alphabet", p.y_alphabet()}, {"pmf", rows}};
}

Network network_from_json(const Json& j, const MeasureSet& m) {
  Network n;
  try {
    for (const auto& v : field(j, "nodes")) n.nodes.push_back(id_of(v));
    for (const auto& e : field(j, "edges")) {
      Edge ed{id_of(field(e, "id")), id_of(field(e, "tail")), id_of(field(e, "head")), 0};
      const Json& c = field(e, "capacity");
      double bits = 0;
      if (c.is_number()) bits = c.get<double>();
      else if (c.is_string()) bits = parse_affine(c.get<std::string>()).measure_value(m);
      else parse_fail("capacity of edge " + ed.id + " must be a number or an expression");
      if (bits < 0 && bits > -1e-12) bits = 0;
      ed.capacity = to_units(bits);
      n.edges.push_back(ed);
    }
    for (const auto& s : field(j, "sources")) n.sources.push_back({id_of(field(s, "node")), parse_var(field(s, "variable").get<std::string>())});
    for (const auto& t : field(j, "sinks")) n.sinks.push_back({id_of(field(t, "node")), parse_var(field(t, "demand").get<std::string>()), false});
    if (j.contains("secrecy"))
      for (const auto& s : j["secrecy"])
        n.secrecy.push_back({id_of(field(s, "edge")), parse_var(field(s, "about").get<std::string>()),
                             s.contains("leakage_bound") ? s["leakage_bound"].get<double>() : 0.0});
    if (j.contains("message_groups"))
      for (const auto& g : j["message_groups"]) {
        std::vector<std::string> grp;
        for (const auto& v : g) grp.push_back(id_of(v));
        n.message_groups.push_back(grp);
      }
  } catch (const nlohmann::json::exception& e) {
    parse_fail(std::string("network: ") + e.what());
  }
  return n;
}

Network load_network(const std::string& path, const JointDistribution& p) {
  return network_from_json(read_json_file(path), measures(p));
}

Json to_json(const Network& net) {
  Json j;
  j["nodes"] = net.nodes;
  j["edges"] = Json::array();
  for (const auto& e : net.edges)
    j["edges"].push_back({{"id", e.id}, {"tail", e.tail}, {"head", e.head}, {"capacity", to_bits(e.capacity)}});
  j["sources"] = Json::array();
  for (const auto& s : net.sources) j["sources"].push_back({{"node", s.node}, {"variable", var_name(s.variable)}});
  j["sinks"] = Json::array();
  for (const auto& t : net.sinks)
    if (!t.imaginary) j["sinks"].push_back({{"node", t.node}, {"demand", var_name(t.demand)}});
  j["secrecy"] = Json::array();
  for (const auto& s : net.secrecy)
    j["secrecy"].push_back({{"edge", s.edge}, {"about", var_name(s.about)}, {"leakage_bound", s.leakage_bound}});
  j["message_groups"] = net.message_groups;
  return j;
}

Json to_json(const MeasureSet& m) {
  return {{"h_x", m.h_x},       {"h_y", m.h_y},   {"h_xy", m.h_xy}, {"h_x_given_y", m.h_x_given_y},
          {"h_y_given_x", m.h_y_given_x}, {"i_xy", m.i_xy}};
}

Json to_json(const AuxiliaryChannel& ch) {
  Json k = Json::array();
  for (std::size_t x = 0; x < ch.nx(); ++x) {
    Json row = Json::array();
    for (std::size_t y = 0; y < ch.ny(); ++y) {
      const auto r = ch.row(x * ch.ny() + y);
      row.push_back(std::vector<double>(r.begin(), r.end()));
    }
    k.push_back(row);
  }
  return {{"e_size", ch.e_size()}, {"kernel", k}};
}

Json to_json(const FamilySpec& s) {
  Json j{{"family", s.family}, {"c", s.c}};
  if (s.family == 4) j["f"] = s.f;
  if (s.channel) j["channel"] = to_json(*s.channel);
  return j;
}

Json to_json(const UncertaintyVector& u) { return Json::array({u.u1, u.u2, u.u3, u.u4}); }

Json to_json(const SupportValue& s) {
  Json j{{"value", s.infinite ? Json("inf") : Json(s.value)}, {"orthant", s.orthant}, {"numerical", s.numerical}};
  if (s.infinite) j["c0_value"] = s.c0_value;
  if (s.argmax) j["argmax"] = to_json(*s.argmax);
  return j;
}

Json to_json(const MembershipResult& r) {
  Json j{{"verdict", to_string(r.verdict)}};
  if (r.verdict == Verdict::Inside) {
    Json c = Json::array();
    for (const auto& [w, s] : r.combination) c.push_back({{"weight", w}, {"point", to_json(s)}});
    j["certificate"] = c;
  } else if (r.verdict == Verdict::Outside) {
    j["separator"] = r.separator;
    j["margin"] = r.margin;
    j["support"] = to_json(r.support);
  }
  return j;
}

Json to_json(const Cut& c) {
  return {{"edges", c.edge_ids}, {"classification", c.classification()}, {"capacity", c.capacity_bits()}};
}

namespace {
Json entry_json(const CutsetEntry& e) {
  return {{"cut", to_json(e.cut)},
          {"demanded", var_name(e.demanded)},
          {"known", var_name(e.known)},
          {"required", e.required},
          {"available", e.available}};
}
}  // namespace

Json to_json(const CutsetReport& r) {
  Json v = Json::array(), b = Json::array();
  for (const auto& e : r.violations) v.push_back(entry_json(e));
  for (const auto& e : r.binding) b.push_back(entry_json(e));
  return {{"satisfied", r.satisfied}, {"violations", v}, {"binding", b}};
}

Json to_json(const LinearConstraint& c) { return {{"expr", c.expr()}, {"provenance", c.provenance}}; }

Json to_json(const FeasibilityReport& r) {
  Json j{{"verdict", to_string(r.verdict)}};
  if (r.no_cut) j["note"] = "no cut through this edge separates a demand";
  if (r.verdict == Feasibility::Feasible) {
    j["witness"] = to_json(r.witness);
    Json c = Json::array();
    for (const auto& [w, s] : r.combination) c.push_back({{"weight", w}, {"point", to_json(s)}});
    j["certificate"] = c;
    if (!r.free_capacities.empty()) j["free_capacities"] = r.free_capacities;
  } else if (r.verdict == Feasibility::Infeasible) {
    if (r.empty_polyhedron) {
      j["empty_polyhedron"] = true;
    } else {
      j["separator"] = r.separator;
      j["margin"] = r.margin;
      j["orthant"] = r.orthant;
      j["support"] = r.numerical ? "numerical" : "closed-form";
    }
  }
  if (!r.sweep.empty()) {
    Json s = Json::array();
    for (const auto& p : r.sweep) s.push_back(Json::array({p.u1, p.margin}));
    j["sweep"] = s;
  }
  return j;
}

Json to_json(const NetworkReport& r) {
  Json j{{"verdict", to_string(r.verdict)}};
  if (!r.failing_edge.empty()) j["failing_edge"] = r.failing_edge;
  j["cutset"] = to_json(r.cutset);
  Json edges = Json::array();
  for (const auto& e : r.edges) {
    Json ej{{"edge", e.converse.edge}, {"group", e.converse.group}};
    Json cs = Json::array();
    for (const auto& c : e.converse.constraints) cs.push_back(to_json(c));
    ej["constraints"] = cs;
    const Json res = to_json(e.result);
    for (const auto& [k, v] : res.items()) ej[k] = v;
    edges.push_back(ej);
  }
  j["edges"] = edges;
  return j;
}

Json to_json(const SingleLetterView& v) {
  Json cs = Json::array();
  for (const auto& c : v.constraints)
    if (!c.text.empty()) cs.push_back({{"expr", c.text}, {"provenance", c.provenance}});
  return {{"edge", v.edge}, {"c_zero", v.c_zero}, {"g_zero", v.g_zero}, {"h_zero", v.h_zero}, {"constraints", cs}};
}

Json to_json(const MinCapResult& r) {
  Json t = Json::array();
  for (const auto& p : r.trace) {
    Json e{{"value", p.value}, {"verdict", to_string(p.verdict)}};
    if (!p.failing_edge.empty()) e["failing_edge"] = p.failing_edge;
    t.push_back(e);
  }
  return {{"min_value", r.min_value},
          {"bracket", Json::array({r.bracket_lo, r.bracket_hi})},
          {"feasible_at_top", r.feasible_at_top},
          {"trace", t}};
}

Json to_json(const std::vector<Relation>& rs) {
  Json a = Json::array();
  for (const auto& r : rs) a.push_back({{"relation", r.name}, {"passed", r.passed}, {"detail", r.detail}});
  return a;
}

std::string render_text(const CutsetReport& r) {
  std::ostringstream o;
  o << "cut-set bound: " << (r.satisfied ? "satisfied" : "violated") << "\n";
  for (const auto& e : r.violations)
    o << "  violated: {" << join(e.cut.edge_ids) << "} is " << e.cut.classification() << ", needs "
      << fmt(e.required) << " bits, has " << fmt(e.available) << "\n";
  for (const auto& e : r.binding)
    o << "  tightest for " << var_name(e.demanded) << (e.known ? std::string(" given ") + var_name(e.known) : "")
      << ": {" << join(e.cut.edge_ids) << "} slack " << fmt(e.available - e.required) << "\n";
  return o.str();
}

std::string render_text(const NetworkReport& r) {
  std::ostringstream o;
  o << "verdict: " << to_string(r.verdict);
  if (!r.failing_edge.empty()) o << " (edge " << r.failing_edge << ")";
  o << "\n" << render_text(r.cutset);
  for (const auto& e : r.edges) {
    o << "\nedge " << e.converse.edge;
    if (e.converse.group.size() > 1) o << " [group " << join(e.converse.group) << "]";
    o << ": " << to_string(e.result.verdict) << "\n";
    std::size_t width = 0;
    for (const auto& c : e.converse.constraints) width = std::max(width, c.expr().size());
    for (const auto& c : e.converse.constraints) {
      const std::string x = c.expr();
      o << "  " << x << std::string(width - x.size() + 3, ' ') << c.provenance << "\n";
    }
    const auto& f = e.result;
    if (f.no_cut) o << "  no cut through this edge separates a demand\n";
    if (f.verdict == Feasibility::Feasible) {
      o << "  witness " << vec_text(f.witness.array()) << " from " << f.combination.size() << " region point(s)\n";
      for (const auto& [id, v] : f.free_capacities) o << "  chosen C" << id << " = " << fmt(v) << "\n";
    } else if (f.verdict == Feasibility::Infeasible) {
      if (f.empty_polyhedron)
        o << "  the constraints are inconsistent before consulting the region\n";
      else
        o << "  separator " << vec_text(f.separator) << ", margin " << fmt(f.margin, "%.3g") << ", orthant "
          << f.orthant << (f.numerical ? " (numerical support)" : " (closed-form support)") << "\n";
    }
  }
  return o.str();
}

std::string render_text(const MinCapResult& r) {
  std::ostringstream o;
  if (!r.feasible_at_top) {
    o << "infeasible at the top of the search interval (" << fmt(r.min_value) << ")\n";
    return o.str();
  }
  o << "minimum: " << fmt(r.min_value) << " bits (bracket [" << fmt(r.bracket_lo) << ", " << fmt(r.bracket_hi) << "])\n";
  for (const auto& p : r.trace)
    o << "  probe " << fmt(p.value) << ": " << to_string(p.verdict)
      << (p.failing_edge.empty() ? "" : " at edge " + p.failing_edge) << "\n";
  return o.str();
}

std::string render_text(const std::vector<Relation>& rs) {
  std::ostringstream o;
  for (const auto& r : rs) o << (r.passed ? "pass  " : "FAIL  ") << r.name << (r.detail.empty() ? "" : "  [" + r.detail + "]") << "\n";
  return o.str();
}

}  // namespace ucnet
