#include "ucnet/scenarios.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "ucnet/common_info.hpp"
#include "ucnet/error.hpp"

namespace ucnet {

namespace {

std::string fmt(const char* f, double a, double b = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

Network butterfly_topology() {
  Network n;
  n.nodes = {"s", "a", "b", "m", "w", "t1", "t2"};
  n.edges = {{"1", "s", "a", 0}, {"9", "s", "b", 0}, {"2", "a", "m", 0}, {"3", "b", "m", 0}, {"4", "a", "t1", 0},
             {"5", "b", "t2", 0}, {"6", "m", "w", 0}, {"7", "w", "t1", 0}, {"8", "w", "t2", 0}};
  n.sources = {{"s", kXY}};
  n.sinks = {{"t1", kX, false}, {"t2", kY, false}};
  n.message_groups = {{"6", "7", "8"}};
  return n;
}

void put(Scenario& s, const std::vector<std::string>& ids, const std::string& expr) {
  for (const auto& id : ids) s.capacities.emplace_back(id, parse_affine(expr));
}

Scenario make_butterfly_gk() {
  Scenario s;
  s.name = "butterfly-gk";
  s.description = "Butterfly with a co-located source XY at s; t1 wants X, t2 wants Y; edges 6, 7, 8 carry one message.";
  s.topology = butterfly_topology();
  put(s, {"1", "9", "2", "3"}, "Hxy");
  put(s, {"4"}, "Hx - 0.2");
  put(s, {"5"}, "Hy - 0.2");
  put(s, {"6", "7", "8"}, "0.2");
  s.notes = {"cut-set tight: C4 + C6 = H(X), C5 + C6 = H(Y)"};
  s.distributions = {{"dsbs(0.1)", dsbs(0.1)}, {"x=y", equal_uniform(2)}};
  return s;
}

Scenario make_butterfly_secrecy() {
  Scenario s;
  s.name = "butterfly-secrecy";
  s.description = "Butterfly where the message on edge 6 must reveal nothing about X (leakage R = 0).";
  s.topology = butterfly_topology();
  s.topology.secrecy = {{"6", kX, 0.0}};
  put(s, {"1", "9", "2", "3"}, "Hxy");
  put(s, {"4"}, "Hx");
  put(s, {"5"}, "Ixy");
  put(s, {"6", "7", "8"}, "Hy|x");
  s.notes = {"a passive eavesdropper sits on node w and observes edge 6"};
  s.distributions = {{"dsbs(0.1)", dsbs(0.1)}};
  return s;
}

Scenario make_gray_wyner() {
  Scenario s;
  s.name = "gray-wyner";
  s.description = "Gray-Wyner network: private edges 1 (to t1), 2 (to t2) and a shared relay through w with C3 = C4 = C5.";
  Network& n = s.topology;
  n.nodes = {"s", "w", "t1", "t2"};
  n.edges = {{"1", "s", "t1", 0}, {"2", "s", "t2", 0}, {"3", "s", "w", 0}, {"4", "w", "t1", 0}, {"5", "w", "t2", 0}};
  n.sources = {{"s", kXY}};
  n.sinks = {{"t1", kX, false}, {"t2", kY, false}};
  n.message_groups = {{"3", "4", "5"}};
  put(s, {"1"}, "Hx|y");
  put(s, {"2"}, "Hy|x");
  put(s, {"3", "4", "5"}, "Ixy");
  s.notes = {"capacities sit on the cut-set corner C1 = H(X|Y), C2 = H(Y|X), C3 = I(X;Y)"};
  s.distributions = {{"dsbs(0.1)", dsbs(0.1)}, {"x=y", equal_uniform(2)}};
  return s;
}

Scenario make_two_source() {
  Scenario s;
  s.name = "two-source";
  s.description = "Separate sources X at s1 and Y at s2 feeding a shared relay m -> w; edges 6, 7, 8 carry one message.";
  Network& n = s.topology;
  n.nodes = {"s1", "s2", "m", "w", "t1", "t2"};
  n.edges = {{"2", "s1", "m", 0}, {"3", "s2", "m", 0}, {"4", "s1", "t1", 0}, {"5", "s2", "t2", 0},
             {"6", "m", "w", 0},  {"7", "w", "t1", 0}, {"8", "w", "t2", 0}};
  n.sources = {{"s1", kX}, {"s2", kY}};
  n.sinks = {{"t1", kX, false}, {"t2", kY, false}};
  n.message_groups = {{"6", "7", "8"}};
  put(s, {"2"}, "0");
  put(s, {"3"}, "Hy");
  put(s, {"4"}, "Hx|y");
  put(s, {"5"}, "Hxy");
  put(s, {"6", "7", "8"}, "Ixy");
  s.notes = {"default capacities are the point the cut-only converse cannot exclude"};
  s.distributions = {{"dsbs(0.1)", dsbs(0.1)}};
  return s;
}

// ---- relations ----

bool infeasible_at(const NetworkReport& r, const std::string& edge) {
  return r.verdict == Feasibility::Infeasible && r.failing_edge == edge;
}

std::map<std::string, double> capacity_map(const Network& net) {
  std::map<std::string, double> m;
  for (const auto& e : net.edges) m[e.id] = to_bits(e.capacity);
  return m;
}

// Agreement of a single-letter view with an explicit reference predicate on random channels/capacities.
Relation view_matches(const std::string& name, const JointDistribution& p, const SingleLetterView& view,
                      const std::function<double(const ChannelFunctionals&, const std::map<std::string, double>&)>& ref,
                      const std::function<std::map<std::string, double>(std::mt19937_64&)>& draw_caps) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u01(0, 1);
  int checked = 0, mismatches = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t ne = 2 + trial % 3;
    std::vector<double> k(p.cells() * ne);
    for (std::size_t c = 0; c < p.cells(); ++c) {
      double sum = 0;
      for (std::size_t e = 0; e < ne; ++e) sum += k[c * ne + e] = -std::log(u01(rng) + 1e-300);
      for (std::size_t e = 0; e < ne; ++e) k[c * ne + e] /= sum;
    }
    const AuxiliaryChannel ch(p.nx(), p.ny(), ne, k);
    const auto caps = draw_caps(rng);
    const double r = ref(channel_functionals(p, ch), caps);  // > 0 satisfied, < 0 violated
    if (std::abs(r) < 1e-6) continue;
    ++checked;
    const bool ours = view.violation(p, ch, caps) <= 1e-9;
    mismatches += ours != (r > 0);
  }
  return {name, mismatches == 0 && checked > 100,
          std::to_string(checked) + " random channel/capacity draws, " + std::to_string(mismatches) + " disagreements"};
}

std::vector<Relation> butterfly_gk_relations(const ConverseOptions& opts) {
  std::vector<Relation> out;
  const Scenario s = make_butterfly_gk();
  const JointDistribution p = dsbs(0.1);
  const Network tight = instantiate(s, p);
  const auto cs = cutset_bound(tight, p);
  out.push_back({"cut-set bound is satisfied on the tight DSBS(0.1) instance", cs.satisfied, ""});
  const auto r = network_converse(tight, p, opts);
  out.push_back({"DSBS(0.1), C4 + C6 = H(X), C5 + C6 = H(Y), C6 = 0.2: Infeasible at edge 6", infeasible_at(r, "6"),
                 std::string("verdict ") + to_string(r.verdict) + (r.failing_edge.empty() ? "" : " at edge " + r.failing_edge)});
  const JointDistribution q = equal_uniform(2);
  Network eq = instantiate(s, q, {{"4", 0.0}, {"5", 0.0}});
  set_group_capacity(eq, "6", 1.0);
  const auto r2 = network_converse(eq, q, opts);
  out.push_back({"X = Y uniform, C6 = 1, C4 = C5 = 0: not Infeasible", r2.verdict != Feasibility::Infeasible,
                 std::string("verdict ") + to_string(r2.verdict)});
  return out;
}

std::vector<Relation> butterfly_secrecy_relations(const ConverseOptions& opts) {
  std::vector<Relation> out;
  const Scenario s = make_butterfly_secrecy();
  const JointDistribution p = dsbs(0.1);
  const MeasureSet m = measures(p);
  const Network base = instantiate(s, p);
  {
    const auto ec = assemble_edge_converse(base, p, "6", opts);
    bool has = false;
    for (const auto& c : ec.constraints) has |= c.expr() == "u1 - u2 <= 0";
    out.push_back({"edge 6 carries the secrecy constraint u2 >= u1", has, ""});
  }
  const auto r0 = network_converse(base, p, opts);
  out.push_back({"boundary C4 = H(X), C6 = H(Y|X), C5 = I(X;Y): not Infeasible", r0.verdict != Feasibility::Infeasible,
                 std::string("verdict ") + to_string(r0.verdict)});
  for (double d : {1.5e-3, 0.05, 0.3}) {
    Network n = instantiate(s, p, {{"4", m.h_x - d}});
    const auto r = network_converse(n, p, opts);
    out.push_back({fmt("C4 = H(X) - %g: Infeasible", d), r.verdict == Feasibility::Infeasible,
                   std::string("verdict ") + to_string(r.verdict) + " at edge " + r.failing_edge});
  }
  for (double d : {1.5e-3, 0.05, 0.2}) {
    Network n = instantiate(s, p, {{"5", m.h_y - m.h_y_given_x - d}});
    set_group_capacity(n, "6", m.h_y_given_x + d);
    const auto r = network_converse(n, p, opts);
    out.push_back({fmt("C6 = H(Y|X) + %g, C5 + C6 = H(Y): Infeasible", d), r.verdict == Feasibility::Infeasible,
                   std::string("verdict ") + to_string(r.verdict) + " at edge " + r.failing_edge});
  }
  for (double d : {1.5e-3, 0.05, 0.2}) {
    // Same tie, driven from C5.
    Network n = instantiate(s, p, {{"5", m.i_xy - d}});
    set_group_capacity(n, "6", m.h_y - (m.i_xy - d));
    const auto r = network_converse(n, p, opts);
    out.push_back({fmt("C5 = I(X;Y) - %g, C5 + C6 = H(Y): Infeasible", d), r.verdict == Feasibility::Infeasible,
                   std::string("verdict ") + to_string(r.verdict) + " at edge " + r.failing_edge});
  }
  return out;
}

std::vector<Relation> gray_wyner_relations(const ConverseOptions& opts) {
  std::vector<Relation> out;
  const Scenario s = make_gray_wyner();
  const JointDistribution p = dsbs(0.1);
  const MeasureSet m = measures(p);
  const Network net = instantiate(s, p);
  out.push_back({"cut-set bound is satisfied at C1 = H(X|Y), C2 = H(Y|X), C3 = I(X;Y)", cutset_bound(net, p).satisfied, ""});
  const auto r = network_converse(net, p, opts);
  out.push_back({"the converse excludes that corner for DSBS(0.1)", infeasible_at(r, "3"),
                 std::string("verdict ") + to_string(r.verdict)});

  const auto view = single_letter_view(assemble_edge_converse(net, p, "3", opts));
  out.push_back(view_matches(
      "edge 3 single-letter set equals {C3 >= I(E;XY), C1 >= H(X|E), C2 >= H(Y|E)}", p, view,
      [](const ChannelFunctionals& f, const std::map<std::string, double>& c) {
        return std::min({c.at("3") - f.i_e_xy, c.at("1") - f.h_x_given_e, c.at("2") - f.h_y_given_e});
      },
      [&](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> u(0, m.h_xy);
        const double c3 = u(rng);
        return std::map<std::string, double>{{"1", u(rng)}, {"2", u(rng)}, {"3", c3}, {"4", c3}, {"5", c3}};
      }));
  {
    const auto cst = AuxiliaryChannel::constant(p.nx(), p.ny());
    const bool ok = view.violation(p, cst, {{"1", m.h_x}, {"2", m.h_y}, {"3", 0}, {"4", 0}, {"5", 0}}) <= 1e-9 &&
                    view.violation(p, cst, {{"1", m.h_x - 1e-3}, {"2", m.h_y}, {"3", 0}, {"4", 0}, {"5", 0}}) > 1e-6 &&
                    view.violation(p, cst, {{"1", m.h_x}, {"2", m.h_y - 1e-3}, {"3", 0}, {"4", 0}, {"5", 0}}) > 1e-6;
    out.push_back({"constant E reduces the set to C1 >= H(X), C2 >= H(Y), C3 >= 0", ok, ""});
  }

  const double w = wyner(p).value;
  MinimizeOptions mo;
  mo.converse = opts;
  const auto tie = parse_tie("C1+C2+C3=Hxy");
  const auto conv = minimize_capacity(net, p, "3", {tie}, mo);
  out.push_back({"min C3 s.t. C1 + C2 + C3 = H(X,Y) matches Wyner's common information",
                 std::abs(conv.min_value - w) <= 2e-2 && conv.min_value > m.i_xy,
                 fmt("min C3 = %.6f, Wyner = %.6f", conv.min_value, w) + fmt(", I(X;Y) = %.6f", m.i_xy)});
  mo.mode = MinimizeOptions::Mode::Cutset;
  const auto cut = minimize_capacity(net, p, "3", {tie}, mo);
  out.push_back({"the cut-set version of the same minimum is I(X;Y)", std::abs(cut.min_value - m.i_xy) <= 1e-6,
                 fmt("cut-set min C3 = %.9f, I(X;Y) = %.9f", cut.min_value, m.i_xy)});
  return out;
}

std::vector<Relation> two_source_relations(const ConverseOptions& base_opts) {
  std::vector<Relation> out;
  const Scenario s = make_two_source();
  const JointDistribution p = dsbs(0.1);
  const MeasureSet m = measures(p);
  const Network net = instantiate(s, p);
  ConverseOptions with = base_opts, without = base_opts;
  with.use_edge_cuts = true;
  without.use_edge_cuts = false;

  const auto ec = assemble_edge_converse(net, p, "6", with);
  bool has = false;
  for (const auto& c : ec.constraints) has |= c.expr() == "u3 - u4 <= C2";
  out.push_back({"edge 6 with edge-cuts includes u3 - u4 <= C2 from edge-cut {2}", has, ""});

  out.push_back(view_matches(
      "edge 6 edge-cut set equals {C6 >= I(E;XY), C4 >= H(X|E), C5 >= H(Y|E), C2 >= I(E;X|Y)}", p,
      single_letter_view(ec),
      [](const ChannelFunctionals& f, const std::map<std::string, double>& c) {
        return std::min({c.at("6") - f.i_e_xy, c.at("4") - f.h_x_given_e, c.at("5") - f.h_y_given_e,
                         c.at("2") - f.i_e_x_given_y});
      },
      [&](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> u(0, m.h_xy);
        const double c6 = u(rng);
        return std::map<std::string, double>{{"2", u(rng)}, {"3", m.h_y}, {"4", u(rng)}, {"5", m.h_xy},
                                             {"6", c6}, {"7", c6}, {"8", c6}};
      }));

  // Certificate point for the cut-only converse.
  {
    const auto certs = two_source_certificate(p);
    const auto caps = capacity_map(net);
    double worst = 0;
    std::string where;
    for (const auto& [edge, ch] : certs) {
      const auto v = single_letter_view(assemble_edge_converse(net, p, edge, without)).violation(p, ch, caps);
      if (v > worst) {
        worst = v;
        where = edge;
      }
    }
    out.push_back({"the certificate channels satisfy every cut-only single-letter constraint", worst <= 1e-6,
                   fmt("worst violation %.3g", worst) + (where.empty() ? "" : " at edge " + where)});
  }
  const auto r_without = network_converse(net, p, without);
  const auto r_with = network_converse(net, p, with);
  out.push_back({"gap: C6 = I(X;Y) passes the cut-only converse and fails with edge-cuts",
                 r_without.verdict != Feasibility::Infeasible && infeasible_at(r_with, "6"),
                 std::string("cut-only ") + to_string(r_without.verdict) + ", with edge-cuts " + to_string(r_with.verdict)});

  const double w = wyner(p).value;
  const auto tie = parse_tie("C2+C4=Hx|y");
  MinimizeOptions mo;
  mo.converse = with;
  const auto a = minimize_capacity(net, p, "6", {tie}, mo);
  out.push_back({"with edge-cuts, min C6 s.t. C2 + C4 = H(X|Y) matches Wyner's common information",
                 std::abs(a.min_value - w) <= 2e-2, fmt("min C6 = %.6f, Wyner = %.6f", a.min_value, w)});
  mo.converse = without;
  const auto b = minimize_capacity(net, p, "6", {tie}, mo);
  out.push_back({"without edge-cuts, min C6 is at most I(X;Y)", b.min_value <= m.i_xy + mo.tol,
                 fmt("min C6 = %.6f, I(X;Y) = %.6f", b.min_value, m.i_xy)});
  return out;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"butterfly-gk", "butterfly-secrecy", "gray-wyner", "two-source"};
  return names;
}

Scenario scenario(const std::string& name) {
  if (name == "butterfly-gk") return make_butterfly_gk();
  if (name == "butterfly-secrecy") return make_butterfly_secrecy();
  if (name == "gray-wyner") return make_gray_wyner();
  if (name == "two-source") return make_two_source();
  throw Error(ErrorCode::UnknownScenario, "unknown scenario '" + name + "'");
}

Network instantiate(const Scenario& s, const JointDistribution& p, const std::map<std::string, double>& overrides) {
  Network net = s.topology;
  const MeasureSet m = measures(p);
  for (const auto& [id, expr] : s.capacities) net.set_capacity(id, std::max(0.0, expr.measure_value(m)));
  for (const auto& [id, bits] : overrides) net.set_capacity(id, bits);
  return net;
}

void set_group_capacity(Network& net, const std::string& edge, double bits) {
  for (const auto& id : net.group_of(edge)) net.set_capacity(id, bits);
}

std::map<std::string, AuxiliaryChannel> two_source_certificate(const JointDistribution& p) {
  const std::size_t nx = p.nx(), ny = p.ny();
  const MeasureSet m = measures(p);
  std::map<std::string, AuxiliaryChannel> out;
  out.emplace("2", AuxiliaryChannel::constant(nx, ny));
  out.emplace("3", AuxiliaryChannel::reveal_y(nx, ny));
  out.emplace("5", AuxiliaryChannel::reveal_both(nx, ny));
  // E4 = X with probability H(X|Y)/H(X), else a constant: I(E4;X) = H(X|Y), E4 - X - Y.
  {
    const double a = m.h_x > 0 ? m.h_x_given_y / m.h_x : 0;
    const AuxiliaryChannel parts[] = {AuxiliaryChannel::reveal_x(nx, ny), AuxiliaryChannel::constant(nx, ny)};
    const double w[] = {a, 1 - a};
    out.emplace("4", mix_channels(parts, w));
  }
  // E6 ~ p(y|x) given X: a fresh copy of Y produced from X.
  {
    const auto px = p.marginal_x();
    std::vector<double> k(nx * ny * ny, 0.0);
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y)
        for (std::size_t e = 0; e < ny; ++e) k[(x * ny + y) * ny + e] = px[x] > 0 ? p(x, e) / px[x] : 1.0 / static_cast<double>(ny);
    out.emplace("6", AuxiliaryChannel(nx, ny, ny, std::move(k)));
  }
  return out;
}

std::vector<Relation> run_relations(const std::string& name, const ConverseOptions& opts) {
  if (name == "butterfly-gk") return butterfly_gk_relations(opts);
  if (name == "butterfly-secrecy") return butterfly_secrecy_relations(opts);
  if (name == "gray-wyner") return gray_wyner_relations(opts);
  if (name == "two-source") return two_source_relations(opts);
  throw Error(ErrorCode::UnknownScenario, "unknown scenario '" + name + "'");
}

}  // namespace ucnet
