// ucnet: command-line front end.
//
// Exit codes: 0 feasible / inside / satisfied, 1 infeasible / outside / violated,
// 2 unresolved, 3 bad input, 4 a demo relation failed.

#include <algorithm>
#include <cmath>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "ucnet/common_info.hpp"
#include "ucnet/converse.hpp"
#include "ucnet/error.hpp"
#include "ucnet/io.hpp"
#include "ucnet/region.hpp"
#include "ucnet/scenarios.hpp"

using namespace ucnet;

namespace {

struct RunConfig {
  double tol = 1e-4;
  std::size_t restarts = 64;
  std::uint64_t seed = 0;
  std::size_t grid = 64;
  std::string format = "text";

  Json json() const { return {{"tol", tol}, {"restarts", restarts}, {"seed", seed}, {"grid", grid}, {"format", format}}; }
  RegionOptions region() const {
    RegionOptions r;
    r.tol = tol;
    r.restarts = restarts;
    r.seed = seed;
    return r;
  }
  ConverseOptions converse(bool edge_cuts) const {
    ConverseOptions c;
    c.region = region();
    c.grid = grid;
    c.use_edge_cuts = edge_cuts;
    return c;
  }
};

void emit(const RunConfig& cfg, Json body, const std::string& text) {
  if (cfg.format == "json") {
    Json out{{"config", cfg.json()}};
    for (auto& [k, v] : body.items()) out[k] = v;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

int cmd_measures(const RunConfig& cfg, const std::string& dist) {
  const auto p = load_distribution(dist);
  const auto m = measures(p);
  const auto gk = gacs_korner(p);
  WynerOptions wo;
  wo.restarts = cfg.restarts;
  wo.seed = cfg.seed;
  wo.tol = cfg.tol;
  const auto w = wyner(p, wo);
  Json body{{"measures", to_json(m)},
            {"gacs_korner", {{"value", gk.gk_value}, {"component_of_x", gk.component_of_x}, {"component_of_y", gk.component_of_y}}},
            {"wyner", {{"value", w.value}, {"markov_residual", w.markov_residual}, {"lower_bound", w.lower_bound}, {"certificate", to_json(w.certificate)}}}};
  std::string t = "H(X) = " + num(m.h_x) + "\nH(Y) = " + num(m.h_y) + "\nH(X,Y) = " + num(m.h_xy) +
                  "\nH(X|Y) = " + num(m.h_x_given_y) + "\nH(Y|X) = " + num(m.h_y_given_x) + "\nI(X;Y) = " + num(m.i_xy) +
                  "\nGacs-Korner common information = " + num(gk.gk_value) + "\nWyner common information <= " +
                  num(w.value) + " (Markov residual " + std::to_string(w.markov_residual) + ", |E| = " +
                  std::to_string(w.certificate.e_size()) + ")\n";
  emit(cfg, body, t);
  return 0;
}

int cmd_support(const RunConfig& cfg, const std::string& dist, const std::vector<double>& lam) {
  if (lam.size() != 4) throw Error(ErrorCode::DimensionMismatch, "support needs four weights");
  const auto p = load_distribution(dist);
  const auto s = support_function(p, {lam[0], lam[1], lam[2], lam[3]}, cfg.region());
  std::string t = s.infinite ? "support = +inf (weights sum to a positive number); over c = 0 points " +
                                   num(s.c0_value) + "\n"
                             : "support = " + num(s.value) + " (orthant " + s.orthant + ", " +
                                   (s.numerical ? "numerical" : "closed form") + ")\n";
  emit(cfg, {{"support", to_json(s)}}, t);
  return 0;
}

int cmd_check(const RunConfig& cfg, const std::string& dist, const std::vector<double>& u) {
  if (u.size() != 4) throw Error(ErrorCode::DimensionMismatch, "check needs four coordinates");
  const auto p = load_distribution(dist);
  const auto r = membership(p, {u[0], u[1], u[2], u[3]}, cfg.region());
  std::string t = std::string(to_string(r.verdict)) + "\n";
  if (r.verdict == Verdict::Inside)
    for (const auto& [w, s] : r.combination)
      t += "  " + num(w) + " x family " + std::to_string(s.family) + " point, c = " + num(s.c) +
           (s.family == 4 ? ", f = " + num(s.f) : "") + "\n";
  if (r.verdict == Verdict::Outside)
    t += "  separator (" + num(r.separator[0]) + ", " + num(r.separator[1]) + ", " + num(r.separator[2]) + ", " +
         num(r.separator[3]) + "), margin " + num(r.margin) + "\n";
  emit(cfg, {{"membership", to_json(r)}}, t);
  return r.verdict == Verdict::Inside ? 0 : r.verdict == Verdict::Outside ? 1 : 2;
}

int cmd_sample(const RunConfig& cfg, const std::string& dist, int n, std::size_t count, std::size_t k_size) {
  const auto p = load_distribution(dist);
  const auto m = measures(p);
  if (k_size == 0) {
    k_size = 1;
    for (int i = 0; i < n; ++i) k_size *= p.cells();
  }
  const auto samples = sample_region(p, n, count, k_size, cfg.seed);
  double worst_inv = 0;
  for (const auto& u : samples) worst_inv = std::max(worst_inv, sampler_invariant_violation(m, u));
  // Cross-check against the support function on random directions with weights summing to <= 0.
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> g;
  double worst_gap = -INFINITY;
  for (int k = 0; k < 16; ++k) {
    WeightVector lam{g(rng), g(rng), g(rng), g(rng)};
    const double s = lam[0] + lam[1] + lam[2] + lam[3];
    if (s > 0) lam[3] -= s + 0.1;
    const auto sv = support_function(p, lam, cfg.region());
    for (const auto& u : samples)
      worst_gap = std::max(worst_gap, lam[0] * u.u1 + lam[1] * u.u2 + lam[2] * u.u3 + lam[3] * u.u4 - sv.value);
  }
  const bool ok = worst_inv <= 1e-9 && worst_gap <= 1e-6;
  Json vecs = Json::array();
  for (const auto& u : samples) vecs.push_back(to_json(u));
  Json body{{"samples", vecs}, {"max_invariant_violation", worst_inv}, {"max_support_excess", worst_gap}, {"passed", ok}};
  std::string t = std::to_string(samples.size()) + " samples at n = " + std::to_string(n) +
                  "\nmax invariant violation " + std::to_string(worst_inv) + "\nmax excess over the support function " +
                  std::to_string(worst_gap) + "\n" + (ok ? "all samples pass\n" : "FAILED\n");
  emit(cfg, body, t);
  return ok ? 0 : 1;
}

int cmd_network(const RunConfig& cfg, const std::string& net_file, const std::string& dist, const std::string& what,
                bool edge_cuts, const std::string& edge, const std::vector<std::string>& ties, const std::string& mode) {
  const auto p = load_distribution(dist);
  const auto net = load_network(net_file, p);
  if (auto d = validate(net)) throw Error(ErrorCode::InvalidNetwork, d->code + ": " + d->message);
  if (what == "cutset") {
    const auto r = cutset_bound(net, p);
    emit(cfg, {{"cutset", to_json(r)}}, render_text(r));
    return r.satisfied ? 0 : 1;
  }
  if (what == "converse") {
    const auto r = network_converse(net, p, cfg.converse(edge_cuts));
    Json j = to_json(r);
    std::string text = render_text(r);
    // Relays that look like one message but were not declared as a group.
    Json hints = Json::array();
    for (const auto& g : suggested_groups(net)) {
      if (std::find(net.message_groups.begin(), net.message_groups.end(), g) != net.message_groups.end()) continue;
      hints.push_back(g);
      std::string ids;
      for (const auto& id : g) ids += (ids.empty() ? "" : ", ") + id;
      text += "note: edges {" + ids + "} may carry one message; declare a message group to use it\n";
    }
    if (!hints.empty()) j["suggested_groups"] = hints;
    emit(cfg, j, text);
    return r.verdict == Feasibility::Feasible ? 0 : r.verdict == Feasibility::Infeasible ? 1 : 2;
  }
  std::vector<AffineExpr> parsed;
  for (const auto& t : ties) parsed.push_back(parse_tie(t));
  MinimizeOptions mo;
  mo.converse = cfg.converse(edge_cuts);
  if (mode == "cutset") mo.mode = MinimizeOptions::Mode::Cutset;
  const auto r = minimize_capacity(net, p, edge, parsed, mo);
  emit(cfg, {{"min_capacity", to_json(r)}}, render_text(r));
  if (!r.feasible_at_top) return 1;
  return r.bracket_lo < r.bracket_hi - mo.tol - 1e-12 ? 2 : 0;
}

int cmd_demo(const RunConfig& cfg, const std::string& name) {
  const Scenario s = scenario(name);
  const auto rel = run_relations(name, cfg.converse(false));
  bool ok = true;
  for (const auto& r : rel) ok &= r.passed;
  std::string t = s.name + ": " + s.description + "\n";
  for (const auto& n : s.notes) t += "  note: " + n + "\n";
  t += render_text(rel);
  emit(cfg, {{"scenario", s.name}, {"network", to_json(s.topology)}, {"relations", to_json(rel)}, {"passed", ok}}, t);
  return ok ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Converse bounds for correlated sources over capacitated networks"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--tol", cfg.tol, "numerical tolerance in bits")->check(CLI::PositiveNumber);
  app.add_option("--restarts", cfg.restarts, "channel-search restarts")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--grid", cfg.grid, "u1 sweep points")->check(CLI::Range(std::size_t{8}, std::size_t{1} << 20));
  app.add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));

  std::string dist, net_file, edge, mode = "converse", demo_name;
  std::vector<double> values;
  std::vector<std::string> ties;
  bool edge_cuts = false;
  int block = 1;
  std::size_t count = 1000, k_size = 0;

  auto* measures_cmd = app.add_subcommand("measures", "entropies and common information of a distribution");
  measures_cmd->add_option("dist", dist, "distribution file")->required();

  auto* region = app.add_subcommand("region", "uncertainty region queries");
  region->add_option("dist", dist, "distribution file")->required();
  region->require_subcommand(1);
  auto* support = region->add_subcommand("support", "support function at weights l1 l2 l3 l4");
  support->add_option("lambda", values)->expected(4)->required();
  auto* check = region->add_subcommand("check", "membership of u1 u2 u3 u4");
  check->add_option("u", values)->expected(4)->required();
  auto* sample = region->add_subcommand("sample", "sample uncertainty vectors at block length n");
  sample->add_option("n", block)->required()->check(CLI::Range(1, 3));
  sample->add_option("count", count)->required();
  sample->add_option("--k-size", k_size, "alphabet size of K (default |X|^n |Y|^n)");

  auto* network = app.add_subcommand("network", "cut-set and converse analyses of a network");
  network->add_option("net", net_file, "network file")->required();
  network->add_option("dist", dist, "distribution file")->required();
  network->require_subcommand(1);
  auto* cutset = network->add_subcommand("cutset", "classical cut-set bound");
  auto* converse = network->add_subcommand("converse", "per-edge uncertainty-region converse");
  converse->add_flag("--edge-cuts", edge_cuts, "add edge-cut constraints");
  auto* mincap = network->add_subcommand("min-cap", "smallest capacity of an edge passing the converse");
  mincap->add_option("edge", edge)->required();
  mincap->add_option("--tie", ties, "capacity tie such as C1+C2+C3=Hxy");
  mincap->add_flag("--edge-cuts", edge_cuts, "add edge-cut constraints");
  mincap->add_option("--mode", mode, "converse or cutset")->check(CLI::IsMember({"converse", "cutset"}));

  auto* demo = app.add_subcommand("demo", "run a built-in scenario and its expected relations");
  demo->add_option("name", demo_name)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  try {
    if (measures_cmd->parsed()) return cmd_measures(cfg, dist);
    if (support->parsed()) return cmd_support(cfg, dist, values);
    if (check->parsed()) return cmd_check(cfg, dist, values);
    if (sample->parsed()) return cmd_sample(cfg, dist, block, count, k_size);
    if (cutset->parsed()) return cmd_network(cfg, net_file, dist, "cutset", false, "", {}, mode);
    if (converse->parsed()) return cmd_network(cfg, net_file, dist, "converse", edge_cuts, "", {}, mode);
    if (mincap->parsed()) return cmd_network(cfg, net_file, dist, "min-cap", edge_cuts, edge, ties, mode);
    if (demo->parsed()) return cmd_demo(cfg, demo_name);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
