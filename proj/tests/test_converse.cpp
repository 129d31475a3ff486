#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "ucnet/converse.hpp"
#include "ucnet/error.hpp"
#include "ucnet/scenarios.hpp"

using namespace ucnet;

namespace {

std::set<std::string> exprs(const EdgeConverse& ec) {
  std::set<std::string> out;
  for (const auto& c : ec.constraints) out.insert(c.expr());
  return out;
}

double entropy_of(const MeasureSet& m, unsigned v) {
  return v == kX ? m.h_x : v == kY ? m.h_y : v == kXY ? m.h_xy : 0.0;
}

// Cut-set check by direct bipartition enumeration.
bool cutset_oracle(const Network& net, const MeasureSet& m) {
  const std::size_t n = net.nodes.size();
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    auto in_a = [&](const std::string& v) {
      const auto i = std::find(net.nodes.begin(), net.nodes.end(), v) - net.nodes.begin();
      return ((mask >> i) & 1) != 0;
    };
    unsigned w = 0, d = 0;
    for (const auto& s : net.sources)
      if (!in_a(s.node)) w |= s.variable;
    for (const auto& t : net.sinks)
      if (!in_a(t.node) && !t.imaginary) d |= t.demand;
    double avail = 0;
    for (const auto& e : net.edges)
      if (in_a(e.tail) && !in_a(e.head)) avail += to_bits(e.capacity);
    if (avail < entropy_of(m, d | w) - entropy_of(m, w) - 1e-9) return false;
  }
  return true;
}

double slack(const LinearConstraint& c, const UncertaintyVector& u, const Network& net, const MeasureSet& m) {
  const auto a = u.array();
  double lhs = 0;
  for (int i = 0; i < 4; ++i) lhs += c.coef[i] * a[i];
  double rhs = c.rhs.measure_value(m);
  for (const auto& [id, k] : c.rhs.caps) rhs += k * net.capacity(id);
  switch (c.sense) {
    case Sense::LE: return rhs - lhs;
    case Sense::GE: return lhs - rhs;
    case Sense::EQ: return -std::abs(lhs - rhs);
  }
  return 0;
}

}  // namespace

TEST_CASE("gray-wyner edge 3 constraints") {
  auto p = dsbs(0.1);
  auto net = instantiate(scenario("gray-wyner"), p);
  auto ec = assemble_edge_converse(net, p, "3");
  CHECK(ec.group == std::vector<std::string>{"3", "4", "5"});
  CHECK(ec.u4_zero);
  auto e = exprs(ec);
  for (const char* want : {"u1 >= 0", "u1 <= C3", "u4 = 0", "-u1 + u2 <= C1 - H(X)", "-u1 + u3 <= C2 - H(Y)",
                           "-u1 + u4 <= C1 + C2 - H(X,Y)"}) {
    CAPTURE(want);
    CHECK(e.count(want) == 1);
  }
  for (const auto& c : ec.constraints) CHECK_FALSE(c.provenance.empty());
  auto it = std::find_if(ec.constraints.begin(), ec.constraints.end(),
                         [](const LinearConstraint& c) { return c.expr() == "-u1 + u2 <= C1 - H(X)"; });
  CHECK(it->provenance == "because {1, 3} is cut(s; {}; t1)");
  CHECK(e.size() == ec.constraints.size());
}

TEST_CASE("secrecy and edge-cut rows") {
  auto p = dsbs(0.1);
  auto sec = instantiate(scenario("butterfly-secrecy"), p);
  auto ec = assemble_edge_converse(sec, p, "6");
  CHECK_FALSE(ec.u4_zero);
  CHECK(exprs(ec).count("u1 - u2 <= 0") == 1);
  CHECK(exprs(ec).count("u4 = 0") == 0);

  auto ts = instantiate(scenario("two-source"), p);
  CHECK(exprs(assemble_edge_converse(ts, p, "6")).count("u3 - u4 <= C2") == 0);
  ConverseOptions o;
  o.use_edge_cuts = true;
  auto with = assemble_edge_converse(ts, p, "6", o);
  CHECK(with.edge_cuts);
  CHECK(exprs(with).count("u3 - u4 <= C2") == 1);
}

TEST_CASE("edges without a separating cut") {
  Network n;
  n.nodes = {"s", "t", "d"};
  n.edges = {{"1", "s", "t", to_units(2)}, {"2", "t", "d", to_units(1)}};
  n.sources = {{"s", kXY}};
  n.sinks = {{"t", kX}};
  auto p = dsbs(0.1);
  try {
    (void)assemble_edge_converse(n, p, "2");
    FAIL("expected NoCutFound");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoCutFound);
  }
  auto r = network_converse(n, p);
  CHECK(r.verdict == Feasibility::Feasible);
  auto it = std::find_if(r.edges.begin(), r.edges.end(), [](const EdgeReport& x) { return x.converse.edge == "2"; });
  REQUIRE(it != r.edges.end());
  CHECK(it->result.no_cut);
  CHECK_THROWS_AS(assemble_edge_converse(n, p, "7"), Error);
}

TEST_CASE("cut-set bound matches bipartition enumeration") {
  auto p = dsbs(0.1);
  auto m = measures(p);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1.2);
  for (const char* name : {"butterfly-gk", "gray-wyner", "two-source"}) {
    auto net = instantiate(scenario(name), p);
    for (int t = 0; t < 40; ++t) {
      for (const auto& e : net.edges) set_group_capacity(net, e.id, u(rng));
      auto r = cutset_bound(net, p);
      CHECK(r.satisfied == cutset_oracle(net, m));
      CHECK(r.satisfied == r.violations.empty());
      for (const auto& v : r.violations) CHECK(v.available < v.required);
    }
  }
  auto gw = instantiate(scenario("gray-wyner"), p);
  auto r = cutset_bound(gw, p);
  CHECK(r.satisfied);
  CHECK_FALSE(r.binding.empty());
}

TEST_CASE("feasible witnesses satisfy every constraint") {
  auto p = dsbs(0.1);
  auto m = measures(p);
  auto net = instantiate(scenario("gray-wyner"), p);
  for (const char* e : {"1", "2", "3"}) set_group_capacity(net, e, m.h_xy);
  auto ec = assemble_edge_converse(net, p, "3");
  auto r = edge_feasible(p, ec, net);
  REQUIRE(r.verdict == Feasibility::Feasible);
  for (const auto& c : ec.constraints) {
    CAPTURE(c.expr());
    CHECK(slack(c, r.witness, net, m) >= -1e-6);
  }
  CHECK(membership(p, r.witness).verdict != Verdict::Outside);
  double w = 0;
  for (const auto& [k, s] : r.combination) w += k;
  CHECK(w == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("infeasible reports carry a separator") {
  auto p = dsbs(0.1);
  auto net = instantiate(scenario("gray-wyner"), p);
  auto r = network_converse(net, p);
  REQUIRE(r.verdict == Feasibility::Infeasible);
  CHECK(r.failing_edge == "3");
  const auto& fr = std::find_if(r.edges.begin(), r.edges.end(), [](const EdgeReport& x) {
                     return x.result.verdict == Feasibility::Infeasible;
                   })->result;
  CHECK(fr.margin > 0);
  CHECK_FALSE(fr.orthant.empty());
  CHECK(fr.sweep.size() >= 8);
  CHECK(r.cutset.satisfied);
}

TEST_CASE("raising capacities never creates infeasibility") {
  auto p = dsbs(0.1);
  auto m = measures(p);
  auto net = instantiate(scenario("butterfly-gk"), p);
  REQUIRE(network_converse(net, p).verdict == Feasibility::Infeasible);
  set_group_capacity(net, "4", m.h_x);
  set_group_capacity(net, "5", m.h_y);
  CHECK(network_converse(net, p).verdict == Feasibility::Feasible);
}

TEST_CASE("single-letter view") {
  auto p = dsbs(0.1);
  auto m = measures(p);
  auto net = instantiate(scenario("gray-wyner"), p);
  auto v = single_letter_view(assemble_edge_converse(net, p, "3"));
  CHECK(v.c_zero);
  std::set<std::string> texts;
  for (const auto& c : v.constraints) texts.insert(c.text);
  CHECK(texts.count("I(E;X,Y) <= C3") == 1);
  CHECK(texts.count("H(X|E) <= C1") == 1);
  CHECK(texts.count("H(Y|E) <= C2") == 1);

  std::map<std::string, double> caps{{"1", m.h_x}, {"2", m.h_y}, {"3", 0}, {"4", 0}, {"5", 0}};
  CHECK(v.violation(p, AuxiliaryChannel::constant(2, 2), caps) <= 1e-9);
  CHECK(v.violation(p, AuxiliaryChannel::reveal_both(2, 2), caps) == doctest::Approx(m.h_xy).epsilon(1e-6));
}

TEST_CASE("capacity minimization errors and cut-set mode") {
  auto p = dsbs(0.1);
  auto m = measures(p);
  auto net = instantiate(scenario("gray-wyner"), p);
  std::vector<AffineExpr> ties{parse_tie("C1+C2+C3=Hxy")};
  MinimizeOptions o;
  o.mode = MinimizeOptions::Mode::Cutset;
  auto r = minimize_capacity(net, p, "3", ties, o);
  CHECK(r.min_value == doctest::Approx(m.i_xy).epsilon(1e-6));

  try {
    (void)minimize_capacity(net, p, "3", {parse_tie("C1+C2=-1")}, o);
    FAIL("expected InconsistentTies");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InconsistentTies);
  }
  CHECK_THROWS_AS(minimize_capacity(net, p, "99", ties, o), Error);
}

TEST_CASE("scenario catalogue") {
  CHECK(scenario_names().size() == 4);
  try {
    (void)scenario("nope");
    FAIL("expected UnknownScenario");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownScenario);
  }
  auto p = dsbs(0.1);
  auto m = measures(p);
  auto net = instantiate(scenario("gray-wyner"), p, {{"1", 0.25}});
  CHECK(net.capacity("1") == doctest::Approx(0.25));
  CHECK(net.capacity("2") == doctest::Approx(m.h_y_given_x));
  set_group_capacity(net, "4", 0.7);
  for (const char* e : {"3", "4", "5"}) CHECK(net.capacity(e) == doctest::Approx(0.7));
}

TEST_CASE("built-in relations hold") {
  for (const auto& name : scenario_names()) {
    for (const auto& r : run_relations(name)) {
      CAPTURE(name);
      CAPTURE(r.name);
      CAPTURE(r.detail);
      CHECK(r.passed);
    }
  }
}
