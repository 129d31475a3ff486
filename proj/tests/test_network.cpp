#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "doctest.h"
#include "ucnet/error.hpp"
#include "ucnet/network.hpp"
#include "oracles.hpp"

using namespace ucnet;

namespace {

Network butterfly(double c4, double c5, double c6) {
  Network n;
  n.nodes = {"s", "a", "b", "m", "w", "t1", "t2"};
  auto add = [&](std::string id, std::string t, std::string h, double c) { n.edges.push_back({id, t, h, to_units(c)}); };
  add("1", "s", "a", 2);
  add("9", "s", "b", 2);
  add("2", "a", "m", 1);
  add("3", "b", "m", 1);
  add("4", "a", "t1", c4);
  add("5", "b", "t2", c5);
  add("6", "m", "w", c6);
  add("7", "w", "t1", c6);
  add("8", "w", "t2", c6);
  n.sources = {{"s", kXY}};
  n.sinks = {{"t1", kX}, {"t2", kY}};
  n.message_groups = {{"6", "7", "8"}};
  return n;
}

using oracle::brute_min;
using oracle::path_nodes;
using oracle::random_dag;

}  // namespace

TEST_CASE("validation diagnostics") {
  auto n = butterfly(0.5, 0.5, 0.5);
  CHECK_FALSE(validate(n).has_value());
  auto cyc = n;
  cyc.edges.push_back({"10", "w", "m", 1});
  CHECK(validate(cyc)->code == "CyclicGraph");
  auto grp = n;
  grp.set_capacity("7", 0.3);
  CHECK(validate(grp)->code == "GroupCapacityMismatch");
  auto orphan = n;
  orphan.sinks.push_back({"a", kY});
  CHECK_FALSE(validate(orphan).has_value());
  orphan.sources = {{"s", kX}};
  CHECK(validate(orphan)->code == "UnproducedDemand");
}

TEST_CASE("butterfly min-cuts") {
  auto n = butterfly(0.3, 0.4, 0.2);
  auto c = min_cut(n, {"s"}, {"t1"});
  CHECK(c.capacity == to_units(0.5));
  auto ce = min_cut_containing_edge(n, "6", {"s"}, {"t1"});
  CHECK(ce.contains("6"));
  CHECK(ce.contains("4"));
  CHECK(ce.capacity == to_units(0.5));
  CHECK(ce.classification() == "cut(s; {}; t1)");
  CHECK_THROWS_AS(min_cut_containing_edge(n, "1", {"a"}, {"t1"}), Error);

  Network chain;
  chain.nodes = {"s", "a", "t"};
  chain.edges = {{"e", "s", "a", 3}, {"f", "a", "t", 9}};
  chain.sources = {{"s", kXY}};
  CHECK(min_cut(chain, {"s"}, {"t"}).capacity == 3);
  auto cc = min_cut_containing_edge(chain, "e", {"s"}, {"t"});
  CHECK(cc.edge_ids == std::vector<std::string>{"e"});
}

TEST_CASE("cuts match exhaustive bipartitions on random DAGs") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 200; ++t) {
    auto n = random_dag(rng, 2 + rng() % 9);
    const std::string s = n.nodes.front(), d = n.nodes.back();
    CHECK(min_cut(n, {s}, {d}).capacity == brute_min(n, {s}, {d}, nullptr));
    const auto& e = n.edges[rng() % n.edges.size()];
    const Units want = brute_min(n, {s}, {d}, &e.id);
    if (e.head == s || e.tail == d) {
      CHECK_THROWS_AS(min_cut_containing_edge(n, e.id, {s}, {d}), Error);
    } else {
      auto c = min_cut_containing_edge(n, e.id, {s}, {d});
      CHECK(c.contains(e.id));
      CHECK(c.capacity == want);
      CHECK(min_cut(n, {s}, {d}).capacity <= c.capacity);
    }
    auto sub = edge_cut_subgraph(n, e.id);
    auto expect = path_nodes(n, e.head);
    CHECK(std::set<std::string>(sub.nodes.begin(), sub.nodes.end()) == expect);
    if (std::any_of(sub.edges.begin(), sub.edges.end(), [&](const Edge& x) { return x.id == e.id; })) {
      auto again = edge_cut_subgraph(sub, e.id);
      CHECK(again.nodes == sub.nodes);
      CHECK(again.edges.size() == sub.edges.size());
      CHECK(again.sinks.size() == sub.sinks.size());
    }
  }
}

TEST_CASE("cut enumeration") {
  Network two;
  two.nodes = {"s", "t"};
  two.edges = {{"e", "s", "t", 5}};
  two.sources = {{"s", kXY}};
  CHECK(enumerate_cuts(two, {{"s"}, {"t"}}).size() == 1);

  std::mt19937_64 rng(8);
  auto n = random_dag(rng, 8);
  auto cuts = enumerate_cuts(n, {{n.nodes.front()}, {n.nodes.back()}});
  CHECK(cuts.size() == 64);
  for (std::size_t i = 1; i < cuts.size(); ++i) CHECK(cuts[i - 1].capacity <= cuts[i].capacity);
  auto mc = min_cut(n, {n.nodes.front()}, {n.nodes.back()});
  CHECK(std::any_of(cuts.begin(), cuts.end(), [&](const Cut& c) { return c.edge_ids == mc.edge_ids; }));

  Network big;
  for (int i = 0; i < 23; ++i) big.nodes.push_back(std::to_string(i));
  CHECK_THROWS_AS(enumerate_cuts(big, {}), Error);
}

TEST_CASE("suggested message groups") {
  auto n = butterfly(0.3, 0.4, 0.2);
  auto g = suggested_groups(n);
  REQUIRE(g.size() == 1);
  CHECK(g[0] == std::vector<std::string>{"6", "7", "8"});
}
