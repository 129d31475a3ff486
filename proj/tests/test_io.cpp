#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "ucnet/error.hpp"
#include "ucnet/io.hpp"

using namespace ucnet;

namespace {

const std::string data = UCNET_DATA_DIR;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error");
  return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("distribution files") {
  auto p = load_distribution(data + "/dsbs_0.1.json");
  CHECK(p.nx() == 2);
  CHECK(p(0, 1) == doctest::Approx(0.05));
  auto back = distribution_from_json(to_json(p));
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) CHECK(back(x, y) == p(x, y));
  CHECK(code_of([&] { load_distribution(data + "/bad_rowsum.json"); }) == ErrorCode::NotADistribution);
  CHECK(code_of([&] { load_distribution(data + "/missing.json"); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { distribution_from_json(Json::parse(R"({"pmf": 3})")); }) == ErrorCode::ParseError);
}

TEST_CASE("network files with expression capacities") {
  auto p = load_distribution(data + "/dsbs_0.1.json");
  auto m = measures(p);
  auto net = load_network(data + "/gray_wyner.json", p);
  CHECK(net.capacity("1") == doctest::Approx(m.h_x_given_y).epsilon(1e-8));
  CHECK(net.message_groups.size() == 1);
  auto again = network_from_json(to_json(net), m);
  CHECK(again.nodes == net.nodes);
  REQUIRE(again.edges.size() == net.edges.size());
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    CHECK(again.edges[i].id == net.edges[i].id);
    CHECK(again.edges[i].capacity == net.edges[i].capacity);
  }
  CHECK(again.message_groups == net.message_groups);
  CHECK(code_of([&] {
          network_from_json(Json::parse(R"({"nodes":["a"],"edges":[{"id":"1","tail":"a","head":"a","capacity":"Hq"}]})"), m);
        }) == ErrorCode::ParseError);
}

TEST_CASE("reports serialize") {
  auto p = load_distribution(data + "/dsbs_0.1.json");
  auto net = load_network(data + "/gray_wyner.json", p);
  auto r = network_converse(net, p);
  auto j = to_json(r);
  CHECK(j["verdict"] == to_string(r.verdict));
  CHECK(j["edges"].size() == r.edges.size());
  CHECK(to_json(r).dump() == j.dump());
  CHECK_FALSE(render_text(r).empty());
}
