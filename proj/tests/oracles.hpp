#pragma once

// Brute-force references shared by the unit tests and the acceptance runner.
// They only use the library's data types, never its algorithms.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ucnet/common_info.hpp"
#include "ucnet/network.hpp"
#include "ucnet/region.hpp"

namespace oracle {

using namespace ucnet;

inline double h2(double a) { return a <= 0 || a >= 1 ? 0.0 : -a * std::log2(a) - (1 - a) * std::log2(1 - a); }

inline double plain_entropy(const std::vector<double>& v) {
  double h = 0;
  for (double x : v)
    if (x > 0) h -= x * std::log2(x);
  return h;
}

// max H(f(X)) over all pairs f, g with f(X) = g(Y) on the support.
inline double gk_brute_force(const JointDistribution& p) {
  const std::size_t nx = p.nx(), ny = p.ny(), r = std::max(nx, ny);
  std::size_t fx_count = 1, gy_count = 1;
  for (std::size_t i = 0; i < nx; ++i) fx_count *= r;
  for (std::size_t i = 0; i < ny; ++i) gy_count *= r;
  double best = 0;
  std::vector<std::size_t> f(nx), g(ny);
  for (std::size_t a = 0; a < fx_count; ++a) {
    for (std::size_t i = 0, v = a; i < nx; ++i, v /= r) f[i] = v % r;
    for (std::size_t b = 0; b < gy_count; ++b) {
      for (std::size_t j = 0, v = b; j < ny; ++j, v /= r) g[j] = v % r;
      bool ok = true;
      for (std::size_t x = 0; x < nx && ok; ++x)
        for (std::size_t y = 0; y < ny && ok; ++y)
          if (p(x, y) > kSupportThreshold && f[x] != g[y]) ok = false;
      if (!ok) continue;
      std::vector<double> t(r, 0.0);
      for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t y = 0; y < ny; ++y) t[f[x]] += p(x, y);
      best = std::max(best, plain_entropy(t));
    }
  }
  return best;
}

// Alphabets up to 4x4 with about two thirds of the cells zeroed.
inline JointDistribution sparse_random(std::mt19937_64& rng) {
  const std::size_t nx = 1 + rng() % 4, ny = 1 + rng() % 4;
  std::vector<std::vector<double>> rows(nx, std::vector<double>(ny, 0.0));
  double s = 0;
  for (auto& r : rows)
    for (auto& v : r)
      if (rng() % 3 == 0) s += (v = 0.05 + static_cast<double>(rng() % 1000) / 1000.0);
  if (s == 0) s = rows[0][0] = 1.0;
  for (auto& r : rows)
    for (auto& v : r) v /= s;
  return JointDistribution::from_rows(rows);
}

inline JointDistribution dense_random(std::mt19937_64& rng, std::size_t nx, std::size_t ny) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<std::vector<double>> rows(nx, std::vector<double>(ny));
  double s = 0;
  for (auto& r : rows)
    for (auto& v : r) s += (v = u(rng));
  for (auto& r : rows)
    for (auto& v : r) v /= s;
  return JointDistribution::from_rows(rows);
}

// Direction with l1 + l2 + l3 + l4 <= 0.
inline WeightVector random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  WeightVector l{g(rng), g(rng), g(rng), g(rng)};
  const double s = l[0] + l[1] + l[2] + l[3];
  if (s > 0) l[3] -= s + std::abs(g(rng));
  return l;
}

inline Network random_dag(std::mt19937_64& rng, std::size_t nodes) {
  Network n;
  for (std::size_t i = 0; i < nodes; ++i) n.nodes.push_back("v" + std::to_string(i));
  int id = 0;
  for (std::size_t i = 0; i < nodes; ++i)
    for (std::size_t j = i + 1; j < nodes; ++j)
      if (rng() % 3 == 0) n.edges.push_back({std::to_string(id++), n.nodes[i], n.nodes[j], Units(rng() % 5000)});
  if (n.edges.empty()) n.edges.push_back({"0", n.nodes.front(), n.nodes.back(), 7});
  n.sources = {{n.nodes.front(), kXY}};
  return n;
}

// Cheapest bipartition with `from` in A and `to` in A^c, optionally forced to cut `must`.
// Returns -1 when no bipartition qualifies.
inline Units brute_min(const Network& net, const std::vector<std::string>& from, const std::vector<std::string>& to,
                       const std::string* must) {
  const std::size_t n = net.nodes.size();
  Units best = -1;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    auto in_a = [&](const std::string& v) {
      const auto i = std::find(net.nodes.begin(), net.nodes.end(), v) - net.nodes.begin();
      return ((mask >> i) & 1) != 0;
    };
    bool ok = true;
    for (const auto& f : from) ok &= in_a(f);
    for (const auto& t : to) ok &= !in_a(t);
    if (!ok) continue;
    Units cap = 0;
    bool hit = must == nullptr;
    for (const auto& e : net.edges)
      if (in_a(e.tail) && !in_a(e.head)) {
        cap += e.capacity;
        if (must && e.id == *must) hit = true;
      }
    if (!hit) continue;
    if (best < 0 || cap < best) best = cap;
  }
  return best;
}

// Nodes on some directed source-to-target path, by explicit path enumeration.
inline std::set<std::string> path_nodes(const Network& net, const std::string& target) {
  std::set<std::string> out;
  std::vector<std::string> path;
  std::function<void(const std::string&)> dfs = [&](const std::string& u) {
    path.push_back(u);
    if (u == target) out.insert(path.begin(), path.end());
    for (const auto& e : net.edges)
      if (e.tail == u) dfs(e.head);
    path.pop_back();
  };
  for (const auto& s : net.sources) dfs(s.node);
  return out;
}

}  // namespace oracle
