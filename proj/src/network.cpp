#include "ucnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <set>

#include "ucnet/error.hpp"

namespace ucnet {

Units to_units(double bits) {
  if (!std::isfinite(bits)) throw Error(ErrorCode::InvalidNetwork, "capacity must be finite");
  return static_cast<Units>(std::llround(bits / kBitsPerUnit));
}

const char* var_name(unsigned v) {
  switch (v) {
    case kX: return "X";
    case kY: return "Y";
    case kXY: return "XY";
    default: return "-";
  }
}

unsigned parse_var(const std::string& s) {
  if (s == "X") return kX;
  if (s == "Y") return kY;
  if (s == "XY" || s == "YX") return kXY;
  throw Error(ErrorCode::InvalidNetwork, "unknown variable '" + s + "'");
}

std::size_t Network::node_index(const std::string& name) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == name) return i;
  throw Error(ErrorCode::InvalidNetwork, "unknown node '" + name + "'");
}

std::size_t Network::edge_index(const std::string& id) const {
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].id == id) return i;
  throw Error(ErrorCode::NoSuchEdge, "no edge '" + id + "'");
}

std::vector<std::string> Network::group_of(const std::string& id) const {
  for (const auto& g : message_groups)
    if (std::find(g.begin(), g.end(), id) != g.end()) return g;
  return {id};
}

unsigned Network::variables_at(const std::string& node) const {
  unsigned v = 0;
  for (const auto& s : sources)
    if (s.node == node) v |= s.variable;
  return v;
}

namespace {

std::vector<std::vector<std::size_t>> adjacency(const Network& net) {
  std::vector<std::vector<std::size_t>> adj(net.nodes.size());
  for (const auto& e : net.edges) adj[net.node_index(e.tail)].push_back(net.node_index(e.head));
  return adj;
}

std::vector<bool> reachable_from(const std::vector<std::vector<std::size_t>>& adj, std::vector<std::size_t> starts) {
  std::vector<bool> seen(adj.size(), false);
  for (auto s : starts) seen[s] = true;
  while (!starts.empty()) {
    const auto u = starts.back();
    starts.pop_back();
    for (auto v : adj[u])
      if (!seen[v]) {
        seen[v] = true;
        starts.push_back(v);
      }
  }
  return seen;
}

// Dinic's algorithm on integer capacities.
class MaxFlow {
 public:
  explicit MaxFlow(std::size_t n) : adj_(n), level_(n), it_(n) {}

  void add_edge(std::size_t u, std::size_t v, Units cap) {
    adj_[u].push_back(arcs_.size());
    arcs_.push_back({v, cap});
    adj_[v].push_back(arcs_.size());
    arcs_.push_back({u, 0});
  }

  Units run(std::size_t s, std::size_t t) {
    Units flow = 0;
    while (bfs(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (Units f = dfs(s, t, std::numeric_limits<Units>::max())) flow += f;
    }
    return flow;
  }

  // Nodes reachable from s in the residual graph.
  std::vector<bool> source_side(std::size_t s) const {
    std::vector<bool> seen(adj_.size(), false);
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (auto a : adj_[u])
        if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
          seen[arcs_[a].to] = true;
          stack.push_back(arcs_[a].to);
        }
    }
    return seen;
  }

 private:
  struct Arc {
    std::size_t to;
    Units cap;
  };

  bool bfs(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const auto u = q.front();
      q.pop();
      for (auto a : adj_[u])
        if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
          level_[arcs_[a].to] = level_[u] + 1;
          q.push(arcs_[a].to);
        }
    }
    return level_[t] >= 0;
  }

  Units dfs(std::size_t u, std::size_t t, Units f) {
    if (u == t) return f;
    for (auto& i = it_[u]; i < adj_[u].size(); ++i) {
      const auto a = adj_[u][i];
      Arc& arc = arcs_[a];
      if (arc.cap <= 0 || level_[arc.to] != level_[u] + 1) continue;
      if (Units d = dfs(arc.to, t, std::min(f, arc.cap))) {
        arc.cap -= d;
        arcs_[a ^ 1].cap += d;
        return d;
      }
    }
    return 0;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
};

Units infinite_capacity(const Network& net) {
  Units total = 1;
  for (const auto& e : net.edges) total += e.capacity;
  return total;
}

std::vector<std::size_t> indices(const Network& net, const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  for (const auto& n : names) out.push_back(net.node_index(n));
  return out;
}

Cut constrained_min_cut(const Network& net, const std::vector<std::string>& from, const std::vector<std::string>& to,
                        const Edge* forced) {
  if (from.empty() || to.empty()) throw Error(ErrorCode::NoSuchCut, "cut terminals must be non-empty");
  auto a = indices(net, from), b = indices(net, to);
  for (auto x : a)
    if (std::find(b.begin(), b.end(), x) != b.end()) throw Error(ErrorCode::NoSuchCut, "terminal sets overlap");
  const std::size_t n = net.nodes.size(), s = n, t = n + 1;
  const Units inf = infinite_capacity(net);
  MaxFlow mf(n + 2);
  for (const auto& e : net.edges) mf.add_edge(net.node_index(e.tail), net.node_index(e.head), e.capacity);
  for (auto x : a) mf.add_edge(s, x, inf);
  for (auto y : b) mf.add_edge(y, t, inf);
  if (forced) {
    const auto u = net.node_index(forced->tail), v = net.node_index(forced->head);
    if (std::find(b.begin(), b.end(), u) != b.end() || std::find(a.begin(), a.end(), v) != a.end())
      throw Error(ErrorCode::NoSuchCut, "edge " + forced->id + " cannot cross from the source side");
    mf.add_edge(s, u, inf);
    mf.add_edge(v, t, inf);
  }
  const Units flow = mf.run(s, t);
  if (flow >= inf) throw Error(ErrorCode::NoSuchCut, "no finite cut separates the terminals");
  auto side = mf.source_side(s);
  side.resize(n);
  Cut c = cut_from_side(net, side);
  if (c.capacity != flow) throw Error(ErrorCode::NoSuchCut, "max-flow / min-cut mismatch");
  return c;
}

}  // namespace

std::optional<std::vector<std::size_t>> topological_order(const Network& net) {
  const std::size_t n = net.nodes.size();
  std::vector<std::size_t> indeg(n, 0);
  auto adj = adjacency(net);
  for (const auto& out : adj)
    for (auto v : out) ++indeg[v];
  std::vector<std::size_t> order, ready;
  for (std::size_t i = n; i-- > 0;)
    if (indeg[i] == 0) ready.push_back(i);
  while (!ready.empty()) {
    const auto u = ready.back();
    ready.pop_back();
    order.push_back(u);
    for (auto v : adj[u])
      if (--indeg[v] == 0) ready.push_back(v);
  }
  if (order.size() != n) return std::nullopt;
  return order;
}

std::optional<Diagnostic> validate(const Network& net) {
  auto fail = [](std::string code, std::string msg) { return Diagnostic{std::move(code), std::move(msg)}; };
  std::set<std::string> names;
  for (const auto& n : net.nodes)
    if (!names.insert(n).second) return fail("DuplicateId", "node '" + n + "' declared twice");
  std::set<std::string> ids;
  for (const auto& e : net.edges) {
    if (!ids.insert(e.id).second) return fail("DuplicateId", "edge '" + e.id + "' declared twice");
    if (!names.count(e.tail) || !names.count(e.head))
      return fail("UnknownNode", "edge '" + e.id + "' references an unknown node");
    if (e.tail == e.head) return fail("CyclicGraph", "edge '" + e.id + "' is a self-loop");
    if (e.capacity < 0) return fail("NegativeCapacity", "edge '" + e.id + "' has negative capacity");
  }
  if (!topological_order(net)) return fail("CyclicGraph", "the graph has a directed cycle");
  if (net.sources.empty()) return fail("NoSource", "no source declared");
  for (const auto& s : net.sources) {
    if (!names.count(s.node)) return fail("UnknownNode", "source at unknown node '" + s.node + "'");
    if (s.variable == kNone || s.variable > kXY) return fail("BadVariable", "source at '" + s.node + "'");
  }
  const auto adj = adjacency(net);
  std::set<std::string> sink_nodes;
  for (const auto& t : net.sinks) {
    if (!names.count(t.node)) return fail("UnknownNode", "sink at unknown node '" + t.node + "'");
    sink_nodes.insert(t.node);
    if (t.imaginary) continue;
    if (t.demand != kX && t.demand != kY) return fail("BadVariable", "sink '" + t.node + "' must demand X or Y");
    std::vector<std::size_t> producers;
    for (const auto& s : net.sources)
      if (s.variable & t.demand) producers.push_back(net.node_index(s.node));
    if (producers.empty())
      return fail("UnproducedDemand", std::string("no source produces ") + var_name(t.demand) + " for '" + t.node + "'");
    if (!reachable_from(adj, producers)[net.node_index(t.node)])
      return fail("UnreachableSink", "sink '" + t.node + "' is unreachable from its sources");
  }
  for (const auto& e : net.edges)
    if (sink_nodes.count(e.tail) && net.variables_at(e.head) != 0 && !sink_nodes.count(e.head))
      return fail("SinkFeedsSource", "edge '" + e.id + "' runs from a sink into a source");
  for (const auto& s : net.secrecy) {
    if (!ids.count(s.edge)) return fail("UnknownEdge", "secrecy on unknown edge '" + s.edge + "'");
    if (s.about != kX && s.about != kY) return fail("BadVariable", "secrecy must be about X or Y");
    if (!(s.leakage_bound >= 0)) return fail("BadLeakage", "leakage bound must be >= 0");
  }
  std::set<std::string> grouped;
  for (const auto& g : net.message_groups) {
    if (g.empty()) return fail("EmptyGroup", "empty message group");
    for (const auto& id : g) {
      if (!ids.count(id)) return fail("UnknownEdge", "message group references unknown edge '" + id + "'");
      if (!grouped.insert(id).second) return fail("OverlappingGroups", "edge '" + id + "' is in two groups");
      if (net.edge(id).capacity != net.edge(g.front()).capacity)
        return fail("GroupCapacityMismatch", "edges '" + g.front() + "' and '" + id + "' differ in capacity");
    }
  }
  return std::nullopt;
}

bool Cut::contains(const std::string& edge_id) const {
  return std::find(edge_ids.begin(), edge_ids.end(), edge_id) != edge_ids.end();
}

std::string Cut::classification() const {
  auto join = [](const std::vector<std::string>& v) {
    if (v.empty()) return std::string("{}");
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
    return s;
  };
  return "cut(" + join(sources_in_a) + "; " + join(sources_in_ac) + "; " + join(sinks_in_ac) + ")";
}

Cut cut_from_side(const Network& net, const std::vector<bool>& in_a) {
  Cut c;
  for (std::size_t i = 0; i < net.nodes.size(); ++i)
    if (in_a[i]) c.a_side.push_back(net.nodes[i]);
  for (const auto& e : net.edges)
    if (in_a[net.node_index(e.tail)] && !in_a[net.node_index(e.head)]) {
      c.edge_ids.push_back(e.id);
      c.capacity += e.capacity;
    }
  std::set<std::string> seen;
  for (const auto& s : net.sources) {
    if (!seen.insert(s.node).second) continue;
    (in_a[net.node_index(s.node)] ? c.sources_in_a : c.sources_in_ac).push_back(s.node);
  }
  seen.clear();
  for (const auto& t : net.sinks)
    if (!in_a[net.node_index(t.node)] && seen.insert(t.node).second) c.sinks_in_ac.push_back(t.node);
  return c;
}

Cut min_cut(const Network& net, const std::vector<std::string>& from, const std::vector<std::string>& to) {
  return constrained_min_cut(net, from, to, nullptr);
}

Cut min_cut_containing_edge(const Network& net, const std::string& edge_id, const std::vector<std::string>& from,
                            const std::vector<std::string>& to) {
  const Edge& e = net.edge(edge_id);
  return constrained_min_cut(net, from, to, &e);
}

Network edge_cut_subgraph(const Network& net, const std::string& edge_id) {
  const Edge& e = net.edge(edge_id);
  const auto adj = adjacency(net);
  std::vector<std::vector<std::size_t>> radj(adj.size());
  for (std::size_t u = 0; u < adj.size(); ++u)
    for (auto v : adj[u]) radj[v].push_back(u);
  std::vector<std::size_t> srcs;
  for (const auto& s : net.sources) srcs.push_back(net.node_index(s.node));
  const auto fwd = reachable_from(adj, srcs);
  const auto back = reachable_from(radj, {net.node_index(e.head)});

  Network sub;
  std::set<std::string> keep;
  for (std::size_t i = 0; i < net.nodes.size(); ++i)
    if (fwd[i] && back[i]) {
      sub.nodes.push_back(net.nodes[i]);
      keep.insert(net.nodes[i]);
    }
  std::set<std::string> kept_edges;
  for (const auto& x : net.edges)
    if (keep.count(x.tail) && keep.count(x.head)) {
      sub.edges.push_back(x);
      kept_edges.insert(x.id);
    }
  for (const auto& s : net.sources)
    if (keep.count(s.node)) sub.sources.push_back(s);
  if (keep.count(e.head)) sub.sinks.push_back({e.head, kNone, true});
  for (const auto& s : net.secrecy)
    if (kept_edges.count(s.edge)) sub.secrecy.push_back(s);
  for (const auto& g : net.message_groups) {
    std::vector<std::string> kg;
    for (const auto& id : g)
      if (kept_edges.count(id)) kg.push_back(id);
    if (!kg.empty()) sub.message_groups.push_back(std::move(kg));
  }
  return sub;
}

std::vector<Cut> enumerate_cuts(const Network& net, const TerminalSpec& spec) {
  const std::size_t n = net.nodes.size();
  if (n > kMaxEnumerationNodes) throw Error(ErrorCode::TooLargeToEnumerate, std::to_string(n) + " nodes");
  std::vector<int> fixed(n, -1);
  for (const auto& a : spec.in_a) fixed[net.node_index(a)] = 1;
  for (const auto& b : spec.in_ac) {
    auto i = net.node_index(b);
    if (fixed[i] == 1) return {};
    fixed[i] = 0;
  }
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < n; ++i)
    if (fixed[i] < 0) free.push_back(i);
  std::vector<Cut> cuts;
  cuts.reserve(std::size_t{1} << free.size());
  std::vector<bool> side(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
    for (std::size_t i = 0; i < n; ++i) side[i] = fixed[i] == 1;
    for (std::size_t k = 0; k < free.size(); ++k) side[free[k]] = (mask >> k) & 1;
    cuts.push_back(cut_from_side(net, side));
  }
  std::stable_sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) { return a.capacity < b.capacity; });
  return cuts;
}

std::vector<std::vector<std::string>> suggested_groups(const Network& net) {
  std::map<std::string, std::vector<const Edge*>> in, out;
  for (const auto& e : net.edges) {
    in[e.head].push_back(&e);
    out[e.tail].push_back(&e);
  }
  std::vector<std::vector<std::string>> groups;
  for (const auto& node : net.nodes) {
    if (net.variables_at(node) != 0) continue;
    bool is_sink = false;
    for (const auto& t : net.sinks) is_sink |= t.node == node;
    if (is_sink || in[node].size() != 1 || out[node].empty()) continue;
    const Edge* e = in[node].front();
    bool equal = true;
    for (const Edge* o : out[node]) equal &= o->capacity == e->capacity;
    if (!equal) continue;
    std::vector<std::string> g{e->id};
    for (const Edge* o : out[node]) g.push_back(o->id);
    // Merge with an overlapping chain.
    bool merged = false;
    for (auto& h : groups)
      if (std::find_first_of(h.begin(), h.end(), g.begin(), g.end()) != h.end()) {
        for (const auto& id : g)
          if (std::find(h.begin(), h.end(), id) == h.end()) h.push_back(id);
        merged = true;
        break;
      }
    if (!merged) groups.push_back(std::move(g));
  }
  return groups;
}

}  // namespace ucnet
