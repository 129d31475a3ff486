#pragma once

// Capacitated DAGs with source placements, sink demands, secrecy constraints
// and message groups, plus the cut machinery used by the converse engine.
// Capacities are exact integers in units of 1e-9 bits.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ucnet {

using Units = std::int64_t;
inline constexpr double kBitsPerUnit = 1e-9;

Units to_units(double bits);
inline double to_bits(Units u) { return static_cast<double>(u) * kBitsPerUnit; }

/// Variable sets as bitmasks: X = 1, Y = 2, XY = 3.
enum VarSet : unsigned { kNone = 0, kX = 1, kY = 2, kXY = 3 };
const char* var_name(unsigned v);
unsigned parse_var(const std::string& s);  // "X", "Y", "XY"

struct Edge {
  std::string id;
  std::string tail;
  std::string head;
  Units capacity = 0;
};

struct Source {
  std::string node;
  unsigned variable = kXY;
};

struct Sink {
  std::string node;
  unsigned demand = kX;   // kNone for imaginary sinks
  bool imaginary = false;
};

struct Secrecy {
  std::string edge;
  unsigned about = kX;
  double leakage_bound = 0;
};

struct Network {
  std::vector<std::string> nodes;
  std::vector<Edge> edges;
  std::vector<Source> sources;
  std::vector<Sink> sinks;
  std::vector<Secrecy> secrecy;
  std::vector<std::vector<std::string>> message_groups;

  std::size_t node_index(const std::string& name) const;  // throws InvalidNetwork
  std::size_t edge_index(const std::string& id) const;    // throws NoSuchEdge
  const Edge& edge(const std::string& id) const { return edges[edge_index(id)]; }
  double capacity(const std::string& id) const { return to_bits(edge(id).capacity); }
  void set_capacity(const std::string& id, double bits) { edges[edge_index(id)].capacity = to_units(bits); }
  /// Declared group containing the edge, or just {id}.
  std::vector<std::string> group_of(const std::string& id) const;
  /// Source-side variables at a node (bitmask).
  unsigned variables_at(const std::string& node) const;
};

struct Diagnostic {
  std::string code;  // CyclicGraph, GroupCapacityMismatch, ...
  std::string message;
};

/// First violated invariant, or nullopt when the network is valid.
std::optional<Diagnostic> validate(const Network& net);

/// Topological order of node indices; nullopt when cyclic.
std::optional<std::vector<std::size_t>> topological_order(const Network& net);

struct Cut {
  std::vector<std::string> edge_ids;
  std::vector<std::string> a_side;
  Units capacity = 0;
  std::vector<std::string> sources_in_a;
  std::vector<std::string> sources_in_ac;
  std::vector<std::string> sinks_in_ac;

  double capacity_bits() const { return to_bits(capacity); }
  bool contains(const std::string& edge_id) const;
  /// "cut(s1; s2; t1, t2)" in the appendix notation.
  std::string classification() const;
};

/// Builds the cut induced by a node bipartition (mask bit i = node i in A).
Cut cut_from_side(const Network& net, const std::vector<bool>& in_a);

Cut min_cut(const Network& net, const std::vector<std::string>& from, const std::vector<std::string>& to);
Cut min_cut_containing_edge(const Network& net, const std::string& edge_id, const std::vector<std::string>& from,
                            const std::vector<std::string>& to);

/// Nodes on directed paths from any source to head(e), with head(e) as an imaginary sink.
Network edge_cut_subgraph(const Network& net, const std::string& edge_id);

struct TerminalSpec {
  std::vector<std::string> in_a;   // forced to the source side
  std::vector<std::string> in_ac;  // forced to the sink side
};

inline constexpr std::size_t kMaxEnumerationNodes = 22;

/// Every bipartition honoring the placement, sorted by capacity (stable).
std::vector<Cut> enumerate_cuts(const Network& net, const TerminalSpec& spec);

/// Relay nodes with one in-edge whose out-edges all share its capacity.
std::vector<std::vector<std::string>> suggested_groups(const Network& net);

}  // namespace ucnet
