#pragma once

// Built-in example networks with symbolic capacities and checkable
// expected relations: the co-located butterfly (with and without a
// secrecy constraint), the Gray-Wyner network and a two-source network.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ucnet/converse.hpp"
#include "ucnet/expr.hpp"
#include "ucnet/info.hpp"
#include "ucnet/network.hpp"

namespace ucnet {

struct Relation {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Scenario {
  std::string name;
  std::string description;
  Network topology;  // capacities left at zero; see `capacities`
  std::vector<std::pair<std::string, AffineExpr>> capacities;
  std::vector<std::string> notes;
  std::vector<std::pair<std::string, JointDistribution>> distributions;
};

const std::vector<std::string>& scenario_names();

/// Throws UnknownScenario.
Scenario scenario(const std::string& name);

/// Evaluates the symbolic capacities under p, then applies overrides (bits).
Network instantiate(const Scenario& s, const JointDistribution& p,
                    const std::map<std::string, double>& overrides = {});

/// Sets C_e for e and its message group.
void set_group_capacity(Network& net, const std::string& edge, double bits);

/// Runs the scenario's expected relations.
std::vector<Relation> run_relations(const std::string& name, const ConverseOptions& opts = {});

/// Auxiliary channels certifying the two-source converse point without edge-cuts.
std::map<std::string, AuxiliaryChannel> two_source_certificate(const JointDistribution& p);

}  // namespace ucnet
