#pragma once

// JSON file formats and report rendering (JSON and plain text).

#include <string>
#include <vector>

#include <json.hpp>

#include "ucnet/converse.hpp"
#include "ucnet/info.hpp"
#include "ucnet/network.hpp"
#include "ucnet/region.hpp"
#include "ucnet/scenarios.hpp"

namespace ucnet {

using Json = nlohmann::ordered_json;

/// {"x_alphabet": [...], "y_alphabet": [...], "pmf": [[...], ...]}
JointDistribution distribution_from_json(const Json& j);
JointDistribution load_distribution(const std::string& path);
Json to_json(const JointDistribution& p);

/// Capacities may be numbers (bits) or expressions such as "Hx|y" evaluated under m.
Network network_from_json(const Json& j, const MeasureSet& m);
Network load_network(const std::string& path, const JointDistribution& p);
Json to_json(const Network& net);

Json read_json_file(const std::string& path);  // ParseError

Json to_json(const MeasureSet& m);
Json to_json(const AuxiliaryChannel& ch);
Json to_json(const FamilySpec& s);
Json to_json(const UncertaintyVector& u);
Json to_json(const SupportValue& s);
Json to_json(const MembershipResult& r);
Json to_json(const Cut& c);
Json to_json(const CutsetReport& r);
Json to_json(const LinearConstraint& c);
Json to_json(const FeasibilityReport& r);
Json to_json(const NetworkReport& r);
Json to_json(const SingleLetterView& v);
Json to_json(const MinCapResult& r);
Json to_json(const std::vector<Relation>& rs);

std::string render_text(const CutsetReport& r);
std::string render_text(const NetworkReport& r);
std::string render_text(const MinCapResult& r);
std::string render_text(const std::vector<Relation>& rs);

}  // namespace ucnet
