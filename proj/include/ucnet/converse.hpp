#pragma once

// Per-edge converse: linear constraints on the uncertainty vector of the
// message on an edge (or message group), one family per cut, and the test
// of whether that polyhedron meets U(p).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ucnet/expr.hpp"
#include "ucnet/network.hpp"
#include "ucnet/region.hpp"

namespace ucnet {

enum class Sense { LE, EQ, GE };
const char* to_string(Sense s);

/// coef . u  (sense)  rhs
struct LinearConstraint {
  Vec4 coef{};
  Sense sense = Sense::LE;
  AffineExpr rhs;
  std::string kind;        // box, cut, secrecy, deterministic, edge-cut
  std::string provenance;  // "because {4, 6} is cut(s; {}; t1)"
  std::string expr() const;
};

struct EdgeConverse {
  std::string edge;  // group representative
  std::vector<std::string> group;
  std::vector<LinearConstraint> constraints;
  bool u4_zero = true;
  bool edge_cuts = false;
};

struct ConverseOptions {
  bool use_edge_cuts = false;
  RegionOptions region;
  std::size_t grid = 64;  // u1 sweep points
};

/// Throws NoCutFound when no cut through the group separates a demand.
EdgeConverse assemble_edge_converse(const Network& net, const JointDistribution& p, const std::string& edge,
                                    const ConverseOptions& opts = {});

struct CutsetEntry {
  Cut cut;
  unsigned demanded = 0;  // D union W
  unsigned known = 0;     // W
  double required = 0;    // H(D u W) - H(W)
  double available = 0;
};

struct CutsetReport {
  bool satisfied = true;
  std::vector<CutsetEntry> violations;
  std::vector<CutsetEntry> binding;  // tightest cut per (D, W) class
};

CutsetReport cutset_bound(const Network& net, const JointDistribution& p);

enum class Feasibility { Feasible, Infeasible, Unresolved };
const char* to_string(Feasibility f);

struct SweepPoint {
  double u1 = 0;
  double margin = 0;  // min over P with this u1 of l.u - S(l)
};

struct FeasibilityReport {
  Feasibility verdict = Feasibility::Unresolved;
  UncertaintyVector witness;
  std::map<std::string, double> free_capacities;  // values chosen for free capacity variables
  std::vector<std::pair<double, FamilySpec>> combination;
  WeightVector separator{};
  double margin = 0;
  std::string orthant;
  bool numerical = false;
  bool empty_polyhedron = false;
  bool no_cut = false;
  std::vector<SweepPoint> sweep;
};

/// Capacity values come from the network unless a free-capacity model is supplied.
FeasibilityReport edge_feasible(const JointDistribution& p, const EdgeConverse& ec, const Network& net,
                                const ConverseOptions& opts = {});

struct EdgeReport {
  EdgeConverse converse;
  FeasibilityReport result;
};

struct NetworkReport {
  Feasibility verdict = Feasibility::Feasible;
  std::string failing_edge;
  std::vector<EdgeReport> edges;
  CutsetReport cutset;
};

NetworkReport network_converse(const Network& net, const JointDistribution& p, const ConverseOptions& opts = {});

/// The converse with u = (c + I(E;XY), c + I(E;Y|X) + g, c + I(E;X|Y) + h, c).
struct SingleLetterConstraint {
  std::array<double, 3> i_coef{};  // on I(E;XY), I(E;Y|X), I(E;X|Y)
  double c_coef = 0, g_coef = 0, h_coef = 0;
  Sense sense = Sense::LE;
  AffineExpr rhs;
  std::string provenance;
  std::string text;
};

struct SingleLetterView {
  std::string edge;
  bool c_zero = false, g_zero = false, h_zero = false;
  std::vector<SingleLetterConstraint> constraints;

  /// Smallest achievable worst-case violation over c, g, h >= 0 (0 when satisfied).
  double violation(const JointDistribution& p, const AuxiliaryChannel& ch,
                   const std::map<std::string, double>& capacities) const;
};

SingleLetterView single_letter_view(const EdgeConverse& ec);

struct MinimizeOptions {
  enum class Mode { Converse, Cutset };
  Mode mode = Mode::Converse;
  ConverseOptions converse;
  double tol = 1e-3;
};

struct Probe {
  double value = 0;
  Feasibility verdict = Feasibility::Unresolved;
  std::string failing_edge;
};

struct MinCapResult {
  double min_value = 0;  // smallest probe found feasible
  double bracket_lo = 0, bracket_hi = 0;
  bool feasible_at_top = true;
  std::vector<Probe> trace;
};

MinCapResult minimize_capacity(const Network& net, const JointDistribution& p, const std::string& target,
                               const std::vector<AffineExpr>& ties, const MinimizeOptions& opts = {});

}  // namespace ucnet
