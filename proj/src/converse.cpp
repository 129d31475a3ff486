#include "ucnet/converse.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ucnet/error.hpp"
#include "ucnet/lp.hpp"

namespace ucnet {

const char* to_string(Sense s) {
  switch (s) {
    case Sense::LE: return "<=";
    case Sense::EQ: return "=";
    case Sense::GE: return ">=";
  }
  return "?";
}

const char* to_string(Feasibility f) {
  switch (f) {
    case Feasibility::Feasible: return "Feasible";
    case Feasibility::Infeasible: return "Infeasible";
    case Feasibility::Unresolved: return "Unresolved";
  }
  return "?";
}

namespace {

std::string join_ids(const std::vector<std::string>& ids) {
  std::string s = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? ", " : "") + ids[i];
  return s + "}";
}

// H(Z) as an affine expression in (Hx, Hy, Hxy).
AffineExpr entropy_of(unsigned z) {
  AffineExpr e;
  if (z == kX) e.hx = 1;
  if (z == kY) e.hy = 1;
  if (z == kXY) e.hxy = 1;
  return e;
}

std::string u_terms(const Vec4& k) {
  std::string s;
  for (int i = 0; i < 4; ++i) {
    const double a = k[static_cast<std::size_t>(i)];
    if (std::abs(a) < 1e-12) continue;
    const std::string name = "u" + std::to_string(i + 1);
    const std::string body = std::abs(std::abs(a) - 1) < 1e-12 ? name : AffineExpr{{}, 0, 0, 0, std::abs(a)}.to_string() + "*" + name;
    if (s.empty())
      s = a < 0 ? "-" + body : body;
    else
      s += (a < 0 ? " - " : " + ") + body;
  }
  return s.empty() ? "0" : s;
}

struct Collector {
  std::vector<LinearConstraint> out;
  std::set<std::string> seen;

  bool add(LinearConstraint c) {
    const std::string key = c.expr();
    if (!seen.insert(key).second) return false;
    out.push_back(std::move(c));
    return true;
  }
};

unsigned vars_outside(const Network& net, const Cut& cut) {
  std::set<std::string> a(cut.a_side.begin(), cut.a_side.end());
  unsigned w = 0;
  for (const auto& s : net.sources)
    if (!a.count(s.node)) w |= s.variable;
  return w;
}

unsigned demands_outside(const Network& net, const Cut& cut) {
  std::set<std::string> a(cut.a_side.begin(), cut.a_side.end());
  unsigned d = 0;
  for (const auto& t : net.sinks)
    if (!t.imaginary && !a.count(t.node)) d |= t.demand;
  return d;
}

std::vector<std::string> source_nodes(const Network& net) {
  std::vector<std::string> v;
  for (const auto& s : net.sources)
    if (std::find(v.begin(), v.end(), s.node) == v.end()) v.push_back(s.node);
  return v;
}

// Cuts with tail(g) in A and head(g) in A^c; min-cut fallback on large graphs.
std::vector<Cut> cuts_through(const Network& net, const Edge& g) {
  if (net.nodes.size() <= kMaxEnumerationNodes) return enumerate_cuts(net, {{g.tail}, {g.head}});
  std::vector<Cut> cuts;
  const auto from = source_nodes(net);
  std::vector<std::string> all;
  for (const auto& t : net.sinks) {
    if (t.imaginary) continue;
    all.push_back(t.node);
    cuts.push_back(min_cut_containing_edge(net, g.id, from, {t.node}));
  }
  if (!all.empty()) cuts.push_back(min_cut_containing_edge(net, g.id, from, all));
  return cuts;
}

// Per-cut rows u_Z - u1 <= Cut - C_g + H(W) - H(Z).
std::size_t add_cut_rows(Collector& col, const Network& net, const Edge& g, const Cut& cut) {
  const unsigned w = vars_outside(net, cut);
  const unsigned dw = demands_outside(net, cut) | w;
  std::size_t added = 0;
  const std::pair<unsigned, int> targets[] = {{kX, 1}, {kY, 2}, {kXY, 3}};
  for (const auto& [z, idx] : targets) {
    if ((z & ~dw) != 0 || (z & ~w) == 0) continue;
    LinearConstraint c;
    c.coef[static_cast<std::size_t>(idx)] = 1;
    c.coef[0] = -1;
    c.sense = Sense::LE;
    for (const auto& id : cut.edge_ids) c.rhs.add_cap(id, 1);
    c.rhs.add_cap(g.id, -1);
    c.rhs += entropy_of(w);
    c.rhs += entropy_of(z) * -1.0;
    c.kind = "cut";
    c.provenance = "because " + join_ids(cut.edge_ids) + " is " + cut.classification();
    col.add(std::move(c));
    ++added;
  }
  return added;
}

void add_edge_cut_rows(Collector& col, const Network& net, const Edge& g) {
  const Network sub = edge_cut_subgraph(net, g.id);
  if (sub.nodes.empty() || std::find(sub.nodes.begin(), sub.nodes.end(), g.head) == sub.nodes.end()) return;
  std::vector<Cut> cuts;
  if (sub.nodes.size() <= kMaxEnumerationNodes)
    cuts = enumerate_cuts(sub, {{}, {g.head}});
  else
    cuts.push_back(min_cut(sub, source_nodes(sub), {g.head}));
  for (const auto& cut : cuts) {
    const unsigned w = vars_outside(sub, cut);
    unsigned s = 0;
    for (const auto& src : sub.sources)
      if (std::find(cut.a_side.begin(), cut.a_side.end(), src.node) != cut.a_side.end()) s |= src.variable;
    s &= ~w;
    if (s == 0 || (s | w) != kXY) continue;
    LinearConstraint c;
    // I(K; S | W) <= Cut
    if (s == kXY) c.coef = {1, 0, 0, -1};
    else if (s == kX) c.coef = {0, 0, 1, -1};
    else c.coef = {0, 1, 0, -1};
    c.sense = Sense::LE;
    for (const auto& id : cut.edge_ids) c.rhs.add_cap(id, 1);
    c.kind = "edge-cut";
    c.provenance = "because " + join_ids(cut.edge_ids) + " is edge-" + cut.classification() + " toward the head of edge " + g.id;
    col.add(std::move(c));
  }
}

struct CapModel {
  std::map<std::string, double> fixed;        // edge -> bits
  std::map<std::string, int> free;            // edge -> index into free_names
  std::vector<std::string> free_names;        // one per shared variable
  std::vector<AffineExpr> ties;
};

CapModel model_from(const Network& net) {
  CapModel m;
  for (const auto& e : net.edges) m.fixed[e.id] = to_bits(e.capacity);
  return m;
}

// Adds sum_e a_e C_e to (row, constant) under the model.
void place_caps(const AffineExpr& rhs, const CapModel& model, int first_free, double sign,
                std::vector<std::pair<int, double>>& row, double& constant) {
  for (const auto& [id, a] : rhs.caps) {
    if (auto it = model.free.find(id); it != model.free.end()) {
      row.emplace_back(first_free + it->second, sign * a);
    } else if (auto f = model.fixed.find(id); f != model.fixed.end()) {
      constant += a * f->second;
    } else {
      throw Error(ErrorCode::NoSuchEdge, "capacity C" + id + " is not defined");
    }
  }
}

LinearSet build_set(const EdgeConverse& ec, const MeasureSet& m, const CapModel& model) {
  LinearSet set;
  const int first_free = static_cast<int>(set.size());
  for (std::size_t i = 0; i < model.free_names.size(); ++i) set.add_variable(0, lp::kInf);
  for (const auto& c : ec.constraints) {
    std::vector<std::pair<int, double>> row;
    for (int i = 0; i < 4; ++i)
      if (c.coef[static_cast<std::size_t>(i)] != 0) row.emplace_back(i, c.coef[static_cast<std::size_t>(i)]);
    double rhs = c.rhs.measure_value(m);
    place_caps(c.rhs, model, first_free, -1.0, row, rhs);
    const double lo = c.sense == Sense::LE ? -lp::kInf : rhs;
    const double hi = c.sense == Sense::GE ? lp::kInf : rhs;
    set.add_row(std::move(row), lo, hi);
  }
  for (const auto& t : model.ties) {
    std::vector<std::pair<int, double>> row;
    double constant = t.measure_value(m);
    place_caps(t, model, first_free, 1.0, row, constant);
    set.add_row(std::move(row), -constant, -constant);
  }
  return set;
}

lp::Problem problem_of(const LinearSet& set) {
  lp::Problem pb;
  for (std::size_t j = 0; j < set.size(); ++j) pb.add_variable(set.lower[j], set.upper[j]);
  for (const auto& row : set.rows) {
    const int r = pb.add_row(row.lower, row.upper);
    for (const auto& [v, a] : row.coefs) pb.set_coef(r, v, a);
  }
  return pb;
}

// Optimizes sum cost_i u_i over the set; nullopt when not optimal.
std::optional<double> optimize(const LinearSet& set, const Vec4& cost) {
  auto pb = problem_of(set);
  for (int i = 0; i < 4; ++i) pb.set_cost(i, cost[static_cast<std::size_t>(i)]);
  const auto s = lp::solve(pb);
  if (s.status != lp::Status::Optimal) return std::nullopt;
  return s.objective;
}

void fill_inside(FeasibilityReport& rep, const IntersectionResult& r, const CapModel& model) {
  rep.verdict = Feasibility::Feasible;
  rep.witness = UncertaintyVector::from(r.witness);
  for (const auto& [w, atom] : r.combination) {
    FamilySpec s = atom.spec;
    s.c += r.ray;
    rep.combination.emplace_back(w, std::move(s));
  }
  for (std::size_t i = 0; i < model.free_names.size(); ++i)
    if (4 + i < r.values.size()) rep.free_capacities[model.free_names[i]] = r.values[4 + i];
}

FeasibilityReport feasible_under(const JointDistribution& p, const EdgeConverse& ec, const CapModel& model,
                                 const ConverseOptions& opts) {
  const MeasureSet m = measures(p);
  const LinearSet set = build_set(ec, m, model);
  const IntersectionResult r = intersect_region(p, set, opts.region);
  FeasibilityReport rep;
  if (r.verdict == Verdict::Inside) {
    fill_inside(rep, r, model);
    return rep;
  }
  if (r.verdict == Verdict::Outside) {
    rep.verdict = Feasibility::Infeasible;
    if (r.empty_set) {
      rep.empty_polyhedron = true;
      return rep;
    }
    rep.separator = r.separator;
    rep.margin = r.margin;
    rep.orthant = r.support.orthant;
    rep.numerical = r.support.numerical;
    // Per-u1 record against the global separator.
    const auto lo = optimize(set, {1, 0, 0, 0});
    auto hi = optimize(set, {-1, 0, 0, 0});
    if (lo && opts.grid > 0) {
      const double top = hi ? -*hi : *lo + std::max(1.0, m.h_xy);
      for (std::size_t k = 0; k < opts.grid; ++k) {
        const double u1 = opts.grid == 1 ? *lo : *lo + (top - *lo) * static_cast<double>(k) / static_cast<double>(opts.grid - 1);
        LinearSet slice = set;
        slice.add_row({{0, 1.0}}, u1, u1);
        const auto v = optimize(slice, r.separator);
        if (v) rep.sweep.push_back({u1, *v - r.support.value});
      }
    }
    return rep;
  }
  // Column generation stalled: sweep u1 and decide slice by slice.
  const auto lo = optimize(set, {1, 0, 0, 0});
  const auto hi = optimize(set, {-1, 0, 0, 0});
  if (!lo) return rep;
  const double top = hi ? -*hi : *lo + std::max(1.0, m.h_xy);
  bool all_out = true;
  const std::size_t n = std::max<std::size_t>(opts.grid, 2);
  for (std::size_t k = 0; k < n; ++k) {
    const double u1 = *lo + (top - *lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    LinearSet slice = set;
    slice.add_row({{0, 1.0}}, u1, u1);
    const auto rs = intersect_region(p, slice, opts.region);
    if (rs.verdict == Verdict::Inside) {
      fill_inside(rep, rs, model);
      return rep;
    }
    rep.sweep.push_back({u1, rs.verdict == Verdict::Outside ? rs.margin : 0.0});
    all_out &= rs.verdict == Verdict::Outside;
  }
  // Slices are only a sample of u1, so all-Outside stays unresolved.
  (void)all_out;
  rep.verdict = Feasibility::Unresolved;
  return rep;
}

void require_valid(const Network& net) {
  if (auto d = validate(net)) throw Error(ErrorCode::InvalidNetwork, d->code + ": " + d->message);
}

// Group representatives in declaration order.
std::vector<std::string> representatives(const Network& net) {
  std::vector<std::string> reps;
  for (const auto& e : net.edges)
    if (net.group_of(e.id).front() == e.id) reps.push_back(e.id);
  return reps;
}

EdgeConverse box_only(const Network& net, const std::string& edge) {
  EdgeConverse ec;
  ec.edge = edge;
  ec.group = net.group_of(edge);
  LinearConstraint lo;
  lo.coef = {1, 0, 0, 0};
  lo.sense = Sense::GE;
  lo.kind = "box";
  lo.provenance = "entropy is nonnegative";
  ec.constraints.push_back(lo);
  LinearConstraint hi;
  hi.coef = {1, 0, 0, 0};
  hi.rhs.add_cap(edge, 1);
  hi.kind = "box";
  hi.provenance = "capacity of edge " + edge;
  ec.constraints.push_back(hi);
  return ec;
}

double entropy_value(unsigned z, const MeasureSet& m) { return entropy_of(z).measure_value(m); }

}  // namespace

std::string LinearConstraint::expr() const { return u_terms(coef) + " " + to_string(sense) + " " + rhs.to_string(); }

EdgeConverse assemble_edge_converse(const Network& net, const JointDistribution& p, const std::string& edge,
                                    const ConverseOptions& opts) {
  (void)p;
  net.edge(edge);  // NoSuchEdge
  EdgeConverse ec = box_only(net, edge);
  ec.edge_cuts = opts.use_edge_cuts;
  Collector col;
  for (auto& c : ec.constraints) col.add(c);

  bool secret = false;
  for (const auto& s : net.secrecy)
    if (std::find(ec.group.begin(), ec.group.end(), s.edge) != ec.group.end()) {
      secret = true;
      LinearConstraint c;
      const std::size_t idx = s.about == kX ? 1 : s.about == kY ? 2 : 3;
      c.coef = {1, 0, 0, 0};
      c.coef[idx] = -1;
      c.rhs.constant = s.leakage_bound;
      c.kind = "secrecy";
      c.provenance = std::string("secrecy on edge ") + s.edge + " about " + var_name(s.about);
      col.add(std::move(c));
    }
  ec.u4_zero = !secret;
  if (!secret) {
    LinearConstraint c;
    c.coef = {0, 0, 0, 1};
    c.sense = Sense::EQ;
    c.kind = "deterministic";
    c.provenance = "the message is a function of the sources";
    col.add(std::move(c));
  }

  std::size_t cut_rows = 0;
  for (const auto& id : ec.group) {
    const Edge& g = net.edge(id);
    for (const auto& cut : cuts_through(net, g)) cut_rows += add_cut_rows(col, net, g, cut);
  }
  if (cut_rows == 0) throw Error(ErrorCode::NoCutFound, "no cut through edge " + edge + " separates a demand");
  if (opts.use_edge_cuts)
    for (const auto& id : ec.group) add_edge_cut_rows(col, net, net.edge(id));
  ec.constraints = std::move(col.out);
  return ec;
}

CutsetReport cutset_bound(const Network& net, const JointDistribution& p) {
  require_valid(net);
  const MeasureSet m = measures(p);
  std::vector<Cut> cuts;
  if (net.nodes.size() <= kMaxEnumerationNodes) {
    cuts = enumerate_cuts(net, {});
  } else {
    const auto from = source_nodes(net);
    for (const auto& t : net.sinks)
      if (!t.imaginary) cuts.push_back(min_cut(net, from, {t.node}));
  }
  CutsetReport rep;
  std::map<std::pair<unsigned, unsigned>, std::size_t> best;
  std::set<std::string> reported;
  for (const auto& cut : cuts) {
    CutsetEntry e;
    e.known = vars_outside(net, cut);
    e.demanded = demands_outside(net, cut) | e.known;
    e.required = entropy_value(e.demanded, m) - entropy_value(e.known, m);
    if (e.required <= 1e-12) continue;
    e.available = cut.capacity_bits();
    e.cut = cut;
    const auto key = std::make_pair(e.demanded, e.known);
    if (e.available < e.required - 1e-9) {
      rep.satisfied = false;
      if (reported.insert(join_ids(cut.edge_ids) + var_name(e.demanded) + var_name(e.known)).second)
        rep.violations.push_back(e);
    }
    auto it = best.find(key);
    if (it == best.end()) {
      best[key] = rep.binding.size();
      rep.binding.push_back(e);
    } else if (e.available - e.required < rep.binding[it->second].available - rep.binding[it->second].required) {
      rep.binding[it->second] = e;
    }
  }
  return rep;
}

FeasibilityReport edge_feasible(const JointDistribution& p, const EdgeConverse& ec, const Network& net,
                                const ConverseOptions& opts) {
  return feasible_under(p, ec, model_from(net), opts);
}

NetworkReport network_converse(const Network& net, const JointDistribution& p, const ConverseOptions& opts) {
  require_valid(net);
  NetworkReport rep;
  rep.cutset = cutset_bound(net, p);
  bool unresolved = false;
  for (const auto& id : representatives(net)) {
    EdgeReport er;
    try {
      er.converse = assemble_edge_converse(net, p, id, opts);
      er.result = edge_feasible(p, er.converse, net, opts);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoCutFound) throw;
      er.converse = box_only(net, id);
      er.result.verdict = Feasibility::Feasible;
      er.result.no_cut = true;
      er.result.combination.emplace_back(1.0, FamilySpec{2, 0, std::nullopt, 0});
      er.result.witness = {};
    }
    if (er.result.verdict == Feasibility::Infeasible && rep.failing_edge.empty()) rep.failing_edge = id;
    unresolved |= er.result.verdict == Feasibility::Unresolved;
    rep.edges.push_back(std::move(er));
  }
  rep.verdict = !rep.failing_edge.empty() ? Feasibility::Infeasible
                : unresolved              ? Feasibility::Unresolved
                                          : Feasibility::Feasible;
  return rep;
}

// ---- single-letter view ----

namespace {

std::string channel_text(const SingleLetterConstraint& s, const SingleLetterView& v, AffineExpr& rhs) {
  const auto& k = s.i_coef;
  int nonzero = 0;
  for (double a : k) nonzero += std::abs(a) > 1e-12;
  std::string left;
  auto term = [&](double a, const std::string& name) {
    if (std::abs(a) < 1e-12) return;
    const std::string body = std::abs(std::abs(a) - 1) < 1e-12 ? name : AffineExpr{{}, 0, 0, 0, std::abs(a)}.to_string() + "*" + name;
    if (left.empty())
      left = a < 0 ? "-" + body : body;
    else
      left += (a < 0 ? " - " : " + ") + body;
  };
  if (nonzero <= 1) {
    term(k[0], "I(E;X,Y)");
    term(k[1], "I(E;Y|X)");
    term(k[2], "I(E;X|Y)");
  } else {
    term(k[1], "H(X|E)");
    term(k[2], "H(Y|E)");
    term(-(k[0] + k[1] + k[2]), "H(X,Y|E)");
    AffineExpr shift;
    shift.hxy = k[0] + k[1] + k[2];
    shift.hx = -k[1];
    shift.hy = -k[2];
    rhs += shift * -1.0;
  }
  if (!v.c_zero) term(s.c_coef, "c");
  if (!v.g_zero) term(s.g_coef, "g");
  if (!v.h_zero) term(s.h_coef, "h");
  return left.empty() ? "0" : left;
}

bool slack_droppable(const std::vector<SingleLetterConstraint>& cs, double SingleLetterConstraint::*field) {
  for (const auto& c : cs) {
    const double a = c.*field;
    if (std::abs(a) < 1e-12) continue;
    if (c.sense == Sense::EQ) return false;
    if ((c.sense == Sense::LE) != (a > 0)) return false;
  }
  return true;
}

}  // namespace

SingleLetterView single_letter_view(const EdgeConverse& ec) {
  SingleLetterView v;
  v.edge = ec.edge;
  for (const auto& c : ec.constraints) {
    SingleLetterConstraint s;
    s.i_coef = {c.coef[0], c.coef[1], c.coef[2]};
    s.c_coef = c.coef[0] + c.coef[1] + c.coef[2] + c.coef[3];
    s.g_coef = c.coef[1];
    s.h_coef = c.coef[2];
    s.sense = c.sense;
    s.rhs = c.rhs;
    s.provenance = c.provenance;
    v.constraints.push_back(std::move(s));
  }
  v.c_zero = ec.u4_zero;
  v.g_zero = slack_droppable(v.constraints, &SingleLetterConstraint::g_coef);
  v.h_zero = slack_droppable(v.constraints, &SingleLetterConstraint::h_coef);
  std::set<std::string> seen;
  for (std::size_t i = 0; i < v.constraints.size(); ++i) {
    auto& s = v.constraints[i];
    const auto& src = ec.constraints[i];
    if (src.kind == "box" && !src.rhs.has_caps()) continue;
    if (src.kind == "deterministic") continue;
    AffineExpr rhs = s.rhs;
    const std::string left = channel_text(s, v, rhs);
    const std::string text = left + " " + to_string(s.sense) + " " + rhs.to_string();
    if (left == "0" && !rhs.has_caps()) continue;
    if (seen.insert(text).second) s.text = text;
  }
  return v;
}

double SingleLetterView::violation(const JointDistribution& p, const AuxiliaryChannel& ch,
                                   const std::map<std::string, double>& capacities) const {
  const MeasureSet m = measures(p);
  const ChannelFunctionals f = channel_functionals(p, ch);
  const double I[3] = {f.i_e_xy, f.i_e_y_given_x, f.i_e_x_given_y};
  lp::Problem pb;
  const int c = pb.add_variable(0, lp::kInf);
  const int g = pb.add_variable(0, g_zero ? 0 : lp::kInf);
  const int h = pb.add_variable(0, h_zero ? 0 : lp::kInf);
  const int s = pb.add_variable(0, lp::kInf, 1.0);
  for (const auto& k : constraints) {
    double rhs = k.rhs.measure_value(m);
    for (const auto& [id, a] : k.rhs.caps) {
      auto it = capacities.find(id);
      if (it == capacities.end()) throw Error(ErrorCode::NoSuchEdge, "no capacity given for C" + id);
      rhs += a * it->second;
    }
    const double fixed = k.i_coef[0] * I[0] + k.i_coef[1] * I[1] + k.i_coef[2] * I[2];
    // value = fixed + cc c + gg g + hh h; residual = value - rhs
    auto row = [&](double sign) {
      const int r = pb.add_row(-lp::kInf, sign * (rhs - fixed));
      pb.set_coef(r, c, sign * k.c_coef);
      pb.set_coef(r, g, sign * k.g_coef);
      pb.set_coef(r, h, sign * k.h_coef);
      pb.set_coef(r, s, -1.0);
    };
    if (k.sense != Sense::GE) row(1.0);
    if (k.sense != Sense::LE) row(-1.0);
  }
  const auto sol = lp::solve(pb);
  if (sol.status != lp::Status::Optimal) return INFINITY;
  return sol.objective;
}

// ---- capacity minimization ----

MinCapResult minimize_capacity(const Network& net, const JointDistribution& p, const std::string& target,
                               const std::vector<AffineExpr>& ties, const MinimizeOptions& opts) {
  require_valid(net);
  const MeasureSet m = measures(p);
  net.edge(target);  // NoSuchEdge
  const auto tgroup = net.group_of(target);
  const std::set<std::string> in_target(tgroup.begin(), tgroup.end());

  CapModel base = model_from(net);
  for (const auto& id : tgroup) base.fixed.erase(id);
  for (const auto& t : ties)
    for (const auto& [id, a] : t.caps) {
      net.edge(id);
      if (in_target.count(id) || base.free.count(id)) continue;
      const auto grp = net.group_of(id);
      const int idx = static_cast<int>(base.free_names.size());
      base.free_names.push_back(grp.front());
      for (const auto& member : grp) {
        base.free[member] = idx;
        base.fixed.erase(member);
      }
    }
  base.ties = ties;

  auto model_at = [&](double t) {
    CapModel mm = base;
    for (const auto& id : tgroup) mm.fixed[id] = t;
    return mm;
  };

  // LP over (t, free capacities) honoring the ties.
  struct TieLp {
    lp::Problem pb;
    int tv = 0;
    std::vector<int> fv;
  };
  auto place = [&](TieLp& L, const std::string& id, double a, std::vector<std::pair<int, double>>& row,
                   double& constant) {
    if (in_target.count(id)) row.emplace_back(L.tv, a);
    else if (base.free.count(id)) row.emplace_back(L.fv[static_cast<std::size_t>(base.free.at(id))], a);
    else constant += a * base.fixed.at(id);
  };
  auto tie_lp = [&]() {
    TieLp L;
    L.tv = L.pb.add_variable(0, lp::kInf, 1.0);
    for (std::size_t i = 0; i < base.free_names.size(); ++i) L.fv.push_back(L.pb.add_variable(0, lp::kInf));
    for (const auto& t : ties) {
      double constant = t.measure_value(m);
      std::vector<std::pair<int, double>> row;
      for (const auto& [id, a] : t.caps) place(L, id, a, row, constant);
      const int r = L.pb.add_row(-constant, -constant);
      for (const auto& [v, a] : row) L.pb.set_coef(r, v, a);
    }
    return L;
  };

  MinCapResult res;
  {
    auto L = tie_lp();
    if (lp::solve(L.pb).status == lp::Status::Infeasible)
      throw Error(ErrorCode::InconsistentTies, "the capacity ties admit no nonnegative solution");
  }

  if (opts.mode == MinimizeOptions::Mode::Cutset) {
    auto L = tie_lp();
    if (net.nodes.size() > kMaxEnumerationNodes)
      throw Error(ErrorCode::TooLargeToEnumerate, std::to_string(net.nodes.size()) + " nodes");
    for (const auto& cut : enumerate_cuts(net, {})) {
      const unsigned w = vars_outside(net, cut);
      const unsigned dw = demands_outside(net, cut) | w;
      const double req = entropy_value(dw, m) - entropy_value(w, m);
      if (req <= 1e-12) continue;
      std::vector<std::pair<int, double>> row;
      double constant = 0;
      for (const auto& id : cut.edge_ids) place(L, id, 1.0, row, constant);
      const int r = L.pb.add_row(req - constant, lp::kInf);
      for (const auto& [v, a] : row) L.pb.set_coef(r, v, a);
    }
    const auto sol = lp::solve(L.pb);
    if (sol.status != lp::Status::Optimal) {
      res.feasible_at_top = false;
      res.min_value = res.bracket_lo = res.bracket_hi = INFINITY;
      return res;
    }
    res.min_value = res.bracket_lo = res.bracket_hi = sol.objective;
    res.trace.push_back({sol.objective, Feasibility::Feasible, ""});
    return res;
  }

  // Converse mode: bisection on the target capacity, constraints assembled once.
  std::vector<EdgeConverse> convs;
  for (const auto& id : representatives(net)) {
    try {
      convs.push_back(assemble_edge_converse(net, p, id, opts.converse));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoCutFound) throw;
    }
  }
  auto probe = [&](double t) {
    Probe pr;
    pr.value = t;
    pr.verdict = Feasibility::Feasible;
    const CapModel mm = model_at(t);
    for (const auto& ec : convs) {
      const auto r = feasible_under(p, ec, mm, opts.converse);
      if (r.verdict == Feasibility::Infeasible) {
        pr.verdict = Feasibility::Infeasible;
        pr.failing_edge = ec.edge;
        break;
      }
      if (r.verdict == Feasibility::Unresolved) pr.verdict = Feasibility::Unresolved;
    }
    res.trace.push_back(pr);
    return pr.verdict;
  };

  double lo = 0, hi = m.h_xy;
  double unresolved_min = INFINITY;
  const auto top = probe(hi);
  if (top != Feasibility::Feasible) {
    res.feasible_at_top = false;
    res.min_value = res.bracket_lo = res.bracket_hi = hi;
    return res;
  }
  if (probe(lo) == Feasibility::Feasible) {
    res.min_value = res.bracket_lo = res.bracket_hi = 0;
    return res;
  }
  if (res.trace.back().verdict == Feasibility::Unresolved) unresolved_min = 0;
  while (hi - lo > opts.tol) {
    const double mid = 0.5 * (lo + hi);
    const auto v = probe(mid);
    if (v == Feasibility::Feasible) {
      hi = mid;
    } else {
      if (v == Feasibility::Unresolved) unresolved_min = std::min(unresolved_min, mid);
      lo = mid;
    }
  }
  res.min_value = hi;
  res.bracket_hi = hi;
  res.bracket_lo = std::min(lo, unresolved_min);
  return res;
}

}  // namespace ucnet
