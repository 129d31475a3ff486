#include "ucnet/region.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ucnet/channel_search.hpp"
#include "ucnet/common_info.hpp"
#include "ucnet/error.hpp"
#include "ucnet/lp.hpp"

namespace ucnet {

namespace {

constexpr double kParamTol = 1e-12;

double l1_norm(const Vec4& a, std::size_t dim = 4) {
  double s = 0;
  for (std::size_t i = 0; i < dim; ++i) s += std::abs(a[i]);
  return s;
}

// Deterministic kernel on `ne` outputs; labels must be < ne.
std::vector<double> padded_kernel(std::size_t cells, std::size_t ne, const std::vector<std::size_t>& labels) {
  std::vector<double> k(cells * ne, 0.0);
  for (std::size_t c = 0; c < cells; ++c) k[c * ne + labels[c]] = 1.0;
  return k;
}

std::vector<std::vector<std::size_t>> candidate_labels(const JointDistribution& p) {
  const std::size_t ny = p.ny(), cells = p.cells();
  std::vector<std::size_t> constant(cells, 0), xs(cells), ys(cells), both(cells), common(cells);
  const auto gk = gacs_korner(p);
  for (std::size_t c = 0; c < cells; ++c) {
    xs[c] = c / ny;
    ys[c] = c % ny;
    both[c] = c;
    common[c] = gk.component_of_x[c / ny];
  }
  return {constant, xs, ys, both, common};
}

AuxiliaryChannel labelled_channel(const JointDistribution& p, const std::vector<std::size_t>& labels) {
  const std::size_t ne = *std::max_element(labels.begin(), labels.end()) + 1;
  return AuxiliaryChannel::deterministic(p.nx(), p.ny(), ne, labels);
}

struct Family1Max {
  double value = 0;
  bool numerical = false;
  std::size_t restarts = 0;
  AuxiliaryChannel channel = AuxiliaryChannel::constant(1, 1);
};

// max over channels of w1 I(E;XY) + w2 I(E;Y|X) + w3 I(E;X|Y).
Family1Max family1_max(const JointDistribution& p, const MeasureSet& m, double w1, double w2, double w3,
                       const RegionOptions& opts) {
  const std::size_t nx = p.nx(), ny = p.ny();
  Family1Max r;
  if (w1 <= 0 && w2 <= 0 && w3 <= 0) {
    r.channel = AuxiliaryChannel::constant(nx, ny);
    return r;
  }
  if (w1 >= 0 && w2 >= 0 && w3 >= 0) {
    r.value = w1 * m.h_xy + w2 * m.h_y_given_x + w3 * m.h_x_given_y;
    r.channel = AuxiliaryChannel::reveal_both(nx, ny);
    return r;
  }
  if (w1 >= 0 && w3 >= 0) {
    r.value = w1 * m.h_x + w3 * m.h_x_given_y + std::max(0.0, w1 + w2) * m.h_y_given_x;
    r.channel = w1 + w2 > 0 ? AuxiliaryChannel::reveal_both(nx, ny) : AuxiliaryChannel::reveal_x(nx, ny);
    return r;
  }
  if (w1 >= 0 && w2 >= 0) {
    r.value = w1 * m.h_y + w2 * m.h_y_given_x + std::max(0.0, w1 + w3) * m.h_x_given_y;
    r.channel = w1 + w3 > 0 ? AuxiliaryChannel::reveal_both(nx, ny) : AuxiliaryChannel::reveal_y(nx, ny);
    return r;
  }
  // Numerical: normalize so the optimizer sees a unit-scale objective.
  const double scale = std::abs(w1) + std::abs(w2) + std::abs(w3);
  const auto obj = functional_objective(m, w1 / scale, w2 / scale, w3 / scale);
  SearchOptions so;
  so.e_size = p.cells() + 2;
  so.restarts = opts.restarts;
  so.seed = opts.seed;
  for (const auto& labels : candidate_labels(p)) so.warm_starts.push_back(padded_kernel(p.cells(), so.e_size, labels));
  so.restarts += so.warm_starts.size();
  auto res = maximize_channel(p, obj, so, opts.exec);
  r.value = std::max(0.0, res.value) * scale;
  r.numerical = true;
  r.restarts = res.restarts_used;
  r.channel = res.value > 0 ? compact(AuxiliaryChannel(nx, ny, res.e_size, std::move(res.kernel)), 0.0)
                            : AuxiliaryChannel::constant(nx, ny);
  return r;
}

FamilySpec spec_of(int family, double f = 0) {
  FamilySpec s;
  s.family = family;
  s.f = f;
  return s;
}

FamilySpec spec_of(AuxiliaryChannel ch) {
  FamilySpec s;
  s.family = 1;
  s.channel = std::move(ch);
  return s;
}

lp::Problem base_problem(const LinearSet& set) {
  lp::Problem pb;
  for (std::size_t j = 0; j < set.size(); ++j) pb.add_variable(set.lower[j], set.upper[j]);
  for (const auto& row : set.rows) {
    const int r = pb.add_row(row.lower, row.upper);
    for (const auto& [v, a] : row.coefs) pb.set_coef(r, v, a);
  }
  return pb;
}

// min over the set of lam . u; -inf when unbounded, +inf when empty.
double min_over_set(const LinearSet& set, const Vec4& lam, std::size_t dim) {
  auto pb = base_problem(set);
  for (std::size_t i = 0; i < dim; ++i) pb.set_cost(static_cast<int>(i), lam[i]);
  const auto s = lp::solve(pb);
  if (s.status == lp::Status::Unbounded) return -INFINITY;
  if (s.status != lp::Status::Optimal) return INFINITY;
  return s.objective;
}

struct Oracle {
  std::size_t dim;
  bool ray;
  std::function<SupportValue(const Vec4&)> support;
  std::function<Vec4(const FamilySpec&)> point;
};

// Projects onto {sum l <= 0} when a ray is present, then normalizes in l1.
bool normalize_direction(Vec4& lam, std::size_t dim, bool ray) {
  if (ray) {
    double s = 0;
    for (std::size_t i = 0; i < dim; ++i) s += lam[i];
    if (s > 0)
      for (std::size_t i = 0; i < dim; ++i) lam[i] -= s / static_cast<double>(dim);
  }
  const double n = l1_norm(lam, dim);
  if (n < 1e-12) return false;
  for (std::size_t i = 0; i < dim; ++i) lam[i] /= n;
  for (std::size_t i = dim; i < 4; ++i) lam[i] = 0;
  return true;
}

struct Probe {
  Vec4 lam{};
  double margin = -INFINITY;
  double m = 0;
  SupportValue s;
};

Probe probe(const LinearSet& set, const Oracle& oracle, Vec4 lam, double tol) {
  Probe pr;
  if (!normalize_direction(lam, oracle.dim, oracle.ray)) return pr;
  pr.lam = lam;
  pr.s = oracle.support(lam);
  if (pr.s.infinite) return pr;
  pr.m = min_over_set(set, lam, oracle.dim);
  pr.margin = pr.m - pr.s.value - tol;
  return pr;
}

// Quasi-random points from the R_d additive recurrence.
Vec4 quasi_random(std::size_t i, std::size_t dim) {
  double phi = 2.0;
  for (int k = 0; k < 30; ++k) phi = std::pow(1.0 + phi, 1.0 / (static_cast<double>(dim) + 1.0));
  Vec4 out{};
  double a = 1.0;
  for (std::size_t d = 0; d < dim; ++d) {
    a /= phi;
    const double v = std::fmod(0.5 + a * static_cast<double>(i + 1), 1.0);
    out[d] = 2.0 * v - 1.0;
  }
  return out;
}

IntersectionResult direction_search(const LinearSet& set, const Oracle& oracle, const RegionOptions& opts,
                                    IntersectionResult res) {
  const std::size_t dim = oracle.dim;
  std::vector<Vec4> dirs;
  for (std::size_t mask = 0; mask < (1u << dim); ++mask) {
    Vec4 d{};
    for (std::size_t i = 0; i < dim; ++i) d[i] = (mask >> i) & 1 ? 1.0 : -1.0;
    dirs.push_back(d);
  }
  for (std::size_t i = 0; i < 512; ++i) dirs.push_back(quasi_random(i, dim));
  std::vector<Probe> probes(dirs.size());
  parallel_for(dirs.size(), [&](std::size_t i) { probes[i] = probe(set, oracle, dirs[i], opts.tol); }, opts.exec);

  std::vector<std::size_t> order(probes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return probes[a].margin > probes[b].margin; });
  Probe best = probes[order.front()];
  // Pattern search around the best few directions.
  for (std::size_t r = 0; r < std::min<std::size_t>(4, order.size()); ++r) {
    Probe cur = probes[order[r]];
    if (!std::isfinite(cur.margin)) continue;
    for (double step = 0.25; step > 1e-3; step *= 0.5) {
      bool moved = true;
      while (moved) {
        moved = false;
        for (std::size_t i = 0; i < dim && !moved; ++i)
          for (double sgn : {1.0, -1.0}) {
            Vec4 d = cur.lam;
            d[i] += sgn * step;
            Probe q = probe(set, oracle, d, opts.tol);
            if (q.margin > cur.margin + 1e-12) {
              cur = q;
              moved = true;
              break;
            }
          }
      }
    }
    if (cur.margin > best.margin) best = cur;
  }
  if (best.margin > 0) {
    res.verdict = Verdict::Outside;
    res.separator = best.lam;
    res.min_over_set = best.m;
    res.margin = best.margin;
    res.support = best.s;
  }
  return res;
}

IntersectionResult solve_intersection(const LinearSet& set, const Oracle& oracle, std::vector<Atom> dict,
                                      const RegionOptions& opts) {
  const std::size_t dim = oracle.dim;
  IntersectionResult res;
  {
    const auto feas = lp::solve(base_problem(set));
    if (feas.status == lp::Status::Infeasible) {
      res.verdict = Verdict::Outside;
      res.empty_set = true;
      return res;
    }
  }
  auto known = [&](const Vec4& pt) {
    for (const auto& a : dict)
      if (std::abs(a.point[0] - pt[0]) + std::abs(a.point[1] - pt[1]) + std::abs(a.point[2] - pt[2]) +
              std::abs(a.point[3] - pt[3]) <
          1e-10)
        return true;
    return false;
  };

  for (std::size_t iter = 0; iter < opts.max_iterations; ++iter) {
    res.iterations = iter + 1;
    auto pb = base_problem(set);
    const std::size_t nset = set.size();
    std::vector<int> w(dict.size());
    for (std::size_t k = 0; k < dict.size(); ++k) w[k] = pb.add_variable(0, lp::kInf);
    const int t = oracle.ray ? pb.add_variable(0, lp::kInf) : -1;
    std::vector<int> match(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      const int dev = pb.add_variable(-opts.tol, opts.tol);
      const int sp = pb.add_variable(0, lp::kInf, 1.0), sm = pb.add_variable(0, lp::kInf, 1.0);
      const int r = pb.add_row(0, 0);
      match[i] = r;
      pb.set_coef(r, static_cast<int>(i), 1.0);
      for (std::size_t k = 0; k < dict.size(); ++k) pb.set_coef(r, w[k], -dict[k].point[i]);
      if (t >= 0) pb.set_coef(r, t, -1.0);
      pb.set_coef(r, dev, -1.0);
      pb.set_coef(r, sp, -1.0);
      pb.set_coef(r, sm, 1.0);
    }
    const int conv = pb.add_row(1, 1);
    for (std::size_t k = 0; k < dict.size(); ++k) pb.set_coef(conv, w[k], 1.0);

    const auto sol = lp::solve(pb);
    if (sol.status != lp::Status::Optimal) break;
    if (sol.objective <= 1e-9) {
      res.verdict = Verdict::Inside;
      res.values.assign(sol.x.begin(), sol.x.begin() + static_cast<long>(nset));
      for (std::size_t i = 0; i < dim; ++i) res.witness[i] = sol.x[i];
      for (std::size_t k = 0; k < dict.size(); ++k)
        if (sol.x[static_cast<std::size_t>(w[k])] > 1e-12)
          res.combination.emplace_back(sol.x[static_cast<std::size_t>(w[k])], dict[k]);
      res.ray = t >= 0 ? sol.x[static_cast<std::size_t>(t)] : 0.0;
      return res;
    }

    bool added = false;
    for (double sign : {-1.0, 1.0}) {
      Vec4 lam{};
      for (std::size_t i = 0; i < dim; ++i) lam[i] = sign * sol.row_duals[static_cast<std::size_t>(match[i])];
      if (oracle.ray) {
        double s = 0;
        for (std::size_t i = 0; i < dim; ++i) s += lam[i];
        if (s > 1e-9) continue;
      }
      Probe pr = probe(set, oracle, lam, opts.tol);
      if (pr.margin > 0) {
        res.verdict = Verdict::Outside;
        res.separator = pr.lam;
        res.min_over_set = pr.m;
        res.margin = pr.margin;
        res.support = pr.s;
        return res;
      }
      if (pr.s.argmax) {
        Atom a{*pr.s.argmax, oracle.point(*pr.s.argmax)};
        if (!known(a.point)) {
          dict.push_back(std::move(a));
          added = true;
          break;
        }
      }
    }
    if (!added) break;
  }
  if (opts.direction_probes) return direction_search(set, oracle, opts, res);
  return res;
}

Oracle region_oracle(const JointDistribution& p, const RegionOptions& opts) {
  return {4, true, [&p, &opts](const Vec4& lam) { return support_function(p, lam, opts); },
          [&p](const FamilySpec& s) { return family_point(p, s).array(); }};
}

std::vector<Atom> region_dictionary(const JointDistribution& p, const RegionOptions& opts) {
  const auto m = measures(p);
  std::vector<Atom> dict;
  auto add = [&](FamilySpec s) {
    const Vec4 pt = family_point(p, s).array();
    dict.push_back({std::move(s), pt});
  };
  for (const auto& labels : candidate_labels(p)) add(spec_of(labelled_channel(p, labels)));
  add(spec_of(2));
  add(spec_of(3));
  const double fmax = std::max(m.h_x_given_y, m.h_y_given_x);
  for (int i = 0; i < 64; ++i) add(spec_of(4, fmax * i / 63.0));
  for (double f : {m.h_x_given_y, m.h_y_given_x}) add(spec_of(4, std::min(f, fmax)));
  std::mt19937_64 rng(mix_seed(opts.seed, 0xD1C7));
  for (std::size_t i = 0; i < opts.mesh; ++i)
    add(spec_of(AuxiliaryChannel(p.nx(), p.ny(), p.cells(), random_kernel(rng, p.cells(), p.cells()))));
  return dict;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Inside: return "inside";
    case Verdict::Outside: return "outside";
    case Verdict::Unresolved: return "unresolved";
  }
  return "?";
}

UncertaintyVector family_point(const JointDistribution& p, const FamilySpec& spec) {
  if (!(spec.c >= 0) || !std::isfinite(spec.c)) throw Error(ErrorCode::InvalidFamilyParam, "c must be >= 0");
  const auto m = measures(p);
  const double c = spec.c;
  switch (spec.family) {
    case 1: {
      if (!spec.channel) throw Error(ErrorCode::InvalidFamilyParam, "family 1 needs a channel");
      if (spec.channel->nx() != p.nx() || spec.channel->ny() != p.ny())
        throw Error(ErrorCode::InvalidFamilyParam, "channel does not match the distribution");
      const auto f = channel_functionals(p, *spec.channel);
      return {c + std::max(0.0, f.i_e_xy), c + std::max(0.0, f.i_e_y_given_x), c + std::max(0.0, f.i_e_x_given_y),
              c};
    }
    case 2: return {c + m.h_y_given_x, c + m.h_y_given_x, c, c};
    case 3: return {c + m.h_x_given_y, c, c + m.h_x_given_y, c};
    case 4: {
      const double fmax = std::max(m.h_x_given_y, m.h_y_given_x);
      if (!(spec.f >= -kParamTol && spec.f <= fmax + kParamTol))
        throw Error(ErrorCode::InvalidFamilyParam, "f outside [0, max(H(X|Y), H(Y|X))]");
      const double f = std::clamp(spec.f, 0.0, fmax);
      return {c + f, c + std::min(f, m.h_y_given_x), c + std::min(f, m.h_x_given_y), c};
    }
    default: throw Error(ErrorCode::InvalidFamilyParam, "family must be 1..4");
  }
}

std::string orthant_label(const WeightVector& lam) {
  std::string s;
  for (int i = 0; i < 3; ++i) s += lam[static_cast<std::size_t>(i)] >= 0 ? '+' : '-';
  return s;
}

SupportValue support_function(const JointDistribution& p, const WeightVector& lam, const RegionOptions& opts) {
  SupportValue out;
  out.orthant = orthant_label(lam);
  const double l1 = lam[0], l2 = lam[1], l3 = lam[2];
  const auto m = measures(p);
  const std::size_t nx = p.nx(), ny = p.ny();
  auto set = [&](double v, FamilySpec s) {
    out.value = v;
    out.argmax = std::move(s);
  };
  auto fam4 = [&]() {
    // Piecewise linear in f; the maximum sits on a breakpoint.
    double best = 0, arg = 0;
    const double fmax = std::max(m.h_x_given_y, m.h_y_given_x);
    for (double t : {m.h_y_given_x, m.h_x_given_y, fmax}) {
      const double v = l1 * t + l2 * std::min(t, m.h_y_given_x) + l3 * std::min(t, m.h_x_given_y);
      if (v > best) {
        best = v;
        arg = t;
      }
    }
    if (arg > 0)
      set(best, spec_of(4, arg));
    else
      set(0.0, spec_of(AuxiliaryChannel::constant(nx, ny)));
  };
  const std::string& o = out.orthant;
  if (o == "-+-") {
    const double v = (l1 + l2) * m.h_y_given_x;
    v > 0 ? set(v, spec_of(2)) : set(0.0, spec_of(AuxiliaryChannel::constant(nx, ny)));
  } else if (o == "--+") {
    const double v = (l1 + l3) * m.h_x_given_y;
    v > 0 ? set(v, spec_of(3)) : set(0.0, spec_of(AuxiliaryChannel::constant(nx, ny)));
  } else if (o == "-++") {
    if (l1 + l2 + l3 <= 0)
      set(0.0, spec_of(AuxiliaryChannel::constant(nx, ny)));
    else
      fam4();
  } else {
    auto r = family1_max(p, m, l1, l2, l3, opts);
    out.numerical = r.numerical;
    out.restarts_used = r.restarts;
    set(r.value, spec_of(std::move(r.channel)));
    if (r.numerical) {
      // Families 2-4 are in the region too; never report less than they attain.
      const double v2 = (l1 + l2) * m.h_y_given_x, v3 = (l1 + l3) * m.h_x_given_y;
      if (v2 > out.value) set(v2, spec_of(2));
      if (v3 > out.value) set(v3, spec_of(3));
    }
  }
  // The c = 0 value above assumed the (1,1,1,1) ray does not help.
  out.c0_value = out.value;
  if (l1 + l2 + l3 + lam[3] > 0) {
    out.infinite = true;
    out.value = INFINITY;
  }
  return out;
}

LinearSet::LinearSet() : upper(4, lp::kInf) {}

int LinearSet::add_variable(double lo, double hi) {
  lower.push_back(lo);
  upper.push_back(hi);
  return static_cast<int>(lower.size()) - 1;
}

void LinearSet::add_row(std::vector<std::pair<int, double>> coefs, double lo, double hi) {
  rows.push_back({std::move(coefs), lo, hi});
}

LinearSet LinearSet::point(const Vec4& u) {
  LinearSet s;
  for (std::size_t i = 0; i < 4; ++i) s.lower[i] = s.upper[i] = u[i];
  return s;
}

IntersectionResult intersect_region(const JointDistribution& p, const LinearSet& set, const RegionOptions& opts) {
  return solve_intersection(set, region_oracle(p, opts), region_dictionary(p, opts), opts);
}

MembershipResult membership(const JointDistribution& p, const UncertaintyVector& u, const RegionOptions& opts) {
  const Vec4 a = u.array();
  for (double v : a)
    if (!(v >= 0)) throw Error(ErrorCode::InvalidFamilyParam, "uncertainty vector must be non-negative");
  const auto r = intersect_region(p, LinearSet::point(a), opts);
  MembershipResult out;
  out.verdict = r.verdict;
  for (const auto& [wt, atom] : r.combination) {
    FamilySpec s = atom.spec;
    s.c += r.ray;
    out.combination.emplace_back(wt, std::move(s));
  }
  out.separator = r.separator;
  out.margin = r.margin;
  out.support = r.support;
  return out;
}

OuterBoundResult outer_bound_feasible(const JointDistribution& p, const UncertaintyVector& u, double tol,
                                      const RegionOptions& opts) {
  const auto m = measures(p);
  OuterBoundResult out;
  out.c = u.u4;
  const double a = u.u1 - u.u4, b2 = u.u2 - u.u4, b3 = u.u3 - u.u4;
  auto certify = [&](const char* why) {
    out.certified = true;
    out.reason = why;
    return out;
  };
  if (a > m.h_xy + tol) return certify("u1 - u4 <= H(X,Y)");
  if (a < -tol) return certify("u4 <= u1");
  if (b2 < -tol) return certify("u4 <= u2");
  if (b3 < -tol) return certify("u4 <= u3");
  if (u.u1 - u.u2 > m.h_x + tol) return certify("u1 - u2 <= H(X)");
  if (u.u1 - u.u3 > m.h_y + tol) return certify("u1 - u3 <= H(Y)");

  // Search the convex set of achievable (I(E;XY), I(E;Y|X), I(E;X|Y)).
  LinearSet set;
  set.lower = {std::max(a, 0.0), 0, 0, 0};
  set.upper = {std::max(a, 0.0), std::max(b2, 0.0), std::max(b3, 0.0), 0};
  auto point_of = [&p](const FamilySpec& s) {
    const auto f = channel_functionals(p, *s.channel);
    return Vec4{f.i_e_xy, f.i_e_y_given_x, f.i_e_x_given_y, 0};
  };
  Oracle oracle{3, false,
                [&](const Vec4& mu) {
                  SupportValue sv;
                  sv.orthant = orthant_label(mu);
                  auto r = family1_max(p, m, mu[0], mu[1], mu[2], opts);
                  sv.value = r.value;
                  sv.numerical = r.numerical;
                  sv.restarts_used = r.restarts;
                  sv.argmax = spec_of(std::move(r.channel));
                  return sv;
                },
                point_of};
  std::vector<Atom> dict;
  for (const auto& labels : candidate_labels(p)) {
    auto s = spec_of(labelled_channel(p, labels));
    dict.push_back({s, point_of(s)});
  }
  std::mt19937_64 rng(mix_seed(opts.seed, 0x0B7E));
  for (std::size_t i = 0; i < opts.mesh; ++i) {
    auto s = spec_of(AuxiliaryChannel(p.nx(), p.ny(), p.cells(), random_kernel(rng, p.cells(), p.cells())));
    dict.push_back({s, point_of(s)});
  }
  RegionOptions o = opts;
  o.direction_probes = false;
  const auto r = solve_intersection(set, oracle, std::move(dict), o);
  if (r.verdict == Verdict::Inside) {
    std::vector<AuxiliaryChannel> parts;
    std::vector<double> weights;
    for (const auto& [wt, atom] : r.combination) {
      parts.push_back(*atom.spec.channel);
      weights.push_back(wt);
    }
    auto mix = compact(mix_channels(parts, weights));
    const auto f = channel_functionals(p, mix);
    out.feasible = true;
    out.g = std::max(0.0, b2 - f.i_e_y_given_x);
    out.h = std::max(0.0, b3 - f.i_e_x_given_y);
    out.channel = std::move(mix);
    return out;
  }
  out.reason = r.verdict == Verdict::Outside ? "separated by numerical search" : "not found within search budget";
  out.separator = {r.separator[0], r.separator[1], r.separator[2]};
  return out;
}

std::vector<UncertaintyVector> sample_region(const JointDistribution& p, int n, std::size_t count,
                                             std::size_t k_size, std::uint64_t seed, Exec exec) {
  if (n < 1 || n > 3) throw Error(ErrorCode::BlockTooLarge, "block length must be 1, 2 or 3");
  if (k_size < 1) throw Error(ErrorCode::BlockTooLarge, "k_size must be positive");
  double cells = static_cast<double>(k_size);
  for (int i = 0; i < n; ++i) cells *= static_cast<double>(p.cells());
  if (cells > 1e6) throw Error(ErrorCode::BlockTooLarge, "kernel table exceeds 1e6 cells");
  const auto pn = p.power(n);
  const auto mn = measures(pn);
  std::vector<UncertaintyVector> out(count);
  parallel_for(
      count,
      [&](std::size_t i) {
        std::mt19937_64 rng(mix_seed(seed, i));
        std::vector<double> k;
        if (i % 4 == 3) {
          // Deterministic-function sub-sample.
          k.assign(pn.cells() * k_size, 0.0);
          for (std::size_t c = 0; c < pn.cells(); ++c) k[c * k_size + rng() % k_size] = 1.0;
        } else {
          k = random_kernel(rng, pn.cells(), k_size);
        }
        const auto je = joint_entropies(pn, k, k_size);
        const double nn = static_cast<double>(n);
        out[i] = {je.h_e / nn, (je.h_ex - mn.h_x) / nn, (je.h_ey - mn.h_y) / nn, (je.h_exy - mn.h_xy) / nn};
      },
      exec);
  return out;
}

double sampler_invariant_violation(const MeasureSet& m, const UncertaintyVector& u) {
  const double checks[] = {
      -u.u1,          -u.u2,          -u.u3,          -u.u4,
      u.u4 - u.u2,    u.u2 - u.u1,    u.u4 - u.u3,    u.u3 - u.u1,
      u.u1 - u.u2 - m.h_x, u.u1 - u.u3 - m.h_y, u.u2 - u.u4 - m.h_y_given_x, u.u3 - u.u4 - m.h_x_given_y,
  };
  double worst = 0;
  for (double c : checks) worst = std::max(worst, c);
  return worst;
}

}  // namespace ucnet
