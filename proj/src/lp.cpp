#include "ucnet/lp.hpp"

#include <cmath>
#include <stdexcept>

namespace ucnet::lp {

const char* to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::IterationLimit: return "iteration-limit";
  }
  return "?";
}

int Problem::add_variable(double lower, double upper, double cost) {
  if (lower > upper) throw std::invalid_argument("lp: variable lower bound exceeds upper bound");
  vars_.push_back({lower, upper, cost});
  return static_cast<int>(vars_.size()) - 1;
}

int Problem::add_row(double lower, double upper) {
  if (lower > upper) throw std::invalid_argument("lp: row lower bound exceeds upper bound");
  rows_.push_back({lower, upper, {}});
  return static_cast<int>(rows_.size()) - 1;
}

void Problem::set_coef(int row, int var, double value) {
  if (value == 0.0) return;
  auto& coefs = rows_.at(static_cast<std::size_t>(row)).coefs;
  for (auto& [v, a] : coefs)
    if (v == var) {
      a += value;
      return;
    }
  coefs.emplace_back(var, value);
}

namespace {

// x_j = offset + sum over parts (sign * s_col)
struct VarMap {
  double offset = 0;
  int col = -1;
  double sign = 1;
  int neg_col = -1;  // second column for free variables
};

struct StdRow {
  std::vector<double> a;  // dense over structural + slack columns
  double b = 0;
  int origin = -1;        // original row, or -1 for bound rows
  double dual_sign = 1;   // maps std dual to d(obj)/d(original bound)
};

class Tableau {
 public:
  Tableau(std::size_t m, std::size_t n) : m_(m), n_(n), w_(n + m + 1), t_((m + 1) * (n + m + 1), 0.0), basis_(m) {}

  double& at(std::size_t i, std::size_t j) { return t_[i * w_ + j]; }
  double at(std::size_t i, std::size_t j) const { return t_[i * w_ + j]; }
  double& rhs(std::size_t i) { return t_[i * w_ + w_ - 1]; }
  std::size_t art(std::size_t i) const { return n_ + i; }

  void pivot(std::size_t r, std::size_t c) {
    const double pv = at(r, c);
    double* rr = &t_[r * w_];
    for (std::size_t j = 0; j < w_; ++j) rr[j] /= pv;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      double* ri = &t_[i * w_];
      const double f = ri[c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < w_; ++j) ri[j] -= f * rr[j];
      ri[c] = 0.0;
    }
    basis_[r] = c;
  }

  // Minimizes the objective held in row m_. Columns with allowed[j] == false never enter.
  Status optimize(const std::vector<char>& allowed, const Options& opt, std::size_t& iters) {
    std::size_t degenerate_run = 0;
    bool bland = false;
    while (true) {
      if (iters++ >= opt.max_iterations) return Status::IterationLimit;
      std::size_t enter = w_;
      double best = -1e-9;
      for (std::size_t j = 0; j + 1 < w_; ++j) {
        if (!allowed[j]) continue;
        const double d = at(m_, j);
        if (d < best) {
          enter = j;
          best = d;
          if (bland) break;
        }
      }
      if (enter == w_) return Status::Optimal;
      std::size_t leave = m_;
      double ratio = 0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = at(i, enter);
        if (a <= opt.pivot_tol) continue;
        const double r = std::max(rhs(i), 0.0) / a;
        if (leave == m_ || r < ratio - 1e-12 || (r <= ratio + 1e-12 && basis_[i] < basis_[leave])) {
          leave = i;
          ratio = r;
        }
      }
      if (leave == m_) return Status::Unbounded;
      if (ratio <= 1e-12) {
        if (++degenerate_run > 50) bland = true;
      } else {
        degenerate_run = 0;
      }
      pivot(leave, enter);
    }
  }

  std::size_t m_, n_, w_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

Solution solve(const Problem& problem, const Options& opt) {
  const auto& vars = problem.variables();
  const auto& rows = problem.rows();

  // Structural columns.
  std::vector<VarMap> vmap(vars.size());
  std::size_t ncols = 0;
  std::vector<std::pair<std::size_t, double>> bound_rows;  // (col, upper) for s_col <= upper
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const auto& v = vars[j];
    VarMap& vm = vmap[j];
    if (std::isfinite(v.lower)) {
      vm.offset = v.lower;
      vm.col = static_cast<int>(ncols++);
      vm.sign = 1;
      if (std::isfinite(v.upper)) bound_rows.emplace_back(static_cast<std::size_t>(vm.col), v.upper - v.lower);
    } else if (std::isfinite(v.upper)) {
      vm.offset = v.upper;
      vm.col = static_cast<int>(ncols++);
      vm.sign = -1;
    } else {
      vm.col = static_cast<int>(ncols++);
      vm.neg_col = static_cast<int>(ncols++);
    }
  }

  // Rows: count slacks first.
  std::vector<StdRow> srows;
  struct Pending {
    std::vector<std::pair<std::size_t, double>> a;
    double b;
    int origin;
    int slack;  // +1 slack, -1 surplus, 0 equality
  };
  std::vector<Pending> pend;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    double shift = 0;
    std::vector<std::pair<std::size_t, double>> a;
    for (const auto& [var, coef] : row.coefs) {
      const VarMap& vm = vmap[static_cast<std::size_t>(var)];
      shift += coef * vm.offset;
      a.emplace_back(static_cast<std::size_t>(vm.col), coef * vm.sign);
      if (vm.neg_col >= 0) a.emplace_back(static_cast<std::size_t>(vm.neg_col), -coef);
    }
    const bool lo = std::isfinite(row.lower), hi = std::isfinite(row.upper);
    if (lo && hi && row.upper - row.lower <= 0.0) {
      pend.push_back({a, row.lower - shift, static_cast<int>(r), 0});
      continue;
    }
    if (hi) pend.push_back({a, row.upper - shift, static_cast<int>(r), +1});
    if (lo) pend.push_back({a, row.lower - shift, static_cast<int>(r), -1});
  }
  for (const auto& [col, ub] : bound_rows) pend.push_back({{{col, 1.0}}, ub, -1, +1});

  std::size_t nslack = 0;
  for (const auto& p : pend)
    if (p.slack != 0) ++nslack;
  const std::size_t n = ncols + nslack;
  const std::size_t m = pend.size();

  Tableau tab(m, n);
  std::vector<double> dual_sign(m, 1.0);
  std::vector<int> origin(m, -1);
  std::size_t next_slack = ncols;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& p = pend[i];
    for (const auto& [c, a] : p.a) tab.at(i, c) += a;
    if (p.slack != 0) tab.at(i, next_slack++) = static_cast<double>(p.slack);
    tab.rhs(i) = p.b;
    origin[i] = p.origin;
    if (p.b < 0) {
      for (std::size_t j = 0; j < n; ++j) tab.at(i, j) = -tab.at(i, j);
      tab.rhs(i) = -p.b;
      dual_sign[i] = -1.0;
    }
    tab.at(i, tab.art(i)) = 1.0;
    tab.basis_[i] = tab.art(i);
  }

  // Phase 1: minimize the sum of artificials.
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0;
    for (std::size_t i = 0; i < m; ++i) s += tab.at(i, j);
    tab.at(m, j) = -s;
  }
  {
    double s = 0;
    for (std::size_t i = 0; i < m; ++i) s += tab.rhs(i);
    tab.rhs(m) = -s;
  }
  std::vector<char> allowed(n + m, 1);
  std::size_t iters = 0;
  Solution sol;
  Status st = tab.optimize(allowed, opt, iters);
  if (st == Status::IterationLimit) {
    sol.status = st;
    return sol;
  }
  double scale = 1.0;
  for (std::size_t i = 0; i < m; ++i) scale = std::max(scale, std::abs(pend[i].b));
  if (-tab.rhs(m) > opt.feas_tol * scale) {
    sol.status = Status::Infeasible;
    return sol;
  }
  // Drive artificials out of the basis where possible.
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis_[i] < n) continue;
    std::size_t best = n;
    double mag = 1e-9;
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(tab.at(i, j)) > mag) {
        mag = std::abs(tab.at(i, j));
        best = j;
      }
    if (best < n) tab.pivot(i, best);
  }
  for (std::size_t i = 0; i < m; ++i) allowed[tab.art(i)] = 0;

  // Phase 2.
  std::vector<double> cost(n + m, 0.0);
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const VarMap& vm = vmap[j];
    cost[static_cast<std::size_t>(vm.col)] += vars[j].cost * vm.sign;
    if (vm.neg_col >= 0) cost[static_cast<std::size_t>(vm.neg_col)] -= vars[j].cost;
  }
  for (std::size_t j = 0; j < n + m; ++j) {
    double d = cost[j];
    for (std::size_t i = 0; i < m; ++i) d -= cost[tab.basis_[i]] * tab.at(i, j);
    tab.at(m, j) = d;
  }
  {
    double z = 0;
    for (std::size_t i = 0; i < m; ++i) z += cost[tab.basis_[i]] * tab.rhs(i);
    tab.rhs(m) = -z;
  }
  st = tab.optimize(allowed, opt, iters);
  sol.status = st;
  if (st != Status::Optimal) return sol;

  std::vector<double> s(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (tab.basis_[i] < n) s[tab.basis_[i]] = tab.rhs(i);
  sol.x.resize(vars.size());
  double obj = 0;  // x already includes the bound offsets
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const VarMap& vm = vmap[j];
    double v = vm.offset + vm.sign * s[static_cast<std::size_t>(vm.col)];
    if (vm.neg_col >= 0) v -= s[static_cast<std::size_t>(vm.neg_col)];
    sol.x[j] = v;
    obj += vars[j].cost * v;
  }
  sol.objective = obj;

  // y_i = c_B B^{-1} e_i, read off the artificial columns.
  sol.row_duals.assign(rows.size(), 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (origin[i] < 0) continue;
    double y = 0;
    for (std::size_t k = 0; k < m; ++k) y += cost[tab.basis_[k]] * tab.at(k, tab.art(i));
    sol.row_duals[static_cast<std::size_t>(origin[i])] += dual_sign[i] * y;
  }
  return sol;
}

}  // namespace ucnet::lp
