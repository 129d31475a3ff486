#pragma once

// Small dense linear programming solver (two-phase primal simplex).
//
// Problems here are tiny by LP standards: a few dozen rows, at most a few
// thousand columns. The solver reports row duals, which the separation
// routines turn into candidate hyperplanes.

#include <cstddef>
#include <limits>
#include <vector>

namespace ucnet::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

const char* to_string(Status s);

/// minimize c.x subject to row_lo <= A x <= row_hi, var_lo <= x <= var_hi.
class Problem {
 public:
  int add_variable(double lower, double upper, double cost = 0.0);
  int add_row(double lower, double upper);
  void set_coef(int row, int var, double value);
  void set_cost(int var, double cost) { vars_[static_cast<std::size_t>(var)].cost = cost; }

  std::size_t num_variables() const noexcept { return vars_.size(); }
  std::size_t num_rows() const noexcept { return rows_.size(); }

  struct Variable {
    double lower;
    double upper;
    double cost;
  };
  struct Row {
    double lower;
    double upper;
    std::vector<std::pair<int, double>> coefs;
  };

  const std::vector<Variable>& variables() const noexcept { return vars_; }
  const std::vector<Row>& rows() const noexcept { return rows_; }

 private:
  std::vector<Variable> vars_;
  std::vector<Row> rows_;
};

struct Solution {
  Status status = Status::Infeasible;
  double objective = 0.0;
  std::vector<double> x;
  /// d(objective)/d(active bound) for each row; zero for inactive rows.
  std::vector<double> row_duals;
};

struct Options {
  double pivot_tol = 1e-10;
  double feas_tol = 1e-9;
  std::size_t max_iterations = 50000;
};

Solution solve(const Problem& problem, const Options& options = {});

}  // namespace ucnet::lp
