#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cmstoch/rational.hpp"

// Exact rational linear programming: dense two-phase primal simplex with
// Bland's rule (lowest-index entering column, lowest-index leaving basic
// variable among ratio ties), so it never cycles.
namespace cmstoch::lp {

using Term = std::pair<std::size_t, Rational>;
using LinearExpr = std::vector<Term>;

enum class Relation { kLessEqual, kEqual, kGreaterEqual };
enum class Status { kOptimal, kInfeasible, kUnbounded };

class Problem {
 public:
  // Variables are nonnegative unless declared free.
  std::size_t add_variable(bool free = false);
  std::size_t variable_count() const { return free_.size(); }

  void add_constraint(LinearExpr lhs, Relation relation, Rational rhs);
  void maximize(LinearExpr objective);
  void minimize(LinearExpr objective);

  struct Row {
    LinearExpr lhs;
    Relation relation;
    Rational rhs;
  };
  const std::vector<Row>& rows() const { return rows_; }
  const std::vector<bool>& free_flags() const { return free_; }
  // Objective in maximization form.
  const LinearExpr& objective() const { return objective_; }
  bool minimizing() const { return minimizing_; }

 private:
  std::vector<bool> free_;
  std::vector<Row> rows_;
  LinearExpr objective_;
  bool minimizing_ = false;
};

struct Solution {
  Status status = Status::kInfeasible;
  Rational objective;  // in the caller's sense (min or max)
  Vec values;          // one entry per declared variable
  std::size_t pivots = 0;
};

Solution solve(const Problem& problem);

}  // namespace cmstoch::lp
