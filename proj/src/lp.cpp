#include "cmstoch/lp.hpp"

#include <cassert>
#include <limits>

#include "cmstoch/errors.hpp"

namespace cmstoch::lp {

std::size_t Problem::add_variable(bool free) {
  free_.push_back(free);
  return free_.size() - 1;
}

void Problem::add_constraint(LinearExpr lhs, Relation relation, Rational rhs) {
  for (const auto& [var, coef] : lhs) {
    (void)coef;
    assert(var < free_.size());
  }
  rows_.push_back({std::move(lhs), relation, std::move(rhs)});
}

void Problem::maximize(LinearExpr objective) {
  objective_ = std::move(objective);
  minimizing_ = false;
}

void Problem::minimize(LinearExpr objective) {
  for (auto& term : objective) term.second = -term.second;
  objective_ = std::move(objective);
  minimizing_ = true;
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : cols_(cols), cells_(rows, Vec(cols + 1)), basis_(rows, kNone),
        reduced_(cols + 1) {}

  Rational& at(std::size_t r, std::size_t c) { return cells_[r][c]; }
  Rational& rhs(std::size_t r) { return cells_[r][cols_]; }
  std::size_t rows() const { return cells_.size(); }
  std::size_t& basic(std::size_t r) { return basis_[r]; }

  // Reduced costs c_j - c_B B^{-1} a_j for the given (maximization) costs.
  void price(const Vec& costs) {
    for (std::size_t c = 0; c <= cols_; ++c) {
      Rational acc = c < cols_ ? costs[c] : Rational(0);
      for (std::size_t r = 0; r < rows(); ++r) {
        const Rational& cb = costs[basis_[r]];
        if (cb != 0) acc -= cb * cells_[r][c];
      }
      reduced_[c] = acc;
    }
  }

  void pivot(std::size_t pr, std::size_t pc) {
    Rational inv = 1 / cells_[pr][pc];
    for (auto& v : cells_[pr]) v *= inv;
    for (std::size_t r = 0; r < rows(); ++r) {
      if (r == pr || cells_[r][pc] == 0) continue;
      Rational f = cells_[r][pc];
      for (std::size_t c = 0; c <= cols_; ++c) {
        if (cells_[pr][c] != 0) cells_[r][c] -= f * cells_[pr][c];
      }
    }
    if (reduced_[pc] != 0) {
      Rational f = reduced_[pc];
      for (std::size_t c = 0; c <= cols_; ++c) {
        if (cells_[pr][c] != 0) reduced_[c] -= f * cells_[pr][c];
      }
    }
    basis_[pr] = pc;
    ++pivots_;
  }

  // Runs Bland-rule iterations over the allowed columns. Returns false when
  // the objective is unbounded.
  bool optimize(const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t enter = kNone;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (allowed[c] && reduced_[c] > 0) {
          enter = c;
          break;
        }
      }
      if (enter == kNone) return true;
      std::size_t leave = kNone;
      Rational best_ratio;
      for (std::size_t r = 0; r < rows(); ++r) {
        if (cells_[r][enter] <= 0) continue;
        Rational ratio = cells_[r][cols_] / cells_[r][enter];
        if (leave == kNone || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave == kNone) return false;
      pivot(leave, enter);
    }
  }

  void drop_row(std::size_t r) {
    cells_.erase(cells_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  std::size_t pivots() const { return pivots_; }

 private:
  std::size_t cols_;
  std::vector<Vec> cells_;
  std::vector<std::size_t> basis_;
  Vec reduced_;
  std::size_t pivots_ = 0;
};

}  // namespace

Solution solve(const Problem& problem) {
  const auto& free = problem.free_flags();
  const auto& rows = problem.rows();

  // Column layout: structural columns (free variables split in two), then
  // one slack/surplus per inequality row, then one artificial per row that
  // lacks a ready basic slack.
  std::vector<std::size_t> pos_col(free.size()), neg_col(free.size(), kNone);
  std::size_t cols = 0;
  for (std::size_t v = 0; v < free.size(); ++v) {
    pos_col[v] = cols++;
    if (free[v]) neg_col[v] = cols++;
  }

  struct Shape {
    int sign;  // multiplier applied so rhs >= 0
    Relation relation;
    std::size_t slack = kNone;
    std::size_t artificial = kNone;
  };
  std::vector<Shape> shapes(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Shape& s = shapes[r];
    s.sign = rows[r].rhs < 0 ? -1 : 1;
    s.relation = rows[r].relation;
    if (s.sign < 0 && s.relation != Relation::kEqual) {
      s.relation = s.relation == Relation::kLessEqual ? Relation::kGreaterEqual
                                                      : Relation::kLessEqual;
    }
    if (s.relation != Relation::kEqual) s.slack = cols++;
  }
  const std::size_t first_artificial = cols;
  for (auto& s : shapes) {
    if (s.relation != Relation::kLessEqual) s.artificial = cols++;
  }

  Tableau t(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Shape& s = shapes[r];
    for (const auto& [var, coef] : rows[r].lhs) {
      t.at(r, pos_col[var]) += s.sign * coef;
      if (neg_col[var] != kNone) t.at(r, neg_col[var]) -= s.sign * coef;
    }
    t.rhs(r) = s.sign * rows[r].rhs;
    if (s.slack != kNone) {
      t.at(r, s.slack) = s.relation == Relation::kLessEqual ? 1 : -1;
    }
    if (s.artificial != kNone) {
      t.at(r, s.artificial) = 1;
      t.basic(r) = s.artificial;
    } else {
      t.basic(r) = s.slack;
    }
  }

  Solution out;
  std::vector<bool> allowed(cols, true);

  if (first_artificial < cols) {
    Vec phase1(cols);
    for (std::size_t c = first_artificial; c < cols; ++c) phase1[c] = -1;
    t.price(phase1);
    t.optimize(allowed);
    Rational infeasibility = 0;
    for (std::size_t r = 0; r < t.rows(); ++r) {
      if (t.basic(r) >= first_artificial) infeasibility += t.rhs(r);
    }
    if (infeasibility != 0) {
      out.status = Status::kInfeasible;
      out.pivots = t.pivots();
      return out;
    }
    // Drive zero-level artificials out of the basis; rows where that is
    // impossible are linearly dependent and are dropped.
    for (std::size_t r = t.rows(); r-- > 0;) {
      if (t.basic(r) < first_artificial) continue;
      std::size_t col = kNone;
      for (std::size_t c = 0; c < first_artificial; ++c) {
        if (t.at(r, c) != 0) {
          col = c;
          break;
        }
      }
      if (col == kNone) {
        t.drop_row(r);
      } else {
        t.pivot(r, col);
      }
    }
    for (std::size_t c = first_artificial; c < cols; ++c) allowed[c] = false;
  }

  Vec costs(cols);
  for (const auto& [var, coef] : problem.objective()) {
    costs[pos_col[var]] += coef;
    if (neg_col[var] != kNone) costs[neg_col[var]] -= coef;
  }
  t.price(costs);
  if (!t.optimize(allowed)) {
    out.status = Status::kUnbounded;
    out.pivots = t.pivots();
    return out;
  }

  Vec column_values(cols);
  for (std::size_t r = 0; r < t.rows(); ++r) column_values[t.basic(r)] = t.rhs(r);
  out.values.resize(free.size());
  for (std::size_t v = 0; v < free.size(); ++v) {
    out.values[v] = column_values[pos_col[v]];
    if (neg_col[v] != kNone) out.values[v] -= column_values[neg_col[v]];
  }
  Rational objective = 0;
  for (const auto& [var, coef] : problem.objective()) {
    objective += coef * out.values[var];
  }
  out.objective = problem.minimizing() ? Rational(-objective) : objective;
  out.status = Status::kOptimal;
  out.pivots = t.pivots();
  return out;
}

}  // namespace cmstoch::lp
