#include "support.hpp"

#include <algorithm>

namespace oracle {

std::optional<Vec> solve(std::vector<Vec> a, Vec b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  for (std::size_t r = 0; r < rows; ++r) a[r].push_back(b[r]);
  std::size_t pivot_row = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    std::size_t p = pivot_row;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[pivot_row]);
    const Rational inv = 1 / a[pivot_row][c];
    for (auto& e : a[pivot_row]) e *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pivot_row || a[r][c] == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t k = c; k <= cols; ++k) a[r][k] -= f * a[pivot_row][k];
    }
    pivot_col.push_back(c);
    ++pivot_row;
  }
  for (std::size_t r = pivot_row; r < rows; ++r) {
    if (a[r][cols] != 0) return std::nullopt;
  }
  if (pivot_col.size() != cols) return std::nullopt;
  Vec x(cols);
  for (std::size_t r = 0; r < cols; ++r) x[pivot_col[r]] = a[r][cols];
  return x;
}

namespace {

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i) {
      if (pick[i]) s.push_back(i);
    }
    out.push_back(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

// Solves sum_{i in I} x_i B(i, j) = v for j in J, sum x = 1 (unknowns x_I, v).
std::optional<Vec> equalizer(const Matrix& m, const std::vector<std::size_t>& rows,
                             const std::vector<std::size_t>& cols, bool transpose) {
  const std::size_t k = rows.size();
  std::vector<Vec> a;
  Vec b;
  for (std::size_t c = 0; c < k; ++c) {
    Vec eq(k + 1);
    for (std::size_t r = 0; r < k; ++r) {
      eq[r] = transpose ? m(cols[c], rows[r]) : m(rows[r], cols[c]);
    }
    eq[k] = -1;
    a.push_back(eq);
    b.push_back(0);
  }
  Vec sum(k + 1, 1);
  sum[k] = 0;
  a.push_back(sum);
  b.push_back(1);
  return solve(a, b);
}

}  // namespace

KernelEnumeration enumerate_kernels(const Matrix& m) {
  const std::size_t n1 = m.rows();
  const std::size_t n2 = m.cols();
  std::vector<std::pair<Rational, std::pair<Vec, Vec>>> found;
  for (std::size_t k = 1; k <= std::min(n1, n2); ++k) {
    for (const auto& rows : subsets(n1, k)) {
      for (const auto& cols : subsets(n2, k)) {
        auto xs = equalizer(m, rows, cols, false);
        auto ys = equalizer(m, cols, rows, true);
        if (!xs || !ys) continue;
        const Rational v = (*xs)[k];
        if ((*ys)[k] != v) continue;
        Vec x(n1, 0);
        Vec y(n2, 0);
        bool ok = true;
        for (std::size_t r = 0; r < k; ++r) {
          x[rows[r]] = (*xs)[r];
          y[cols[r]] = (*ys)[r];
          ok = ok && (*xs)[r] >= 0 && (*ys)[r] >= 0;
        }
        if (!ok) continue;
        for (std::size_t j = 0; j < n2 && ok; ++j) {
          Rational s = 0;
          for (std::size_t i = 0; i < n1; ++i) s += x[i] * m(i, j);
          ok = s >= v;
        }
        for (std::size_t i = 0; i < n1 && ok; ++i) {
          Rational s = 0;
          for (std::size_t j = 0; j < n2; ++j) s += m(i, j) * y[j];
          ok = s <= v;
        }
        if (ok) found.push_back({v, {x, y}});
      }
    }
  }
  KernelEnumeration out;
  if (found.empty()) return out;  // cannot happen for a finite game
  out.value = found.front().first;
  for (const auto& [v, xy] : found) {
    out.p1.push_back(xy.first);
    out.p2.push_back(xy.second);
  }
  for (auto* vs : {&out.p1, &out.p2}) {
    std::sort(vs->begin(), vs->end());
    vs->erase(std::unique(vs->begin(), vs->end()), vs->end());
  }
  return out;
}

Rational game_value(const Matrix& m) { return enumerate_kernels(m).value; }

bool completely_mixed(const Matrix& m) {
  const KernelEnumeration k = enumerate_kernels(m);
  auto positive = [](const std::vector<Vec>& vs) {
    return std::all_of(vs.begin(), vs.end(), [](const Vec& v) {
      return std::all_of(v.begin(), v.end(), [](const Rational& p) { return p > 0; });
    });
  };
  return positive(k.p1) && positive(k.p2);
}

std::vector<std::vector<double>> empirical_cesaro(const Matrix& q, int n) {
  const std::size_t k = q.rows();
  std::vector<std::vector<double>> p(k, std::vector<double>(k, 0.0));
  std::vector<std::vector<double>> power(k, std::vector<double>(k, 0.0));
  std::vector<std::vector<double>> qd(k, std::vector<double>(k));
  for (std::size_t i = 0; i < k; ++i) {
    power[i][i] = 1.0;
    for (std::size_t j = 0; j < k; ++j) qd[i][j] = q(i, j).get_d();
  }
  for (int step = 0; step <= n; ++step) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) p[i][j] += power[i][j];
    }
    std::vector<std::vector<double>> next(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t l = 0; l < k; ++l) {
        if (power[i][l] == 0.0) continue;
        for (std::size_t j = 0; j < k; ++j) next[i][j] += power[i][l] * qd[l][j];
      }
    }
    power = std::move(next);
  }
  for (auto& row : p) {
    for (auto& e : row) e /= static_cast<double>(n + 1);
  }
  return p;
}

std::vector<std::vector<std::size_t>> all_pure_policies(
    const std::vector<std::size_t>& action_counts) {
  std::vector<std::vector<std::size_t>> out{{}};
  for (std::size_t count : action_counts) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& prefix : out) {
      for (std::size_t a = 0; a < count; ++a) {
        auto p = prefix;
        p.push_back(a);
        next.push_back(p);
      }
    }
    out = std::move(next);
  }
  return out;
}

Vec discounted_payoff(const StochasticGame& game, const StationaryStrategy& f,
                      const StationaryStrategy& g, const Rational& beta) {
  const std::size_t k = game.state_count();
  std::vector<Vec> a(k, Vec(k, 0));
  Vec r(k, 0);
  for (std::size_t s = 0; s < k; ++s) {
    a[s][s] += 1;
    for (std::size_t i = 0; i < game.actions_p1(s); ++i) {
      for (std::size_t j = 0; j < game.actions_p2(s); ++j) {
        const Rational w = f.at(s)[i] * g.at(s)[j];
        if (w == 0) continue;
        r[s] += w * game.payoff(s)(i, j);
        const Vec& q = game.transition(s, i, j);
        for (std::size_t t = 0; t < k; ++t) a[s][t] -= beta * w * q[t];
      }
    }
  }
  return *solve(a, r);
}

Matrix auxiliary(const StochasticGame& game, std::size_t s, const Rational& beta,
                 const Vec& v) {
  Matrix out(game.actions_p1(s), game.actions_p2(s));
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < out.cols(); ++j) {
      Rational e = game.payoff(s)(i, j);
      const Vec& q = game.transition(s, i, j);
      for (std::size_t t = 0; t < v.size(); ++t) e += beta * q[t] * v[t];
      out(i, j) = e;
    }
  }
  return out;
}

}  // namespace oracle

namespace gen {

cmstoch::Vec probability(Rng& rng, std::size_t n) {
  std::uniform_int_distribution<int> w(0, 3);
  std::vector<int> weights(n);
  int total = 0;
  while (total == 0) {
    total = 0;
    for (auto& x : weights) total += (x = w(rng));
  }
  cmstoch::Vec p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = cmstoch::Rational(weights[i], total);
  for (auto& x : p) x.canonicalize();
  return p;
}

cmstoch::Matrix integer_matrix(Rng& rng, std::size_t rows, std::size_t cols,
                               int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  cmstoch::Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
  }
  return m;
}

cmstoch::Matrix stochastic_matrix(Rng& rng, std::size_t n) {
  std::vector<cmstoch::Vec> rows;
  for (std::size_t i = 0; i < n; ++i) rows.push_back(probability(rng, n));
  return cmstoch::Matrix::from_rows(rows);
}

cmstoch::StochasticGame single_controller_game(Rng& rng, std::size_t max_states,
                                               std::size_t max_actions, int lo,
                                               int hi) {
  std::uniform_int_distribution<std::size_t> ks(1, max_states);
  std::uniform_int_distribution<std::size_t> as(1, max_actions);
  const std::size_t k = ks(rng);
  std::vector<cmstoch::Matrix> payoff;
  std::vector<std::vector<cmstoch::Vec>> transitions;
  for (std::size_t s = 0; s < k; ++s) {
    const std::size_t m1 = as(rng);
    const std::size_t m2 = as(rng);
    payoff.push_back(integer_matrix(rng, m1, m2, lo, hi));
    std::vector<cmstoch::Vec> by_column;
    for (std::size_t j = 0; j < m2; ++j) by_column.push_back(probability(rng, k));
    std::vector<cmstoch::Vec> law;
    for (std::size_t i = 0; i < m1; ++i) {
      for (std::size_t j = 0; j < m2; ++j) law.push_back(by_column[j]);
    }
    transitions.push_back(law);
  }
  return cmstoch::StochasticGame(std::move(payoff), std::move(transitions));
}

}  // namespace gen
