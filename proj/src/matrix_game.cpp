#include "cmstoch/matrix_game.hpp"

#include <algorithm>
#include <functional>

#include "cmstoch/errors.hpp"
#include "cmstoch/lp.hpp"

namespace cmstoch {
namespace {

// Saturating binomial coefficient.
std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  long double acc = 1;
  for (std::size_t i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
  if (acc > 1e18L) return static_cast<std::size_t>(1e18);
  return static_cast<std::size_t>(acc + 0.5L);
}

// Calls visit(subset) for every k-subset of {0..n-1} in lexicographic order.
void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Extreme points of {x in R^d : x >= 0, sum x = 1, a_c . x >= rhs for each
// column a_c of `constraints` (d x c)}. `sense` = +1 for >=, -1 for <=.
std::vector<Vec> simplex_face_vertices(const Matrix& constraints,
                                       const Rational& rhs, int sense,
                                       std::size_t guard) {
  const std::size_t d = constraints.rows();
  const std::size_t c = constraints.cols();
  const std::size_t total = d + c;
  if (binomial(total, d - 1) > guard) {
    throw GuardExceeded("vertex enumeration over " + std::to_string(total) +
                        " constraints in dimension " + std::to_string(d) +
                        " exceeds the guard of " + std::to_string(guard));
  }

  // Inequality k: for k < d, x_k >= 0; otherwise sense*(a . x - rhs) >= 0.
  auto feasible = [&](const Vec& x) {
    for (const auto& xi : x)
      if (xi < 0) return false;
    for (std::size_t col = 0; col < c; ++col) {
      Rational lhs = 0;
      for (std::size_t r = 0; r < d; ++r) lhs += constraints(r, col) * x[r];
      if (sense * (lhs - rhs) < 0) return false;
    }
    return true;
  };

  std::vector<Vec> vertices;
  for_each_subset(total, d - 1, [&](const std::vector<std::size_t>& active) {
    Matrix a(d, d);
    Vec b(d);
    for (std::size_t row = 0; row < active.size(); ++row) {
      std::size_t k = active[row];
      if (k < d) {
        a(row, k) = 1;
      } else {
        for (std::size_t r = 0; r < d; ++r) a(row, r) = constraints(r, k - d);
        b[row] = rhs;
      }
    }
    for (std::size_t r = 0; r < d; ++r) a(d - 1, r) = 1;
    b[d - 1] = 1;
    auto x = solve_unique(a, b);
    if (x && feasible(*x)) vertices.push_back(std::move(*x));
  });
  std::sort(vertices.begin(), vertices.end(), std::greater<>());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

bool all_positive(const std::vector<Vec>& vertices) {
  return std::all_of(vertices.begin(), vertices.end(), [](const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x > 0; });
  });
}

}  // namespace

Rational matrix_game_value(const Matrix& m) {
  // Shift to a strictly positive game, then max sum(y) s.t. M' y <= 1.
  const Rational shift = 1 - m.min_entry();
  lp::Problem p;
  for (std::size_t j = 0; j < m.cols(); ++j) p.add_variable();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    lp::LinearExpr row;
    for (std::size_t j = 0; j < m.cols(); ++j) row.emplace_back(j, m(i, j) + shift);
    p.add_constraint(std::move(row), lp::Relation::kLessEqual, 1);
  }
  lp::LinearExpr obj;
  for (std::size_t j = 0; j < m.cols(); ++j) obj.emplace_back(j, 1);
  p.maximize(std::move(obj));
  lp::Solution sol = lp::solve(p);
  if (sol.status != lp::Status::kOptimal || sol.objective <= 0) {
    throw InternalError("matrix game LP did not reach an optimum");
  }
  Rational value = 1 / sol.objective - shift;
  value.canonicalize();
  return value;
}

OptimalVertices enumerate_optimal_vertices(const Matrix& m,
                                           const Rational& value,
                                           std::size_t guard) {
  OptimalVertices out;
  out.p1 = simplex_face_vertices(m, value, +1, guard);
  out.p2 = simplex_face_vertices(m.transpose(), value, -1, guard);
  return out;
}

CmCertificate certify(const Matrix& m, const OptimalVertices& vertices) {
  CmCertificate cert;
  cert.square = m.is_square();
  cert.p1_unique = vertices.p1.size() == 1;
  cert.p2_unique = vertices.p2.size() == 1;
  cert.p1_positive = all_positive(vertices.p1);
  cert.p2_positive = all_positive(vertices.p2);
  if (!cert.square) {
    cert.reason = "matrix is not square";
  } else if (!cert.p1_positive) {
    cert.reason = "player 1 has an optimal strategy with a zero coordinate";
  } else if (!cert.p2_positive) {
    cert.reason = "player 2 has an optimal strategy with a zero coordinate";
  } else if (!cert.p1_unique) {
    cert.reason = "player 1 optimal strategy is not unique";
  } else if (!cert.p2_unique) {
    cert.reason = "player 2 optimal strategy is not unique";
  } else {
    cert.reason = "completely mixed";
  }
  return cert;
}

MatrixGameSolution solve_matrix_game(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) {
    throw ValidationError("matrix game needs at least one row and column");
  }
  MatrixGameSolution sol;
  sol.value = matrix_game_value(m);
  OptimalVertices v = enumerate_optimal_vertices(m, sol.value);
  if (v.p1.empty() || v.p2.empty()) {
    throw InternalError("no optimal vertex found at the LP value");
  }
  sol.certificate = certify(m, v);
  sol.completely_mixed = sol.certificate.square && sol.certificate.p1_unique &&
                         sol.certificate.p2_unique &&
                         sol.certificate.p1_positive &&
                         sol.certificate.p2_positive;
  sol.p1_vertices = std::move(v.p1);
  sol.p2_vertices = std::move(v.p2);
  return sol;
}

CmCheck is_completely_mixed(const Matrix& m) {
  MatrixGameSolution sol = solve_matrix_game(m);
  return {sol.completely_mixed, sol.certificate};
}

const char* to_string(KaplanskyStatus status) {
  switch (status) {
    case KaplanskyStatus::kOk: return "ok";
    case KaplanskyStatus::kValueZero: return "value_zero";
    case KaplanskyStatus::kNotCompletelyMixed: return "not_completely_mixed";
    case KaplanskyStatus::kInconsistent: return "inconsistent";
  }
  return "inconsistent";
}

KaplanskyResult kaplansky_value(const Matrix& m) {
  KaplanskyResult out;
  MatrixGameSolution sol = solve_matrix_game(m);
  if (sol.value == 0) {
    out.status = KaplanskyStatus::kValueZero;
    return out;
  }
  if (!sol.completely_mixed) {
    out.status = KaplanskyStatus::kNotCompletelyMixed;
    return out;
  }
  out.determinant = determinant(m);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.cofactor_sum += cofactor(m, i, j);
  if (out.cofactor_sum == 0) {
    out.status = KaplanskyStatus::kInconsistent;
    return out;
  }
  out.value = out.determinant / out.cofactor_sum;
  out.status = out.value == sol.value ? KaplanskyStatus::kOk
                                      : KaplanskyStatus::kInconsistent;
  return out;
}

EqualizerResult equalizer_check(const Matrix& m, const Vec& x, const Vec& y,
                                const Rational& v) {
  if (x.size() != m.rows() || y.size() != m.cols()) {
    throw ValidationError("strategy length does not match the matrix");
  }
  EqualizerResult out;
  Vec column_payoffs = left_multiply(x, m);
  Vec row_payoffs = m * y;
  out.equalized = true;
  out.x_optimal = sum(x) == 1;
  for (const auto& xi : x) out.x_optimal = out.x_optimal && xi >= 0;
  for (std::size_t j = 0; j < column_payoffs.size(); ++j) {
    if (column_payoffs[j] != v && out.equalized) {
      out.equalized = false;
      out.violating_column = j;
    }
    if (column_payoffs[j] < v) out.x_optimal = false;
  }
  out.y_optimal = sum(y) == 1;
  for (const auto& yj : y) out.y_optimal = out.y_optimal && yj >= 0;
  for (const auto& r : row_payoffs) out.y_optimal = out.y_optimal && r <= v;
  return out;
}

Matrix column_shift(const Matrix& a, const Vec& b) {
  if (b.size() != a.cols()) {
    throw ValidationError("shift vector length does not match the columns");
  }
  Matrix c = a;
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (b[j] < 0) {
      throw ValidationError("shift vector entry " + std::to_string(j + 1) +
                            " is negative");
    }
    for (std::size_t i = 0; i < a.rows(); ++i) c(i, j) += b[j];
  }
  return c;
}

Lemma2Result lemma2_reduce(const Matrix& a, const Vec& b) {
  if (!a.is_symmetric()) throw ValidationError("A must be square and symmetric");
  if (a.min_entry() <= 0) throw ValidationError("A must be entrywise positive");

  Lemma2Result out;
  out.shifted = column_shift(a, b);
  MatrixGameSolution c = solve_matrix_game(out.shifted);
  out.shifted_certificate = c.certificate;
  out.shifted_value = c.value;
  out.applicable = c.completely_mixed;
  if (!out.applicable) return out;

  out.y = c.p2_vertices.front();
  out.delta = c.value - dot(b, out.y);
  Vec ay = a * out.y;
  out.equalizes = std::all_of(ay.begin(), ay.end(),
                              [&](const Rational& r) { return r == out.delta; });
  out.a_nonsingular = determinant(a) != 0;
  MatrixGameSolution direct = solve_matrix_game(a);
  out.a_completely_mixed = direct.completely_mixed && direct.value == out.delta &&
                           direct.p1_vertices.front() == out.y &&
                           direct.p2_vertices.front() == out.y;
  return out;
}

}  // namespace cmstoch
