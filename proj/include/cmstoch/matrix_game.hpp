#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cmstoch/linalg.hpp"
#include "cmstoch/rational.hpp"

namespace cmstoch {

// Why a matrix game is (or is not) completely mixed.
struct CmCertificate {
  bool square = false;
  bool p1_unique = false;
  bool p2_unique = false;
  bool p1_positive = false;  // every listed maximizer vertex > 0
  bool p2_positive = false;
  std::string reason;  // first failing condition, or "completely mixed"
};

struct MatrixGameSolution {
  Rational value;
  // Extreme optimal strategies, sorted so that vertices favouring
  // lower-index actions come first. front() is the canonical strategy.
  std::vector<Vec> p1_vertices;
  std::vector<Vec> p2_vertices;
  bool completely_mixed = false;
  CmCertificate certificate;
};

struct OptimalVertices {
  std::vector<Vec> p1;
  std::vector<Vec> p2;
};

// Default cap on the number of active-constraint subsets examined by the
// vertex enumerator.
inline constexpr std::size_t kDefaultVertexGuard = 2'000'000;

// Minimax value by exact simplex (the maximizer chooses rows).
Rational matrix_game_value(const Matrix& m);

// All extreme points of {x >= 0, sum x = 1, x^T M >= v} and of
// {y >= 0, sum y = 1, M y <= v}. Throws GuardExceeded when the number of
// candidate bases exceeds `guard`.
OptimalVertices enumerate_optimal_vertices(const Matrix& m,
                                           const Rational& value,
                                           std::size_t guard = kDefaultVertexGuard);

MatrixGameSolution solve_matrix_game(const Matrix& m);

struct CmCheck {
  bool completely_mixed = false;
  CmCertificate certificate;
};
CmCheck is_completely_mixed(const Matrix& m);
CmCertificate certify(const Matrix& m, const OptimalVertices& vertices);

enum class KaplanskyStatus { kOk, kValueZero, kNotCompletelyMixed, kInconsistent };
const char* to_string(KaplanskyStatus status);

struct KaplanskyResult {
  KaplanskyStatus status = KaplanskyStatus::kInconsistent;
  Rational value;  // det / cofactor_sum when status == kOk
  Rational determinant;
  Rational cofactor_sum;
};

// det(M) / (sum of all cofactors of M), for completely mixed games with
// nonzero value. Any other case is reported through `status`.
KaplanskyResult kaplansky_value(const Matrix& m);

struct EqualizerResult {
  bool equalized = false;
  std::optional<std::size_t> violating_column;
  bool x_optimal = false;
  bool y_optimal = false;
};

// Checks x^T M == v e^T in every column, and reports whether x and y are
// optimal for v.
EqualizerResult equalizer_check(const Matrix& m, const Vec& x, const Vec& y,
                                const Rational& v);

// c_ij = a_ij + b_j. Throws ValidationError on a negative b entry or a size
// mismatch.
Matrix column_shift(const Matrix& a, const Vec& b);

struct Lemma2Result {
  bool applicable = false;  // C = column_shift(A, b) is completely mixed
  Matrix shifted;           // C
  CmCertificate shifted_certificate;
  Rational shifted_value;   // v
  Rational delta;           // v - b^T y, the value of A
  Vec y;                    // the unique optimal strategy of A (both players)
  bool a_completely_mixed = false;
  bool equalizes = false;   // A y == delta e exactly
  bool a_nonsingular = false;
};

// Column-shift reduction for a symmetric positive A. When C is completely
// mixed, recovers A's value and unique optimal strategy from C's solution
// and cross-checks them directly.
Lemma2Result lemma2_reduce(const Matrix& a, const Vec& b);

}  // namespace cmstoch
