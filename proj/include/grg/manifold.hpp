#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "grg/symexpr.hpp"

namespace grg {

using Matrix = std::vector<std::vector<Expr>>;

/// Coordinates, covariant metric and assumptions of the working manifold.
/// The inverse metric and the determinant are computed when the manifold is
/// opened; sqrt|det g| on first use.
class Manifold {
 public:
  /// Validates and builds the manifold. Throws ManifoldError for a
  /// non-square, asymmetric or singular metric and for repeated coordinates.
  static Manifold open(std::vector<std::string> coords, Matrix g, AssumptionSet assumptions = {});

  int dim() const { return static_cast<int>(coords_.size()); }
  const std::vector<std::string>& coords() const { return coords_; }
  /// Coordinate symbol, 1-based.
  const Expr& coord(int i) const;
  const AssumptionSet& assumptions() const { return assumptions_; }

  /// Signed 1-based access: both positive give g_ij, both negative g^ij,
  /// mixed signs the Kronecker delta.
  Expr metric(int i, int j) const;
  const Matrix& covariant() const { return g_; }
  const Matrix& contravariant() const { return g_inv_; }

  const Expr& det() const { return det_; }
  const Expr& sqrt_abs_det() const;
  /// +1 or -1, the sign of det g at a sample point.
  int det_sign() const { return det_sign_; }

  Expr simplify(const Expr& e) const { return grg::simplify(e, assumptions_); }
  /// Numeric equivalence under the assumptions; opaque functions are probed
  /// with every fixed test function.
  bool equivalent(const Expr& a, const Expr& b, const EquivalenceOptions& options = {}) const;

 private:
  Manifold() = default;

  std::vector<std::string> coords_;
  std::vector<Expr> coord_exprs_;
  Matrix g_;
  Matrix g_inv_;
  AssumptionSet assumptions_;
  Expr det_;
  int det_sign_ = 1;

  struct Lazy {
    std::once_flag once;
    Expr value;
  };
  std::shared_ptr<Lazy> sqrt_det_ = std::make_shared<Lazy>();
};

/// Reads the metric matrix off a quadratic form in the differentials
/// Dt[x] of `coords`. Off-diagonal entries take half the mixed coefficient.
Matrix to_matrix(const Expr& form, const std::vector<std::string>& coords);

/// Rebuilds the quadratic form sum g_ij Dt[x_i] Dt[x_j].
Expr from_matrix(const Matrix& g, const std::vector<std::string>& coords);

}  // namespace grg
