#pragma once

#include <string>

#include "grg/tensor.hpp"

namespace grg {

/// Registers a rank-0 field with value `f` under `name`.
TensorField& scalar_field(Session& s, const std::string& name, const Expr& f);

/// "covariantD[T]": rank(T)+1, derivative index last. At base valence
///   T_..;m = d_m T_.. - sum_cov Gamma^s_{m i} T_..s.. + sum_contra Gamma^a_{m s} T_..^s..
/// Reuses an existing registration of the same name.
TensorField& covariant_d(Session& s, const std::string& tensor);

/// T_idx;m;n by two applications of covariant_d.
Expr covariant_d2(Session& s, const std::string& tensor, const IndexTuple& idx, int m, int n);

/// sum_i f_;i^;i for an expression f on the manifold.
Expr scalar_laplacian(Session& s, const Expr& f);

/// "lieD[U][T]" from partial derivatives:
///   U^s d_s T_.. + sum_cov T_..s.. d_i U^s - sum_contra T_..s.. d_s U^a
/// U must have rank 1.
TensorField& lie_d(Session& s, const std::string& u, const std::string& tensor);

}  // namespace grg
