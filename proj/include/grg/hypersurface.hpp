#pragma once

#include <string>

#include "grg/tensor.hpp"

namespace grg {

/// v_i v^i, simplified. Throws DomainError("null vector") when the norm
/// vanishes identically.
Expr vector_squared(Session& s, const std::string& v);

/// "h[v]": first fundamental form h_ij = g_ij - v_i v_j / (v_k v^k) of the
/// hypersurfaces orthogonal to v. Symmetric.
TensorField& induced_metric(Session& s, const std::string& v);

/// "K[v]": K_ij = h_i^a h_j^b u_b;a with u = v / sqrt|v_k v^k|.
TensorField& second_fundamental_form(Session& s, const std::string& v);

}  // namespace grg
