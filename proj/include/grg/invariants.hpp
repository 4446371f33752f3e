#pragma once

#include <string>
#include <utility>
#include <vector>

#include "grg/tensor.hpp"

namespace grg {

/// Carminati-McLenaghan invariants, built from the Plebanski tensor S, the
/// Weyl tensor C and its left dual *C. Dimension 4 only.
enum class CmInvariant { R1, R2, R3, W1, W2, M1, M2, M3, M4, M5 };

const std::vector<CmInvariant>& cm_invariants();
std::string to_string(CmInvariant which);
/// Accepts "R1" .. "M5"; throws DomainError otherwise.
CmInvariant cm_invariant_from_string(const std::string& name);

///   R1 = S^a_b S^b_a / 4
///   R2 = -S^a_b S^b_c S^c_a / 8
///   R3 = S^a_b S^b_c S^c_d S^d_a / 16
///   W1 = (C_abcd + i *C_abcd) C^abcd / 8
///   W2 = -(C_ab^cd + i *C_ab^cd) C_cd^ef C_ef^ab / 16
///   M1 = S^ad S^bc (C_abcd - i *C_abcd) / 8
///   M2 = i *C_abcd S^bc S_ef C^aefd / 8
///        + S^bc S_ef (C_abcd C^aefd - *C_abcd *C^aefd) / 16
///   M3 = S^bc S_ef (C_abcd C^aefd + *C_abcd *C^aefd) / 16
///   M4 = -S^ag S^c_d S^ef (C_ac^db C_befg + *C_ac^db *C_befg) / 32
///   M5 = S^bc S^ef (i *C^aghd + C^aghd)(*C_abcd *C_gefh + C_abcd C_gefh) / 32
Expr cm_invariant(Session& s, CmInvariant which);

/// All ten in one session, sharing every cache.
std::vector<std::pair<CmInvariant, Expr>> cm_all(Session& s);

}  // namespace grg
