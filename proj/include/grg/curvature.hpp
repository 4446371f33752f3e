#pragma once

#include "grg/tensor.hpp"

namespace grg {

/// Registry names of the predefined tensors.
namespace names {
inline constexpr const char* metric = "metric";
inline constexpr const char* christoffel = "christoffel";
inline constexpr const char* riemann = "riemann";
inline constexpr const char* ricci = "ricci";
inline constexpr const char* ricci_scalar = "ricciScalar";
inline constexpr const char* einstein = "einstein";
inline constexpr const char* weyl = "weyl";
inline constexpr const char* dual_weyl = "dualweyl";
inline constexpr const char* plebanski = "plebanski";
inline constexpr const char* levi_civita = "leviCivita";
}  // namespace names

/// Defines the predefined tensors on the session's manifold:
///
///   metric       g_ij; (-,-) gives g^ij and mixed valence the delta
///   christoffel  Gamma^a_bc at valence (-,+,+) only, symmetric in b,c
///   riemann      R^a_bcd = d_c Gamma^a_db - d_d Gamma^a_cb
///                          + Gamma^a_ce Gamma^e_db - Gamma^a_de Gamma^e_cb
///   ricci        R_ij = sum_s R^s_isj
///   ricciScalar  rank 0, g^ij R_ij
///   einstein     R_ij - R g_ij / 2
///   weyl         traceless part of R_abcd (zero in dimension 3)
///   dualweyl     (1/2) eps_abef C^ef_cd (dimension 4)
///   plebanski    R_ij - R g_ij / 4 (dimension 4)
///   leviCivita   eps_1..n = sqrt|det g|, totally antisymmetric
///
/// Called by Session::open().
void install_curvature(Session& s);

/// The symmetries of the all-covariant Riemann tensor: antisymmetry in each
/// pair and pair exchange.
std::vector<Symmetry> riemann_symmetries();

Expr ricci_scalar(Session& s);
Expr kretschmann(Session& s);

}  // namespace grg
