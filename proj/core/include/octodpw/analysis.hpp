#pragma once

#include "octodpw/connection.hpp"
#include "octodpw/grid.hpp"
#include "octodpw/isotropic.hpp"
#include "octodpw/octonion.hpp"

namespace octodpw {

/// Stats over points at least `margin` from the boundary.
ResidualStats interior_stats(const Field<double>& values, int margin);

/// Tangents by central differences, one-sided at the boundary.
std::pair<Field<Octonion>, Field<Octonion>> tangents(const Field<Octonion>& X);

struct RhoField {
  Field<Octonion> rho;           ///< X_v = ρ X_u
  Field<double> conformality;    ///< max(| |X_v|/|X_u| − 1 |, |⟨X_u,X_v⟩| / |X_u||X_v|)
  Field<double> unit_defect;     ///< | |ρ| − 1 |
};

/// ρ_X = X_v X̄_u / N(X_u), the star convention ∗du = dv. Throws DegeneratePoint
/// when |X_u| < 1e-6 times the domain extent.
RhoField rho_field(const Field<Octonion>& Xu, const Field<Octonion>& Xv);
RhoField rho_field(const Field<Octonion>& X);

/// |Δρ + |dρ|²ρ| with the five-point Laplacian; zero within `margin` of the boundary.
Field<double> tension_field(const Field<Octonion>& rho, int margin = 2);

/// Frame data of a Σ_V immersion dX = e^f (q du + q' dv).
struct SigmaVFields {
  Field<Octonion> q, qp;
  Field<Quaternion> rho;  ///< ρ(q, q') = x̄y' − x̄'y
  Field<double> f;
};

/// e^f = √((|X_u|² + |X_v|²)/2).
SigmaVFields sigma_v_fields(const Field<Octonion>& Xu, const Field<Octonion>& Xv);

struct MeanCurvatureField {
  Field<Octonion> laplacian;      ///< (e^{−2f}/2) ΔX
  Field<Octonion> difference;     ///< (e^{−2f}/2)((∂_vρ)X_u − (∂_uρ)X_v)
  Field<Octonion> rho_form;       ///< (e^{−2f}/2) ρ((∂_uρ)X_u + (∂_vρ)X_v)
  Field<Octonion> sigma_v;        ///< Σ_V form in (q, q', γ^d, γ^g)
  Field<Octonion> sigma_v_split;  ///< Σ_V form in (E₁, γ), (e^{−f}/2) R_ρ(yγ_v − xγ_u, yγ_u + xγ_v)
};

/// H = (e^{−f}/2)[Diag(−R_{γ^d_u}, R_{γ^g_u}) q + Diag(−R_{γ^d_v}, R_{γ^g_v}) q'] with
/// γ^d = dρ ρ⁻¹, γ^g = ρ⁻¹dρ. Throws NonIsotropicFrame when |B(q,q')| > tol.
Field<Octonion> sigma_v_mean_curvature(const SigmaVFields& s, double tol = 1e-6);

/// All mean-curvature forms. Derivatives of ρ and ΔX by finite differences;
/// the Σ_V forms are left zero when |B(q,q')| exceeds isotropy_tol somewhere.
MeanCurvatureField mean_curvature(const Field<Octonion>& X, const Field<Octonion>& Xu, const Field<Octonion>& Xv,
                                  double isotropy_tol = 1e-2);
MeanCurvatureField mean_curvature(const Field<Octonion>& X, double isotropy_tol = 1e-2);

/// Max over points of |a − b|.
ResidualStats difference_stats(const Field<Octonion>& a, const Field<Octonion>& b, int margin);

struct ClosednessResidual {
  Field<double> linear;    ///< ∂_vE₁ − ∂_uE₂ + (0, y₁γ_v) − (0, y₂γ_u)
  Field<double> split;     ///< both scalar-pair equations in (x, y) = E₁
  Field<double> complex;   ///< ∂_z̄E + ½Diag(R_{γ_z̄}, R_{γ_z̄})E + ½Diag(R_{γ_z}, −R_{γ_z})Ē
  Field<double> structure;  ///< |E₂ − L_Ê E₁|
};

/// Residuals of the linear equations for (E₁, E₂) = R_ρ⁻¹(X_u, X_v).
/// The split system is x_v + y_u = 0, y_v − x_u + yγ_v − xγ_u = 0.
ClosednessResidual closedness_residual(const Field<Octonion>& E1, const Field<Octonion>& E2,
                                       const Field<Quaternion>& rho);

/// (E₁, E₂) = R_ρ⁻¹(X_u, X_v) with ρ = ρ(X_u, X_v)/|X_u|².
std::pair<Field<Octonion>, Field<Octonion>> linear_fields(const Field<Octonion>& Xu, const Field<Octonion>& Xv,
                                                          Field<Quaternion>* rho = nullptr);

/// Per-point type of the tangent plane (p scaled by |X_u|²).
Field<OrbitClass> singular_map(const Field<Octonion>& Xu, const Field<Octonion>& Xv, double band = 1e-8);

/// |B(X_u, X_v)| and max_{i=1,2,3} |ω_i(X_u, X_v)|, both relative to |X_u|².
Field<double> bform_isotropy(const Field<Octonion>& Xu, const Field<Octonion>& Xv);
Field<double> omega_isotropy(const Field<Octonion>& Xu, const Field<Octonion>& Xv);

/// Residual of the compatibility form in (θ, A, α̃, δ, γ'):
///   iθ_z̄A + δ_z̄A + Aα̃_z̄ + A_z̄ + ½Aγ'_z̄ + ½e^{−2iθ}Āγ'_z,
/// with (E₁, E₂) = g·(α, β)·(q₀, q₀')·R_θ, g = Diag(R_aL_c, R_aL_c),
/// A = (α + iIβ)/√2, α̃ = da ā, δ = c̄ dc, γ' = aγā. The lift (a, c, θ) is made
/// continuous from the first grid point, fixing the stabilizer freedom
/// (a, c) ↦ (e^{Iφ}a, c e^{−Iφ}) by nearest choice. Points of type P₁ or P₂ and
/// their neighbours are skipped (value −1).
Field<double> compatibility_residual(const Field<Octonion>& E1, const Field<Octonion>& E2,
                                     const Field<Quaternion>& rho, Branch branch = Branch::Low);

}  // namespace octodpw
