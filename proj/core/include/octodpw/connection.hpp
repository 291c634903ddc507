#pragma once

#include <array>
#include <complex>
#include <vector>

#include "octodpw/grid.hpp"
#include "octodpw/lie.hpp"

namespace octodpw {

/// 𝔤̃^ℂ-valued 1-form A_u du + A_v dv sampled on a grid.
struct ConnectionField {
  Field<LieElement> Au, Av;
  explicit ConnectionField(const Grid& g = Grid{}) : Au(g), Av(g) {}
  const Grid& grid() const { return Au.grid(); }
};

/// α_λ = λ⁻²α₂' + λ⁻¹α₋₁' + α₀ + λα₁'' + λ²α₂''. The primed parts are stored
/// as dz coefficients, the double-primed parts as dz̄ coefficients.
struct ExtendedConnection {
  Field<LieElement> a2_z, am1_z, a0_u, a0_v, a1_zb, a2_zb;
  explicit ExtendedConnection(const Grid& g = Grid{}) : a2_z(g), am1_z(g), a0_u(g), a0_v(g), a1_zb(g), a2_zb(g) {}
  const Grid& grid() const { return a0_u.grid(); }

  /// The connection 1-form at λ.
  ConnectionField at(std::complex<double> lambda) const;
};

/// Per point max(|α₋₁''|, |α₁'|) / |α₋₁'|: zero for the Maurer-Cartan form of a Σ_V lift.
Field<double> sigma_v_defect(const ConnectionField& alpha);

/// Splits a 𝔤̃-valued α into grades and (1,0)/(0,1) parts. Throws NotSigmaV when
/// |α₋₁''| or |α₁'| exceeds tol·|α₋₁'| at some point.
ExtendedConnection assemble_extended(const ConnectionField& alpha, double tol = 1e-8);

/// Maurer-Cartan form U⁻¹dU of a grid of affine elements, by central
/// differences (one-sided at the boundary).
ConnectionField maurer_cartan_field(const Field<AffineElement>& U);

struct ResidualStats {
  double max = 0, mean = 0;
};

/// |∂_u A_v − ∂_v A_u + [A_u, A_v]| over points at least `margin` from the boundary.
ResidualStats zero_curvature_residual(const ConnectionField& A, int margin = 1);

/// Max of zero_curvature_residual(α_λ) over the λ samples.
ResidualStats zero_curvature_residual(const ExtendedConnection& alpha, const std::vector<std::complex<double>>& lambdas,
                                      int margin = 1);

/// Residuals of the four graded flatness equations (grades −1, 0, 1, 2):
///   dα₋₁ + [α₋₁∧α₀] + [α₁∧α₂], dα₀ + ½[α₀∧α₀] + ½[α₂∧α₂],
///   dα₁ + [α₁∧α₀] + [α₋₁∧α₂], dα₂ + [α₀∧α₂].
std::array<ResidualStats, 4> graded_flatness(const ConnectionField& alpha, int margin = 1);

/// d(∗α₂) + [α₀∧(∗α₂)] with ∗du = dv, ∗dv = −du.
ResidualStats harmonicity_defect(const ConnectionField& alpha, int margin = 1);

/// Max grade defect of Σ_k λ^k coefficients: per point |α₂' − [α₂']₂| etc.
double grading_residual(const ExtendedConnection& alpha);

}  // namespace octodpw
