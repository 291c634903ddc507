#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "octodpw/factorize.hpp"
#include "octodpw/integrate.hpp"
#include "octodpw/isotropic.hpp"
#include "octodpw/potential.hpp"

namespace octodpw {

struct PipelineOptions {
  IntegrationOptions integration;
  IwasawaOptions iwasawa;
  /// Form T_B and check ‖U·B − H‖ on 16 circle samples at every point.
  bool check_product = true;
  /// Also Birkhoff-split U at every point (meromorphic potential samples).
  bool birkhoff = false;
  BirkhoffOptions birkhoff_options;
  /// Band around p = 0 and p = ½ for the singular types.
  double type_band = 1e-8;
};

/// Meromorphic potential η = λ⁻² η₋₂ + λ⁻¹ η₋₁ at one point.
struct MeromorphicSample {
  bool big_cell = true;
  double condition = 1;
  LieElement eta_m2, eta_m1;
  COctonion T_minus1;          ///< λ⁻¹ coefficient of U⁻'s translation
  CQuaternion a_minus1;        ///< μ⁻¹ coefficient of a⁻
  double positive_residual = 0;  ///< negative powers of P = (U⁻)⁻¹H
};

/// Largest per-point values over the grid.
struct PipelineStats {
  double product_residual = 0;    ///< ‖U·B − H‖ on S¹
  double negative_residual = 0;   ///< negative-power part of B
  double unitarity_defect = 0;
  double reality_residual = 0;    ///< imaginary part of U(λ) on S¹
  double twisting_residual = 0;   ///< |τ(U(λ)) − U(iλ)|
  double truncation_tail = 0;     ///< outermost coefficients of H
  int max_K = 0;
};

/// X_λ for each λ sample, with the tangents read off the frame:
/// X_u = F_U(λ⁻¹E + λĒ), X_v = F_U(iλ⁻¹E − iλĒ), E = α̂₋₁(∂/∂z).
struct DiscreteSurface {
  Grid grid;
  std::vector<std::complex<double>> lambdas;
  std::vector<Field<Octonion>> X, Xu, Xv;
  std::vector<Field<double>> f;  ///< log |X_u|
  std::vector<Field<OrbitClass>> types;
  Field<AffineElement> frame;      ///< U at λ = 1
  Field<LieElement> alpha_m2, alpha_m1;  ///< α̂₋₂, α̂₋₁ (dz coefficients)
  std::optional<Field<MeromorphicSample>> meromorphic;
  PipelineStats stats;

  std::size_t index_of(std::complex<double> lambda) const;
};

/// validate → integrate_H → Iwasawa per point → X_λ. Throws the first
/// validation issue, StepSizeTooCoarse, or FactorizationDiverged naming the
/// grid point.
DiscreteSurface extract_surface(const PotentialSpec& spec, const PipelineOptions& opts = {});

/// α̂₋₂ and α̂₋₁ from μ at z and the Iwasawa factor B:
/// α̂₋₂ = Ad_{B₀} μ̂₋₂, α̂₋₁ = Ad_{B₀} μ̂₋₁ − α̂₋₂·T_{B,1}.
std::pair<LieElement, LieElement> leading_coefficients(const IwasawaResult& r, const LieElement& mu_m2,
                                                       const LieElement& mu_m1);

/// Birkhoff splits U = U⁻U⁺; with P = (U⁻)⁻¹H ∈ Λ⁺, η = [Ad_P μ]₋ so
/// η₋₂ = Ad_{P₀} μ̂₋₂ and η₋₁ = Ad_{P₀} μ̂₋₁ − η₋₂·T_{P,1}.
MeromorphicSample meromorphic_sample(const HolomorphicFrame& U, const HolomorphicFrame& H, const LieElement& mu_m2,
                                     const LieElement& mu_m1, const BirkhoffOptions& opts = {});

struct PolynomialFit {
  std::vector<std::complex<double>> coeffs;  ///< in powers of (z − center)
  double residual = 0;                       ///< max misfit at the samples
};

/// Least-squares complex polynomial through (z_k, w_k), degree chosen as the
/// smallest reaching `tol`·max|w| (else the best up to max_degree).
PolynomialFit fit_holomorphic(const std::vector<std::complex<double>>& z, const std::vector<std::complex<double>>& w,
                              std::complex<double> center, int max_degree = 20, double tol = 1e-13);

struct RoundTripResult {
  PotentialSpec meromorphic;       ///< fitted η as a potential
  double fit_residual = 0;
  double derivative_check = 0;     ///< |∂_u T⁻₋₁ − η₋₁| and |∂_u a⁻ − …| by central differences
  double deviation = 0;            ///< max |X'₁ − X₁| over the big-cell subgrid
  std::size_t off_big_cell = 0;
  double off_big_cell_fraction = 0;
  double max_condition = 0;
  std::vector<std::pair<int, int>> singular_points;
};

/// dpw → Birkhoff → meromorphic potential → re-integrate, comparing X at λ = 1.
RoundTripResult round_trip(const PotentialSpec& spec, const PipelineOptions& opts = {});

}  // namespace octodpw
