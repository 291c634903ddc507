#pragma once

#include <Eigen/Core>
#include <complex>

#include "octodpw/integrate.hpp"
#include "octodpw/loop.hpp"

namespace octodpw {

/// ℍ⊗ℂ ≅ M₂(ℂ): w + xi + yj + zk ↦ [[w + ix, y + iz], [−y + iz, w − ix]].
Eigen::Matrix2cd to_matrix(const CQuaternion& q);
CQuaternion from_matrix(const Eigen::Matrix2cd& m);

struct IwasawaOptions {
  int k_initial = 8;
  int k_max = 512;
  /// Relative bound on the negative-power part of B and the unitarity defect of U.
  double tol = 1e-12;
  /// Also form the full translation loops of U and B (needed for products and
  /// Birkhoff).
  bool full_translation = false;
};

/// m = u·b with u unit and real on S¹, b holomorphic in the disc and b(0)
/// upper triangular with positive diagonal in the matrix picture.
struct QuaternionIwasawa {
  Loop<CQuaternion> unitary, positive;
  double negative_residual = 0;
  double unitarity_defect = 0;
  int K = 0;
};

/// Toeplitz QR in one loop variable. Throws FactorizationDiverged.
QuaternionIwasawa iwasawa_quaternion(const Loop<CQuaternion>& m, const IwasawaOptions& opts = {});

struct BirkhoffOptions {
  int k_extra = 8;
  int k_max = 256;
  double tol = 1e-12;
  /// Points whose Toeplitz block has a larger condition number are off the big cell.
  double max_condition = 1e12;
};

/// m = m⁻·m⁺ with m⁻ = 1 + O(μ⁻¹) and m⁺ holomorphic in the disc, for loops
/// with norm2 ≡ 1 (m⁻ is read off as the conjugate of (m⁻)⁻¹). `inverse_minus`
/// is the truncated (m⁻)⁻¹ solved for directly.
struct QuaternionBirkhoff {
  Loop<CQuaternion> minus, inverse_minus, plus;
  double condition = 1;
  double residual = 0;
  bool big_cell = true;
  int K = 0;
};

QuaternionBirkhoff birkhoff_quaternion(const Loop<CQuaternion>& m, const BirkhoffOptions& opts = {});

/// H = U·B. U is real on S¹; B ∈ Λ⁺ with B(0) = (a₀, a₀, c₀, 0) in the Borel part.
struct IwasawaResult {
  HolomorphicFrame U, B;  ///< translation loops filled only with full_translation
  Loop<COctonion> Y_minus;  ///< negative-power part of F_U⁻¹ T_H
  COctonion TB1;            ///< λ¹ coefficient of T_B
  double negative_residual = 0;
  double unitarity_defect = 0;
  int K_a = 0, K_c = 0;

  /// U at λ from the linear loops and Y₋: T_U = F_U (Y₋ + conj Y₋).
  AffineElement U_at(std::complex<double> lambda) const;
  /// B(0).
  AffineElement B0() const;
};

IwasawaResult iwasawa_factorize(const HolomorphicFrame& H, const IwasawaOptions& opts = {});

/// U = U⁻·U⁺ for a real twisted loop with full translation part.
struct BirkhoffResult {
  Loop<CQuaternion> a_minus, c_minus;  ///< U⁻ linear loops (μ and ν)
  Loop<CQuaternion> abar_minus, cbar_minus;  ///< their inverses ā⁻, c̄⁻
  COctonion T_minus1;                  ///< λ⁻¹ coefficient of T⁻
  double condition = 1;
  double residual = 0;
  bool big_cell = true;
};

BirkhoffResult birkhoff_factorize(const HolomorphicFrame& U, const BirkhoffOptions& opts = {});

/// λ^k coefficient of F⁻¹T for F = (a, a(−μ), c) given by ā (in μ) and c̄ (in ν).
COctonion inverse_linear_coeff(const Loop<CQuaternion>& abar, const Loop<CQuaternion>& cbar, const Loop<COctonion>& T,
                               int k);

}  // namespace octodpw
