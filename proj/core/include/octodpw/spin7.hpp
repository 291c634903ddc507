#pragma once

#include <vector>

#include "octodpw/octonion.hpp"

namespace octodpw {

/// q × q' = −Im(q q̄'), a pure octonion.
Octonion cross(const Octonion& q, const Octonion& qp);

/// χ_g(u) = g(u · g⁻¹(1)) for orthogonal g.
Octonion chi(const Operator8& g, const Octonion& u);

/// Max over basis pairs of |g(e_i e_j) − χ_g(e_i) g(e_j)|.
double spin7_residual(const Operator8& g);

/// Throws NotOrthogonal when |gᵀg − Id| > tol.
bool is_spin7(const Operator8& g, double tol = 1e-8);

/// L_{u1} L_{u2} ⋯ L_{un}.
Operator8 spin7_word(const std::vector<Octonion>& generators);

/// Index set I ⊂ {1..7}.
using IsotropySet = std::vector<int>;

bool in_G_I(const Operator8& g, const IsotropySet& I, double tol = 1e-8);
bool in_V_I(const Octonion& q, const Octonion& qp, const IsotropySet& I, double tol = 1e-8);

/// C = ⟨q,q'⟩ + ⟨q,I₁q'⟩ i + ⟨q,I₂q'⟩ j + ⟨q,I₃q'⟩ k with I₁ = L_{e1},
/// I₂ = L_{e2}, I₃ = I₁I₂. Constant on Spin(5) orbits in V_{1,2}.
Quaternion hermitian_form_C(const Octonion& q, const Octonion& qp);

/// ρ̃_I(g) = χ_g(e_{|I|+1}) for I = {1..|I|}.
Octonion tilde_rho_I(const Operator8& g, int cardinality);

struct MeanCurvatureForms {
  Octonion difference_form;  ///< (e^{−2f}/2)((∂_v ρ) X_u − (∂_u ρ) X_v)
  Octonion rho_form;         ///< (e^{−2f}/2) ρ((∂_u ρ) X_u + (∂_v ρ) X_v)
};

/// Mean curvature of a conformal immersion from ρ_X = X_v X̄_u / N(X_u).
/// Throws NonConformalFrame when the relative conformality defect exceeds tol.
MeanCurvatureForms general_mean_curvature(const Octonion& Xu, const Octonion& Xv, const Octonion& rho,
                                          const Octonion& rho_u, const Octonion& rho_v, double f,
                                          double tol = 1e-3);

/// ρ with X_v = ρ X_u.
Octonion rho_from_tangents(const Octonion& Xu, const Octonion& Xv);

}  // namespace octodpw
