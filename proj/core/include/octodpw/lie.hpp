#pragma once

#include <complex>

#include "octodpw/octonion.hpp"

namespace octodpw {

using cplx = std::complex<double>;
inline constexpr cplx I_c{0.0, 1.0};

/// (η, t) ∈ 𝔤̃^ℂ with η = Diag(R_α + L_δ, R_β + L_δ) and translation t.
struct LieElement {
  CQuaternion alpha, beta, delta;
  COctonion t;

  LieElement& operator+=(const LieElement& o);
  LieElement& operator-=(const LieElement& o);
  LieElement& operator*=(cplx s);
};

LieElement operator+(LieElement a, const LieElement& b);
LieElement operator-(LieElement a, const LieElement& b);
LieElement operator-(const LieElement& a);
LieElement operator*(cplx s, LieElement a);
LieElement operator*(LieElement a, cplx s);

double max_abs(const LieElement& v);
/// Complex conjugation (the real structure of 𝔤̃^ℂ).
LieElement cconj(const LieElement& v);
/// Largest imaginary component.
double imag_defect(const LieElement& v);

/// η·t = (t_x α + δ t_x, t_y β + δ t_y).
COctonion act(const LieElement& eta, const COctonion& t);

/// ([η,η'], η t' − η' t).
LieElement bracket(const LieElement& a, const LieElement& b);

/// L_Ê(x, y) = (−y, x).
COctonion L_E(const COctonion& t);

/// Ad of (−L_Ê, 0): (α, β, δ, t) ↦ (β, α, δ, −L_Ê t).
LieElement tau(const LieElement& v);

/// Projection onto the τ-eigenspace with eigenvalue i^k; k is taken mod 4.
LieElement project_grade(const LieElement& v, int k);

struct GradedComponent {
  int k = 0;  ///< 0..3
  LieElement payload;
};

GradedComponent graded(const LieElement& v, int k);

/// |v − [v]_k|.
double grade_defect(const LieElement& v, int k);

/// Grade −1 element with translation w·ε = ½(w, −i w).
LieElement grade_minus1(const CQuaternion& w);
/// Grade +1 element with translation ½(w, i w).
LieElement grade_plus1(const CQuaternion& w);
/// Grade 0 element (α, α, δ).
LieElement grade0(const CQuaternion& alpha, const CQuaternion& delta);
/// Grade 2 element Diag(−R_γ, R_γ).
LieElement grade2(const CQuaternion& gamma);

/// Element (F, T) of the complexified affine group, F = Diag(R_a L_c, R_b L_c)
/// acting by (x, y) ↦ (c x a, c y b).
struct AffineElement {
  CQuaternion a{1.0}, b{1.0}, c{1.0};
  COctonion T;
};

COctonion apply_linear(const AffineElement& g, const COctonion& q);
COctonion apply(const AffineElement& g, const COctonion& q);
/// g ∘ h.
AffineElement compose(const AffineElement& g, const AffineElement& h);
/// Inverse for norm2(a) = norm2(b) = norm2(c) = 1.
AffineElement inverse(const AffineElement& g);
AffineElement tau(const AffineElement& g);
/// g (η, t) g⁻¹.
LieElement Ad(const AffineElement& g, const LieElement& v);
double max_abs_diff(const AffineElement& g, const AffineElement& h);

/// U⁻¹ dU from U and a derivative dU with the same components.
LieElement maurer_cartan(const AffineElement& U, const AffineElement& dU);

}  // namespace octodpw
