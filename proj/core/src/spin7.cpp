#include "octodpw/spin7.hpp"

#include <cmath>

#include "octodpw/errors.hpp"

namespace octodpw {

Octonion cross(const Octonion& q, const Octonion& qp) { return -imag_part(q * conj(qp)); }

Octonion chi(const Operator8& g, const Octonion& u) {
  const Octonion g_inv_one = apply(Operator8(g.transpose()), oct::one);
  return apply(g, u * g_inv_one);
}

double spin7_residual(const Operator8& g) {
  double worst = 0;
  for (int i = 0; i < 8; ++i) {
    const Octonion ci = i == 0 ? oct::one : chi(g, basis(i));
    for (int j = 0; j < 8; ++j) {
      const Octonion lhs = apply(g, basis(i) * basis(j));
      const Octonion rhs = ci * apply(g, basis(j));
      worst = std::max(worst, max_abs(lhs - rhs));
    }
  }
  return worst;
}

bool is_spin7(const Operator8& g, double tol) {
  const double orth = (g.transpose() * g - Operator8::Identity()).cwiseAbs().maxCoeff();
  if (orth > tol) throw Error(ErrorCode::NotOrthogonal, "|g^T g - Id| = " + std::to_string(orth));
  return spin7_residual(g) <= tol;
}

Operator8 spin7_word(const std::vector<Octonion>& generators) {
  Operator8 m = Operator8::Identity();
  for (const auto& u : generators) m = m * left_op(u);
  return m;
}

bool in_G_I(const Operator8& g, const IsotropySet& I, double tol) {
  if (!is_spin7(g, tol)) return false;
  for (int i : I) {
    const Operator8 l = left_op(basis(i));
    if ((g * l - l * g).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

bool in_V_I(const Octonion& q, const Octonion& qp, const IsotropySet& I, double tol) {
  if (std::abs(abs(q) - 1) > tol || std::abs(abs(qp) - 1) > tol) return false;
  if (std::abs(dot(q, qp)) > tol) return false;
  for (int i : I) {
    if (std::abs(omega(i, q, qp)) > tol) return false;
  }
  return true;
}

Quaternion hermitian_form_C(const Octonion& q, const Octonion& qp) {
  const Octonion i1 = oct::Ih * qp;
  const Octonion i2 = oct::Jh * qp;
  const Octonion i3 = oct::Ih * (oct::Jh * qp);
  return {dot(q, qp), dot(q, i1), dot(q, i2), dot(q, i3)};
}

Octonion tilde_rho_I(const Operator8& g, int cardinality) { return chi(g, basis(cardinality + 1)); }

MeanCurvatureForms general_mean_curvature(const Octonion& Xu, const Octonion& Xv, const Octonion& rho,
                                          const Octonion& rho_u, const Octonion& rho_v, double f, double tol) {
  const double e2f = std::exp(2 * f);
  const double defect =
      std::max({std::abs(abs2(Xu) - e2f), std::abs(abs2(Xv) - e2f), std::abs(dot(Xu, Xv))}) / e2f;
  if (defect > tol) {
    throw Error(ErrorCode::NonConformalFrame, "relative conformality defect " + std::to_string(defect));
  }
  const double s = 0.5 / e2f;
  return {s * (rho_v * Xu - rho_u * Xv), s * (rho * (rho_u * Xu + rho_v * Xv))};
}

Octonion rho_from_tangents(const Octonion& Xu, const Octonion& Xv) { return (Xv * conj(Xu)) * (1.0 / abs2(Xu)); }

}  // namespace octodpw
