#pragma once

#include <complex>

#include "octodpw/lie.hpp"
#include "octodpw/potential.hpp"

namespace octodpw::testing {

inline CQuaternion sample_w() { return {1.0, 0.3, cplx(0.0, 0.2), 0.1}; }

/// Non-vacuum potential on [0,1]² with terms in every power from −2 to 1:
/// λ⁻¹E + λ⁻²(z γ₁ + γ₀) + λ⁰ z (α, δ) + λ¹ w₁.
inline PotentialSpec sample_potential(int n, int truncation = 24) {
  PotentialSpec s = vacuum_potential(sample_w(), Grid{0, 1, 0, 1, n, n}, truncation);
  PotentialTerm m2{-2, 2, {}};
  m2.coeff_poly.push_back({1, grade2(CQuaternion{0.0, 0.4, cplx(0.0, 0.3), 0.2})});
  m2.coeff_poly.push_back({0, grade2(CQuaternion{0.0, 0.1, 0.2, 0.0})});
  PotentialTerm p0{0, 0, {}};
  p0.coeff_poly.push_back({1, grade0(CQuaternion{0.0, 0.3, 0.0, 0.2}, CQuaternion{0.0, 0.1, cplx(0.0, 0.2), 0.0})});
  PotentialTerm p1{1, 1, {}};
  p1.coeff_poly.push_back({0, grade_plus1(CQuaternion{0.2, 0.1, 0.0, 0.3})});
  s.potential.push_back(m2);
  s.potential.push_back(p0);
  s.potential.push_back(p1);
  return s;
}

}  // namespace octodpw::testing
