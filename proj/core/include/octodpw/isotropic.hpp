#pragma once

#include <Eigen/Core>

#include "octodpw/octonion.hpp"

namespace octodpw {

/// Ordered pair (q, q'). Membership in V: |q| = |q'| = 1 and B(q,q') = 0.
struct Frame {
  Octonion q, qp;
};

enum class OrbitTag { TypeP1, TypeP2, Regular };

const char* to_string(OrbitTag tag);

struct OrbitClass {
  OrbitTag tag = OrbitTag::Regular;
  double p = 0.0;
};

/// Element of G⁰ ∪ L_Ê G⁰: the map Diag(R_a L_c, R_b L_c), pre-composed with
/// L_Ê when eflag is set. Acts on (x, y) as (c x a, c y b).
struct GroupElementG0 {
  Quaternion a = quat::one, b = quat::one, c = quat::one;
  bool eflag = false;
};

/// B(q,q') = x x̄' + y' ȳ.
Quaternion bform(const Octonion& q, const Octonion& qp);
/// ρ(q,q') = x̄ y' − x̄' y.
Quaternion rho(const Octonion& q, const Octonion& qp);
inline Quaternion bform(const Frame& f) { return bform(f.q, f.qp); }
inline Quaternion rho(const Frame& f) { return rho(f.q, f.qp); }

bool in_V(const Frame& f, double tol = 1e-8);

/// |Im(x x̄')| / |q|²; equals the p invariant for unit frames.
double p_invariant(const Frame& f);

/// Throws NotIsotropic when |B| > tol or the norms differ from 1.
OrbitClass classify(const Frame& f, double tol = 1e-8, double band = 1e-8);

/// Same tags without the unit-norm requirement: p is scaled by |q|².
OrbitClass classify_scaled(const Frame& f, double band = 1e-8);

Octonion apply(const GroupElementG0& g, const Octonion& q);
Frame apply_group(const GroupElementG0& g, const Frame& f);
Operator8 matrix(const GroupElementG0& g);

/// Composition g1 ∘ g2.
GroupElementG0 compose(const GroupElementG0& g1, const GroupElementG0& g2);
GroupElementG0 inverse(const GroupElementG0& g);
/// Sign representative with the first nonzero component of a positive.
GroupElementG0 canonical(const GroupElementG0& g);

/// θ(g) on Im ℍ in the basis (i, j, k).
Eigen::Matrix3d theta(const GroupElementG0& g);

/// (q,q')·R_t = (cos t q + sin t q', −sin t q + cos t q').
Frame rotate(const Frame& f, double t);

/// (α,β)·(q,q') = ((αx, βy), (βx', αy')).
Frame scale(double alpha, double beta, const Frame& f);

struct NormalizedFrame {
  Frame frame;       ///< ⟨x, x'⟩ = 0 and |x| ≥ |x'|.
  double theta = 0;  ///< input = frame·R_theta, theta in [0, π).
  bool ambiguous = false;
};

/// Rotates to the representative with ⟨x,x'⟩ = 0. Flags TypeP1 and TypeP2
/// planes, where the angle is not intrinsic.
NormalizedFrame normalize_frame(const Frame& f, double band = 1e-8);

/// q₀ = (1/√2, i/√2), q₀' = (−i/√2, 1/√2).
Frame reference_frame();

enum class Branch { Low, High };

struct Reconstruction {
  GroupElementG0 g;
  double alpha = 1, beta = 1, theta = 0;
};

/// Solves (g·(α,β)·(q₀,q₀'))·R_θ = f for f with |q| = |q'|, B = 0 and
/// 0 < p ≤ ½. Throws TypeP1Input for p = 0.
Reconstruction reconstruct(const Frame& f, Branch branch, double band = 1e-8);

/// (g·(α,β)·(q₀,q₀'))·R_θ.
Frame reassemble(const Reconstruction& r);

/// The α threshold |q|/(√2 |x₀|) separating the two branches.
double branch_threshold(const Frame& f);

/// ρ̃(g) = ā b, i.e. ρ(g q₀, g q₀').
Quaternion tilde_rho(const GroupElementG0& g);

struct SemidirectSplit {
  Quaternion rho_tilde;
  GroupElementG0 h;  ///< Diag(R_a L_c, R_a L_c)
};

/// g = Diag(Id, R_ρ̃)·h with h in G₀⁰. Requires eflag false.
SemidirectSplit semidirect_split(const GroupElementG0& g);

/// Unit quaternion c with c u c̄ = v for unit pure u, v.
Quaternion rotation_taking(const Quaternion& u, const Quaternion& v);

}  // namespace octodpw
