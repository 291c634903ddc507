#include "octodpw/identity_suite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "octodpw/isotropic.hpp"
#include "octodpw/random.hpp"
#include "octodpw/spin7.hpp"

namespace octodpw {

Multiply standard_multiply() {
  return [](const Octonion& a, const Octonion& b) { return a * b; };
}

Multiply faulty_multiply() {
  return [](const Octonion& a, const Octonion& b) {
    Octonion r = a * b;
    r[3] -= 2.0 * a[1] * b[2];
    return r;
  };
}

namespace {

class Tally {
 public:
  Tally(std::vector<IdentityResult>& out, double tol) : out_(out), tol_(tol) {}

  void record(const std::string& name, double residual) {
    auto it = std::find_if(out_.begin(), out_.end(), [&](const IdentityResult& r) { return r.name == name; });
    if (it == out_.end()) {
      out_.push_back({name, 0.0, 0, tol_});
      it = out_.end() - 1;
    }
    it->max_residual = std::max(it->max_residual, std::isfinite(residual) ? residual : 1e300);
    it->samples += 1;
  }

 private:
  std::vector<IdentityResult>& out_;
  double tol_;
};

Operator8 left_with(const Multiply& mul, const Octonion& x) {
  Operator8 m;
  for (int j = 0; j < 8; ++j) m.col(j) = to_vector(mul(x, basis(j)));
  return m;
}

Operator8 right_with(const Multiply& mul, const Octonion& x) {
  Operator8 m;
  for (int j = 0; j < 8; ++j) m.col(j) = to_vector(mul(basis(j), x));
  return m;
}

double op_diff(const Operator8& a, const Operator8& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

std::vector<IdentityResult> run_algebra_identities(std::uint64_t seed, std::size_t count, const Multiply& mul,
                                                   double tol) {
  std::vector<IdentityResult> out;
  Tally t(out, tol);
  Sampler s(seed);
  const auto m = [&](const Octonion& a, const Octonion& b) { return mul(a, b); };
  const auto d = [](const Octonion& a, const Octonion& b) { return max_abs(a - b); };

  {
    const Octonion lhs = m(oct::Ib, m(oct::Jb, oct::Kb));
    const Octonion rhs = m(m(oct::Ib, oct::Jb), oct::Kb);
    t.record("basis_nonassociativity_witness", std::max(d(lhs, oct::Eb), d(rhs, -oct::Eb)));
    t.record("basis_product_IbJb", d(m(oct::Ib, oct::Jb), -oct::Kh));
  }
  for (int i = 1; i < 8; ++i) {
    const Operator8 l = left_with(mul, basis(i));
    t.record("left_basis_operator_squares_to_minus_identity", op_diff(l * l, -Operator8::Identity()));
  }

  for (std::size_t n = 0; n < count; ++n) {
    const Octonion x = s.octonion(), y = s.octonion(), z = s.octonion(), w = s.octonion(), a = s.octonion();
    const double nx = dot(x, x), ny = dot(y, y), nz = dot(z, z);

    t.record("unit_element", std::max(d(m(oct::one, x), x), d(m(x, oct::one), x)));
    t.record("inner_product_right_scaling", std::abs(dot(m(x, z), m(y, z)) - nz * dot(x, y)));
    t.record("inner_product_left_scaling", std::abs(dot(m(z, x), m(z, y)) - nz * dot(x, y)));
    t.record("inner_product_polarized",
             std::abs(dot(m(x, z), m(y, w)) + dot(m(y, z), m(x, w)) - 2 * dot(x, y) * dot(z, w)));

    t.record("conjugate_of_product", d(conj(m(x, y)), m(conj(y), conj(x))));
    t.record("conjugate_involution", d(conj(conj(x)), x));
    t.record("inner_product_as_real_part",
             std::max(std::abs(dot(x, y) - m(x, conj(y))[0]), std::abs(dot(x, y) - m(conj(x), y)[0])));
    t.record("left_norm_cancellation", d(m(x, m(conj(x), y)), nx * y));
    t.record("right_norm_cancellation", d(m(m(x, conj(y)), y), ny * x));
    t.record("polarized_left_cancellation", d(m(x, m(conj(y), z)) + m(y, m(conj(x), z)), 2 * dot(x, y) * z));
    t.record("polarized_right_cancellation", d(m(m(z, conj(y)), x) + m(m(z, conj(x)), y), 2 * dot(x, y) * z));
    {
      const Octonion yo = y - (dot(x, y) / nx) * x;
      t.record("orthogonal_pair_rules", std::max({d(m(x, conj(yo)), -m(yo, conj(x))),
                                                  d(m(x, m(conj(yo), z)), -m(yo, m(conj(x), z))),
                                                  d(m(m(z, conj(yo)), x), -m(m(z, conj(x)), yo))}));
    }
    {
      const Octonion xi = (1.0 / nx) * conj(x);
      t.record("inverse_is_scaled_conjugate", std::max({d(m(xi, m(x, y)), y), d(m(x, m(xi, y)), y),
                                                        d(m(m(y, x), xi), y), d(m(m(y, xi), x), y)}));
      const Operator8 lx = left_with(mul, x), rx = right_with(mul, x);
      t.record("transpose_of_multiplication_operators",
               std::max(op_diff(lx.transpose(), left_with(mul, conj(x))),
                        op_diff(rx.transpose(), right_with(mul, conj(x)))));
    }

    t.record("moufang_middle", d(m(m(a, x), m(y, a)), m(a, m(m(x, y), a))));
    t.record("moufang_left", d(m(a, m(x, m(a, y))), m(m(a, m(x, a)), y)));
    t.record("moufang_right", d(m(x, m(a, m(y, a))), m(m(m(x, a), y), a)));
    t.record("flexible", d(m(m(x, y), x), m(x, m(y, x))));
    t.record("left_alternative", d(m(x, m(x, y)), m(m(x, x), y)));
    t.record("right_alternative", d(m(m(x, y), y), m(x, m(y, y))));

    {
      const Operator8 lx = left_with(mul, x), rx = right_with(mul, x);
      const Operator8 la = left_with(mul, a), ra = right_with(mul, a);
      const Octonion axa = m(m(a, x), a);
      const Octonion aya = m(m(a, y), a);
      t.record("left_right_operators_commute", op_diff(rx * lx, lx * rx));
      t.record("left_operator_square", op_diff(lx * lx, left_with(mul, m(x, x))));
      t.record("right_operator_square", op_diff(rx * rx, right_with(mul, m(x, x))));
      t.record("left_operator_sandwich", op_diff(left_with(mul, axa), la * lx * la));
      t.record("right_operator_sandwich", op_diff(right_with(mul, aya), ra * right_with(mul, y) * ra));
    }

    {
      const auto as = [&](const Octonion& p, const Octonion& q, const Octonion& r) {
        return m(m(p, q), r) - m(p, m(q, r));
      };
      t.record("associator_alternating",
               std::max({max_abs(as(x, x, y)), max_abs(as(x, y, x)), max_abs(as(y, x, x))}));
      t.record("associator_antisymmetric",
               std::max({max_abs(as(x, y, z) + as(y, x, z)), max_abs(as(x, y, z) + as(x, z, y)),
                         max_abs(as(x, y, z) + as(z, y, x))}));
    }

    {
      // Commuting pair: y in the subalgebra R1 + Rx. Generic pair: (1,x,y) free.
      const Octonion yc = s.uniform() * oct::one + s.uniform() * x;
      const Operator8 lx = left_with(mul, x);
      const Operator8 lyc = left_with(mul, yc), ly = left_with(mul, y);
      double r = std::max(op_diff(lx * lyc, lyc * lx), max_abs(m(x, yc) - m(yc, x)));
      const bool ops_commute = op_diff(lx * ly, ly * lx) <= 1e-6;
      const bool elems_commute = max_abs(m(x, y) - m(y, x)) <= 1e-6;
      if (ops_commute != elems_commute) r = 1.0;
      t.record("commutation_criterion", r);
    }

    t.record("norm_multiplicative", std::abs(dot(m(x, y), m(x, y)) - nx * ny));
    {
      const int i = 1 + static_cast<int>(n % 7);
      t.record("omega_as_operator_form",
               std::abs(omega(i, x, y) - to_vector(x).dot(left_with(mul, basis(i)) * to_vector(y))));
    }
  }
  return out;
}

namespace {

Frame random_V_frame(Sampler& s) {
  const Octonion q = s.unit_octonion();
  const Quaternion r = s.unit_quaternion();
  return {q, Octonion{Quaternion(), r} * q};
}

GroupElementG0 random_g(Sampler& s, bool allow_e = true) {
  return {s.unit_quaternion(), s.unit_quaternion(), s.unit_quaternion(), allow_e && s.uniform() > 0};
}

}  // namespace

std::vector<IdentityResult> run_geometry_identities(std::uint64_t seed, std::size_t count, double tol) {
  std::vector<IdentityResult> out;
  Tally t(out, tol);
  Sampler s(seed);
  t.record("p_of_P1", p_invariant({oct::one, oct::Eb}));
  {
    const Frame r = reference_frame();
    t.record("p_of_P2", std::abs(p_invariant(r) - 0.5));
  }
  for (std::size_t n = 0; n < count; ++n) {
    const Frame f = random_V_frame(s);
    const GroupElementG0 g = random_g(s);
    const Frame gf = apply_group(g, f);
    t.record("p_group_invariance", std::abs(p_invariant(gf) - p_invariant(f)));
    const Quaternion r0 = rho(f);
    const Quaternion expect = conj(g.a) * (g.eflag ? conj(r0) : r0) * g.b;
    t.record("rho_transformation_law", abs(rho(gf) - expect));

    const Octonion q = s.octonion(), qp = s.octonion();
    const Quaternion bq = bform(q, qp);
    const Quaternion bg = bform(apply(g, q), apply(g, qp));
    const Eigen::Vector3d im_rot = theta(g) * Eigen::Vector3d(bq.x, bq.y, bq.z);
    t.record("bform_theta_law", std::max({std::abs(bg.w - bq.w), std::abs(bg.x - im_rot[0]),
                                          std::abs(bg.y - im_rot[1]), std::abs(bg.z - im_rot[2])}));

    const GroupElementG0 h = random_g(s);
    t.record("theta_morphism", (theta(compose(g, h)) - theta(g) * theta(h)).cwiseAbs().maxCoeff());
    t.record("composition_matches_matrix_product",
             (matrix(compose(g, h)) - matrix(g) * matrix(h)).cwiseAbs().maxCoeff());

    const GroupElementG0 g0 = random_g(s, false);
    const SemidirectSplit sp = semidirect_split(g0);
    const GroupElementG0 back = compose(GroupElementG0{quat::one, sp.rho_tilde, quat::one, false}, sp.h);
    t.record("semidirect_split_recomposition", (matrix(back) - matrix(g0)).cwiseAbs().maxCoeff());
    const Quaternion k = s.unit_quaternion(), c = s.unit_quaternion();
    t.record("tilde_rho_right_invariance",
             abs(tilde_rho(compose(g0, GroupElementG0{k, k, c, false})) - tilde_rho(g0)));

    {
      const double pt = s.uniform(0.05, 0.45);
      const double k2 = 2 * pt;  // α'β' for the reference frame (p₀ = ½)
      const double ap = std::sqrt(1 + std::sqrt(1 - k2 * k2));
      const double scale_q = s.uniform(0.5, 2.0);
      Reconstruction fwd{random_g(s, false), ap * scale_q, k2 / ap * scale_q, s.uniform(-3, 3)};
      const Frame target = reassemble(fwd);
      double worst = 0;
      for (Branch b : {Branch::Low, Branch::High}) {
        const Frame back_f = reassemble(reconstruct(target, b));
        worst = std::max({worst, max_abs(back_f.q - target.q), max_abs(back_f.qp - target.qp)});
      }
      t.record("reconstruction_round_trip", worst);
    }

    {
      std::vector<Octonion> gens;
      const int len = 1 + static_cast<int>(n % 5);
      for (int i = 0; i < len; ++i) gens.push_back(s.unit_pure_octonion());
      const Operator8 w = spin7_word(gens);
      const Octonion a = s.octonion(), b = s.octonion();
      t.record("cross_equivariance", max_abs(cross(apply(w, a), apply(w, b)) - chi(w, cross(a, b))));
      Octonion sum;
      for (int i = 1; i < 8; ++i) sum -= omega(i, a, b) * basis(i);
      t.record("cross_as_omega_sum", max_abs(cross(a, b) - sum));
      const Operator8 w2 = spin7_word({s.unit_pure_octonion(), s.unit_pure_octonion()});
      const Octonion u = imag_part(s.octonion());
      t.record("chi_morphism", max_abs(chi(Operator8(w * w2), u) - chi(w, chi(w2, u))));
    }
  }
  return out;
}

}  // namespace octodpw
