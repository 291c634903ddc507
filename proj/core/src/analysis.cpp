#include "octodpw/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "octodpw/errors.hpp"
#include "octodpw/spin7.hpp"

namespace octodpw {

namespace {

template <class T>
std::pair<T, T> derivatives(const Field<T>& f, int i, int j) {
  return {diff_u(f, i, j), diff_v(f, i, j)};
}

CQuaternion complexify(const Quaternion& q) { return CQuaternion(q); }

/// X_z̄ = ½(X_u + iX_v), X_z = ½(X_u − iX_v).
CQuaternion dzbar(const Quaternion& du, const Quaternion& dv) {
  return 0.5 * (complexify(du) + I_c * complexify(dv));
}
CQuaternion dz(const Quaternion& du, const Quaternion& dv) { return 0.5 * (complexify(du) - I_c * complexify(dv)); }

}  // namespace

ResidualStats interior_stats(const Field<double>& values, int margin) {
  const Grid& g = values.grid();
  ResidualStats s;
  std::size_t n = 0;
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      const double v = values(i, j);
      if (!g.interior(i, j, margin) || v < 0) continue;
      s.max = std::max(s.max, v);
      s.mean += v;
      ++n;
    }
  if (n) s.mean /= static_cast<double>(n);
  return s;
}

std::pair<Field<Octonion>, Field<Octonion>> tangents(const Field<Octonion>& X) {
  const Grid& g = X.grid();
  Field<Octonion> Xu(g), Xv(g);
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      Xu(i, j) = diff_u(X, i, j);
      Xv(i, j) = diff_v(X, i, j);
    }
  return {Xu, Xv};
}

RhoField rho_field(const Field<Octonion>& Xu, const Field<Octonion>& Xv) {
  const Grid& g = Xu.grid();
  const double threshold = 1e-6 * std::max(g.u_max - g.u_min, g.v_max - g.v_min);
  RhoField r{Field<Octonion>(g), Field<double>(g), Field<double>(g)};
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      const Octonion& a = Xu(i, j);
      const Octonion& b = Xv(i, j);
      const double na = abs(a), nb = abs(b);
      if (na < threshold)
        throw Error(ErrorCode::DegeneratePoint,
                    "|X_u| = " + std::to_string(na) + " at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      r.rho(i, j) = rho_from_tangents(a, b);
      r.conformality(i, j) = std::max(std::abs(nb / na - 1.0), nb > 0 ? std::abs(dot(a, b)) / (na * nb) : 1.0);
      r.unit_defect(i, j) = std::abs(abs(r.rho(i, j)) - 1.0);
    }
  return r;
}

RhoField rho_field(const Field<Octonion>& X) {
  const auto [Xu, Xv] = tangents(X);
  return rho_field(Xu, Xv);
}

Field<double> tension_field(const Field<Octonion>& rho, int margin) {
  const Grid& g = rho.grid();
  Field<double> out(g, 0.0);
  margin = std::max(margin, 1);
  for (int j = margin; j < g.nv - margin; ++j)
    for (int i = margin; i < g.nu - margin; ++i) {
      const auto [ru, rv] = derivatives(rho, i, j);
      const double e = abs2(ru) + abs2(rv);
      out(i, j) = abs(laplacian(rho, i, j) + e * rho(i, j));
    }
  return out;
}

SigmaVFields sigma_v_fields(const Field<Octonion>& Xu, const Field<Octonion>& Xv) {
  const Grid& g = Xu.grid();
  SigmaVFields s{Field<Octonion>(g), Field<Octonion>(g), Field<Quaternion>(g), Field<double>(g)};
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      const double ef = std::sqrt(0.5 * (abs2(Xu(i, j)) + abs2(Xv(i, j))));
      s.f(i, j) = std::log(ef);
      s.q(i, j) = Xu(i, j) * (1.0 / ef);
      s.qp(i, j) = Xv(i, j) * (1.0 / ef);
      s.rho(i, j) = rho(s.q(i, j), s.qp(i, j));
    }
  return s;
}

Field<Octonion> sigma_v_mean_curvature(const SigmaVFields& s, double tol) {
  const Grid& g = s.q.grid();
  Field<Octonion> H(g);
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      const Octonion& q = s.q(i, j);
      const Octonion& qp = s.qp(i, j);
      if (abs(bform(q, qp)) > tol)
        throw Error(ErrorCode::NonIsotropicFrame,
                    "B(q,q') at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      const Quaternion& r = s.rho(i, j);
      const auto [ru, rv] = derivatives(s.rho, i, j);
      const Quaternion gdu = ru * conj(r), gdv = rv * conj(r);
      const Quaternion ggu = conj(r) * ru, ggv = conj(r) * rv;
      const Octonion h{-(q.x * gdu) - qp.x * gdv, q.y * ggu + qp.y * ggv};
      H(i, j) = h * (0.5 * std::exp(-s.f(i, j)));
    }
  return H;
}

MeanCurvatureField mean_curvature(const Field<Octonion>& X, const Field<Octonion>& Xu, const Field<Octonion>& Xv,
                                  double isotropy_tol) {
  const Grid& g = X.grid();
  MeanCurvatureField m{Field<Octonion>(g), Field<Octonion>(g), Field<Octonion>(g), Field<Octonion>(g),
                       Field<Octonion>(g)};
  const RhoField rf = rho_field(Xu, Xv);
  const SigmaVFields sv = sigma_v_fields(Xu, Xv);
  bool isotropic = true;
  for (int j = 0; j < g.nv && isotropic; ++j)
    for (int i = 0; i < g.nu; ++i)
      if (abs(bform(sv.q(i, j), sv.qp(i, j))) > isotropy_tol) {
        isotropic = false;
        break;
      }
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      const double f = sv.f(i, j);
      if (g.interior(i, j)) m.laplacian(i, j) = laplacian(X, i, j) * (0.5 * std::exp(-2 * f));
      const auto [ru, rv] = derivatives(rf.rho, i, j);
      const MeanCurvatureForms forms = general_mean_curvature(Xu(i, j), Xv(i, j), rf.rho(i, j), ru, rv, f, INFINITY);
      m.difference(i, j) = forms.difference_form;
      m.rho_form(i, j) = forms.rho_form;
      if (isotropic) {
        const Quaternion& r = sv.rho(i, j);
        const auto [su, sv_] = derivatives(sv.rho, i, j);
        const Quaternion gu = su * conj(r), gv = sv_ * conj(r);
        const Quaternion x = sv.q(i, j).x, y = sv.q(i, j).y * conj(r);
        const Octonion h{y * gv - x * gu, (y * gu + x * gv) * r};
        m.sigma_v_split(i, j) = h * (0.5 * std::exp(-f));
      }
    }
  if (isotropic) m.sigma_v = sigma_v_mean_curvature(sv, isotropy_tol);
  return m;
}

MeanCurvatureField mean_curvature(const Field<Octonion>& X, double isotropy_tol) {
  const auto [Xu, Xv] = tangents(X);
  return mean_curvature(X, Xu, Xv, isotropy_tol);
}

ResidualStats difference_stats(const Field<Octonion>& a, const Field<Octonion>& b, int margin) {
  const Grid& g = a.grid();
  Field<double> d(g);
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) d(i, j) = abs(a(i, j) - b(i, j));
  return interior_stats(d, margin);
}

std::pair<Field<Octonion>, Field<Octonion>> linear_fields(const Field<Octonion>& Xu, const Field<Octonion>& Xv,
                                                          Field<Quaternion>* rho_out) {
  const Grid& g = Xu.grid();
  Field<Octonion> E1(g), E2(g);
  if (rho_out) *rho_out = Field<Quaternion>(g);
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      const Octonion& a = Xu(i, j);
      const Octonion& b = Xv(i, j);
      const Quaternion r = rho(a, b) * (1.0 / abs2(a));
      E1(i, j) = {a.x, a.y * conj(r)};
      E2(i, j) = {b.x, b.y * conj(r)};
      if (rho_out) (*rho_out)(i, j) = r;
    }
  return {E1, E2};
}

ClosednessResidual closedness_residual(const Field<Octonion>& E1, const Field<Octonion>& E2,
                                       const Field<Quaternion>& rho) {
  const Grid& g = E1.grid();
  ClosednessResidual r{Field<double>(g), Field<double>(g), Field<double>(g), Field<double>(g)};
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      const auto [e1u, e1v] = derivatives(E1, i, j);
      const auto [e2u, e2v] = derivatives(E2, i, j);
      const auto [ru, rv] = derivatives(rho, i, j);
      const Quaternion& p = rho(i, j);
      const Quaternion gu = ru * conj(p), gv = rv * conj(p);
      const Octonion& a = E1(i, j);
      const Octonion& b = E2(i, j);

      const Octonion lin = e1v - e2u + Octonion{{}, a.y * gv} - Octonion{{}, b.y * gu};
      r.linear(i, j) = abs(lin);

      const Quaternion s1 = e1v.x + e1u.y;
      const Quaternion s2 = e1v.y - e1u.x + a.y * gv - a.x * gu;
      r.split(i, j) = std::sqrt(abs2(s1) + abs2(s2));

      const COctonion E = 0.5 * (COctonion(a) - I_c * COctonion(b));
      const COctonion Eu = 0.5 * (COctonion(e1u) - I_c * COctonion(e2u));
      const COctonion Ev = 0.5 * (COctonion(e1v) - I_c * COctonion(e2v));
      const COctonion Ezb = 0.5 * (Eu + I_c * Ev);
      const CQuaternion gzb = dzbar(gu, gv), gz = dz(gu, gv);
      const COctonion Eb = cconj(E);
      const COctonion cx = Ezb + 0.5 * COctonion{E.x * gzb, E.y * gzb} + 0.5 * COctonion{Eb.x * gz, -(Eb.y * gz)};
      r.complex(i, j) = abs(cx);

      r.structure(i, j) = abs(b - Octonion{-a.y, a.x});
    }
  return r;
}

Field<OrbitClass> singular_map(const Field<Octonion>& Xu, const Field<Octonion>& Xv, double band) {
  const Grid& g = Xu.grid();
  Field<OrbitClass> out(g);
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) out(i, j) = classify_scaled({Xu(i, j), Xv(i, j)}, band);
  return out;
}

Field<double> bform_isotropy(const Field<Octonion>& Xu, const Field<Octonion>& Xv) {
  const Grid& g = Xu.grid();
  Field<double> out(g);
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) out(i, j) = abs(bform(Xu(i, j), Xv(i, j))) / abs2(Xu(i, j));
  return out;
}

Field<double> omega_isotropy(const Field<Octonion>& Xu, const Field<Octonion>& Xv) {
  const Grid& g = Xu.grid();
  Field<double> out(g);
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      double m = 0;
      for (int k = 1; k <= 3; ++k) m = std::max(m, std::abs(omega(k, Xu(i, j), Xv(i, j))));
      out(i, j) = m / abs2(Xu(i, j));
    }
  return out;
}

Field<double> compatibility_residual(const Field<Octonion>& E1, const Field<Octonion>& E2,
                                     const Field<Quaternion>& rho, Branch branch) {
  const Grid& g = E1.grid();
  Field<char> valid(g, 0);
  Field<Quaternion> a(g), c(g);
  Field<double> theta(g);
  Field<CQuaternion> A(g);
  const double s2 = 1.0 / std::sqrt(2.0);

  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      const Frame fr{E1(i, j), E2(i, j)};
      if (classify_scaled(fr).tag != OrbitTag::Regular) continue;
      Reconstruction r;
      try {
        r = reconstruct(fr, branch);
      } catch (const Error&) {
        continue;
      }
      if (r.g.eflag) continue;
      Quaternion ai = r.g.a, ci = r.g.c;
      double t = r.theta;
      // Continuity against the left (or lower) neighbour. The frame fixes
      // (a, c) only up to (e^{Iφ}a, c e^{−Iφ}); take the φ closest to the reference.
      const bool has_left = i > 0 && valid(i - 1, j);
      const bool has_below = j > 0 && valid(i, j - 1);
      if (has_left || has_below) {
        const int ri = has_left ? i - 1 : i, rj = has_left ? j : j - 1;
        // θ + π with a ↦ −a is the same decomposition.
        while (t - theta(ri, rj) > M_PI / 2) {
          t -= M_PI;
          ai = -ai;
        }
        while (t - theta(ri, rj) < -M_PI / 2) {
          t += M_PI;
          ai = -ai;
        }
        const Quaternion& ar = a(ri, rj);
        const Quaternion& cr = c(ri, rj);
        const double A = dot(ai, ar) + dot(ci, cr);
        const double B = dot(quat::i * ai, ar) - dot(ci * quat::i, cr);
        const double phi = std::atan2(B, A);
        const Quaternion k{std::cos(phi), std::sin(phi), 0.0, 0.0};
        ai = k * ai;
        ci = ci * conj(k);
      }
      valid(i, j) = 1;
      a(i, j) = ai;
      c(i, j) = ci;
      theta(i, j) = t;
      A(i, j) = CQuaternion(r.alpha * s2, I_c * (r.beta * s2), 0.0, 0.0);
    }

  Field<double> out(g, -1.0);
  for (int j = 1; j + 1 < g.nv; ++j)
    for (int i = 1; i + 1 < g.nu; ++i) {
      if (!valid(i, j) || !valid(i - 1, j) || !valid(i + 1, j) || !valid(i, j - 1) || !valid(i, j + 1)) continue;
      const Quaternion& ai = a(i, j);
      const Quaternion& ci = c(i, j);
      const auto [au, av] = derivatives(a, i, j);
      const auto [cu, cv] = derivatives(c, i, j);
      const auto [ru, rv] = derivatives(rho, i, j);
      const auto [tu, tv] = derivatives(theta, i, j);
      const auto [Au, Av] = derivatives(A, i, j);
      const Quaternion& p = rho(i, j);
      const CQuaternion at_zb = dzbar(au * conj(ai), av * conj(ai));
      const CQuaternion d_zb = dzbar(conj(ci) * cu, conj(ci) * cv);
      const CQuaternion gp_zb = dzbar(ai * (ru * conj(p)) * conj(ai), ai * (rv * conj(p)) * conj(ai));
      const CQuaternion gp_z = dz(ai * (ru * conj(p)) * conj(ai), ai * (rv * conj(p)) * conj(ai));
      const std::complex<double> t_zb = 0.5 * (tu + I_c * tv);
      const CQuaternion A_zb = 0.5 * (Au + I_c * Av);
      const CQuaternion& Ai = A(i, j);
      const CQuaternion res = (I_c * t_zb) * Ai + d_zb * Ai + Ai * at_zb + A_zb + 0.5 * (Ai * gp_zb) +
                              (0.5 * std::exp(-2.0 * I_c * theta(i, j))) * (cconj(Ai) * gp_z);
      out(i, j) = abs(res);
    }
  return out;
}

}  // namespace octodpw
