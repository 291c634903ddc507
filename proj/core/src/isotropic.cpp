#include "octodpw/isotropic.hpp"

#include <cmath>
#include <numbers>

#include "octodpw/errors.hpp"

namespace octodpw {

const char* to_string(OrbitTag tag) {
  switch (tag) {
    case OrbitTag::TypeP1: return "TypeP1";
    case OrbitTag::TypeP2: return "TypeP2";
    case OrbitTag::Regular: return "Regular";
  }
  return "Unknown";
}

Quaternion bform(const Octonion& q, const Octonion& qp) { return q.x * conj(qp.x) + qp.y * conj(q.y); }

Quaternion rho(const Octonion& q, const Octonion& qp) { return conj(q.x) * qp.y - conj(qp.x) * q.y; }

bool in_V(const Frame& f, double tol) {
  return std::abs(abs(f.q) - 1.0) <= tol && std::abs(abs(f.qp) - 1.0) <= tol && abs(bform(f)) <= tol;
}

double p_invariant(const Frame& f) { return abs(imag_part(f.q.x * conj(f.qp.x))) / abs2(f.q); }

namespace {

OrbitClass tag_from_p(double p, double band) {
  if (p <= band) return {OrbitTag::TypeP1, p};
  if (p >= 0.5 - band) return {OrbitTag::TypeP2, p};
  return {OrbitTag::Regular, p};
}

}  // namespace

OrbitClass classify(const Frame& f, double tol, double band) {
  if (!in_V(f, tol)) {
    throw Error(ErrorCode::NotIsotropic, "frame has |B| = " + std::to_string(abs(bform(f))) + ", norms " +
                                             std::to_string(abs(f.q)) + ", " + std::to_string(abs(f.qp)));
  }
  return tag_from_p(p_invariant(f), band);
}

OrbitClass classify_scaled(const Frame& f, double band) { return tag_from_p(p_invariant(f), band); }

Octonion apply(const GroupElementG0& g, const Octonion& q) {
  Octonion v = g.eflag ? Octonion{-q.y, q.x} : q;
  return {g.c * v.x * g.a, g.c * v.y * g.b};
}

Frame apply_group(const GroupElementG0& g, const Frame& f) { return {apply(g, f.q), apply(g, f.qp)}; }

Operator8 matrix(const GroupElementG0& g) {
  Operator8 m;
  for (int j = 0; j < 8; ++j) m.col(j) = to_vector(apply(g, basis(j)));
  return m;
}

GroupElementG0 compose(const GroupElementG0& g1, const GroupElementG0& g2) {
  // L_Ê Diag(A, B) = Diag(B, A) L_Ê and L_Ê² = −Id.
  Quaternion a2 = g2.a, b2 = g2.b;
  if (g1.eflag) std::swap(a2, b2);
  GroupElementG0 r{a2 * g1.a, b2 * g1.b, g1.c * g2.c, g1.eflag != g2.eflag};
  if (g1.eflag && g2.eflag) {
    r.a = -r.a;
    r.b = -r.b;
  }
  return r;
}

GroupElementG0 inverse(const GroupElementG0& g) {
  if (!g.eflag) return {conj(g.a), conj(g.b), conj(g.c), false};
  return {-conj(g.b), -conj(g.a), conj(g.c), true};
}

GroupElementG0 canonical(const GroupElementG0& g) {
  for (int i = 0; i < 4; ++i) {
    if (std::abs(g.a[i]) > 1e-14) {
      if (g.a[i] < 0) return {-g.a, -g.b, -g.c, g.eflag};
      return g;
    }
  }
  return g;
}

Eigen::Matrix3d theta(const GroupElementG0& g) {
  Eigen::Matrix3d m;
  const Quaternion units[3] = {quat::i, quat::j, quat::k};
  for (int j = 0; j < 3; ++j) {
    const Quaternion r = g.c * units[j] * conj(g.c);
    m.col(j) << r.x, r.y, r.z;
  }
  return g.eflag ? Eigen::Matrix3d(-m) : m;
}

Frame rotate(const Frame& f, double t) {
  const double c = std::cos(t), s = std::sin(t);
  return {c * f.q + s * f.qp, -s * f.q + c * f.qp};
}

Frame scale(double alpha, double beta, const Frame& f) {
  return {{alpha * f.q.x, beta * f.q.y}, {beta * f.qp.x, alpha * f.qp.y}};
}

NormalizedFrame normalize_frame(const Frame& f, double band) {
  const Quaternion& x = f.q.x;
  const Quaternion& xp = f.qp.x;
  const double a = dot(x, xp);
  const double d = 0.5 * (abs2(xp) - abs2(x));
  // For f·R_{−t}: ⟨x_t, x'_t⟩ = a cos 2t − d sin 2t and
  // |x_t|² = const − d cos 2t − a sin 2t, largest at 2t = atan2(−a, −d).
  // a = d = 0 leaves t free; keep the frame as given.
  double t = std::hypot(a, d) <= band ? 0.0 : 0.5 * std::atan2(-a, -d);
  t = std::fmod(t, std::numbers::pi);
  if (t < 0) t += std::numbers::pi;
  const double p = p_invariant(f);
  const bool ambiguous = p <= band || p >= 0.5 - band || std::hypot(a, d) <= band;
  return {rotate(f, -t), t, ambiguous};
}

Frame reference_frame() {
  const double s = 1.0 / std::numbers::sqrt2;
  return {{Quaternion(s), Quaternion(0, s, 0, 0)}, {Quaternion(0, -s, 0, 0), Quaternion(s)}};
}

Quaternion rotation_taking(const Quaternion& u, const Quaternion& v) {
  Quaternion c = quat::one - v * u;
  if (abs(c) < 1e-8) {
    // v = −u: any unit pure quaternion orthogonal to u rotates by π.
    Quaternion w = std::abs(u.x) < 0.9 ? quat::i : quat::j;
    w = w - dot(w, u) * u;
    return normalized(w);
  }
  return normalized(c);
}

double branch_threshold(const Frame& f) {
  const Frame r = reference_frame();
  return abs(f.q) / (std::numbers::sqrt2 * abs(r.q.x));
}

Reconstruction reconstruct(const Frame& f, Branch branch, double band) {
  const double s = abs(f.q);
  if (s <= 0 || std::abs(abs(f.qp) - s) > 1e-8 * s || abs(bform(f)) > 1e-8 * s * s) {
    throw Error(ErrorCode::NotIsotropic, "reconstruct needs |q| = |q'| and B(q,q') = 0");
  }
  const Frame unit{f.q * (1.0 / s), f.qp * (1.0 / s)};
  const double pt = p_invariant(unit);
  if (pt <= band) throw Error(ErrorCode::TypeP1Input, "plane lies in G.P1");

  const Frame r = reference_frame();
  const double X = abs2(r.q.x);
  const double Y = abs2(r.q.y);
  const double p0 = p_invariant(r);
  // α'² X + β'² Y = 1 and α' β' p0 = pt give X t² − t + (pt/p0)² Y = 0, t = α'².
  const double k = pt / p0;
  // disc ≈ 4(p0 − pt): inside the P₂ band the branches meet, and rounding
  // would otherwise split them by √ε.
  const double disc = p0 - pt <= band ? 0.0 : std::max(0.0, 1.0 - 4.0 * X * Y * k * k);
  const double sq = std::sqrt(disc);
  const double tt = (branch == Branch::High ? 1.0 + sq : 1.0 - sq) / (2.0 * X);
  const double alpha_p = std::sqrt(tt);
  const double beta_p = k / alpha_p;

  const Frame model = scale(alpha_p, beta_p, r);
  NormalizedFrame target = normalize_frame(unit, band);
  Frame n = target.frame;
  double th = target.theta;
  if (abs(model.q.x) < abs(model.qp.x) - 1e-12) {
    n = rotate(n, 0.5 * std::numbers::pi);
    th -= 0.5 * std::numbers::pi;
  }

  const Quaternion uf = model.q.x * conj(model.qp.x);
  const Quaternion un = n.q.x * conj(n.qp.x);
  const Quaternion c = rotation_taking(normalized(imag_part(uf)), normalized(imag_part(un)));
  const Quaternion a = normalized(conj(model.q.x) * conj(c) * n.q.x);
  const Quaternion rf = normalized(rho(model));
  const Quaternion rn = normalized(rho(n));
  const Quaternion b = conj(rf) * a * rn;

  Reconstruction out;
  out.g = canonical(GroupElementG0{a, b, c, false});
  out.alpha = alpha_p * s;
  out.beta = beta_p * s;
  out.theta = th;
  return out;
}

Frame reassemble(const Reconstruction& r) {
  return rotate(apply_group(r.g, scale(r.alpha, r.beta, reference_frame())), r.theta);
}

Quaternion tilde_rho(const GroupElementG0& g) { return conj(g.a) * g.b; }

SemidirectSplit semidirect_split(const GroupElementG0& g) {
  if (g.eflag) throw Error(ErrorCode::InvalidInput, "semidirect split is defined on G0 only");
  return {tilde_rho(g), GroupElementG0{g.a, g.a, g.c, false}};
}

}  // namespace octodpw
