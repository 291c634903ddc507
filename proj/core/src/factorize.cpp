#include "octodpw/factorize.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "octodpw/errors.hpp"

namespace octodpw {

using Eigen::Matrix2cd;
using Eigen::MatrixXcd;

Matrix2cd to_matrix(const CQuaternion& q) {
  const cplx i = I_c;
  Matrix2cd m;
  m << q.w + i * q.x, q.y + i * q.z, -q.y + i * q.z, q.w - i * q.x;
  return m;
}

CQuaternion from_matrix(const Matrix2cd& m) {
  const cplx i2 = 2.0 * I_c;
  return {(m(0, 0) + m(1, 1)) / 2.0, (m(0, 0) - m(1, 1)) / i2, (m(0, 1) - m(1, 0)) / 2.0, (m(0, 1) + m(1, 0)) / i2};
}

namespace {

Loop<CQuaternion> conj_coeffs(const Loop<CQuaternion>& l) { return l.map([](const CQuaternion& q) { return conj(q); }); }

/// Drops leading and trailing coefficients below `eps`.
Loop<CQuaternion> trimmed(const Loop<CQuaternion>& l, double eps) {
  int lo = l.lo(), hi = l.hi();
  while (lo < hi && max_abs(l[lo]) < eps) ++lo;
  while (hi > lo && max_abs(l[hi]) < eps) --hi;
  Loop<CQuaternion> out(lo, hi);
  for (int k = lo; k <= hi; ++k) out[k] = l[k];
  return out;
}

struct IwasawaAttempt {
  Loop<CQuaternion> unitary, positive;
  double negative_residual, unitarity_defect;
};

IwasawaAttempt iwasawa_attempt(const std::vector<Matrix2cd>& M, int L, int K) {
  const int R = L + static_cast<int>(M.size()) - 1;
  const int powers = R - L + K + 1;
  const int rows = 2 * powers, cols = 2 * (K + 1);
  MatrixXcd A = MatrixXcd::Zero(rows, cols);
  for (int k = K; k >= 0; --k) {
    for (int j = 0; j < 2; ++j) {
      const int col = 2 * (K - k) + j;
      for (int n = L; n <= R; ++n) {
        const int p = n + k;
        A(2 * (p - L), col) = M[n - L](0, j);
        A(2 * (p - L) + 1, col) = M[n - L](1, j);
      }
    }
  }
  Eigen::HouseholderQR<MatrixXcd> qr(A);
  MatrixXcd E = MatrixXcd::Zero(rows, 2);
  E(cols - 2, 0) = 1.0;
  E(cols - 1, 1) = 1.0;
  MatrixXcd Q = qr.householderQ() * E;
  for (int j = 0; j < 2; ++j) {
    const cplx r = qr.matrixQR()(cols - 2 + j, cols - 2 + j);
    if (std::abs(r) > 0) Q.col(j) *= r / std::abs(r);
  }
  // Û_p, p in [L, R + K].
  std::vector<Matrix2cd> Uc(static_cast<std::size_t>(powers));
  for (int p = 0; p < powers; ++p) Uc[p] = Q.block(2 * p, 0, 2, 2);

  IwasawaAttempt out{Loop<CQuaternion>(L, R + K), Loop<CQuaternion>(0, R - L), 0.0, 0.0};
  for (int p = 0; p < powers; ++p) out.unitary[L + p] = from_matrix(Uc[p]);
  // B̂_s = Σ_p Û_p^H M_{p+s}.
  for (int s = -(R + K - L); s <= R - L; ++s) {
    Matrix2cd acc = Matrix2cd::Zero();
    for (int p = L; p <= R + K; ++p) {
      const int n = p + s;
      if (n < L || n > R) continue;
      acc += Uc[p - L].adjoint() * M[n - L];
    }
    if (s >= 0) {
      out.positive[s] = from_matrix(acc);
    } else {
      out.negative_residual = std::max(out.negative_residual, acc.cwiseAbs().maxCoeff());
    }
  }
  // Σ_p Û_p^H Û_{p+s} = δ_{s0} I.
  for (int s = 0; s < powers; ++s) {
    Matrix2cd acc = Matrix2cd::Zero();
    for (int p = 0; p + s < powers; ++p) acc += Uc[p].adjoint() * Uc[p + s];
    if (s == 0) acc -= Matrix2cd::Identity();
    out.unitarity_defect = std::max(out.unitarity_defect, acc.cwiseAbs().maxCoeff());
  }
  return out;
}

}  // namespace

QuaternionIwasawa iwasawa_quaternion(const Loop<CQuaternion>& m_in, const IwasawaOptions& opts) {
  double scale = 0;
  for (int k = m_in.lo(); k <= m_in.hi(); ++k) scale = std::max(scale, max_abs(m_in[k]));
  if (scale == 0) throw Error(ErrorCode::FactorizationDiverged, "zero loop");
  const Loop<CQuaternion> m = trimmed(m_in, 1e-18 * scale);
  const int L = m.lo();
  std::vector<Matrix2cd> M;
  for (int k = m.lo(); k <= m.hi(); ++k) M.push_back(to_matrix(m[k]));

  int K = std::max(opts.k_initial, m.hi() - m.lo());
  double last = 0;
  while (K <= opts.k_max) {
    IwasawaAttempt a = iwasawa_attempt(M, L, K);
    last = std::max(a.negative_residual / scale, a.unitarity_defect);
    if (last <= opts.tol) {
      QuaternionIwasawa out;
      const double s = scale;
      out.unitary = trimmed(a.unitary, 1e-18);
      out.positive = trimmed(a.positive, 1e-18 * s);
      out.negative_residual = a.negative_residual;
      out.unitarity_defect = a.unitarity_defect;
      out.K = K;
      return out;
    }
    K *= 2;
  }
  throw Error(ErrorCode::FactorizationDiverged,
              "Toeplitz Iwasawa did not converge: relative defect " + std::to_string(last) + " at K = " +
                  std::to_string(K / 2));
}

QuaternionBirkhoff birkhoff_quaternion(const Loop<CQuaternion>& m_in, const BirkhoffOptions& opts) {
  double scale = 0;
  for (int k = m_in.lo(); k <= m_in.hi(); ++k) scale = std::max(scale, max_abs(m_in[k]));
  QuaternionBirkhoff out;
  if (scale == 0) {
    out.big_cell = false;
    out.condition = INFINITY;
    return out;
  }
  const Loop<CQuaternion> m = trimmed(m_in, 1e-18 * scale);
  const int L = m.lo();
  if (L >= 0) {
    out.minus = Loop<CQuaternion>::constant(CQuaternion(1.0));
    out.inverse_minus = out.minus;
    out.plus = m;
    return out;
  }
  const auto Mat = [&](int k) -> Matrix2cd { return m.contains(k) ? to_matrix(m[k]) : Matrix2cd::Zero(); };

  int K = -L + opts.k_extra;
  for (;;) {
    MatrixXcd T(2 * K, 2 * K), B(2, 2 * K);
    for (int k = 1; k <= K; ++k)
      for (int r = 1; r <= K; ++r) T.block(2 * (k - 1), 2 * (r - 1), 2, 2) = Mat(k - r);
    for (int r = 1; r <= K; ++r) B.block(0, 2 * (r - 1), 2, 2) = Mat(-r);
    Eigen::PartialPivLU<MatrixXcd> lu(T.transpose());
    const double rc = lu.rcond();
    out.condition = rc > 0 ? 1.0 / rc : INFINITY;
    out.K = K;
    if (!(out.condition <= opts.max_condition)) {
      out.big_cell = false;
      return out;
    }
    const MatrixXcd X = lu.solve(-B.transpose()).transpose();  // [P_1 … P_K]
    std::vector<Matrix2cd> P(static_cast<std::size_t>(K + 1));
    P[0] = Matrix2cd::Identity();
    for (int k = 1; k <= K; ++k) P[k] = X.block(0, 2 * (k - 1), 2, 2);

    // (P M)_s for s in [L − K, hi].
    Loop<CQuaternion> plus(0, m.hi());
    double resid = 0;
    for (int s = L - K; s <= m.hi(); ++s) {
      Matrix2cd acc = Matrix2cd::Zero();
      for (int k = 0; k <= K; ++k) acc += P[k] * Mat(s + k);
      if (s < 0) {
        resid = std::max(resid, acc.cwiseAbs().maxCoeff());
      } else {
        plus[s] = from_matrix(acc);
      }
    }
    out.residual = resid / scale;
    if (out.residual <= opts.tol || 2 * K > opts.k_max) {
      out.inverse_minus = Loop<CQuaternion>(-K, 0);
      for (int k = 0; k <= K; ++k) out.inverse_minus[-k] = from_matrix(P[k]);
      out.minus = conj_coeffs(out.inverse_minus);
      out.plus = plus;
      if (out.residual > opts.tol) out.big_cell = false;
      return out;
    }
    K *= 2;
  }
}

IwasawaResult iwasawa_factorize(const HolomorphicFrame& H, const IwasawaOptions& opts) {
  IwasawaResult r;
  // H = U·B composes as a_H = a_B a_U, so factor ā_H = ā_U ā_B; c_H = c_U c_B.
  const QuaternionIwasawa fa = iwasawa_quaternion(conj_coeffs(H.a), opts);
  const QuaternionIwasawa fc = iwasawa_quaternion(H.c, opts);
  r.U.a = conj_coeffs(fa.unitary);
  r.B.a = conj_coeffs(fa.positive);
  r.U.c = fc.unitary;
  r.B.c = fc.positive;
  r.negative_residual = std::max(fa.negative_residual, fc.negative_residual);
  r.unitarity_defect = std::max(fa.unitarity_defect, fc.unitarity_defect);
  r.K_a = fa.K;
  r.K_c = fc.K;

  // Y = F_U⁻¹ T_H = (c̄ T_x ā, c̄ T_y b̄) on λ powers.
  const Loop<CQuaternion>& aU = r.U.a;
  const Loop<CQuaternion>& cU = r.U.c;
  const int ylo = H.T.lo() + 2 * aU.lo() + 4 * cU.lo();
  const int yhi_full = H.T.hi() + 2 * aU.hi() + 4 * cU.hi();
  const int yhi = opts.full_translation ? yhi_full : std::min(1, yhi_full);
  Loop<COctonion> P(ylo - 4 * cU.hi(), yhi - 4 * cU.lo());
  for (int s = H.T.lo(); s <= H.T.hi(); ++s) {
    const COctonion& t = H.T[s];
    if (abs2(t) == 0) continue;
    for (int m = aU.lo(); m <= aU.hi(); ++m) {
      const int k = s + 2 * m;
      if (!P.contains(k)) continue;
      const CQuaternion abar = conj(aU[m]);
      P[k].x += t.x * abar;
      P[k].y += (m % 2 == 0 ? 1.0 : -1.0) * (t.y * abar);
    }
  }
  Loop<COctonion> Y(ylo, yhi);
  for (int n = cU.lo(); n <= cU.hi(); ++n) {
    const CQuaternion cbar = conj(cU[n]);
    for (int k = P.lo(); k <= P.hi(); ++k) {
      const int o = k + 4 * n;
      if (!Y.contains(o) || abs2(P[k]) == 0) continue;
      Y[o].x += cbar * P[k].x;
      Y[o].y += cbar * P[k].y;
    }
  }
  r.Y_minus = Loop<COctonion>(std::min(ylo, -1), -1);
  for (int k = r.Y_minus.lo(); k <= -1; ++k) r.Y_minus[k] = Y.at(k);
  r.TB1 = Y.at(1) - cconj(Y.at(-1));

  if (opts.full_translation) {
    // T_U = F_U (Y₋ + conj Y₋), T_B = Y₊ − conj Y₋.
    Loop<COctonion> Z = r.Y_minus;
    Z += reflect(r.Y_minus);
    const int lo = Z.lo() + 2 * aU.lo() + 4 * cU.lo(), hi = Z.hi() + 2 * aU.hi() + 4 * cU.hi();
    Loop<COctonion> Q(lo - 4 * cU.hi(), hi - 4 * cU.lo());
    for (int s = Z.lo(); s <= Z.hi(); ++s) {
      if (abs2(Z[s]) == 0) continue;
      for (int m = aU.lo(); m <= aU.hi(); ++m) {
        const int k = s + 2 * m;
        Q[k].x += Z[s].x * aU[m];
        Q[k].y += (m % 2 == 0 ? 1.0 : -1.0) * (Z[s].y * aU[m]);
      }
    }
    r.U.T = Loop<COctonion>(lo, hi);
    for (int n = cU.lo(); n <= cU.hi(); ++n) {
      for (int k = Q.lo(); k <= Q.hi(); ++k) {
        const int o = k + 4 * n;
        if (!r.U.T.contains(o) || abs2(Q[k]) == 0) continue;
        r.U.T[o].x += cU[n] * Q[k].x;
        r.U.T[o].y += cU[n] * Q[k].y;
      }
    }
    r.B.T = Loop<COctonion>(1, std::max(1, yhi_full));
    const Loop<COctonion> refl = reflect(r.Y_minus);
    for (int k = 1; k <= r.B.T.hi(); ++k) r.B.T[k] = Y.at(k) - refl.at(k);
  }
  return r;
}

AffineElement IwasawaResult::U_at(std::complex<double> lambda) const {
  const cplx mu = lambda * lambda;
  AffineElement g{U.a(mu), U.a(-mu), U.c(mu * mu), {}};
  COctonion z = Y_minus(lambda);
  z += reflect(Y_minus)(lambda);
  g.T = apply_linear(g, z);
  return g;
}

AffineElement IwasawaResult::B0() const {
  const CQuaternion a0 = B.a.at(0);
  return {a0, a0, B.c.at(0), {}};
}

COctonion inverse_linear_coeff(const Loop<CQuaternion>& abar, const Loop<CQuaternion>& cbar, const Loop<COctonion>& T,
                               int k) {
  // Σ c̄_{4n} T_s ā_{2m} (b̄ for y) over 4n + s + 2m = k.
  COctonion acc;
  for (int n = cbar.lo(); n <= cbar.hi(); ++n) {
    for (int m = abar.lo(); m <= abar.hi(); ++m) {
      const int s = k - 4 * n - 2 * m;
      if (!T.contains(s)) continue;
      const COctonion& t = T[s];
      acc.x += cbar[n] * t.x * abar[m];
      acc.y += (m % 2 == 0 ? 1.0 : -1.0) * (cbar[n] * t.y * abar[m]);
    }
  }
  return acc;
}

BirkhoffResult birkhoff_factorize(const HolomorphicFrame& U, const BirkhoffOptions& opts) {
  BirkhoffResult r;
  // U = U⁻U⁺: ā_U = ā⁻ ā⁺ and c_U = c⁻ c⁺.
  const QuaternionBirkhoff fa = birkhoff_quaternion(conj_coeffs(U.a), opts);
  const QuaternionBirkhoff fc = birkhoff_quaternion(U.c, opts);
  r.condition = std::max(fa.condition, fc.condition);
  r.residual = std::max(fa.residual, fc.residual);
  r.big_cell = fa.big_cell && fc.big_cell;
  if (!r.big_cell) return r;
  r.a_minus = fa.inverse_minus;  // a⁻ = (ā⁻)⁻¹
  r.c_minus = fc.minus;
  const Loop<CQuaternion>& abar = fa.minus;         // ā⁻, powers ≤ 0 in μ
  const Loop<CQuaternion>& cbar = fc.inverse_minus;  // c̄⁻, powers ≤ 0 in ν
  r.abar_minus = abar;
  r.cbar_minus = cbar;
  r.T_minus1 = inverse_linear_coeff(abar, cbar, U.T, -1);
  return r;
}

}  // namespace octodpw
