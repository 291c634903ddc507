#include "octodpw/pipeline.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "octodpw/errors.hpp"
#include "octodpw/parallel.hpp"

namespace octodpw {

namespace {

double imag_defect(const AffineElement& g) {
  double m = std::max({max_abs(im(g.a)), max_abs(im(g.b)), max_abs(im(g.c))});
  return std::max(m, max_abs(im(g.T)));
}

std::string point_name(const Grid& g, int i, int j) {
  return "grid point (" + std::to_string(i) + ", " + std::to_string(j) + ") at z = " + std::to_string(g.u(i)) +
         (g.v(j) < 0 ? " - " : " + ") + std::to_string(std::abs(g.v(j))) + "i";
}

}  // namespace

std::size_t DiscreteSurface::index_of(std::complex<double> lambda) const {
  for (std::size_t k = 0; k < lambdas.size(); ++k)
    if (std::abs(lambdas[k] - lambda) < 1e-12) return k;
  throw Error(ErrorCode::InvalidInput, "λ sample not present in the surface");
}

std::pair<LieElement, LieElement> leading_coefficients(const IwasawaResult& r, const LieElement& mu_m2,
                                                       const LieElement& mu_m1) {
  const AffineElement B0 = r.B0();
  LieElement a2 = Ad(B0, mu_m2);
  LieElement a1 = Ad(B0, mu_m1);
  a1.t -= act(a2, r.TB1);
  return {a2, a1};
}

MeromorphicSample meromorphic_sample(const HolomorphicFrame& U, const HolomorphicFrame& H, const LieElement& mu_m2,
                                     const LieElement& mu_m1, const BirkhoffOptions& opts) {
  MeromorphicSample m;
  const BirkhoffResult b = birkhoff_factorize(U, opts);
  m.big_cell = b.big_cell;
  m.condition = b.condition;
  if (!b.big_cell) return m;
  m.T_minus1 = b.T_minus1;
  m.a_minus1 = b.a_minus.at(-1);

  // P = (U⁻)⁻¹H: a_P = a_H ā⁻, c_P = c̄⁻ c_H, T_P = F⁻⁻¹(T_H − T⁻).
  const Loop<CQuaternion>& abar = b.abar_minus;
  const Loop<CQuaternion>& cbar = b.cbar_minus;
  const auto aP = [&](int k) {
    CQuaternion acc;
    for (int n = abar.lo(); n <= abar.hi(); ++n) acc += H.a.at(k - n) * abar[n];
    return acc;
  };
  const auto cP = [&](int k) {
    CQuaternion acc;
    for (int n = cbar.lo(); n <= cbar.hi(); ++n) acc += cbar[n] * H.c.at(k - n);
    return acc;
  };
  for (int k = -3; k <= -1; ++k) m.positive_residual = std::max({m.positive_residual, max_abs(aP(k)), max_abs(cP(k))});
  const CQuaternion a0 = aP(0);
  const AffineElement P0{a0, a0, cP(0), {}};
  const COctonion TP1 = inverse_linear_coeff(abar, cbar, H.T, 1);

  m.eta_m2 = Ad(P0, mu_m2);
  m.eta_m1 = Ad(P0, mu_m1);
  m.eta_m1.t -= act(m.eta_m2, TP1);
  return m;
}

DiscreteSurface extract_surface(const PotentialSpec& spec, const PipelineOptions& opts) {
  require_valid(spec);
  const Grid& g = spec.domain;
  DiscreteSurface S;
  S.grid = g;
  S.lambdas = spec.lambda_samples;
  const std::size_t L = S.lambdas.size();
  S.X.assign(L, Field<Octonion>(g));
  S.Xu.assign(L, Field<Octonion>(g));
  S.Xv.assign(L, Field<Octonion>(g));
  S.f.assign(L, Field<double>(g));
  S.types.assign(L, Field<OrbitClass>(g));
  S.frame = Field<AffineElement>(g);
  S.alpha_m2 = Field<LieElement>(g);
  S.alpha_m1 = Field<LieElement>(g);
  if (opts.birkhoff) S.meromorphic.emplace(g);
  Field<PipelineStats> point_stats(g);

  IwasawaOptions io = opts.iwasawa;
  io.full_translation = io.full_translation || opts.check_product || opts.birkhoff;
  const auto circle = circle_samples(16);

  integrate_H(
      spec,
      [&](int i, int j, const HolomorphicFrame& H) {
        IwasawaResult r;
        try {
          r = iwasawa_factorize(H, io);
        } catch (const Error& e) {
          throw Error(e.code(), std::string(e.what()) + " at " + point_name(g, i, j));
        }
        PipelineStats& ps = point_stats(i, j);
        ps.negative_residual = r.negative_residual;
        ps.unitarity_defect = r.unitarity_defect;
        ps.truncation_tail = truncation_tail(H);
        ps.max_K = std::max(r.K_a, r.K_c);
        for (const auto lam : circle) {
          const AffineElement U = r.U_at(lam);
          ps.reality_residual = std::max(ps.reality_residual, imag_defect(U));
          ps.twisting_residual = std::max(ps.twisting_residual, max_abs_diff(tau(U), r.U_at(I_c * lam)));
          if (opts.check_product)
            ps.product_residual =
                std::max(ps.product_residual, max_abs_diff(compose(U, r.B.at(lam)), H.at(lam)));
        }

        const std::complex<double> z = g.z(i, j);
        const TwistedLoop mu = evaluate(spec, z);
        const auto [a2, a1] = leading_coefficients(r, mu.at(-2), mu.at(-1));
        S.alpha_m2(i, j) = a2;
        S.alpha_m1(i, j) = a1;
        const COctonion E = a1.t;
        S.frame(i, j) = r.U_at(1.0);
        for (std::size_t l = 0; l < L; ++l) {
          const std::complex<double> lam = S.lambdas[l];
          const AffineElement U = r.U_at(lam);
          const COctonion Eb = cconj(E);
          const Octonion xu = re(apply_linear(U, (1.0 / lam) * E + lam * Eb));
          const Octonion xv = re(apply_linear(U, (I_c / lam) * E - (I_c * lam) * Eb));
          S.X[l](i, j) = re(U.T);
          S.Xu[l](i, j) = xu;
          S.Xv[l](i, j) = xv;
          S.f[l](i, j) = std::log(abs(xu));
          S.types[l](i, j) = classify_scaled({xu, xv}, opts.type_band);
          ps.reality_residual = std::max(ps.reality_residual, max_abs(im(U.T)));
        }
        if (opts.birkhoff) (*S.meromorphic)(i, j) = meromorphic_sample(r.U, H, mu.at(-2), mu.at(-1), opts.birkhoff_options);
      },
      opts.integration);

  for (const PipelineStats& p : point_stats.data()) {
    PipelineStats& s = S.stats;
    s.product_residual = std::max(s.product_residual, p.product_residual);
    s.negative_residual = std::max(s.negative_residual, p.negative_residual);
    s.unitarity_defect = std::max(s.unitarity_defect, p.unitarity_defect);
    s.reality_residual = std::max(s.reality_residual, p.reality_residual);
    s.twisting_residual = std::max(s.twisting_residual, p.twisting_residual);
    s.truncation_tail = std::max(s.truncation_tail, p.truncation_tail);
    s.max_K = std::max(s.max_K, p.max_K);
  }
  return S;
}

namespace {

struct MultiFit {
  Eigen::MatrixXcd coeffs;  // (degree + 1) × columns, in powers of (z − center)
  double residual = 0;
};

MultiFit fit_columns(const std::vector<std::complex<double>>& z, const Eigen::MatrixXcd& W, std::complex<double> center,
                     int max_degree, double tol) {
  const Eigen::Index n = static_cast<Eigen::Index>(z.size());
  double R = 0;
  for (const auto& zk : z) R = std::max(R, std::abs(zk - center));
  if (R == 0) R = 1;
  const double scale = W.size() ? W.cwiseAbs().maxCoeff() : 0.0;
  MultiFit best;
  best.residual = INFINITY;
  if (scale == 0 || n == 0) {
    best.coeffs = Eigen::MatrixXcd::Zero(1, W.cols());
    best.residual = 0;
    return best;
  }
  for (int d = 0; d <= max_degree && d < n; ++d) {
    Eigen::MatrixXcd V(n, d + 1);
    for (Eigen::Index k = 0; k < n; ++k) {
      const std::complex<double> s = (z[static_cast<std::size_t>(k)] - center) / R;
      std::complex<double> p = 1.0;
      for (int e = 0; e <= d; ++e) {
        V(k, e) = p;
        p *= s;
      }
    }
    Eigen::MatrixXcd C = V.colPivHouseholderQr().solve(W);
    const double res = (V * C - W).cwiseAbs().maxCoeff();
    if (res < best.residual) {
      for (int e = 0; e <= d; ++e) C.row(e) /= std::pow(R, e);
      best.coeffs = C;
      best.residual = res;
    }
    if (res <= tol * scale) break;
  }
  return best;
}

}  // namespace

PolynomialFit fit_holomorphic(const std::vector<std::complex<double>>& z, const std::vector<std::complex<double>>& w,
                              std::complex<double> center, int max_degree, double tol) {
  Eigen::MatrixXcd W(static_cast<Eigen::Index>(w.size()), 1);
  for (std::size_t k = 0; k < w.size(); ++k) W(static_cast<Eigen::Index>(k), 0) = w[k];
  const MultiFit m = fit_columns(z, W, center, max_degree, tol);
  PolynomialFit out;
  out.residual = m.residual;
  for (Eigen::Index e = 0; e < m.coeffs.rows(); ++e) out.coeffs.push_back(m.coeffs(e, 0));
  return out;
}

RoundTripResult round_trip(const PotentialSpec& spec, const PipelineOptions& opts) {
  PipelineOptions o = opts;
  o.birkhoff = true;
  const DiscreteSurface S = extract_surface(spec, o);
  const Grid& g = S.grid;
  const Field<MeromorphicSample>& M = *S.meromorphic;
  RoundTripResult rt;

  std::vector<std::complex<double>> zs;
  std::vector<Eigen::Matrix<std::complex<double>, 1, 7>> rows;
  for (int j = 0; j < g.nv; ++j) {
    for (int i = 0; i < g.nu; ++i) {
      const MeromorphicSample& m = M(i, j);
      rt.max_condition = std::max(rt.max_condition, m.condition);
      if (!m.big_cell) {
        ++rt.off_big_cell;
        rt.singular_points.emplace_back(i, j);
        continue;
      }
      zs.push_back(g.z(i, j));
      const CQuaternion gamma = m.eta_m2.beta;
      const CQuaternion w = 2.0 * m.eta_m1.t.x;
      Eigen::Matrix<std::complex<double>, 1, 7> row;
      row << gamma.x, gamma.y, gamma.z, w.w, w.x, w.y, w.z;
      rows.push_back(row);
    }
  }
  rt.off_big_cell_fraction = static_cast<double>(rt.off_big_cell) / static_cast<double>(g.size());
  if (zs.empty()) throw Error(ErrorCode::OffBigCell, "no grid point in the big cell");

  Eigen::MatrixXcd W(static_cast<Eigen::Index>(rows.size()), 7);
  for (std::size_t k = 0; k < rows.size(); ++k) W.row(static_cast<Eigen::Index>(k)) = rows[k];
  const std::complex<double> center{0.5 * (g.u_min + g.u_max), 0.5 * (g.v_min + g.v_max)};
  const MultiFit fit = fit_columns(zs, W, center, 20, 1e-13);
  rt.fit_residual = fit.residual;

  PotentialSpec& mero = rt.meromorphic;
  mero.domain = spec.domain;
  mero.basepoint = spec.basepoint;
  mero.truncation = spec.truncation;
  mero.lambda_samples = spec.lambda_samples;
  mero.center = center;
  PotentialTerm t2{-2, 2, {}}, t1{-1, 3, {}};
  for (Eigen::Index e = 0; e < fit.coeffs.rows(); ++e) {
    const CQuaternion gamma{0.0, fit.coeffs(e, 0), fit.coeffs(e, 1), fit.coeffs(e, 2)};
    const CQuaternion w{fit.coeffs(e, 3), fit.coeffs(e, 4), fit.coeffs(e, 5), fit.coeffs(e, 6)};
    if (max_abs(gamma) > 0) t2.coeff_poly.push_back({static_cast<int>(e), grade2(gamma)});
    if (max_abs(w) > 0) t1.coeff_poly.push_back({static_cast<int>(e), grade_minus1(w)});
  }
  if (!t2.coeff_poly.empty()) mero.potential.push_back(t2);
  mero.potential.push_back(t1);

  // η₋₂ = (∂a⁻₋₂, −∂a⁻₋₂, 0) and η₋₁ = ∂T⁻₋₁, with ∂_z = ∂_u = −i∂_v.
  const double hu = g.hu(), hv = g.hv();
  for (int j = 1; j + 1 < g.nv; ++j) {
    for (int i = 1; i + 1 < g.nu; ++i) {
      const MeromorphicSample& c = M(i, j);
      if (!c.big_cell || !M(i - 1, j).big_cell || !M(i + 1, j).big_cell || !M(i, j - 1).big_cell ||
          !M(i, j + 1).big_cell)
        continue;
      const COctonion du = (M(i + 1, j).T_minus1 - M(i - 1, j).T_minus1) * (0.5 / hu);
      const COctonion dv = (M(i, j + 1).T_minus1 - M(i, j - 1).T_minus1) * (0.5 / hv);
      const CQuaternion da = (M(i + 1, j).a_minus1 - M(i - 1, j).a_minus1) * (0.5 / hu);
      rt.derivative_check = std::max({rt.derivative_check, max_abs(du - c.eta_m1.t),
                                      max_abs(dv - I_c * c.eta_m1.t), max_abs(da - c.eta_m2.alpha)});
    }
  }

  PipelineOptions o2 = opts;
  o2.birkhoff = false;
  const DiscreteSurface S2 = extract_surface(mero, o2);
  for (std::size_t l = 0; l < S.lambdas.size(); ++l)
    for (int j = 0; j < g.nv; ++j)
      for (int i = 0; i < g.nu; ++i)
        if (M(i, j).big_cell) rt.deviation = std::max(rt.deviation, abs(S2.X[l](i, j) - S.X[l](i, j)));
  return rt;
}

}  // namespace octodpw
