#include <gtest/gtest.h>

#include <Eigen/Core>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <numbers>

#include "octodpw/factorize.hpp"
#include "octodpw/integrate.hpp"
#include "octodpw/pipeline.hpp"
#include "octodpw/potential.hpp"
#include "support.hpp"

using namespace octodpw;
using octodpw::testing::sample_potential;
using octodpw::testing::sample_w;

namespace {

using Matrix9 = Eigen::Matrix<cplx, 9, 9>;

COctonion unit(int k) {
  COctonion e;
  e[k] = 1.0;
  return e;
}

/// Affine map as a 9×9 matrix on (q, 1).
Matrix9 affine_matrix(const AffineElement& g) {
  Matrix9 m = Matrix9::Zero();
  for (int j = 0; j < 8; ++j) {
    const COctonion c = apply_linear(g, unit(j));
    for (int i = 0; i < 8; ++i) m(i, j) = c[i];
  }
  for (int i = 0; i < 8; ++i) m(i, 8) = g.T[i];
  m(8, 8) = 1.0;
  return m;
}

Matrix9 lie_matrix(const LieElement& v) {
  Matrix9 m = Matrix9::Zero();
  for (int j = 0; j < 8; ++j) {
    const COctonion c = act(v, unit(j));
    for (int i = 0; i < 8; ++i) m(i, j) = c[i];
  }
  for (int i = 0; i < 8; ++i) m(i, 8) = v.t[i];
  return m;
}

double real_defect(const AffineElement& g) {
  double m = 0;
  for (int i = 0; i < 4; ++i) m = std::max({m, std::abs(g.a[i].imag()), std::abs(g.b[i].imag()), std::abs(g.c[i].imag())});
  for (int i = 0; i < 8; ++i) m = std::max(m, std::abs(g.T[i].imag()));
  return m;
}

PotentialSpec constant_potential() {
  PotentialSpec s = vacuum_potential(sample_w(), Grid{0, 0.5, 0, 0.5, 9, 9}, 24);
  s.potential.push_back({-2, 2, {{0, grade2(CQuaternion{0.0, 0.4, cplx(0.0, 0.3), 0.2})}}});
  s.potential.push_back({0, 0, {{0, grade0(CQuaternion{0.0, 0.3, 0.0, 0.2}, CQuaternion{0.0, 0.1, 0.0, 0.0})}}});
  return s;
}

}  // namespace

TEST(Potential, VacuumIsValid) {
  EXPECT_TRUE(validate_potential(vacuum_potential(sample_w(), Grid{0, 1, 0, 1, 8, 8})).empty());
}

TEST(Potential, WrongGradeIsReported) {
  PotentialSpec s = vacuum_potential(sample_w(), Grid{0, 1, 0, 1, 8, 8});
  s.potential.push_back({-2, 0, {{0, grade0(CQuaternion{0.0, 1.0, 0.0, 0.0}, CQuaternion())}}});
  const auto issues = validate_potential(s);
  ASSERT_FALSE(issues.empty());
  EXPECT_EQ(issues.front().code, ErrorCode::GradingViolation);
}

TEST(Potential, PoleInsideDomainIsReported) {
  PotentialSpec s = vacuum_potential(sample_w(), Grid{0, 1, 0, 1, 5, 5});
  s.center = {0.5, 0.5};
  s.potential.push_back({-2, 2, {{-1, grade2(CQuaternion{0.0, 1.0, 0.0, 0.0})}}});
  const auto issues = validate_potential(s);
  ASSERT_FALSE(issues.empty());
  EXPECT_EQ(issues.front().code, ErrorCode::PoleInDomain);
  s.center = {2.0, 0.5};
  EXPECT_TRUE(validate_potential(s).empty());
}

TEST(Potential, VanishingMinusOneTermIsReported) {
  PotentialSpec s = vacuum_potential(sample_w(), Grid{-1, 1, -1, 1, 5, 5});
  s.potential.front().coeff_poly.front().z_power = 1;
  const auto issues = validate_potential(s);
  ASSERT_FALSE(issues.empty());
  EXPECT_EQ(issues.front().code, ErrorCode::ImmersionConditionFail);
}

TEST(Potential, JsonRoundTrip) {
  const PotentialSpec s = sample_potential(9);
  const PotentialSpec t = parse_potential(dump_potential(s));
  EXPECT_EQ(t.domain.nu, 9);
  EXPECT_EQ(t.truncation, 24);
  ASSERT_EQ(t.potential.size(), s.potential.size());
  for (const auto z : {cplx(0.2, 0.7), cplx(1.0, 0.0)}) {
    const TwistedLoop a = evaluate(s, z), b = evaluate(t, z);
    for (int k = a.lo(); k <= a.hi(); ++k) EXPECT_LE(max_abs(a[k] - b.at(k)), 1e-15);
  }
  EXPECT_EQ(dump_potential(t), dump_potential(s));
}

TEST(Potential, ParsesDocumentedSchema) {
  const char* doc = R"({
    "domain": {"u_min": 0, "u_max": 1, "v_min": 0, "v_max": 1, "nu": 8, "nv": 8},
    "basepoint": [0, 0],
    "truncation": 8,
    "lambda_samples": [[1, 0], [0, 1]],
    "potential": [
      {"power": -1, "grade": 3, "coeff_poly": [
        {"z_power": 0, "value": [[1, 0], [0, 0], [0, 0], [0, 0]]}]}
    ]
  })";
  const PotentialSpec s = parse_potential(doc);
  EXPECT_EQ(s.lambda_samples.size(), 2u);
  EXPECT_TRUE(validate_potential(s).empty());
  EXPECT_LE(max_abs(evaluate(s, 0.3)[-1] - grade_minus1(CQuaternion(1.0))), 1e-15);
  try {
    parse_potential(R"({"domain": {}})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidInput);
  }
}

TEST(Integrate, BasepointIsIdentity) {
  const PotentialSpec s = sample_potential(9);
  const auto H = integrate_H(s);
  EXPECT_LE(max_abs_diff(H(0, 0), HolomorphicFrame::identity(s.truncation)), 0.0);
}

TEST(Integrate, ConstantPotentialMatchesMatrixExponential) {
  const PotentialSpec s = constant_potential();
  const auto H = integrate_H(s);
  const TwistedLoop mu = evaluate(s, 0.0);
  for (const auto lam : {cplx(1.0), I_c, std::polar(1.0, 2.0)}) {
    const Matrix9 m = lie_matrix(mu(lam));
    for (auto [i, j] : {std::pair{8, 8}, std::pair{3, 7}, std::pair{8, 0}}) {
      const cplx z = s.domain.z(i, j) - s.basepoint;
      const Matrix9 expect = (z * m).exp();
      const Matrix9 got = affine_matrix(H(i, j).at(lam));
      EXPECT_LE((expect - got).cwiseAbs().maxCoeff(), 1e-9) << i << "," << j;
    }
  }
}

TEST(Integrate, PathIndependenceOnDegreeOnePotential) {
  const PotentialSpec s = sample_potential(64);
  EXPECT_LE(path_independence_residual(s, 63, 63), 1e-8);
  EXPECT_LE(path_independence_residual(s, 40, 63), 1e-8);
}

TEST(Factorize, MatrixPictureIsMultiplicative) {
  const CQuaternion p{1.0, cplx(0.2, 0.1), -0.3, cplx(0.0, 0.4)};
  const CQuaternion q{cplx(0.5, -0.2), 0.1, cplx(0.3, 0.3), 1.0};
  EXPECT_LE(abs(from_matrix(to_matrix(p)) - p), 1e-15);
  EXPECT_LE((to_matrix(p * q) - to_matrix(p) * to_matrix(q)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Factorize, VacuumClosedForm) {
  const PotentialSpec s = vacuum_potential(sample_w(), Grid{0, 1, 0, 1, 9, 9}, 8);
  const auto H = integrate_H(s);
  const COctonion E = grade_minus1(sample_w()).t;
  for (auto [i, j] : {std::pair{8, 3}, std::pair{4, 4}}) {
    const cplx z = s.domain.z(i, j) - s.basepoint;
    const IwasawaResult r = iwasawa_factorize(H(i, j));
    for (const auto lam : circle_samples(8)) {
      const AffineElement U = r.U_at(lam);
      const COctonion expect = (1.0 / lam) * z * E + lam * std::conj(z) * cconj(E);
      EXPECT_LE(max_abs(U.T - expect), 1e-14);
      EXPECT_LE(abs(U.a - CQuaternion(1.0)), 1e-14);
      EXPECT_LE(real_defect(U), 1e-14);
    }
    EXPECT_LE(max_abs(r.TB1 + std::conj(z) * cconj(E)), 1e-14);
  }
}

TEST(Factorize, RealLoopIsItsOwnUnitaryFactor) {
  // The vacuum U is real, so factorizing it again returns U and B = Id.
  const PotentialSpec s = vacuum_potential(sample_w(), Grid{0, 1, 0, 1, 5, 5}, 8);
  const auto H = integrate_H(s);
  IwasawaOptions o;
  o.full_translation = true;
  const IwasawaResult r = iwasawa_factorize(H(4, 2), o);
  const IwasawaResult again = iwasawa_factorize(r.U, o);
  for (const auto lam : circle_samples(16)) {
    EXPECT_LE(max_abs_diff(again.U_at(lam), r.U_at(lam)), 1e-13);
    EXPECT_LE(max_abs_diff(again.B.at(lam), AffineElement{}), 1e-13);
  }
}

TEST(Factorize, GeneralPointReproducesH) {
  const PotentialSpec s = sample_potential(9);
  const auto H = integrate_H(s);
  IwasawaOptions o;
  o.full_translation = true;
  for (auto [i, j] : {std::pair{8, 8}, std::pair{2, 6}}) {
    const IwasawaResult r = iwasawa_factorize(H(i, j), o);
    EXPECT_LE(r.negative_residual, 1e-12);
    for (const auto lam : circle_samples(16)) {
      const AffineElement U = r.U_at(lam);
      EXPECT_LE(real_defect(U), 1e-8);
      EXPECT_LE(max_abs_diff(compose(U, r.B.at(lam)), H(i, j).at(lam)), 1e-8);
      EXPECT_LE(max_abs_diff(tau(U), r.U_at(I_c * lam)), 1e-10);
    }
    // B(0) in the Borel part: a₀ = b₀, and upper triangular with positive
    // diagonal in the matrix picture.
    const Eigen::Matrix2cd a0 = to_matrix(r.B0().a);
    EXPECT_LE(std::abs(a0(1, 0)), 1e-12);
    EXPECT_GT(a0(0, 0).real(), 0.0);
    EXPECT_LE(std::abs(a0(0, 0).imag()), 1e-12);
  }
}

TEST(Factorize, DivergenceIsReported) {
  const PotentialSpec s = sample_potential(9);
  const auto H = integrate_H(s);
  IwasawaOptions o;
  o.k_initial = 1;
  o.k_max = 1;
  try {
    iwasawa_factorize(H(8, 8), o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FactorizationDiverged);
  }
}

// Loops of complexified unit quaternions: 1 + μ^k q with q pure and null has
// norm2 ≡ 1.
TEST(Factorize, BirkhoffOfNegativeLoopIsTrivial) {
  const CQuaternion q = 0.2 * CQuaternion{0.0, 1.0, I_c, 0.0};
  Loop<CQuaternion> m(-1, 0);
  m[0] = CQuaternion(1.0);
  m[-1] = q;
  const QuaternionBirkhoff b = birkhoff_quaternion(m);
  EXPECT_TRUE(b.big_cell);
  for (int k = -1; k <= 0; ++k) EXPECT_LE(abs(b.minus.at(k) - m[k]), 1e-13);
  for (const auto lam : circle_samples(8)) EXPECT_LE(abs(b.plus(lam) - CQuaternion(1.0)), 1e-13);
}

TEST(Factorize, BirkhoffSplitsMixedLoop) {
  const CQuaternion q = 0.2 * CQuaternion{0.0, 1.0, I_c, 0.0};
  const CQuaternion p = 0.3 * CQuaternion{0.0, 0.0, 1.0, I_c};
  Loop<CQuaternion> m(-1, 1);
  m[-1] = q;
  m[0] = CQuaternion(1.0) + q * p;
  m[1] = p;
  const QuaternionBirkhoff b = birkhoff_quaternion(m);
  ASSERT_TRUE(b.big_cell);
  EXPECT_LE(b.residual, 1e-12);
  EXPECT_LE(abs(b.minus.at(0) - CQuaternion(1.0)), 1e-13);
  EXPECT_LE(abs(b.minus.at(-1) - q), 1e-13);
  EXPECT_LE(abs(b.plus.at(1) - p), 1e-13);
  for (const auto lam : circle_samples(8)) EXPECT_LE(abs(b.minus(lam) * b.plus(lam) - m(lam)), 1e-13);
}

TEST(Factorize, VacuumMeromorphicPotentialIsTheInput) {
  const PotentialSpec s = vacuum_potential(sample_w(), Grid{0, 1, 0, 1, 5, 5}, 8);
  const auto H = integrate_H(s);
  IwasawaOptions o;
  o.full_translation = true;
  const IwasawaResult r = iwasawa_factorize(H(3, 4), o);
  const LieElement E = grade_minus1(sample_w());
  const MeromorphicSample m = meromorphic_sample(r.U, H(3, 4), LieElement{}, E);
  EXPECT_TRUE(m.big_cell);
  EXPECT_LE(max_abs(m.eta_m1 - E), 1e-13);
  EXPECT_LE(max_abs(m.eta_m2), 1e-13);
  EXPECT_LE(max_abs(m.T_minus1 - (s.domain.z(3, 4) - s.basepoint) * E.t), 1e-13);
}

TEST(Pipeline, VacuumGivesPlane) {
  const PotentialSpec s = vacuum_potential(sample_w(), Grid{0, 1, 0, 1, 17, 17}, 8);
  const DiscreteSurface S = extract_surface(s);
  const COctonion E = grade_minus1(sample_w()).t;
  double err = 0;
  for (int j = 0; j < 17; ++j)
    for (int i = 0; i < 17; ++i) err = std::max(err, abs(S.X[0](i, j) - re(2.0 * ((s.domain.z(i, j) - s.basepoint) * E))));
  EXPECT_LE(err, 1e-12);
  EXPECT_LE(S.stats.product_residual, 1e-12);
  EXPECT_LE(S.stats.reality_residual, 1e-12);
}

TEST(Pipeline, AssociatedFamilySharesTypesAndMetric) {
  PotentialSpec s = sample_potential(17);
  s.lambda_samples = {1.0, I_c, std::polar(1.0, std::numbers::pi / 4), std::polar(1.0, 3 * std::numbers::pi / 4)};
  const DiscreteSurface S = extract_surface(s);
  ASSERT_EQ(S.X.size(), 4u);
  EXPECT_LE(S.stats.product_residual, 1e-8);
  EXPECT_LE(S.stats.reality_residual, 1e-9);
  EXPECT_LE(S.stats.twisting_residual, 1e-9);
  for (std::size_t k = 1; k < 4; ++k) {
    for (std::size_t n = 0; n < S.f[0].data().size(); ++n) {
      EXPECT_NEAR(S.f[k].data()[n], S.f[0].data()[n], 1e-8);
      EXPECT_EQ(S.types[k].data()[n].tag, S.types[0].data()[n].tag);
    }
  }
  EXPECT_EQ(S.index_of(I_c), 1u);
}

TEST(Pipeline, ValidationRunsFirst) {
  PotentialSpec s = sample_potential(9);
  s.potential[1].grade = 0;
  try {
    extract_surface(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GradingViolation);
  }
}

TEST(Pipeline, DivergenceNamesGridPoint) {
  PipelineOptions o;
  o.iwasawa.k_initial = 1;
  o.iwasawa.k_max = 1;
  try {
    extract_surface(sample_potential(9), o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FactorizationDiverged);
    EXPECT_NE(std::string(e.what()).find("grid point"), std::string::npos) << e.what();
  }
}

TEST(Pipeline, HolomorphicFitRecoversPolynomial) {
  std::vector<cplx> z, w;
  for (int k = 0; k < 30; ++k) {
    const cplx p(0.1 * (k % 6), 0.2 * (k / 6));
    z.push_back(p);
    const cplx s = p - cplx(0.3, 0.4);
    w.push_back(cplx(1.0, -0.5) + 0.25 * s + cplx(0.0, 0.7) * s * s * s);
  }
  const PolynomialFit fit = fit_holomorphic(z, w, cplx(0.3, 0.4));
  ASSERT_EQ(fit.coeffs.size(), 4u);
  EXPECT_NEAR(std::abs(fit.coeffs[0] - cplx(1.0, -0.5)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(fit.coeffs[2]), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(fit.coeffs[3] - cplx(0.0, 0.7)), 0.0, 1e-12);
  EXPECT_LE(fit.residual, 1e-12);
}

TEST(Pipeline, RoundTripReproducesSurface) {
  PotentialSpec s = sample_potential(17);
  s.potential.push_back({2, 2, {{1, grade2(CQuaternion{0.0, 0.2, 0.0, 0.3})}}});
  const RoundTripResult rt = round_trip(s);
  EXPECT_LE(rt.deviation, 1e-6);
  EXPECT_LE(rt.off_big_cell_fraction, 0.01);
  EXPECT_LE(rt.fit_residual, 1e-9);
  for (const auto& t : rt.meromorphic.potential) EXPECT_TRUE(t.power == -2 || t.power == -1);
}
