// Acceptance runner: one PASS/FAIL line per criterion, exit status 0 when all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "octodpw/analysis.hpp"
#include "octodpw/connection.hpp"
#include "octodpw/identity_suite.hpp"
#include "octodpw/isotropic.hpp"
#include "octodpw/lie.hpp"
#include "octodpw/pipeline.hpp"
#include "octodpw/random.hpp"
#include "support.hpp"

using namespace octodpw;

namespace {

// Pinned tolerances.
constexpr double kAlgebraTol = 1e-10;
constexpr double kAlgebraSeconds = 5.0;
constexpr double kNormTol = 1e-10;
constexpr double kMachineTol = 4.0 * 2.220446049250313e-16;
constexpr double kInvarianceTol = 1e-10;
constexpr double kReconstructTol = 1e-9;
constexpr double kSplitTol = 1e-12;
constexpr double kCrossTol = 1e-9;
constexpr double kGradingTol = 1e-10;
constexpr double kPlaneTol = 1e-8;
constexpr double kRhoConstTol = 1e-9;
constexpr double kVacuumHTol = 1e-9;
constexpr double kVacuumSeconds = 30.0;
constexpr double kOrder = 2.0, kOrderBand = 0.3;
constexpr double kFamilyFTol = 1e-8;
constexpr double kMeanFloor = 1e-6, kMeanC = 4.0;
constexpr double kSphereTol = 1e-2;
constexpr double kRoundTripTol = 1e-6, kOffBigCellMax = 0.01;
constexpr double kFaultRatio = 10.0, kFaultFloor = 1e-12;

constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double result(const std::vector<IdentityResult>& rs, const std::string& name) {
  double m = -1;
  for (const auto& r : rs)
    if (r.name == name) m = std::max(m, r.max_residual);
  if (m < 0) throw std::runtime_error("missing identity " + name);
  return m;
}

// Least-squares slope of log r against log h, plus the pairwise orders.
struct Order {
  double fit = 0;
  std::vector<double> pairwise;
  bool within(double target, double band) const {
    if (std::abs(fit - target) > band) return false;
    for (double p : pairwise)
      if (std::abs(p - target) > band) return false;
    return true;
  }
  std::string str() const {
    std::string s = fmt::format("order {:.3f} (pairwise", fit);
    for (double p : pairwise) s += fmt::format(" {:.3f}", p);
    return s + ")";
  }
};

Order convergence_order(const std::vector<double>& h, const std::vector<double>& r) {
  Order o;
  const std::size_t n = h.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = std::log(h[k]), y = std::log(r[k]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  o.fit = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  for (std::size_t k = 0; k + 1 < n; ++k) o.pairwise.push_back(std::log(r[k] / r[k + 1]) / std::log(h[k] / h[k + 1]));
  return o;
}

std::string sci_list(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += fmt::format("{}{:.2e}", s.empty() ? "" : " ", x);
  return s;
}

double interior_max(const Field<Octonion>& f, int margin) {
  double m = 0;
  const Grid& g = f.grid();
  for (int j = margin; j < g.nv - margin; ++j)
    for (int i = margin; i < g.nu - margin; ++i) m = std::max(m, abs(f(i, j)));
  return m;
}

const std::vector<std::complex<double>> kFamily{1.0, I_c, std::polar(1.0, M_PI / 4), std::polar(1.0, 3 * M_PI / 4)};
const std::vector<std::complex<double>> kFlatnessLambdas{1.0, I_c, std::polar(1.0, 0.7)};

/// DPW output of the sample potential at one resolution with its derived fields.
struct Level {
  DiscreteSurface S;
  ExtendedConnection ext;
  double h = 0;
};

Level make_level(int n) {
  PotentialSpec spec = testing::sample_potential(n);
  spec.lambda_samples = kFamily;
  Level L{extract_surface(spec), ExtendedConnection{}, 0};
  L.ext = assemble_extended(maurer_cartan_field(L.S.frame), 1e-2);
  L.h = L.S.grid.h();
  return L;
}

const std::vector<Level>& levels() {
  static const std::vector<Level> ls = [] {
    std::vector<Level> out;
    for (int n : {32, 64, 128}) out.push_back(make_level(n));
    return out;
  }();
  return ls;
}

Outcome c1_algebra() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rs = run_algebra_identities(kSeed, 10000, standard_multiply(), kAlgebraTol);
  const double secs = seconds_since(t0);
  double worst = 0;
  std::string worst_name;
  for (const auto& r : rs)
    if (r.max_residual >= worst) worst = r.max_residual, worst_name = r.name;
  // I_b(J_b K_b) = Ê_b and (I_b J_b)K_b = −Ê_b.
  const Octonion lhs = oct::Ib * (oct::Jb * oct::Kb), rhs = (oct::Ib * oct::Jb) * oct::Kb;
  const bool exact = max_abs(lhs - oct::Eb) == 0.0 && max_abs(rhs + oct::Eb) == 0.0;
  return {worst <= kAlgebraTol && exact && secs <= kAlgebraSeconds,
          fmt::format("{} identities, max residual {:.2e} ({}), basis products exact {}, {:.2f} s", rs.size(), worst,
                      worst_name, exact ? "yes" : "no", secs)};
}

Outcome c2_norm() {
  const auto rs = run_algebra_identities(kSeed + 1, 10000, standard_multiply(), kNormTol);
  const double r = result(rs, "norm_multiplicative");
  return {r <= kNormTol, fmt::format("|N(qq') - N(q)N(q')| max {:.2e} over 1e4 samples", r)};
}

Outcome c3_orbit() {
  const auto rs = run_geometry_identities(kSeed, 1000);
  const double p1 = result(rs, "p_of_P1"), p2 = result(rs, "p_of_P2"), inv = result(rs, "p_group_invariance");
  return {p1 <= kMachineTol && p2 <= kMachineTol && inv <= kInvarianceTol,
          fmt::format("|p(P1)| {:.1e}, |p(P2) - 1/2| {:.1e}, invariance {:.2e} over 1e3 pairs", p1, p2, inv)};
}

Outcome c4_reconstruction() {
  Sampler s(kSeed + 4);
  double worst = 0;
  int bad_branches = 0;
  const int count = 1000;
  for (int n = 0; n < count; ++n) {
    const GroupElementG0 g{s.unit_quaternion(), s.unit_quaternion(), s.unit_quaternion(), false};
    const double alpha = s.uniform(0.2, 2.0), beta = s.uniform(0.2, 2.0);
    if (std::abs(alpha - beta) < 1e-3) continue;  // p = ½ is not regular
    const Frame target = rotate(apply_group(g, scale(alpha, beta, reference_frame())), s.uniform(-3, 3));
    if (classify_scaled(target).tag != OrbitTag::Regular) {
      ++bad_branches;
      continue;
    }
    const Reconstruction lo = reconstruct(target, Branch::Low), hi = reconstruct(target, Branch::High);
    for (const Reconstruction& r : {lo, hi}) {
      const Frame back = reassemble(r);
      worst = std::max({worst, max_abs(back.q - target.q), max_abs(back.qp - target.qp)});
    }
    const double thr = branch_threshold(target);
    const bool two = std::abs(lo.alpha - hi.alpha) > 1e-6;
    const bool straddle = lo.alpha < thr && thr < hi.alpha;
    if (!two || !straddle) ++bad_branches;
  }
  return {worst <= kReconstructTol && bad_branches == 0,
          fmt::format("frame residual {:.2e} over {} frames, branch failures {}", worst, count, bad_branches)};
}

Outcome c5_semidirect() {
  const auto rs = run_geometry_identities(kSeed + 5, 1000);
  const double split = result(rs, "semidirect_split_recomposition"), inv = result(rs, "tilde_rho_right_invariance");
  return {split <= kSplitTol && inv <= kSplitTol,
          fmt::format("split recomposition {:.2e}, right invariance {:.2e}", split, inv)};
}

Outcome c6_cross() {
  const auto rs = run_geometry_identities(kSeed + 6, 1000);
  const double r = result(rs, "cross_equivariance");
  return {r <= kCrossTol, fmt::format("equivariance residual {:.2e} over 1e3 words", r)};
}

LieElement random_element(Sampler& s) {
  auto cq = [&] { return CQuaternion{cplx(s.uniform(), s.uniform()), cplx(s.uniform(), s.uniform()),
                                     cplx(s.uniform(), s.uniform()), cplx(s.uniform(), s.uniform())}; };
  LieElement v;
  v.alpha = imag_part(cq());
  v.beta = imag_part(cq());
  v.delta = imag_part(cq());
  v.t = {cq(), cq()};
  return v;
}

Outcome c7_grading() {
  Sampler s(kSeed + 7);
  double closure = 0, plus1 = 0;
  for (int n = 0; n < 1000; ++n) {
    const int j = n % 4, k = (n / 4) % 4;
    const LieElement a = project_grade(random_element(s), j), b = project_grade(random_element(s), k);
    const LieElement c = bracket(a, b);
    closure = std::max(closure, grade_defect(c, (j + k) % 4) / std::max(1.0, max_abs(c)));
    const LieElement p = project_grade(random_element(s), 1), q = project_grade(random_element(s), 1);
    plus1 = std::max(plus1, max_abs(bracket(p, q)));
  }
  return {closure <= kGradingTol && plus1 <= kGradingTol,
          fmt::format("closure {:.2e}, [g+1,g+1] {:.2e}", closure, plus1)};
}

Outcome c8_vacuum() {
  const Grid g{0, 1, 0, 1, 64, 64};
  const CQuaternion w = testing::sample_w();
  const auto t0 = std::chrono::steady_clock::now();
  const PotentialSpec spec = vacuum_potential(w, g, 8);
  const DiscreteSurface S = extract_surface(spec);
  const MeanCurvatureField H = mean_curvature(S.X[0], S.Xu[0], S.Xv[0]);
  const double secs = seconds_since(t0);
  const COctonion E = grade_minus1(w).t;
  double plane = 0;
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      const Octonion expect = re(2.0 * ((g.z(i, j) - spec.basepoint) * E));
      plane = std::max(plane, max_abs(S.X[0](i, j) - expect));
    }
  const RhoField r = rho_field(S.Xu[0], S.Xv[0]);
  double rho_var = 0;
  for (const Octonion& p : r.rho.data()) rho_var = std::max(rho_var, max_abs(p - r.rho(0, 0)));
  const double hmax = std::max({interior_max(H.laplacian, 1), interior_max(H.difference, 1),
                                interior_max(H.rho_form, 1), interior_max(H.sigma_v, 1)});
  return {plane <= kPlaneTol && rho_var <= kRhoConstTol && hmax <= kVacuumHTol && secs <= kVacuumSeconds,
          fmt::format("plane {:.2e}, rho variation {:.2e}, |H| {:.2e}, {:.2f} s", plane, rho_var, hmax, secs)};
}

Outcome c9_flatness() {
  std::vector<double> h, r;
  for (const Level& L : levels()) {
    h.push_back(L.h);
    r.push_back(zero_curvature_residual(L.ext, kFlatnessLambdas, 2).max);
  }
  const Order o = convergence_order(h, r);
  return {o.within(kOrder, kOrderBand), fmt::format("residual {} at 32/64/128, {}", sci_list(r), o.str())};
}

Outcome c10_harmonicity() {
  std::vector<double> h, r;
  for (const Level& L : levels()) {
    h.push_back(L.h);
    r.push_back(interior_stats(tension_field(rho_field(L.S.Xu[0], L.S.Xv[0]).rho), 2).max);
  }
  const Order o = convergence_order(h, r);
  return {o.within(kOrder, kOrderBand), fmt::format("tension {} at 32/64/128, {}", sci_list(r), o.str())};
}

Outcome c11_family() {
  const DiscreteSurface& S = levels()[1].S;
  std::size_t mismatches = 0;
  double fvar = 0;
  for (std::size_t k = 1; k < S.lambdas.size(); ++k) {
    for (std::size_t p = 0; p < S.grid.size(); ++p) {
      if (S.types[k].data()[p].tag != S.types[0].data()[p].tag) ++mismatches;
      fvar = std::max(fvar, std::abs(S.f[k].data()[p] - S.f[0].data()[p]));
    }
  }
  return {mismatches == 0 && fvar <= kFamilyFTol,
          fmt::format("{} lambdas at 64^2, type mismatches {}, f variation {:.2e}", S.lambdas.size(), mismatches, fvar)};
}

Field<Octonion> sphere(const Grid& g, double r) {
  Field<Octonion> X(g);
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      const double u = g.u(i), v = g.v(j);
      Octonion o;
      o[1] = r * std::cos(v) / std::cosh(u);
      o[2] = r * std::sin(v) / std::cosh(u);
      o[3] = r * std::tanh(u);
      X(i, j) = o;
    }
  return X;
}

Outcome c12_mean_curvature() {
  bool ok = true;
  std::string detail;
  for (const Level& L : levels()) {
    const MeanCurvatureField H = mean_curvature(L.S.X[0], L.S.Xu[0], L.S.Xv[0]);
    const std::vector<const Field<Octonion>*> forms{&H.sigma_v, &H.difference, &H.rho_form, &H.laplacian};
    double gap = 0;
    for (std::size_t a = 0; a < forms.size(); ++a)
      for (std::size_t b = a + 1; b < forms.size(); ++b)
        gap = std::max(gap, difference_stats(*forms[a], *forms[b], 2).max);
    const double bound = std::max(kMeanFloor, kMeanC * L.h * L.h);
    ok = ok && gap <= bound && interior_max(H.sigma_v, 2) > 0;
    detail += fmt::format("n={} gap {:.2e}/{:.2e}; ", L.S.grid.nu, gap, bound);
  }
  const double r = 1.7;
  const Grid g{-0.8, 0.8, -1.0, 1.0, 128, 128};
  const MeanCurvatureField H = mean_curvature(sphere(g, r));
  double dev = 0;
  for (int j = 2; j < g.nv - 2; ++j)
    for (int i = 2; i < g.nu - 2; ++i)
      dev = std::max({dev, std::abs(abs(H.laplacian(i, j)) * r - 1.0), std::abs(abs(H.difference(i, j)) * r - 1.0),
                      std::abs(abs(H.rho_form(i, j)) * r - 1.0)});
  ok = ok && dev <= kSphereTol;
  detail += fmt::format("sphere |H|r - 1 max {:.2e}", dev);
  return {ok, detail};
}

Outcome c13_round_trip() {
  PotentialSpec spec = testing::sample_potential(33);
  PotentialTerm p2{2, 2, {}};
  p2.coeff_poly.push_back({1, grade2(CQuaternion{0.0, 0.2, 0.0, 0.3})});
  spec.potential.push_back(p2);
  const RoundTripResult rt = round_trip(spec);
  std::string pts;
  for (auto [i, j] : rt.singular_points) pts += fmt::format(" ({},{})", i, j);
  return {rt.deviation <= kRoundTripTol && rt.off_big_cell_fraction <= kOffBigCellMax,
          fmt::format("deviation {:.2e}, off big cell {} ({:.2f}%){}, fit {:.2e}", rt.deviation, rt.off_big_cell,
                      100 * rt.off_big_cell_fraction, pts.empty() ? "" : ":" + pts, rt.fit_residual)};
}

bool detected(double clean, double faulty) { return faulty >= kFaultRatio * std::max(clean, kFaultFloor); }

Outcome c14_faults() {
  const Level& L = levels()[1];
  const Grid& g = L.ext.grid();

  // Perturbed α₂: a grade-2 bump in the λ⁻² coefficient and its conjugate.
  ExtendedConnection pa = L.ext;
  const LieElement d = grade2(CQuaternion{0.0, 0.3, 0.0, 0.4});
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      const double phi = 0.1 * g.u(i) * g.v(j);
      pa.a2_z(i, j) += phi * d;
      pa.a2_zb(i, j) += phi * cconj(d);
    }
  const double zc_clean = zero_curvature_residual(L.ext, kFlatnessLambdas, 2).max;
  const double zc_alpha = zero_curvature_residual(pa, kFlatnessLambdas, 2).max;

  // Broken grading: a grade-0 component in the λ⁻² coefficient.
  ExtendedConnection pg = L.ext;
  const LieElement w0 = grade0(CQuaternion{0.0, 0.2, 0.1, 0.0}, CQuaternion{0.0, 0.0, 0.3, 0.0});
  for (auto& v : pg.a2_z.data()) v += 0.01 * w0;
  for (auto& v : pg.a2_zb.data()) v += 0.01 * cconj(w0);
  const double gr_clean = grading_residual(L.ext), gr_fault = grading_residual(pg);

  // Non-harmonic ρ: X moved off the DPW family by a cubic bump.
  Field<Octonion> X = L.S.X[0];
  const double t_clean = interior_stats(tension_field(rho_field(X).rho), 2).max;
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) X(i, j)[6] += 0.05 * g.u(i) * g.u(i) * g.u(i);
  const double t_fault = interior_stats(tension_field(rho_field(X).rho), 2).max;

  const bool ok = detected(zc_clean, zc_alpha) && detected(gr_clean, gr_fault) && detected(t_clean, t_fault);
  return {ok, fmt::format("alpha2: zero curvature {:.2e} vs {:.2e}; grading: {:.2e} vs {:.2e}; rho: tension {:.2e} "
                          "vs {:.2e}",
                          zc_alpha, zc_clean, gr_fault, gr_clean, t_fault, t_clean)};
}

}  // namespace

int main() {
  setenv("OCTO_DPW_THREADS", "1", 1);
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"algebra identities", c1_algebra},
      {"norm multiplicativity", c2_norm},
      {"orbit invariant", c3_orbit},
      {"reconstruction", c4_reconstruction},
      {"semidirect splitting", c5_semidirect},
      {"cross-product equivariance", c6_cross},
      {"grading", c7_grading},
      {"vacuum dpw", c8_vacuum},
      {"flatness convergence", c9_flatness},
      {"harmonicity convergence", c10_harmonicity},
      {"associated family", c11_family},
      {"mean-curvature consistency", c12_mean_curvature},
      {"round trip", c13_round_trip},
      {"fault sensitivity", c14_faults},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, fmt::format("exception: {}", e.what())};
    }
    if (!o.pass) ++failed;
    fmt::print("criterion {:2}: {} {}: {}\n", k + 1, o.pass ? "PASS" : "FAIL", criteria[k].first, o.detail);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
