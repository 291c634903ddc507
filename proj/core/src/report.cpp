#include "octodpw/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>

#include "octodpw/errors.hpp"

namespace octodpw {

using nlohmann::json;

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
double number(const json& j) { return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>(); }

}  // namespace

void DiagnosticsReport::set(const std::string& name, const ResidualStats& s, const Grid& g) {
  metrics[name] = {s.max, s.mean, g.nu, g.nv, g.h()};
}

void DiagnosticsReport::set(const std::string& name, double value, const Grid& g) {
  metrics[name] = {value, value, g.nu, g.nv, g.h()};
}

const Metric& DiagnosticsReport::at(const std::string& name) const {
  const auto it = metrics.find(name);
  if (it == metrics.end()) throw Error(ErrorCode::InvalidInput, "no metric " + name);
  return it->second;
}

std::string DiagnosticsReport::to_json() const {
  json j = json::object();
  for (const auto& [name, m] : metrics)
    j[name] = {{"max", number(m.max)}, {"mean", number(m.mean)}, {"grid", {{"nu", m.nu}, {"nv", m.nv}, {"h", number(m.h)}}}};
  return j.dump(2);
}

DiagnosticsReport DiagnosticsReport::from_json(const std::string& text) {
  DiagnosticsReport r;
  try {
    const json j = json::parse(text);
    for (const auto& [name, v] : j.items()) {
      Metric m;
      m.max = number(v.at("max"));
      m.mean = number(v.at("mean"));
      const json& g = v.at("grid");
      m.nu = g.at("nu").get<int>();
      m.nv = g.at("nv").get<int>();
      m.h = number(g.at("h"));
      r.metrics[name] = m;
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("report: ") + e.what());
  }
  return r;
}

DiagnosticsReport analyze_surface(const Field<Octonion>& X, const AnalysisOptions& opts) {
  const auto [Xu, Xv] = tangents(X);
  return analyze_surface(X, Xu, Xv, opts);
}

DiagnosticsReport analyze_surface(const Field<Octonion>& X, const Field<Octonion>& Xu, const Field<Octonion>& Xv,
                                  const AnalysisOptions& opts) {
  const Grid& g = X.grid();
  const int m = opts.margin;
  DiagnosticsReport r;

  const RhoField rf = rho_field(Xu, Xv);
  r.set("conformality", interior_stats(rf.conformality, m), g);
  r.set("rho_unit", interior_stats(rf.unit_defect, m), g);
  const Field<double> biso = bform_isotropy(Xu, Xv);
  r.set("b_isotropy", interior_stats(biso, m), g);
  r.set("omega_isotropy", interior_stats(omega_isotropy(Xu, Xv), m), g);
  r.set("tension", interior_stats(tension_field(rf.rho, m), m), g);

  r.types = singular_map(Xu, Xv, opts.type_band);
  std::size_t singular = 0, counted = 0;
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      if (!g.interior(i, j, m)) continue;
      ++counted;
      if (r.types(i, j).tag != OrbitTag::Regular) ++singular;
    }
  r.set("singular_fraction", counted ? static_cast<double>(singular) / static_cast<double>(counted) : 0.0, g);

  const MeanCurvatureField mc = mean_curvature(X, Xu, Xv);
  Field<double> hn(g);
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) hn(i, j) = abs(mc.laplacian(i, j));
  r.set("mean_curvature", interior_stats(hn, m), g);
  r.set("mean_curvature_gap.laplacian_vs_general", difference_stats(mc.laplacian, mc.difference, m), g);
  r.set("mean_curvature_gap.general_forms", difference_stats(mc.difference, mc.rho_form, m), g);
  r.H_laplacian = mc.laplacian;
  r.H_formula = mc.rho_form;

  const bool sigma_v = interior_stats(biso, 0).max <= 1e-2;
  if (sigma_v) {
    r.set("mean_curvature_gap.general_vs_sigma_v", difference_stats(mc.difference, mc.sigma_v, m), g);
    r.set("mean_curvature_gap.laplacian_vs_sigma_v", difference_stats(mc.laplacian, mc.sigma_v, m), g);
    r.set("mean_curvature_gap.sigma_v_forms", difference_stats(mc.sigma_v, mc.sigma_v_split, m), g);
    r.H_formula = mc.sigma_v;

    Field<Quaternion> rho;
    const auto [E1, E2] = linear_fields(Xu, Xv, &rho);
    const ClosednessResidual cl = closedness_residual(E1, E2, rho);
    r.set("closedness.linear", interior_stats(cl.linear, m), g);
    r.set("closedness.split", interior_stats(cl.split, m), g);
    r.set("closedness.complex", interior_stats(cl.complex, m), g);
    r.set("closedness.structure", interior_stats(cl.structure, m), g);
    // Frames that reconstruct rejects are skipped; with none left the metric is null.
    const Field<double> comp = compatibility_residual(E1, E2, rho);
    const bool any = std::any_of(comp.data().begin(), comp.data().end(), [](double v) { return v >= 0; });
    if (any) {
      r.set("compatibility", interior_stats(comp, m), g);
    } else {
      r.set("compatibility", std::nan(""), g);
    }
  }
  return r;
}

DiagnosticsReport diagnose(const DiscreteSurface& S, const AnalysisOptions& opts) {
  const Grid& g = S.grid;
  const int m = opts.margin;
  std::size_t base = 0;
  for (std::size_t l = 0; l < S.lambdas.size(); ++l)
    if (std::abs(S.lambdas[l] - 1.0) < 1e-12) base = l;
  DiagnosticsReport r = analyze_surface(S.X[base], S.Xu[base], S.Xv[base], opts);

  const PipelineStats& p = S.stats;
  r.set("factorization.product", p.product_residual, g);
  r.set("factorization.negative_part", p.negative_residual, g);
  r.set("factorization.unitarity", p.unitarity_defect, g);
  r.set("factorization.truncation_tail", p.truncation_tail, g);
  r.set("reality", p.reality_residual, g);
  r.set("twisting", p.twisting_residual, g);

  const ConnectionField alpha = maurer_cartan_field(S.frame);
  const Field<double> sv = sigma_v_defect(alpha);
  r.set("sigma_v_defect", interior_stats(sv, m), g);
  r.set("harmonicity", harmonicity_defect(alpha, m), g);
  const auto flat = graded_flatness(alpha, m);
  ResidualStats worst;
  for (const auto& s : flat) {
    worst.max = std::max(worst.max, s.max);
    worst.mean = std::max(worst.mean, s.mean);
  }
  r.set("graded_flatness", worst, g);
  if (interior_stats(sv, 0).max <= 1e-2) {
    std::vector<std::complex<double>> lambdas = S.lambdas;
    lambdas.push_back(1.0);
    const ExtendedConnection ext = assemble_extended(alpha, 1e-2);
    r.set("zero_curvature", zero_curvature_residual(ext, lambdas, m), g);
    r.set("grading", grading_residual(ext), g);
  }

  Field<double> fvar(g, 0.0);
  std::size_t mismatch = 0;
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      double lo = S.f[0](i, j), hi = lo;
      for (std::size_t l = 1; l < S.lambdas.size(); ++l) {
        lo = std::min(lo, S.f[l](i, j));
        hi = std::max(hi, S.f[l](i, j));
        if (S.types[l](i, j).tag != S.types[0](i, j).tag) ++mismatch;
      }
      fvar(i, j) = hi - lo;
    }
  r.set("family.f_variation", interior_stats(fvar, 0), g);
  r.set("family.type_mismatch", static_cast<double>(mismatch), g);
  r.types = S.types[base];
  return r;
}

}  // namespace octodpw
