#pragma once

#include <map>
#include <string>

#include "octodpw/analysis.hpp"
#include "octodpw/connection.hpp"
#include "octodpw/pipeline.hpp"

namespace octodpw {

struct Metric {
  double max = 0, mean = 0;
  int nu = 0, nv = 0;
  double h = 0;
};

/// Residual summary of one surface. The JSON form is the flat map
/// name → {max, mean, grid: {nu, nv, h}}; the fields travel separately.
struct DiagnosticsReport {
  std::map<std::string, Metric> metrics;
  Field<OrbitClass> types;
  Field<Octonion> H_laplacian;  ///< (e^{−2f}/2) ΔX
  Field<Octonion> H_formula;    ///< Σ_V form where the frame is isotropic, ρ form otherwise

  void set(const std::string& name, const ResidualStats& s, const Grid& g);
  void set(const std::string& name, double value, const Grid& g);
  const Metric& at(const std::string& name) const;

  std::string to_json() const;
  static DiagnosticsReport from_json(const std::string& text);
};

struct AnalysisOptions {
  /// Points this close to the boundary are left out of every statistic.
  int margin = 2;
  double type_band = 1e-8;
};

/// Diagnostics from X alone (tangents by finite differences).
DiagnosticsReport analyze_surface(const Field<Octonion>& X, const AnalysisOptions& opts = {});

/// Diagnostics with given tangents.
DiagnosticsReport analyze_surface(const Field<Octonion>& X, const Field<Octonion>& Xu, const Field<Octonion>& Xv,
                                  const AnalysisOptions& opts = {});

/// analyze_surface on the λ = 1 sample (else the first), plus the pipeline
/// residuals, the extended connection, and the associated-family checks.
DiagnosticsReport diagnose(const DiscreteSurface& S, const AnalysisOptions& opts = {});

}  // namespace octodpw
