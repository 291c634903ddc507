#pragma once

#include <functional>

#include "octodpw/grid.hpp"
#include "octodpw/lie.hpp"
#include "octodpw/loop.hpp"
#include "octodpw/potential.hpp"

namespace octodpw {

/// Twisted complex loop in the affine group. The linear part is stored in the
/// reduced variables a(μ), μ = λ², and c(ν), ν = λ⁴; b(λ) = a(iλ). The
/// translation T is a loop in λ with odd powers only.
struct HolomorphicFrame {
  Loop<CQuaternion> a, c;
  Loop<COctonion> T;

  static HolomorphicFrame identity(int truncation);
  /// b in the reduced variable: b(μ) = a(−μ).
  Loop<CQuaternion> b() const;
  AffineElement at(std::complex<double> lambda) const;
};

/// Max over the outermost stored coefficients: how much the truncation clips.
double truncation_tail(const HolomorphicFrame& h);

/// Largest coefficient difference.
double max_abs_diff(const HolomorphicFrame& x, const HolomorphicFrame& y);

struct IntegrationOptions {
  /// Accepted |RK4(m) − RK4(2m)| per unit length.
  double budget = 1e-10;
  int max_substeps = 4096;
};

using FrameSink = std::function<void(int i, int j, const HolomorphicFrame& h)>;

/// Solves dH = Hμ with H(z₀) = Id: first along the grid column through z₀,
/// then along each row outward. Rows run in parallel; `sink` sees every grid
/// point once. Throws StepSizeTooCoarse.
void integrate_H(const PotentialSpec& spec, const FrameSink& sink, const IntegrationOptions& opts = {});

/// Same, keeping the whole field.
Field<HolomorphicFrame> integrate_H(const PotentialSpec& spec, const IntegrationOptions& opts = {});

/// Integrates from z₀ to grid point (i, j) along the u-then-v and the
/// v-then-u staircases and returns the largest coefficient difference.
double path_independence_residual(const PotentialSpec& spec, int i, int j, const IntegrationOptions& opts = {});

}  // namespace octodpw
