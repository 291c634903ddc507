#include "octodpw/integrate.hpp"

#include <algorithm>
#include <mutex>

#include "octodpw/parallel.hpp"

namespace octodpw {

namespace {

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

/// μ(∂z) at one point in the reduced variables.
struct ReducedPotential {
  Loop<CQuaternion> alpha;  // in μ
  Loop<CQuaternion> delta;  // in ν
  Loop<COctonion> t;        // in λ
};

ReducedPotential reduce(const TwistedLoop& mu) {
  ReducedPotential r{Loop<CQuaternion>(floor_div(mu.lo(), 2), floor_div(mu.hi(), 2)),
                     Loop<CQuaternion>(floor_div(mu.lo(), 4), floor_div(mu.hi(), 4)), Loop<COctonion>(mu.lo(), mu.hi())};
  for (int k = mu.lo(); k <= mu.hi(); ++k) {
    if (k % 2 == 0) {
      r.alpha[k / 2] = mu[k].alpha;
      if (k % 4 == 0) r.delta[k / 4] = mu[k].delta;
    } else {
      r.t[k] = mu[k].t;
    }
  }
  return r;
}

void axpy(HolomorphicFrame& y, cplx s, const HolomorphicFrame& x) {
  for (int k = y.a.lo(); k <= y.a.hi(); ++k) y.a[k] += s * x.a[k];
  for (int k = y.c.lo(); k <= y.c.hi(); ++k) y.c[k] += s * x.c[k];
  for (int k = y.T.lo(); k <= y.T.hi(); ++k) y.T[k] += s * x.T[k];
}

HolomorphicFrame zero_like(const HolomorphicFrame& h) {
  return {Loop<CQuaternion>(h.a.lo(), h.a.hi()), Loop<CQuaternion>(h.c.lo(), h.c.hi()),
          Loop<COctonion>(h.T.lo(), h.T.hi())};
}

/// κ H μ: a' = α a, c' = c δ, T' = (c t_x a, c t_y b).
HolomorphicFrame derivative(const HolomorphicFrame& h, const ReducedPotential& p, cplx kappa) {
  HolomorphicFrame d = zero_like(h);
  for (int q = p.alpha.lo(); q <= p.alpha.hi(); ++q) {
    const CQuaternion& al = p.alpha[q];
    if (abs2(al) == 0) continue;
    for (int m = std::max(h.a.lo(), h.a.lo() + q); m <= std::min(h.a.hi(), h.a.hi() + q); ++m) d.a[m] += al * h.a[m - q];
  }
  for (int q = p.delta.lo(); q <= p.delta.hi(); ++q) {
    const CQuaternion& de = p.delta[q];
    if (abs2(de) == 0) continue;
    for (int n = std::max(h.c.lo(), h.c.lo() + q); n <= std::min(h.c.hi(), h.c.hi() + q); ++n) d.c[n] += h.c[n - q] * de;
  }
  // P = (t_x a, t_y b) on λ powers, then T' = c P.
  Loop<COctonion> P(h.T.lo() - 4 * h.c.hi(), h.T.hi() - 4 * h.c.lo());
  for (int s = p.t.lo(); s <= p.t.hi(); ++s) {
    const COctonion& t = p.t[s];
    if (abs2(t) == 0) continue;
    for (int m = h.a.lo(); m <= h.a.hi(); ++m) {
      const int k = s + 2 * m;
      if (k < P.lo() || k > P.hi()) continue;
      const CQuaternion& am = h.a[m];
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      P[k].x += t.x * am;
      P[k].y += sign * (t.y * am);
    }
  }
  for (int n = h.c.lo(); n <= h.c.hi(); ++n) {
    const CQuaternion& cn = h.c[n];
    if (abs2(cn) == 0) continue;
    for (int k = P.lo(); k <= P.hi(); ++k) {
      const int out = k + 4 * n;
      if (out < d.T.lo() || out > d.T.hi()) continue;
      if (abs2(P[k]) == 0) continue;
      d.T[out].x += cn * P[k].x;
      d.T[out].y += cn * P[k].y;
    }
  }
  if (kappa != cplx(1.0)) {
    for (int k = d.a.lo(); k <= d.a.hi(); ++k) d.a[k] *= kappa;
    for (int k = d.c.lo(); k <= d.c.hi(); ++k) d.c[k] *= kappa;
    for (int k = d.T.lo(); k <= d.T.hi(); ++k) d.T[k] *= kappa;
  }
  return d;
}

class Stepper {
 public:
  Stepper(const PotentialSpec& spec, const IntegrationOptions& opts) : spec_(spec), opts_(opts) {}

  /// Advances h from z by `len` in direction κ ∈ {1, i}. `m` is the substep
  /// count carried between calls.
  void step(HolomorphicFrame& h, cplx z, cplx kappa, double len, int& m) const {
    for (;;) {
      HolomorphicFrame coarse = h, fine = h;
      rk4(coarse, z, kappa, len, m);
      rk4(fine, z, kappa, len, 2 * m);
      const double err = max_abs_diff(coarse, fine);
      if (err <= opts_.budget * len) {
        h = std::move(fine);
        if (err < opts_.budget * len / 64 && m > 1) m /= 2;
        return;
      }
      m *= 2;
      if (m > opts_.max_substeps) {
        throw Error(ErrorCode::StepSizeTooCoarse,
                    "RK4 error " + std::to_string(err) + " above budget with " + std::to_string(opts_.max_substeps) +
                        " substeps near z = (" + std::to_string(z.real()) + "," + std::to_string(z.imag()) + ")");
      }
    }
  }

 private:
  void rk4(HolomorphicFrame& h, cplx z, cplx kappa, double len, int m) const {
    const double dt = len / m;
    for (int s = 0; s < m; ++s) {
      const cplx z0 = z + kappa * (s * dt);
      const ReducedPotential p0 = reduce(evaluate(spec_, z0));
      const ReducedPotential pm = reduce(evaluate(spec_, z0 + kappa * (0.5 * dt)));
      const ReducedPotential p1 = reduce(evaluate(spec_, z0 + kappa * dt));
      const HolomorphicFrame k1 = derivative(h, p0, kappa);
      HolomorphicFrame y = h;
      axpy(y, 0.5 * dt, k1);
      const HolomorphicFrame k2 = derivative(y, pm, kappa);
      y = h;
      axpy(y, 0.5 * dt, k2);
      const HolomorphicFrame k3 = derivative(y, pm, kappa);
      y = h;
      axpy(y, dt, k3);
      const HolomorphicFrame k4 = derivative(y, p1, kappa);
      axpy(h, dt / 6, k1);
      axpy(h, dt / 3, k2);
      axpy(h, dt / 3, k3);
      axpy(h, dt / 6, k4);
    }
  }

  const PotentialSpec& spec_;
  IntegrationOptions opts_;
};

}  // namespace

HolomorphicFrame HolomorphicFrame::identity(int N) {
  HolomorphicFrame h{Loop<CQuaternion>(-N / 2, N / 2), Loop<CQuaternion>(-N / 4, N / 4), Loop<COctonion>(-N, N)};
  h.a[0] = CQuaternion(1.0);
  h.c[0] = CQuaternion(1.0);
  return h;
}

Loop<CQuaternion> HolomorphicFrame::b() const {
  Loop<CQuaternion> out(a.lo(), a.hi());
  for (int m = a.lo(); m <= a.hi(); ++m) out[m] = (m % 2 == 0 ? 1.0 : -1.0) * a[m];
  return out;
}

AffineElement HolomorphicFrame::at(std::complex<double> lambda) const {
  const cplx mu = lambda * lambda;
  return {a(mu), a(-mu), c(mu * mu), T(lambda)};
}

double truncation_tail(const HolomorphicFrame& h) {
  double m = 0;
  if (!h.a.empty()) m = std::max({m, abs(h.a[h.a.lo()]), abs(h.a[h.a.hi()])});
  if (!h.c.empty()) m = std::max({m, abs(h.c[h.c.lo()]), abs(h.c[h.c.hi()])});
  for (int k : {h.T.lo(), h.T.lo() + 1, h.T.hi() - 1, h.T.hi()}) {
    if (h.T.contains(k)) m = std::max(m, abs(h.T[k]));
  }
  return m;
}

double max_abs_diff(const HolomorphicFrame& x, const HolomorphicFrame& y) {
  double m = 0;
  for (int k = x.a.lo(); k <= x.a.hi(); ++k) m = std::max(m, max_abs(CQuaternion(x.a[k] - y.a.at(k))) );
  for (int k = x.c.lo(); k <= x.c.hi(); ++k) m = std::max(m, max_abs(CQuaternion(x.c[k] - y.c.at(k))));
  for (int k = x.T.lo(); k <= x.T.hi(); ++k) m = std::max(m, max_abs(COctonion(x.T[k] - y.T.at(k))));
  return m;
}

void integrate_H(const PotentialSpec& spec, const FrameSink& sink, const IntegrationOptions& opts) {
  require_valid(spec);
  const Grid& g = spec.domain;
  const auto [i0, j0] = basepoint_index(spec);
  const Stepper stepper(spec, opts);

  std::vector<HolomorphicFrame> column(static_cast<std::size_t>(g.nv));
  column[j0] = HolomorphicFrame::identity(spec.truncation);
  {
    int m = 1;
    for (int j = j0 + 1; j < g.nv; ++j) {
      column[j] = column[j - 1];
      stepper.step(column[j], g.z(i0, j - 1), I_c, g.hv(), m);
    }
    m = 1;
    for (int j = j0 - 1; j >= 0; --j) {
      column[j] = column[j + 1];
      stepper.step(column[j], g.z(i0, j + 1), -I_c, g.hv(), m);
    }
  }

  parallel_for(static_cast<std::size_t>(g.nv), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    sink(i0, j, column[j]);
    HolomorphicFrame h = column[j];
    int m = 1;
    for (int i = i0 + 1; i < g.nu; ++i) {
      stepper.step(h, g.z(i - 1, j), 1.0, g.hu(), m);
      sink(i, j, h);
    }
    h = column[j];
    m = 1;
    for (int i = i0 - 1; i >= 0; --i) {
      stepper.step(h, g.z(i + 1, j), -1.0, g.hu(), m);
      sink(i, j, h);
    }
  });
}

Field<HolomorphicFrame> integrate_H(const PotentialSpec& spec, const IntegrationOptions& opts) {
  Field<HolomorphicFrame> out(spec.domain);
  integrate_H(spec, [&](int i, int j, const HolomorphicFrame& h) { out(i, j) = h; }, opts);
  return out;
}

double path_independence_residual(const PotentialSpec& spec, int i1, int j1, const IntegrationOptions& opts) {
  require_valid(spec);
  const Grid& g = spec.domain;
  const auto [i0, j0] = basepoint_index(spec);
  const Stepper stepper(spec, opts);
  const auto walk = [&](HolomorphicFrame& h, int& i, int& j, int ti, int tj, bool u_first) {
    int m = 1;
    for (int pass = 0; pass < 2; ++pass) {
      const bool along_u = (pass == 0) == u_first;
      m = 1;
      if (along_u) {
        while (i != ti) {
          const int s = ti > i ? 1 : -1;
          stepper.step(h, g.z(i, j), static_cast<double>(s), g.hu(), m);
          i += s;
        }
      } else {
        while (j != tj) {
          const int s = tj > j ? 1 : -1;
          stepper.step(h, g.z(i, j), cplx(0.0, s), g.hv(), m);
          j += s;
        }
      }
    }
  };
  HolomorphicFrame a = HolomorphicFrame::identity(spec.truncation), b = a;
  int ia = i0, ja = j0, ib = i0, jb = j0;
  walk(a, ia, ja, i1, j1, true);
  walk(b, ib, jb, i1, j1, false);
  return max_abs_diff(a, b);
}

}  // namespace octodpw
