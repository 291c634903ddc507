#include "octodpw/connection.hpp"

#include <algorithm>

#include "octodpw/errors.hpp"
#include "octodpw/parallel.hpp"

namespace octodpw {

namespace {

template <class F>
ResidualStats reduce(const Grid& g, int margin, F&& value) {
  std::vector<double> row_max(g.nv, 0.0), row_sum(g.nv, 0.0);
  std::vector<int> row_count(g.nv, 0);
  parallel_for(static_cast<std::size_t>(g.nv), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    for (int i = 0; i < g.nu; ++i) {
      if (!g.interior(i, j, margin)) continue;
      const double r = value(i, j);
      row_max[j] = std::max(row_max[j], r);
      row_sum[j] += r;
      row_count[j] += 1;
    }
  });
  ResidualStats s;
  double sum = 0;
  int count = 0;
  for (int j = 0; j < g.nv; ++j) {
    s.max = std::max(s.max, row_max[j]);
    sum += row_sum[j];
    count += row_count[j];
  }
  s.mean = count ? sum / count : 0.0;
  return s;
}

LieElement wedge(const LieElement& pu, const LieElement& pv, const LieElement& qu, const LieElement& qv) {
  return bracket(pu, qv) - bracket(pv, qu);
}

}  // namespace

ConnectionField ExtendedConnection::at(std::complex<double> lambda) const {
  const Grid& g = grid();
  ConnectionField out(g);
  const cplx l1 = lambda, l2 = lambda * lambda, m1 = 1.0 / lambda, m2 = 1.0 / (lambda * lambda);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const LieElement zpart = m2 * a2_z.data()[k] + m1 * am1_z.data()[k];
    const LieElement zbpart = l1 * a1_zb.data()[k] + l2 * a2_zb.data()[k];
    out.Au.data()[k] = zpart + a0_u.data()[k] + zbpart;
    out.Av.data()[k] = I_c * zpart + a0_v.data()[k] - I_c * zbpart;
  }
  return out;
}

namespace {

struct SigmaVSplit {
  LieElement z, zb;
  double defect;
};

SigmaVSplit split_types(const LieElement& au, const LieElement& av) {
  const LieElement z = 0.5 * (au - I_c * av);
  const LieElement zb = 0.5 * (au + I_c * av);
  const double scale = std::max(max_abs(project_grade(z, -1)), 1e-300);
  const double bad = std::max(max_abs(project_grade(zb, -1)), max_abs(project_grade(z, 1)));
  return {z, zb, bad / scale};
}

}  // namespace

Field<double> sigma_v_defect(const ConnectionField& alpha) {
  const Grid& g = alpha.grid();
  Field<double> out(g);
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) out(i, j) = split_types(alpha.Au(i, j), alpha.Av(i, j)).defect;
  return out;
}

ExtendedConnection assemble_extended(const ConnectionField& alpha, double tol) {
  const Grid& g = alpha.grid();
  ExtendedConnection out(g);
  for (int j = 0; j < g.nv; ++j) {
    for (int i = 0; i < g.nu; ++i) {
      const LieElement& au = alpha.Au(i, j);
      const LieElement& av = alpha.Av(i, j);
      const SigmaVSplit s = split_types(au, av);
      if (s.defect > tol) {
        throw Error(ErrorCode::NotSigmaV, "(0,1)-part of alpha_{-1} is " + std::to_string(s.defect) +
                                              " relative at grid point (" + std::to_string(i) + "," +
                                              std::to_string(j) + ")");
      }
      out.a2_z(i, j) = project_grade(s.z, 2);
      out.a2_zb(i, j) = project_grade(s.zb, 2);
      out.am1_z(i, j) = project_grade(s.z, -1);
      out.a1_zb(i, j) = project_grade(s.zb, 1);
      out.a0_u(i, j) = project_grade(au, 0);
      out.a0_v(i, j) = project_grade(av, 0);
    }
  }
  return out;
}

ConnectionField maurer_cartan_field(const Field<AffineElement>& U) {
  const Grid& g = U.grid();
  Field<CQuaternion> a(g), b(g), c(g);
  Field<COctonion> T(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    a.data()[k] = U.data()[k].a;
    b.data()[k] = U.data()[k].b;
    c.data()[k] = U.data()[k].c;
    T.data()[k] = U.data()[k].T;
  }
  ConnectionField out(g);
  for (int j = 0; j < g.nv; ++j) {
    for (int i = 0; i < g.nu; ++i) {
      const AffineElement du{diff_u(a, i, j), diff_u(b, i, j), diff_u(c, i, j), diff_u(T, i, j)};
      const AffineElement dv{diff_v(a, i, j), diff_v(b, i, j), diff_v(c, i, j), diff_v(T, i, j)};
      out.Au(i, j) = maurer_cartan(U(i, j), du);
      out.Av(i, j) = maurer_cartan(U(i, j), dv);
    }
  }
  return out;
}

ResidualStats zero_curvature_residual(const ConnectionField& A, int margin) {
  return reduce(A.grid(), margin, [&](int i, int j) {
    const LieElement f = diff_u(A.Av, i, j) - diff_v(A.Au, i, j) + bracket(A.Au(i, j), A.Av(i, j));
    return max_abs(f);
  });
}

ResidualStats zero_curvature_residual(const ExtendedConnection& alpha, const std::vector<std::complex<double>>& lambdas,
                                      int margin) {
  ResidualStats worst;
  for (auto lam : lambdas) {
    const ResidualStats s = zero_curvature_residual(alpha.at(lam), margin);
    worst.max = std::max(worst.max, s.max);
    worst.mean = std::max(worst.mean, s.mean);
  }
  return worst;
}

std::array<ResidualStats, 4> graded_flatness(const ConnectionField& alpha, int margin) {
  const Grid& g = alpha.grid();
  // Graded pieces of α, u and v components, for grades −1, 0, 1, 2.
  std::array<ConnectionField, 4> part{ConnectionField(g), ConnectionField(g), ConnectionField(g), ConnectionField(g)};
  const int grades[4] = {-1, 0, 1, 2};
  for (std::size_t k = 0; k < g.size(); ++k) {
    for (int n = 0; n < 4; ++n) {
      part[n].Au.data()[k] = project_grade(alpha.Au.data()[k], grades[n]);
      part[n].Av.data()[k] = project_grade(alpha.Av.data()[k], grades[n]);
    }
  }
  const auto d = [&](int n, int i, int j) { return diff_u(part[n].Av, i, j) - diff_v(part[n].Au, i, j); };
  const auto w = [&](int p, int q, int i, int j) {
    return wedge(part[p].Au(i, j), part[p].Av(i, j), part[q].Au(i, j), part[q].Av(i, j));
  };
  std::array<ResidualStats, 4> out;
  out[0] = reduce(g, margin, [&](int i, int j) { return max_abs(d(0, i, j) + w(0, 1, i, j) + w(2, 3, i, j)); });
  out[1] = reduce(g, margin, [&](int i, int j) {
    return max_abs(d(1, i, j) + 0.5 * w(1, 1, i, j) + 0.5 * w(3, 3, i, j));
  });
  out[2] = reduce(g, margin, [&](int i, int j) { return max_abs(d(2, i, j) + w(2, 1, i, j) + w(0, 3, i, j)); });
  out[3] = reduce(g, margin, [&](int i, int j) { return max_abs(d(3, i, j) + w(1, 3, i, j)); });
  return out;
}

ResidualStats harmonicity_defect(const ConnectionField& alpha, int margin) {
  const Grid& g = alpha.grid();
  ConnectionField star2(g), a0(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const LieElement a2u = project_grade(alpha.Au.data()[k], 2), a2v = project_grade(alpha.Av.data()[k], 2);
    star2.Au.data()[k] = -a2v;
    star2.Av.data()[k] = a2u;
    a0.Au.data()[k] = project_grade(alpha.Au.data()[k], 0);
    a0.Av.data()[k] = project_grade(alpha.Av.data()[k], 0);
  }
  return reduce(g, margin, [&](int i, int j) {
    const LieElement dstar = diff_u(star2.Av, i, j) - diff_v(star2.Au, i, j);
    return max_abs(dstar + wedge(a0.Au(i, j), a0.Av(i, j), star2.Au(i, j), star2.Av(i, j)));
  });
}

double grading_residual(const ExtendedConnection& alpha) {
  double m = 0;
  const Grid& g = alpha.grid();
  for (std::size_t k = 0; k < g.size(); ++k) {
    m = std::max({m, grade_defect(alpha.a2_z.data()[k], 2), grade_defect(alpha.am1_z.data()[k], -1),
                  grade_defect(alpha.a0_u.data()[k], 0), grade_defect(alpha.a0_v.data()[k], 0),
                  grade_defect(alpha.a1_zb.data()[k], 1), grade_defect(alpha.a2_zb.data()[k], 2)});
  }
  return m;
}

}  // namespace octodpw
