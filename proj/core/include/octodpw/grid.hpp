#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <vector>

namespace octodpw {

/// Uniform nu × nv grid on [u_min, u_max] × [v_min, v_max]; point (i, j) is
/// u = u_min + i·hu, v = v_min + j·hv.
struct Grid {
  double u_min = 0, u_max = 1, v_min = 0, v_max = 1;
  int nu = 2, nv = 2;

  double hu() const { return (u_max - u_min) / (nu - 1); }
  double hv() const { return (v_max - v_min) / (nv - 1); }
  double h() const { return std::max(hu(), hv()); }
  double u(int i) const { return u_min + i * hu(); }
  double v(int j) const { return v_min + j * hv(); }
  std::complex<double> z(int i, int j) const { return {u(i), v(j)}; }
  std::size_t size() const { return static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv); }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nu + i; }
  bool interior(int i, int j, int margin = 1) const {
    return i >= margin && j >= margin && i < nu - margin && j < nv - margin;
  }
  /// Grid with spacing halved: (n − 1)·2 + 1 points per side.
  Grid refined() const { return {u_min, u_max, v_min, v_max, 2 * nu - 1, 2 * nv - 1}; }
};

template <class T>
class Field {
 public:
  Field() = default;
  explicit Field(const Grid& g, const T& init = T{}) : grid_(g), data_(g.size(), init) {}

  const Grid& grid() const { return grid_; }
  T& operator()(int i, int j) { return data_[grid_.index(i, j)]; }
  const T& operator()(int i, int j) const { return data_[grid_.index(i, j)]; }
  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

 private:
  Grid grid_;
  std::vector<T> data_;
};

/// Central difference in u at interior points, one-sided second order at the
/// boundary.
template <class T>
T diff_u(const Field<T>& f, int i, int j) {
  const Grid& g = f.grid();
  const double h = g.hu();
  if (i == 0) return (-1.5 * f(0, j) + 2.0 * f(1, j) - 0.5 * f(2, j)) * (1.0 / h);
  if (i == g.nu - 1) return (1.5 * f(i, j) - 2.0 * f(i - 1, j) + 0.5 * f(i - 2, j)) * (1.0 / h);
  return (f(i + 1, j) - f(i - 1, j)) * (0.5 / h);
}

template <class T>
T diff_v(const Field<T>& f, int i, int j) {
  const Grid& g = f.grid();
  const double h = g.hv();
  if (j == 0) return (-1.5 * f(i, 0) + 2.0 * f(i, 1) - 0.5 * f(i, 2)) * (1.0 / h);
  if (j == g.nv - 1) return (1.5 * f(i, j) - 2.0 * f(i, j - 1) + 0.5 * f(i, j - 2)) * (1.0 / h);
  return (f(i, j + 1) - f(i, j - 1)) * (0.5 / h);
}

/// Five-point Laplacian; interior points only.
template <class T>
T laplacian(const Field<T>& f, int i, int j) {
  const Grid& g = f.grid();
  const double hu2 = g.hu() * g.hu(), hv2 = g.hv() * g.hv();
  return (f(i + 1, j) - 2.0 * f(i, j) + f(i - 1, j)) * (1.0 / hu2) +
         (f(i, j + 1) - 2.0 * f(i, j) + f(i, j - 1)) * (1.0 / hv2);
}

}  // namespace octodpw
