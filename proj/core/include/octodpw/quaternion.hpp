#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <type_traits>

namespace octodpw {

/// Quaternion w + x i + y j + z k over a commutative scalar ring T.
///
/// T is double for ℍ and std::complex<double> for ℍ⊗ℂ. The complex unit of
/// ℍ⊗ℂ commutes with i, j, k.
template <class T>
struct BasicQuaternion {
  T w{}, x{}, y{}, z{};

  constexpr BasicQuaternion() = default;
  constexpr BasicQuaternion(T w_, T x_, T y_, T z_) : w(w_), x(x_), y(y_), z(z_) {}
  constexpr explicit BasicQuaternion(T s) : w(s) {}

  template <class U, class = std::enable_if_t<!std::is_same_v<U, T> && std::is_convertible_v<U, T>>>
  constexpr BasicQuaternion(const BasicQuaternion<U>& o) : w(o.w), x(o.x), y(o.y), z(o.z) {}

  constexpr T& operator[](int i) { return i == 0 ? w : i == 1 ? x : i == 2 ? y : z; }
  constexpr const T& operator[](int i) const { return i == 0 ? w : i == 1 ? x : i == 2 ? y : z; }

  constexpr BasicQuaternion& operator+=(const BasicQuaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr BasicQuaternion& operator-=(const BasicQuaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr BasicQuaternion& operator*=(T s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }
};

using Quaternion = BasicQuaternion<double>;
using CQuaternion = BasicQuaternion<std::complex<double>>;

template <class T>
constexpr BasicQuaternion<T> operator+(BasicQuaternion<T> a, const BasicQuaternion<T>& b) { return a += b; }
template <class T>
constexpr BasicQuaternion<T> operator-(BasicQuaternion<T> a, const BasicQuaternion<T>& b) { return a -= b; }
template <class T>
constexpr BasicQuaternion<T> operator-(const BasicQuaternion<T>& a) { return {-a.w, -a.x, -a.y, -a.z}; }
template <class T>
constexpr BasicQuaternion<T> operator*(BasicQuaternion<T> a, T s) { return a *= s; }
template <class T>
constexpr BasicQuaternion<T> operator*(T s, BasicQuaternion<T> a) { return a *= s; }

template <class T>
constexpr BasicQuaternion<T> operator*(const BasicQuaternion<T>& a, const BasicQuaternion<T>& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

inline CQuaternion operator*(const CQuaternion& a, const Quaternion& b) { return a * CQuaternion(b); }
inline CQuaternion operator*(const Quaternion& a, const CQuaternion& b) { return CQuaternion(a) * b; }
inline CQuaternion operator*(const CQuaternion& a, double s) { return a * std::complex<double>(s); }
inline CQuaternion operator*(double s, const CQuaternion& a) { return a * std::complex<double>(s); }

template <class T>
constexpr BasicQuaternion<T> conj(const BasicQuaternion<T>& q) { return {q.w, -q.x, -q.y, -q.z}; }

/// q q̄ as a scalar (bilinear; complex for ℍ⊗ℂ).
template <class T>
constexpr T norm2(const BasicQuaternion<T>& q) { return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z; }

/// Euclidean (hermitian for ℍ⊗ℂ) squared length of the coefficient vector.
inline double abs2(const Quaternion& q) { return norm2(q); }
inline double abs2(const CQuaternion& q) {
  return std::norm(q.w) + std::norm(q.x) + std::norm(q.y) + std::norm(q.z);
}
inline double abs(const Quaternion& q) { return std::sqrt(abs2(q)); }
inline double abs(const CQuaternion& q) { return std::sqrt(abs2(q)); }

inline double dot(const Quaternion& a, const Quaternion& b) {
  return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

template <class T>
constexpr BasicQuaternion<T> real_part(const BasicQuaternion<T>& q) { return BasicQuaternion<T>(q.w); }
template <class T>
constexpr BasicQuaternion<T> imag_part(const BasicQuaternion<T>& q) { return {T{}, q.x, q.y, q.z}; }

/// Multiplicative inverse q̄ / (q q̄); requires q q̄ ≠ 0.
template <class T>
constexpr BasicQuaternion<T> inverse(const BasicQuaternion<T>& q) { return conj(q) * (T(1) / norm2(q)); }

inline Quaternion normalized(const Quaternion& q) { return q * (1.0 / abs(q)); }

/// Coefficient-wise complex conjugation on ℍ⊗ℂ.
inline CQuaternion cconj(const CQuaternion& q) {
  return {std::conj(q.w), std::conj(q.x), std::conj(q.y), std::conj(q.z)};
}
inline Quaternion re(const CQuaternion& q) { return {q.w.real(), q.x.real(), q.y.real(), q.z.real()}; }
inline Quaternion im(const CQuaternion& q) { return {q.w.imag(), q.x.imag(), q.y.imag(), q.z.imag()}; }

/// Max-norm of the coefficient vector.
template <class T>
double max_abs(const BasicQuaternion<T>& q) {
  double m = 0;
  for (int i = 0; i < 4; ++i) m = std::max(m, static_cast<double>(std::abs(q[i])));
  return m;
}

inline Quaternion exp(const Quaternion& q) {
  const double n = abs(imag_part(q));
  const double e = std::exp(q.w);
  if (n < 1e-300) return Quaternion(e);
  const double s = e * std::sin(n) / n;
  return {e * std::cos(n), s * q.x, s * q.y, s * q.z};
}

namespace quat {
inline constexpr Quaternion one{1, 0, 0, 0};
inline constexpr Quaternion i{0, 1, 0, 0};
inline constexpr Quaternion j{0, 0, 1, 0};
inline constexpr Quaternion k{0, 0, 0, 1};
}  // namespace quat

}  // namespace octodpw
