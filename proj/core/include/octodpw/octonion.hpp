#pragma once

#include <array>
#include <complex>

#include <Eigen/Core>

#include "octodpw/quaternion.hpp"

namespace octodpw {

/// Octonion as a quaternion pair (x, y) with
/// (x,y)(x',y') = (x x' − y' ȳ, x' y + x̄ y').
///
/// Canonical basis e0..e7 = (1, I_h, J_h, K_h, E_b, I_b, J_b, K_b) where
/// e_k = (k-th unit of ℍ, 0) for k < 4 and e_{4+k} = (0, k-th unit of ℍ).
template <class T>
struct BasicOctonion {
  BasicQuaternion<T> x{}, y{};

  constexpr BasicOctonion() = default;
  constexpr BasicOctonion(const BasicQuaternion<T>& x_, const BasicQuaternion<T>& y_) : x(x_), y(y_) {}
  constexpr explicit BasicOctonion(T s) : x(s) {}

  template <class U, class = std::enable_if_t<!std::is_same_v<U, T> && std::is_convertible_v<U, T>>>
  constexpr BasicOctonion(const BasicOctonion<U>& o) : x(o.x), y(o.y) {}

  constexpr T& operator[](int i) { return i < 4 ? x[i] : y[i - 4]; }
  constexpr const T& operator[](int i) const { return i < 4 ? x[i] : y[i - 4]; }

  constexpr BasicOctonion& operator+=(const BasicOctonion& o) { x += o.x; y += o.y; return *this; }
  constexpr BasicOctonion& operator-=(const BasicOctonion& o) { x -= o.x; y -= o.y; return *this; }
  constexpr BasicOctonion& operator*=(T s) { x *= s; y *= s; return *this; }
};

using Octonion = BasicOctonion<double>;
using COctonion = BasicOctonion<std::complex<double>>;

template <class T>
constexpr BasicOctonion<T> operator+(BasicOctonion<T> a, const BasicOctonion<T>& b) { return a += b; }
template <class T>
constexpr BasicOctonion<T> operator-(BasicOctonion<T> a, const BasicOctonion<T>& b) { return a -= b; }
template <class T>
constexpr BasicOctonion<T> operator-(const BasicOctonion<T>& a) { return {-a.x, -a.y}; }
template <class T>
constexpr BasicOctonion<T> operator*(BasicOctonion<T> a, T s) { return a *= s; }
template <class T>
constexpr BasicOctonion<T> operator*(T s, BasicOctonion<T> a) { return a *= s; }
inline COctonion operator*(const COctonion& a, double s) { return a * std::complex<double>(s); }
inline COctonion operator*(double s, const COctonion& a) { return a * std::complex<double>(s); }

template <class T>
constexpr BasicOctonion<T> operator*(const BasicOctonion<T>& a, const BasicOctonion<T>& b) {
  return {a.x * b.x - b.y * conj(a.y), b.x * a.y + conj(a.x) * b.y};
}

template <class T>
constexpr BasicOctonion<T> conj(const BasicOctonion<T>& q) { return {conj(q.x), -q.y}; }

/// N(q) = q q̄ (bilinear; complex for 𝕆⊗ℂ).
template <class T>
constexpr T norm2(const BasicOctonion<T>& q) { return norm2(q.x) + norm2(q.y); }

inline double abs2(const Octonion& q) { return norm2(q); }
inline double abs2(const COctonion& q) { return abs2(q.x) + abs2(q.y); }
inline double abs(const Octonion& q) { return std::sqrt(abs2(q)); }
inline double abs(const COctonion& q) { return std::sqrt(abs2(q)); }

inline double dot(const Octonion& a, const Octonion& b) { return dot(a.x, b.x) + dot(a.y, b.y); }

template <class T>
constexpr T real_part(const BasicOctonion<T>& q) { return q.x.w; }
template <class T>
constexpr BasicOctonion<T> imag_part(const BasicOctonion<T>& q) { return {imag_part(q.x), q.y}; }

template <class T>
constexpr BasicOctonion<T> inverse(const BasicOctonion<T>& q) { return conj(q) * (T(1) / norm2(q)); }

inline Octonion normalized(const Octonion& q) { return q * (1.0 / abs(q)); }

inline COctonion cconj(const COctonion& q) { return {cconj(q.x), cconj(q.y)}; }
inline Octonion re(const COctonion& q) { return {re(q.x), re(q.y)}; }
inline Octonion im(const COctonion& q) { return {im(q.x), im(q.y)}; }

/// Basis element e_i, i in 0..7.
inline constexpr Octonion basis(int i) {
  Octonion e;
  e[i] = 1.0;
  return e;
}

/// Max-norm of the coefficient vector.
template <class T>
double max_abs(const BasicOctonion<T>& q) {
  double m = 0;
  for (int i = 0; i < 8; ++i) m = std::max(m, static_cast<double>(std::abs(q[i])));
  return m;
}

/// Associator {x,y,z} = (xy)z − x(yz).
template <class T>
constexpr BasicOctonion<T> associator(const BasicOctonion<T>& a, const BasicOctonion<T>& b,
                                      const BasicOctonion<T>& c) {
  return (a * b) * c - a * (b * c);
}

template <class T>
constexpr BasicOctonion<T> commutator(const BasicOctonion<T>& a, const BasicOctonion<T>& b) {
  return a * b - b * a;
}

/// ω_i(q,q') = ⟨q, e_i·q'⟩.
double omega(int i, const Octonion& q, const Octonion& qp);

using Vector8 = Eigen::Matrix<double, 8, 1>;
using Operator8 = Eigen::Matrix<double, 8, 8>;

Vector8 to_vector(const Octonion& q);
Octonion from_vector(const Vector8& v);
Octonion apply(const Operator8& m, const Octonion& q);

/// L_x: y ↦ x y. Columns are x·e_j.
Operator8 left_op(const Octonion& x);
/// R_x: y ↦ y x. Columns are e_j·x.
Operator8 right_op(const Octonion& x);

namespace oct {
inline constexpr Octonion one = basis(0);
inline constexpr Octonion Ih = basis(1);
inline constexpr Octonion Jh = basis(2);
inline constexpr Octonion Kh = basis(3);
inline constexpr Octonion Eb = basis(4);
inline constexpr Octonion Ib = basis(5);
inline constexpr Octonion Jb = basis(6);
inline constexpr Octonion Kb = basis(7);
}  // namespace oct

}  // namespace octodpw
