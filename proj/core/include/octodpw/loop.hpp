#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "octodpw/errors.hpp"
#include "octodpw/lie.hpp"

namespace octodpw {

/// Laurent polynomial Σ_{k=lo}^{hi} c_k λ^k. Coefficients outside the range are
/// zero; `tail` carries an estimate of what truncation discarded.
template <class V>
class Loop {
 public:
  Loop() = default;
  Loop(int lo, int hi) : lo_(lo), c_(static_cast<std::size_t>(std::max(0, hi - lo + 1))) {}
  static Loop constant(const V& v) {
    Loop l(0, 0);
    l[0] = v;
    return l;
  }

  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(c_.size()) - 1; }
  bool empty() const { return c_.empty(); }
  bool contains(int k) const { return k >= lo_ && k <= hi(); }

  V& operator[](int k) { return c_[static_cast<std::size_t>(k - lo_)]; }
  const V& operator[](int k) const { return c_[static_cast<std::size_t>(k - lo_)]; }
  V at(int k) const { return contains(k) ? (*this)[k] : V{}; }

  double tail = 0.0;

  template <class F>
  auto map(F&& f) const {
    Loop<decltype(f(std::declval<V>()))> out(lo_, hi());
    for (int k = lo_; k <= hi(); ++k) out[k] = f((*this)[k]);
    out.tail = tail;
    return out;
  }

  /// Σ c_k λ^k.
  V operator()(std::complex<double> lambda) const {
    V acc{};
    if (c_.empty()) return acc;
    std::complex<double> p = std::pow(lambda, lo_);
    for (const V& v : c_) {
      acc += p * v;
      p *= lambda;
    }
    return acc;
  }

  Loop& operator+=(const Loop& o) {
    if (o.empty()) return *this;
    if (empty()) return *this = o;
    const int nlo = std::min(lo_, o.lo_), nhi = std::max(hi(), o.hi());
    if (nlo != lo_ || nhi != hi()) resize(nlo, nhi);
    for (int k = o.lo_; k <= o.hi(); ++k) (*this)[k] += o[k];
    tail += o.tail;
    return *this;
  }

  void resize(int nlo, int nhi) {
    Loop n(nlo, nhi);
    for (int k = std::max(nlo, lo_); k <= std::min(nhi, hi()); ++k) n[k] = (*this)[k];
    n.tail = tail;
    *this = std::move(n);
  }

 private:
  int lo_ = 0;
  std::vector<V> c_;
};

inline double coeff_abs(const CQuaternion& q) { return abs(q); }
inline double coeff_abs(const COctonion& q) { return abs(q); }
inline double coeff_abs(const LieElement& v) { return max_abs(v); }
inline double coeff_abs(std::complex<double> v) { return std::abs(v); }

template <class V>
double max_abs(const Loop<V>& l) {
  double m = 0;
  for (int k = l.lo(); k <= l.hi(); ++k) m = std::max(m, coeff_abs(l[k]));
  return m;
}

/// Σ_k |c_k|, a bound for the sup norm on S¹.
template <class V>
double l1_norm(const Loop<V>& l) {
  double s = 0;
  for (int k = l.lo(); k <= l.hi(); ++k) s += coeff_abs(l[k]);
  return s;
}

/// Product loop p(λ) = f(a(λ), b(λ)) for a bilinear f, restricted to powers in
/// [out_lo, out_hi]. Dropped terms add to the tail estimate.
template <class A, class B, class F>
auto convolve(const Loop<A>& a, const Loop<B>& b, F&& f, int out_lo, int out_hi) {
  using R = decltype(f(std::declval<A>(), std::declval<B>()));
  Loop<R> out(out_lo, out_hi);
  double dropped = 0;
  for (int i = a.lo(); i <= a.hi(); ++i) {
    const double ai = coeff_abs(a[i]);
    if (ai == 0) continue;
    for (int j = b.lo(); j <= b.hi(); ++j) {
      const int k = i + j;
      if (k < out_lo || k > out_hi) {
        dropped += ai * coeff_abs(b[j]);
        continue;
      }
      out[k] += f(a[i], b[j]);
    }
  }
  out.tail = dropped + a.tail * l1_norm(b) + b.tail * l1_norm(a);
  return out;
}

template <class A, class B, class F>
auto convolve(const Loop<A>& a, const Loop<B>& b, F&& f) {
  return convolve(a, b, std::forward<F>(f), a.lo() + b.lo(), a.hi() + b.hi());
}

/// λ ↦ l(s λ) for a unit complex s (s = i gives the twist substitution).
template <class V>
Loop<V> substitute(const Loop<V>& l, std::complex<double> s) {
  Loop<V> out(l.lo(), l.hi());
  for (int k = l.lo(); k <= l.hi(); ++k) out[k] = std::pow(s, k) * l[k];
  out.tail = l.tail;
  return out;
}

/// Reflection through the real structure: coefficient k ↦ conj(coefficient −k).
template <class V>
Loop<V> reflect(const Loop<V>& l) {
  Loop<V> out(-l.hi(), -l.lo());
  for (int k = l.lo(); k <= l.hi(); ++k) out[-k] = cconj(l[k]);
  out.tail = l.tail;
  return out;
}

/// Max over k of |c_{−k} − conj(c_k)|: zero for loops real on S¹.
template <class V>
double reality_defect(const Loop<V>& l) {
  double m = 0;
  const int r = std::max(-l.lo(), l.hi());
  for (int k = -r; k <= r; ++k) m = std::max(m, coeff_abs(l.at(-k) - cconj(l.at(k))));
  return m;
}

/// Twisted Lie-algebra loop: coefficient k must lie in grade k mod 4.
using TwistedLoop = Loop<LieElement>;

/// Max over coefficients of the grade defect.
double twisting_defect(const TwistedLoop& l);

/// Σ_k τ(c_k) λ^k − Σ_k c_k (iλ)^k evaluated at λ: zero for twisted loops.
double twisting_defect_at(const TwistedLoop& l, std::complex<double> lambda);

/// Max imaginary part of l(λ) over n equispaced points of S¹.
double reality_defect_on_circle(const TwistedLoop& l, int n = 16);

/// 16 equispaced points e^{2πik/16}, which include 1 and i.
std::vector<std::complex<double>> circle_samples(int n = 16);

}  // namespace octodpw
