#include "octodpw/lie.hpp"

#include <algorithm>

namespace octodpw {

namespace {

double qmax(const CQuaternion& q) { return max_abs(q); }

double qimag(const CQuaternion& q) {
  return std::max({std::abs(q.w.imag()), std::abs(q.x.imag()), std::abs(q.y.imag()), std::abs(q.z.imag())});
}

CQuaternion commutator(const CQuaternion& a, const CQuaternion& b) { return a * b - b * a; }

}  // namespace

LieElement& LieElement::operator+=(const LieElement& o) {
  alpha += o.alpha, beta += o.beta, delta += o.delta, t += o.t;
  return *this;
}
LieElement& LieElement::operator-=(const LieElement& o) {
  alpha -= o.alpha, beta -= o.beta, delta -= o.delta, t -= o.t;
  return *this;
}
LieElement& LieElement::operator*=(cplx s) {
  alpha *= s, beta *= s, delta *= s, t *= s;
  return *this;
}

LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
LieElement operator-(const LieElement& a) { return LieElement{-a.alpha, -a.beta, -a.delta, -a.t}; }
LieElement operator*(cplx s, LieElement a) { return a *= s; }
LieElement operator*(LieElement a, cplx s) { return a *= s; }

double max_abs(const LieElement& v) { return std::max({qmax(v.alpha), qmax(v.beta), qmax(v.delta), max_abs(v.t)}); }

LieElement cconj(const LieElement& v) { return {cconj(v.alpha), cconj(v.beta), cconj(v.delta), cconj(v.t)}; }

double imag_defect(const LieElement& v) {
  return std::max({qimag(v.alpha), qimag(v.beta), qimag(v.delta), qimag(v.t.x), qimag(v.t.y)});
}

COctonion act(const LieElement& eta, const COctonion& t) {
  return {t.x * eta.alpha + eta.delta * t.x, t.y * eta.beta + eta.delta * t.y};
}

LieElement bracket(const LieElement& a, const LieElement& b) {
  // [R_α, R_α'] = −R_[α,α'] and [L_δ, L_δ'] = L_[δ,δ'].
  return {-commutator(a.alpha, b.alpha), -commutator(a.beta, b.beta), commutator(a.delta, b.delta),
          act(a, b.t) - act(b, a.t)};
}

COctonion L_E(const COctonion& t) { return {-t.y, t.x}; }

LieElement tau(const LieElement& v) { return {v.beta, v.alpha, v.delta, -L_E(v.t)}; }

LieElement project_grade(const LieElement& v, int k) {
  k = ((k % 4) + 4) % 4;
  LieElement out;
  switch (k) {
    case 0: {
      const CQuaternion m = 0.5 * (v.alpha + v.beta);
      out.alpha = m, out.beta = m, out.delta = v.delta;
      break;
    }
    case 2: {
      const CQuaternion d = 0.5 * (v.alpha - v.beta);
      out.alpha = d, out.beta = -d;
      break;
    }
    case 1:
      out.t = 0.5 * (v.t + I_c * L_E(v.t));
      break;
    case 3:
      out.t = 0.5 * (v.t - I_c * L_E(v.t));
      break;
  }
  return out;
}

GradedComponent graded(const LieElement& v, int k) {
  const int kk = ((k % 4) + 4) % 4;
  return {kk, project_grade(v, kk)};
}

double grade_defect(const LieElement& v, int k) { return max_abs(v - project_grade(v, k)); }

LieElement grade_minus1(const CQuaternion& w) {
  LieElement e;
  e.t = COctonion{0.5 * w, (-0.5 * I_c) * w};
  return e;
}

LieElement grade_plus1(const CQuaternion& w) {
  LieElement e;
  e.t = COctonion{0.5 * w, (0.5 * I_c) * w};
  return e;
}

LieElement grade0(const CQuaternion& alpha, const CQuaternion& delta) { return {alpha, alpha, delta, {}}; }

LieElement grade2(const CQuaternion& gamma) { return {-gamma, gamma, {}, {}}; }

COctonion apply_linear(const AffineElement& g, const COctonion& q) { return {g.c * q.x * g.a, g.c * q.y * g.b}; }

COctonion apply(const AffineElement& g, const COctonion& q) { return apply_linear(g, q) + g.T; }

AffineElement compose(const AffineElement& g, const AffineElement& h) {
  return {h.a * g.a, h.b * g.b, g.c * h.c, apply_linear(g, h.T) + g.T};
}

AffineElement inverse(const AffineElement& g) {
  AffineElement r{conj(g.a), conj(g.b), conj(g.c), {}};
  r.T = -apply_linear(r, g.T);
  return r;
}

AffineElement tau(const AffineElement& g) { return {g.b, g.a, g.c, -L_E(g.T)}; }

LieElement Ad(const AffineElement& g, const LieElement& v) {
  LieElement r{conj(g.a) * v.alpha * g.a, conj(g.b) * v.beta * g.b, g.c * v.delta * conj(g.c), {}};
  r.t = apply_linear(g, v.t) - act(r, g.T);
  return r;
}

double max_abs_diff(const AffineElement& g, const AffineElement& h) {
  return std::max({qmax(g.a - h.a), qmax(g.b - h.b), qmax(g.c - h.c), max_abs(g.T - h.T)});
}

LieElement maurer_cartan(const AffineElement& U, const AffineElement& dU) {
  const AffineElement inv = inverse(U);
  return {dU.a * conj(U.a), dU.b * conj(U.b), conj(U.c) * dU.c, apply_linear(inv, dU.T)};
}

}  // namespace octodpw
