#include "octodpw/octonion.hpp"

namespace octodpw {

double omega(int i, const Octonion& q, const Octonion& qp) { return dot(q, basis(i) * qp); }

Vector8 to_vector(const Octonion& q) {
  Vector8 v;
  for (int i = 0; i < 8; ++i) v[i] = q[i];
  return v;
}

Octonion from_vector(const Vector8& v) {
  Octonion q;
  for (int i = 0; i < 8; ++i) q[i] = v[i];
  return q;
}

Octonion apply(const Operator8& m, const Octonion& q) { return from_vector(m * to_vector(q)); }

Operator8 left_op(const Octonion& x) {
  Operator8 m;
  for (int j = 0; j < 8; ++j) m.col(j) = to_vector(x * basis(j));
  return m;
}

Operator8 right_op(const Octonion& x) {
  Operator8 m;
  for (int j = 0; j < 8; ++j) m.col(j) = to_vector(basis(j) * x);
  return m;
}

}  // namespace octodpw
