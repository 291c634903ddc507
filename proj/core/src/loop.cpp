#include "octodpw/loop.hpp"

#include <numbers>

namespace octodpw {

double twisting_defect(const TwistedLoop& l) {
  double m = 0;
  for (int k = l.lo(); k <= l.hi(); ++k) m = std::max(m, grade_defect(l[k], k));
  return m;
}

double twisting_defect_at(const TwistedLoop& l, std::complex<double> lambda) {
  return max_abs(tau(l(lambda)) - l(I_c * lambda));
}

std::vector<std::complex<double>> circle_samples(int n) {
  std::vector<std::complex<double>> out;
  for (int k = 0; k < n; ++k) out.push_back(std::polar(1.0, 2 * std::numbers::pi * k / n));
  return out;
}

double reality_defect_on_circle(const TwistedLoop& l, int n) {
  double m = 0;
  for (auto lam : circle_samples(n)) m = std::max(m, imag_defect(l(lam)));
  return m;
}

}  // namespace octodpw
