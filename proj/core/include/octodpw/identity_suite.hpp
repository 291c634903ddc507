#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "octodpw/octonion.hpp"

namespace octodpw {

using Multiply = std::function<Octonion(const Octonion&, const Octonion&)>;

struct IdentityResult {
  std::string name;
  double max_residual = 0.0;
  std::size_t samples = 0;
  double tolerance = 0.0;
  bool passed() const { return max_residual <= tolerance; }
};

/// The product of the pair formula.
Multiply standard_multiply();

/// Test hook: the table entry e1·e2 = e3 has its sign flipped.
Multiply faulty_multiply();

/// Runs the algebra identities (inner product scaling, conjugation rules,
/// inverse and transpose of L/R, Moufang and flexible laws, operator powers,
/// alternating associator, commutation criterion, norm multiplicativity,
/// basis non-associativity witness) against `mul`.
std::vector<IdentityResult> run_algebra_identities(std::uint64_t seed, std::size_t count,
                                                   const Multiply& mul, double tol = 1e-10);

/// Runs the isotropic-plane and Spin(7) property checks (p invariance, ρ
/// transformation law, θ morphism, semidirect split, cross equivariance).
std::vector<IdentityResult> run_geometry_identities(std::uint64_t seed, std::size_t count, double tol = 1e-9);

}  // namespace octodpw
