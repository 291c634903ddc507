#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "octodpw/errors.hpp"
#include "octodpw/grid.hpp"
#include "octodpw/loop.hpp"

namespace octodpw {

struct PolyCoeff {
  int z_power = 0;
  LieElement value;
};

/// λ^power · Σ value·(z − center)^z_power, with values in grade `grade`.
struct PotentialTerm {
  int power = -1;
  int grade = 3;
  std::vector<PolyCoeff> coeff_poly;
};

/// Holomorphic potential μ = Σ_n λ^n μ̂_n(z) dz on a rectangular grid.
struct PotentialSpec {
  Grid domain;
  std::complex<double> basepoint{0.0, 0.0};
  int truncation = 12;
  std::vector<std::complex<double>> lambda_samples{{1.0, 0.0}};
  std::vector<PotentialTerm> potential;
  /// Expansion point of every coeff_poly; a negative z_power is a pole here.
  std::complex<double> center{0.0, 0.0};
};

/// Parses the JSON document (fields domain, basepoint, truncation,
/// lambda_samples, potential, and the optional center). Throws InvalidInput.
PotentialSpec parse_potential(const std::string& json_text);
PotentialSpec load_potential(const std::string& path);
std::string dump_potential(const PotentialSpec& spec);

/// Grade-specific payloads: grade ±1 → w (4 complex), grade 0 → (α, δ)
/// imaginary parts (6 complex), grade 2 → γ (3 complex).
LieElement payload_to_element(int grade, const std::vector<std::complex<double>>& payload);
std::vector<std::complex<double>> element_to_payload(int grade, const LieElement& value);

struct ValidationIssue {
  ErrorCode code;
  std::string message;
};

/// Every problem found: GradingViolation, PoleInDomain, ImmersionConditionFail,
/// InvalidInput.
std::vector<ValidationIssue> validate_potential(const PotentialSpec& spec);

/// Throws the first issue of validate_potential.
void require_valid(const PotentialSpec& spec);

/// Grid indices of the basepoint. Throws InvalidInput when it is off the grid.
std::pair<int, int> basepoint_index(const PotentialSpec& spec);

LieElement evaluate_term(const PotentialTerm& term, std::complex<double> z, std::complex<double> center);

/// μ(∂/∂z) at z as a loop in λ.
TwistedLoop evaluate(const PotentialSpec& spec, std::complex<double> z);

/// The vacuum potential λ⁻¹ E dz with E = grade_minus1(w).
PotentialSpec vacuum_potential(const CQuaternion& w, const Grid& domain, int truncation = 8);

}  // namespace octodpw
