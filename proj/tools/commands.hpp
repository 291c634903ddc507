#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace octodpw::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInvalidInput = 2,
  kDiverged = 3,
  kOffBigCell = 4,
};

struct RunConfig {
  std::string input;
  std::string out = ".";
  std::optional<std::pair<int, int>> grid;
  std::optional<int> truncation;
  std::vector<std::complex<double>> lambdas;
  std::uint64_t seed = 1;
  std::optional<double> tol;
  std::array<int, 3> project{0, 1, 4};
  /// Largest Toeplitz block order tried by the Iwasawa factorization.
  int max_toeplitz = 512;
};

struct VerifyOptions {
  std::size_t count = 10000;
  bool inject_fault = false;
};

struct DpwOptions {
  /// Birkhoff-split every point and fail with kOffBigCell past the fraction.
  bool birkhoff = false;
  double max_off_big_cell = 0.01;
};

struct RoundTripOptions {
  double max_off_big_cell = 0.01;
};

/// "NUxNV".
std::pair<int, int> parse_grid(const std::string& text);
/// Comma-separated list of 1, -1, i, -i, a+bi literals, or @deg for e^{i·deg°}.
std::vector<std::complex<double>> parse_lambdas(const std::string& text);
/// "i,j,k" with entries in 0..7.
std::array<int, 3> parse_projection(const std::string& text);

int cmd_verify_algebra(const RunConfig& cfg, const VerifyOptions& opts, std::ostream& out, std::ostream& err);
int cmd_classify(const std::vector<double>& values, const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_dpw(const RunConfig& cfg, const DpwOptions& opts, std::ostream& out, std::ostream& err);
int cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_roundtrip(const RunConfig& cfg, const RoundTripOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace octodpw::cli
