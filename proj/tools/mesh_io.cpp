#include "mesh_io.hpp"

#include <fmt/format.h>
#include <fmt/os.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "octodpw/errors.hpp"

namespace octodpw::cli {

void write_obj(const std::string& path, const Field<Octonion>& X, const std::array<int, 3>& axes,
               std::complex<double> lambda) {
  const Grid& g = X.grid();
  auto out = fmt::output_file(path);
  out.print("# lambda {:.17g} {:.17g}\n# axes {} {} {}\n", lambda.real(), lambda.imag(), axes[0], axes[1], axes[2]);
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      const Octonion& p = X(i, j);
      out.print("v {:.17g} {:.17g} {:.17g}\n", p[axes[0]], p[axes[1]], p[axes[2]]);
    }
  for (int j = 0; j + 1 < g.nv; ++j)
    for (int i = 0; i + 1 < g.nu; ++i) {
      const std::size_t a = g.index(i, j) + 1, b = g.index(i + 1, j) + 1;
      const std::size_t c = g.index(i + 1, j + 1) + 1, d = g.index(i, j + 1) + 1;
      out.print("f {} {} {}\nf {} {} {}\n", a, b, c, a, c, d);
    }
}

void write_csv(const std::string& path, const Field<Octonion>& X) {
  const Grid& g = X.grid();
  auto out = fmt::output_file(path);
  out.print("u,v,X0,X1,X2,X3,X4,X5,X6,X7\n");
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      const Octonion& p = X(i, j);
      out.print("{:.17g},{:.17g}", g.u(i), g.v(j));
      for (int k = 0; k < 8; ++k) out.print(",{:.17g}", p[k]);
      out.print("\n");
    }
}

namespace {

std::vector<double> distinct(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  const double scale = v.empty() ? 1.0 : std::max(1.0, std::abs(v.back() - v.front()));
  for (double x : v)
    if (out.empty() || x - out.back() > 1e-9 * scale) out.push_back(x);
  return out;
}

int locate(const std::vector<double>& axis, double x) {
  const auto it = std::lower_bound(axis.begin(), axis.end(), x - 1e-9 * std::max(1.0, std::abs(x)));
  return static_cast<int>(it - axis.begin());
}

}  // namespace

Field<Octonion> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  struct Row {
    double u, v;
    Octonion X;
  };
  std::vector<Row> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (lineno == 1 && line.find_first_of("uvX") != std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    Row r;
    ss >> r.u >> r.v;
    for (int k = 0; k < 8; ++k) ss >> r.X[k];
    if (!ss) throw Error(ErrorCode::InvalidInput, path + ":" + std::to_string(lineno) + ": expected u,v,X0..X7");
    rows.push_back(r);
  }
  std::vector<double> us, vs;
  for (const auto& r : rows) {
    us.push_back(r.u);
    vs.push_back(r.v);
  }
  const auto ua = distinct(us), va = distinct(vs);
  if (ua.size() < 5 || va.size() < 5 || ua.size() * va.size() != rows.size())
    throw Error(ErrorCode::InvalidInput, path + ": rows do not form a full grid of at least 5x5 points");
  const Grid g{ua.front(), ua.back(), va.front(), va.back(), static_cast<int>(ua.size()), static_cast<int>(va.size())};
  for (int i = 0; i < g.nu; ++i)
    if (std::abs(ua[i] - g.u(i)) > 1e-9 * std::max(1.0, g.u_max - g.u_min))
      throw Error(ErrorCode::InvalidInput, path + ": u values are not uniformly spaced");
  for (int j = 0; j < g.nv; ++j)
    if (std::abs(va[j] - g.v(j)) > 1e-9 * std::max(1.0, g.v_max - g.v_min))
      throw Error(ErrorCode::InvalidInput, path + ": v values are not uniformly spaced");
  Field<Octonion> X(g);
  std::vector<char> seen(g.size(), 0);
  for (const auto& r : rows) {
    const int i = locate(ua, r.u), j = locate(va, r.v);
    const std::size_t n = g.index(i, j);
    if (seen[n]) throw Error(ErrorCode::InvalidInput, path + ": duplicate grid point");
    seen[n] = 1;
    X(i, j) = r.X;
  }
  return X;
}

}  // namespace octodpw::cli
