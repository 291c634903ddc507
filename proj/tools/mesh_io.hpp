#pragma once

#include <array>
#include <complex>
#include <string>

#include "octodpw/grid.hpp"
#include "octodpw/octonion.hpp"

namespace octodpw::cli {

/// Triangulated grid with vertices (X[axes[0]], X[axes[1]], X[axes[2]]).
void write_obj(const std::string& path, const Field<Octonion>& X, const std::array<int, 3>& axes,
               std::complex<double> lambda);

/// Header u,v,X0..X7, one row per grid point in (j, i) order.
void write_csv(const std::string& path, const Field<Octonion>& X);

/// Reads the write_csv layout. The grid is recovered from the distinct u and
/// v values, which must be uniformly spaced. Throws InvalidInput.
Field<Octonion> read_csv(const std::string& path);

}  // namespace octodpw::cli
