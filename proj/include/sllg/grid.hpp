#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "sllg/errors.hpp"

namespace sllg {

// Uniform grid on the unit torus [0,1)^dim with n points per axis.
// Integer wavevectors span {-n/2+1, ..., n/2}; the derivative multiplier of
// the shared Nyquist slot uses the signed representative +n/2.
struct TorusGrid {
  int dim = 0;  // 1, 2 or 3
  int n = 0;    // even, >= 4

  TorusGrid() = default;
  TorusGrid(int dim_, int n_) : dim(dim_), n(n_) {
    if (dim < 1 || dim > 3)
      throw PreconditionError("grid dimension must be 1, 2 or 3, got " +
                              std::to_string(dim));
    if (n < 4 || n % 2 != 0)
      throw PreconditionError("grid size must be even and >= 4, got " +
                              std::to_string(n));
  }

  std::size_t size() const {
    std::size_t s = 1;
    for (int a = 0; a < dim; ++a) s *= static_cast<std::size_t>(n);
    return s;
  }

  // Flattened index layout: axis 1 fastest, i.e. idx = x + n*(y + n*z).
  std::size_t index(int x, int y = 0, int z = 0) const {
    auto nn = static_cast<std::size_t>(n);
    return static_cast<std::size_t>(x) +
           nn * (static_cast<std::size_t>(y) +
                 nn * static_cast<std::size_t>(z));
  }

  std::array<int, 3> coords(std::size_t idx) const {
    auto nn = static_cast<std::size_t>(n);
    std::array<int, 3> c{0, 0, 0};
    c[0] = static_cast<int>(idx % nn);
    if (dim > 1) c[1] = static_cast<int>((idx / nn) % nn);
    if (dim > 2) c[2] = static_cast<int>(idx / (nn * nn));
    return c;
  }

  // Signed integer wavevector component for a spectral slot index.
  int wavenumber(int slot) const { return slot <= n / 2 ? slot : slot - n; }

  std::array<int, 3> wavevector(std::size_t idx) const {
    auto c = coords(idx);
    std::array<int, 3> k{0, 0, 0};
    for (int a = 0; a < dim; ++a) k[a] = wavenumber(c[a]);
    return k;
  }

  // |k|^2 as an integer; the Laplacian eigenvalue is -4*pi^2*|k|^2.
  long wavevector_sq(std::size_t idx) const {
    auto k = wavevector(idx);
    long s = 0;
    for (int a = 0; a < dim; ++a) s += static_cast<long>(k[a]) * k[a];
    return s;
  }

  // Physical coordinate of a grid point along one axis.
  double coordinate(int slot) const { return static_cast<double>(slot) / n; }

  bool operator==(const TorusGrid& o) const { return dim == o.dim && n == o.n; }
  bool operator!=(const TorusGrid& o) const { return !(*this == o); }
};

inline void require_same_grid(const TorusGrid& a, const TorusGrid& b,
                              const char* where) {
  if (a != b)
    throw GridMismatchError(std::string(where) + ": grids differ (" +
                            std::to_string(a.dim) + "d n=" +
                            std::to_string(a.n) + " vs " +
                            std::to_string(b.dim) + "d n=" +
                            std::to_string(b.n) + ")");
}

}  // namespace sllg
