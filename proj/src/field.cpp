#include "sllg/field.hpp"

#include <cmath>
#include <string>

#include "sllg/errors.hpp"

namespace sllg {

VectorField normalized(const VectorField& f, double min_norm) {
  VectorField out(f.grid);
  const std::size_t m = f.grid.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double v0 = f.comp[0][i], v1 = f.comp[1][i], v2 = f.comp[2][i];
    const double norm = std::sqrt(v0 * v0 + v1 * v1 + v2 * v2);
    if (!(norm >= min_norm))
      throw PreconditionError(
          "normalized: field magnitude " + std::to_string(norm) +
          " below threshold " + std::to_string(min_norm) + " at a grid point");
    out.comp[0][i] = v0 / norm;
    out.comp[1][i] = v1 / norm;
    out.comp[2][i] = v2 / norm;
  }
  return out;
}

}  // namespace sllg
