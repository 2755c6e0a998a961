#pragma once

#include <vector>

#include "setcalc/types.hpp"

namespace setcalc::dd {

/// Generators of the polyhedral cone { y : A y >= 0 }.
/// The cone equals cone(rays) + span(lineality).
struct ConeGenerators {
  std::vector<Vector> rays;       // extreme rays of the pointed part, unit norm
  std::vector<Vector> lineality;  // orthonormal basis of the lineality space
};

/// Double-description enumeration. Works in any dimension; rows of A are the
/// constraint normals. Rays are returned in a deterministic order.
ConeGenerators enumerate(const Matrix& A, double tol = 1e-10);

}  // namespace setcalc::dd
