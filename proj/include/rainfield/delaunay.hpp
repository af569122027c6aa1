#pragma once

#include "rainfield/types.hpp"

#include <vector>

namespace rainfield {

/// Delaunay triangulation of the station positions (Bowyer-Watson).
/// Fallback generator for runs without a user-supplied Triangle file;
/// outputs should flag the triangulation as generated.
std::vector<Triangle> delaunay_triangles(const StationCatalog& catalog);

}  // namespace rainfield
