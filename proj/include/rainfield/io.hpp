#pragma once

#include "rainfield/types.hpp"

#include <string>
#include <vector>

namespace rainfield {

/// Loads `station_id,x_km,y_km`, validates (unique ids, >= 3 stations, not
/// collinear) and re-centers so `origin_id` maps to (0,0). An empty
/// origin_id picks the station closest to the network centroid.
StationCatalog load_stations(const std::string& path, const std::string& origin_id = "");

/// Loads the wide panel `date,<id1>,<id2>,...`. Columns may appear in any
/// order; they are realigned to catalog order. Missing, negative or
/// non-numeric cells are rejected with (date, station) context.
RainPanel load_rainfall(const std::string& path, const StationCatalog& catalog);

/// Loads `v1,v2,v3` rows of station ids; each triple must be nondegenerate.
std::vector<Triangle> load_triangles(const std::string& path, const StationCatalog& catalog);

void write_stations(const std::string& path, const StationCatalog& catalog);
void write_rainfall(const std::string& path, const StationCatalog& catalog, const RainPanel& panel);
void write_triangles(const std::string& path, const StationCatalog& catalog,
                     const std::vector<Triangle>& triangles);

}  // namespace rainfield
