#pragma once

#include "rainfield/field.hpp"
#include "rainfield/margins.hpp"
#include "rainfield/mesh.hpp"
#include "rainfield/types.hpp"

#include <cstdint>
#include <vector>

namespace rainfield {

enum class VertexSource : unsigned char {
    ObservedStation,      // nonextreme station keeps the observed value
    SimulatedStation,     // extreme station, local-margin transform of the field
    EdgeInterpolated,     // edge vertex between two nonextreme stations
    TriangleInterpolated, // interior vertex of a nonextreme Triangle
    Simulated,            // any other vertex of an extreme Triangle
};

/// One simulated day: resampled observed day, classification, per-vertex
/// rainfall and its exact areal integral.
struct DayField {
    long day_index = 0;  // row resampled from the panel
    std::vector<char> station_extreme;
    std::vector<char> triangle_extreme;
    Eigen::VectorXd vertex_values;  // mm
    std::vector<VertexSource> vertex_source;
    double total = 0.0;      // mm km^2
    double areal_avg = 0.0;  // mm
    long clamp_events = 0;

    int n_extreme_stations() const;
    int n_extreme_triangles() const;
};

/// Station is extreme iff observed rainfall strictly exceeds its shift.
std::vector<char> classify(Eigen::Ref<const Eigen::RowVectorXd> observed,
                           const MarginalFit& fit);

/// A Triangle is extreme unless all three of its Vertices are nonextreme.
std::vector<char> classify_triangles(const TriMesh& mesh, const std::vector<char>& station_flags);

/// Vertex-value rules for one day. `xi` is the GPD-margin field at every
/// mesh vertex; it is only read where the rules call for simulated values.
///  - station vertices: observed if nonextreme, local-margin transform if extreme
///  - edge vertices with both endpoints nonextreme: interpolation of the two
///    observed endpoint values (whatever the adjacent Triangles are)
///  - interior vertices of nonextreme Triangles: interpolation of the three
///    observed Vertex values
///  - everything else: local-margin transform with scale and shift
///    interpolated over the owning Triangle and the pooled gamma
void assign_vertex_values(const TriMesh& mesh, const std::vector<char>& station_flags,
                          Eigen::Ref<const Eigen::RowVectorXd> observed, const MarginalFit& fit,
                          const Eigen::VectorXd& xi, Eigen::VectorXd* values,
                          std::vector<VertexSource>* sources);

/// Uniform day draw, one field realization shared by the whole area,
/// classification, vertex rules, integration. Fully determined by
/// (seed, sim_index).
DayField simulate_day(const RainPanel& panel, const MarginalFit& fit, const TriMesh& mesh,
                      const FieldSimulator& field, std::uint64_t seed, std::uint64_t sim_index);

}  // namespace rainfield
