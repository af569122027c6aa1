#pragma once

#include "rainfield/types.hpp"

#include <string>
#include <vector>

namespace rainfield {

/// Where a mesh vertex comes from. Identity is combinatorial (station id,
/// edge id + integer fraction, or owning Triangle + integer barycentrics),
/// never positional, so shared Edges yield shared vertex objects.
struct VertexProvenance {
    enum class Kind : unsigned char { Station, Edge, Interior };
    Kind kind = Kind::Station;
    int station = -1;            // Kind::Station
    int edge_a = -1, edge_b = -1;  // Kind::Edge, canonical a < b (station indices)
    int edge_num = 0;            // fraction edge_num/d measured from edge_a
    int triangle = -1;           // owning Triangle (first to create the vertex)
    int bary_i = 0, bary_j = 0;  // integer barycentrics w.r.t. owner's (A,B,C); l = d-i-j

    std::string describe(const StationCatalog& catalog) const;
};

/// Triangulated station mesh with every Triangle subdivided into d^2
/// triangles. Piecewise-linear fields over it are continuous by
/// construction and integrate exactly with the centroid rule.
struct TriMesh {
    int d = 1;
    std::vector<Triangle> big_triangles;            // station index triples
    PointMatrix vertex_pos;                         // km
    std::vector<VertexProvenance> vertex_prov;
    Eigen::Matrix<double, Eigen::Dynamic, 3> bary;  // weights w.r.t. owner Triangle vertices
    std::vector<std::array<int, 3>> triangles;      // small triangles, vertex indices
    std::vector<int> tri_owner;                     // owning Triangle per small triangle
    std::vector<double> tri_area;                   // km^2
    double total_area = 0.0;                        // km^2
    std::vector<int> station_vertex;                // station -> vertex index (-1 if unused)

    long n_vertices() const { return vertex_pos.rows(); }
    long n_triangles() const { return static_cast<long>(triangles.size()); }
};

/// Builds the subdivided mesh; rejects overlapping Triangles. Shared-edge
/// orientation differences are normalized, never an error.
TriMesh build_mesh(const StationCatalog& catalog, const std::vector<Triangle>& triangles, int d);

/// Barycentric interpolation of one value per station onto every mesh
/// vertex. Edge vertices depend only on their two Edge endpoint values.
Eigen::VectorXd interpolate_station_field(const TriMesh& mesh,
                                          Eigen::Ref<const Eigen::VectorXd> station_values);

/// Integral of the piecewise-linear field (exact): sum of area*(v1+v2+v3)/3,
/// accumulated with pairwise summation in fixed triangle order.
double integrate_pwl(const TriMesh& mesh, Eigen::Ref<const Eigen::VectorXd> vertex_values);

double areal_average(double total, const TriMesh& mesh);

void write_mesh_csv(const std::string& path, const TriMesh& mesh, const StationCatalog& catalog);

}  // namespace rainfield
