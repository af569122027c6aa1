#include "rainfield/mesh.hpp"

#include "rainfield/csv.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>
#include <tuple>

namespace rainfield {

namespace {

double signed_area2(const Vec2& a, const Vec2& b, const Vec2& c) {
    return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

// Sutherland-Hodgman clip of convex polygon `poly` against the half-plane
// left of segment (a,b).
std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& poly, const Vec2& a, const Vec2& b) {
    std::vector<Vec2> out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % n];
        const double dp = signed_area2(a, b, p);
        const double dq = signed_area2(a, b, q);
        if (dp >= 0) out.push_back(p);
        if ((dp > 0 && dq < 0) || (dp < 0 && dq > 0)) {
            const double t = dp / (dp - dq);
            out.push_back(p + t * (q - p));
        }
    }
    return out;
}

double polygon_area(const std::vector<Vec2>& poly) {
    double a2 = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % poly.size()];
        a2 += p.x() * q.y() - q.x() * p.y();
    }
    return 0.5 * std::abs(a2);
}

// Area of the intersection of two Triangles given as CCW vertex lists.
double triangle_overlap_area(std::vector<Vec2> p, const std::vector<Vec2>& q) {
    for (std::size_t i = 0; i < 3 && !p.empty(); ++i)
        p = clip_halfplane(p, q[i], q[(i + 1) % 3]);
    return p.empty() ? 0.0 : polygon_area(p);
}

struct EdgeKey {
    int a, b, num;  // fraction num/d measured from station a (a < b)
    bool operator<(const EdgeKey& o) const {
        return std::tie(a, b, num) < std::tie(o.a, o.b, o.num);
    }
};

}  // namespace

std::string VertexProvenance::describe(const StationCatalog& catalog) const {
    switch (kind) {
        case Kind::Station:
            return "station:" + catalog.ids[station];
        case Kind::Edge:
            return "edge:" + catalog.ids[edge_a] + "-" + catalog.ids[edge_b] + ":" +
                   std::to_string(edge_num);
        case Kind::Interior:
            return "interior:T" + std::to_string(triangle) + ":" + std::to_string(bary_i) + "-" +
                   std::to_string(bary_j);
    }
    return "?";
}

TriMesh build_mesh(const StationCatalog& catalog, const std::vector<Triangle>& triangles, int d) {
    if (d < 1) throw std::invalid_argument("build_mesh: d must be >= 1");
    if (triangles.empty()) throw std::invalid_argument("build_mesh: no Triangles");

    // normalize orientation to CCW; validate and check for overlaps
    std::vector<Triangle> tris = triangles;
    std::vector<std::vector<Vec2>> corners(tris.size());
    for (std::size_t t = 0; t < tris.size(); ++t) {
        for (int j = 0; j < 3; ++j)
            if (tris[t][j] < 0 || tris[t][j] >= catalog.size())
                throw std::invalid_argument("build_mesh: vertex index out of range");
        Vec2 a = catalog.position(tris[t][0]);
        Vec2 b = catalog.position(tris[t][1]);
        Vec2 c = catalog.position(tris[t][2]);
        double s2 = signed_area2(a, b, c);
        if (s2 == 0.0) throw std::invalid_argument("build_mesh: degenerate Triangle");
        if (s2 < 0) {
            std::swap(tris[t][1], tris[t][2]);
            std::swap(b, c);
        }
        corners[t] = {a, b, c};
    }
    for (std::size_t s = 0; s < tris.size(); ++s) {
        const double area_s = 0.5 * signed_area2(corners[s][0], corners[s][1], corners[s][2]);
        for (std::size_t t = s + 1; t < tris.size(); ++t) {
            const double area_t = 0.5 * signed_area2(corners[t][0], corners[t][1], corners[t][2]);
            const double ov = triangle_overlap_area(corners[s], corners[t]);
            if (ov > 1e-9 * std::min(area_s, area_t))
                throw std::runtime_error("build_mesh: Triangles " + std::to_string(s) + " and " +
                                         std::to_string(t) + " overlap");
        }
    }

    TriMesh mesh;
    mesh.d = d;
    mesh.big_triangles = tris;
    mesh.station_vertex.assign(catalog.size(), -1);

    std::map<int, int> station_node;
    std::map<EdgeKey, int> edge_node;
    std::vector<Vec2> positions;
    std::vector<std::array<double, 3>> weights;

    const double dd = static_cast<double>(d);

    for (std::size_t t = 0; t < tris.size(); ++t) {
        const int A = tris[t][0], B = tris[t][1], C = tris[t][2];
        const Vec2 pa = corners[t][0], pb = corners[t][1], pc = corners[t][2];

        // grid node (i,j): integer barycentrics (d-i-j, i, j) toward (A,B,C)
        std::vector<int> node((d + 1) * (d + 2) / 2);
        auto slot = [d](int i, int j) { return i * (2 * d + 3 - i) / 2 + j; };

        for (int i = 0; i <= d; ++i) {
            for (int j = 0; j <= d - i; ++j) {
                const int l = d - i - j;
                int id = -1;
                // dedup key depends on where the node sits
                if (i == 0 && j == 0) id = -2 - A;       // station A (resolved below)
                else if (i == d) id = -2 - B;
                else if (j == d) id = -2 - C;

                if (id != -1) {
                    const int st = -id - 2;
                    auto it = station_node.find(st);
                    if (it != station_node.end()) {
                        node[slot(i, j)] = it->second;
                        continue;
                    }
                } else if (l == 0 || i == 0 || j == 0) {
                    // Edge node: canonicalize to (min station, max station, steps from min)
                    int ea, eb, num;
                    if (l == 0) {        // on BC, j steps from B
                        ea = B; eb = C; num = j;
                    } else if (i == 0) { // on AC, j steps from A
                        ea = A; eb = C; num = j;
                    } else {             // on AB, i steps from A
                        ea = A; eb = B; num = i;
                    }
                    if (ea > eb) {
                        std::swap(ea, eb);
                        num = d - num;
                    }
                    const EdgeKey key{ea, eb, num};
                    auto it = edge_node.find(key);
                    if (it != edge_node.end()) {
                        node[slot(i, j)] = it->second;
                        continue;
                    }
                }

                // create the vertex, owned by this Triangle
                const int vid = static_cast<int>(positions.size());
                const double wa = static_cast<double>(l) / dd;
                const double wb = static_cast<double>(i) / dd;
                const double wc = static_cast<double>(d - l - i) / dd;
                positions.push_back(((pa * l + pb * i + pc * j) / dd).eval());
                weights.push_back({wa, wb, wc});
                VertexProvenance prov;
                prov.triangle = static_cast<int>(t);
                prov.bary_i = i;
                prov.bary_j = j;
                if (id != -1) {
                    const int st = -id - 2;
                    prov.kind = VertexProvenance::Kind::Station;
                    prov.station = st;
                    station_node[st] = vid;
                    mesh.station_vertex[st] = vid;
                } else if (l == 0 || i == 0 || j == 0) {
                    int ea, eb, num;
                    if (l == 0) { ea = B; eb = C; num = j; }
                    else if (i == 0) { ea = A; eb = C; num = j; }
                    else { ea = A; eb = B; num = i; }
                    if (ea > eb) { std::swap(ea, eb); num = d - num; }
                    prov.kind = VertexProvenance::Kind::Edge;
                    prov.edge_a = ea;
                    prov.edge_b = eb;
                    prov.edge_num = num;
                    edge_node[EdgeKey{ea, eb, num}] = vid;
                } else {
                    prov.kind = VertexProvenance::Kind::Interior;
                }
                mesh.vertex_prov.push_back(prov);
                node[slot(i, j)] = vid;
            }
        }

        // d^2 small triangles: upward and downward in the (i,j) grid
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d - i; ++j) {
                mesh.triangles.push_back({node[slot(i, j)], node[slot(i + 1, j)],
                                          node[slot(i, j + 1)]});
                mesh.tri_owner.push_back(static_cast<int>(t));
                if (i + j < d - 1) {
                    mesh.triangles.push_back({node[slot(i + 1, j)], node[slot(i + 1, j + 1)],
                                              node[slot(i, j + 1)]});
                    mesh.tri_owner.push_back(static_cast<int>(t));
                }
            }
        }
    }

    mesh.vertex_pos.resize(static_cast<long>(positions.size()), 2);
    mesh.bary.resize(static_cast<long>(positions.size()), 3);
    for (std::size_t v = 0; v < positions.size(); ++v) {
        mesh.vertex_pos.row(v) = positions[v].transpose();
        for (int j = 0; j < 3; ++j) mesh.bary(static_cast<long>(v), j) = weights[v][j];
    }

    mesh.tri_area.resize(mesh.triangles.size());
    for (std::size_t s = 0; s < mesh.triangles.size(); ++s) {
        const auto& tr = mesh.triangles[s];
        mesh.tri_area[s] = 0.5 * std::abs(signed_area2(mesh.vertex_pos.row(tr[0]).transpose(),
                                                       mesh.vertex_pos.row(tr[1]).transpose(),
                                                       mesh.vertex_pos.row(tr[2]).transpose()));
    }

    // total area from the Triangles themselves, so it is independent of d
    double total = 0.0;
    for (std::size_t t = 0; t < tris.size(); ++t)
        total += 0.5 * signed_area2(corners[t][0], corners[t][1], corners[t][2]);
    mesh.total_area = total;
    return mesh;
}

Eigen::VectorXd interpolate_station_field(const TriMesh& mesh,
                                          Eigen::Ref<const Eigen::VectorXd> station_values) {
    Eigen::VectorXd out(mesh.n_vertices());
    for (long v = 0; v < mesh.n_vertices(); ++v) {
        const auto& prov = mesh.vertex_prov[v];
        const Triangle& owner = mesh.big_triangles[prov.triangle];
        out[v] = mesh.bary(v, 0) * station_values[owner[0]] +
                 mesh.bary(v, 1) * station_values[owner[1]] +
                 mesh.bary(v, 2) * station_values[owner[2]];
    }
    return out;
}

namespace {

double pairwise_sum(const std::vector<double>& terms, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 8) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += terms[i];
        return s;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(terms, lo, mid) + pairwise_sum(terms, mid, hi);
}

}  // namespace

double integrate_pwl(const TriMesh& mesh, Eigen::Ref<const Eigen::VectorXd> vertex_values) {
    if (vertex_values.size() != mesh.n_vertices())
        throw std::invalid_argument("integrate_pwl: one value per mesh vertex required");
    std::vector<double> terms(mesh.triangles.size());
    for (std::size_t s = 0; s < mesh.triangles.size(); ++s) {
        const auto& tr = mesh.triangles[s];
        terms[s] = mesh.tri_area[s] *
                   (vertex_values[tr[0]] + vertex_values[tr[1]] + vertex_values[tr[2]]) / 3.0;
    }
    return pairwise_sum(terms, 0, terms.size());
}

double areal_average(double total, const TriMesh& mesh) {
    if (!(mesh.total_area > 0.0)) throw std::invalid_argument("areal_average: zero total area");
    return total / mesh.total_area;
}

void write_mesh_csv(const std::string& path, const TriMesh& mesh,
                    const StationCatalog& catalog) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "vertex_id,x_km,y_km,provenance\n";
    for (long v = 0; v < mesh.n_vertices(); ++v)
        out << v << ',' << format_fixed(mesh.vertex_pos(v, 0), 6) << ','
            << format_fixed(mesh.vertex_pos(v, 1), 6) << ','
            << mesh.vertex_prov[v].describe(catalog) << '\n';
}

}  // namespace rainfield
