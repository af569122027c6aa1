#include "rainfield/day.hpp"

#include <algorithm>
#include <stdexcept>

namespace rainfield {

int DayField::n_extreme_stations() const {
    return static_cast<int>(std::count(station_extreme.begin(), station_extreme.end(), 1));
}

int DayField::n_extreme_triangles() const {
    return static_cast<int>(std::count(triangle_extreme.begin(), triangle_extreme.end(), 1));
}

std::vector<char> classify(Eigen::Ref<const Eigen::RowVectorXd> observed,
                           const MarginalFit& fit) {
    if (observed.size() != static_cast<long>(fit.stations.size()))
        throw std::invalid_argument("classify: row/fit station count mismatch");
    std::vector<char> flags(fit.stations.size());
    for (long s = 0; s < observed.size(); ++s)
        flags[s] = observed[s] > fit.stations[s].shift ? 1 : 0;  // strict inequality
    return flags;
}

std::vector<char> classify_triangles(const TriMesh& mesh,
                                     const std::vector<char>& station_flags) {
    std::vector<char> out(mesh.big_triangles.size());
    for (std::size_t t = 0; t < mesh.big_triangles.size(); ++t) {
        const Triangle& tri = mesh.big_triangles[t];
        out[t] = (station_flags[tri[0]] || station_flags[tri[1]] || station_flags[tri[2]]) ? 1 : 0;
    }
    return out;
}

void assign_vertex_values(const TriMesh& mesh, const std::vector<char>& station_flags,
                          Eigen::Ref<const Eigen::RowVectorXd> observed, const MarginalFit& fit,
                          const Eigen::VectorXd& xi, Eigen::VectorXd* values,
                          std::vector<VertexSource>* sources) {
    const std::vector<char> tri_extreme = classify_triangles(mesh, station_flags);
    values->resize(mesh.n_vertices());
    sources->assign(mesh.n_vertices(), VertexSource::ObservedStation);

    for (long v = 0; v < mesh.n_vertices(); ++v) {
        const VertexProvenance& prov = mesh.vertex_prov[v];
        const Triangle& owner = mesh.big_triangles[prov.triangle];
        switch (prov.kind) {
            case VertexProvenance::Kind::Station: {
                const int s = prov.station;
                if (station_flags[s]) {
                    (*values)[v] = to_local_margin(xi[v], fit.gamma_pooled, fit.stations[s].scale,
                                                   fit.stations[s].shift);
                    (*sources)[v] = VertexSource::SimulatedStation;
                } else {
                    (*values)[v] = observed[s];
                    (*sources)[v] = VertexSource::ObservedStation;
                }
                break;
            }
            case VertexProvenance::Kind::Edge: {
                if (!station_flags[prov.edge_a] && !station_flags[prov.edge_b]) {
                    // the owner's barycentric weight of the opposite Vertex is
                    // exactly zero, so this is endpoint interpolation
                    (*values)[v] = mesh.bary(v, 0) * observed[owner[0]] +
                                   mesh.bary(v, 1) * observed[owner[1]] +
                                   mesh.bary(v, 2) * observed[owner[2]];
                    (*sources)[v] = VertexSource::EdgeInterpolated;
                } else {
                    const double a_v = mesh.bary(v, 0) * fit.stations[owner[0]].scale +
                                       mesh.bary(v, 1) * fit.stations[owner[1]].scale +
                                       mesh.bary(v, 2) * fit.stations[owner[2]].scale;
                    const double b_v = mesh.bary(v, 0) * fit.stations[owner[0]].shift +
                                       mesh.bary(v, 1) * fit.stations[owner[1]].shift +
                                       mesh.bary(v, 2) * fit.stations[owner[2]].shift;
                    (*values)[v] = to_local_margin(xi[v], fit.gamma_pooled, a_v, b_v);
                    (*sources)[v] = VertexSource::Simulated;
                }
                break;
            }
            case VertexProvenance::Kind::Interior: {
                if (!tri_extreme[prov.triangle]) {
                    (*values)[v] = mesh.bary(v, 0) * observed[owner[0]] +
                                   mesh.bary(v, 1) * observed[owner[1]] +
                                   mesh.bary(v, 2) * observed[owner[2]];
                    (*sources)[v] = VertexSource::TriangleInterpolated;
                } else {
                    const double a_v = mesh.bary(v, 0) * fit.stations[owner[0]].scale +
                                       mesh.bary(v, 1) * fit.stations[owner[1]].scale +
                                       mesh.bary(v, 2) * fit.stations[owner[2]].scale;
                    const double b_v = mesh.bary(v, 0) * fit.stations[owner[0]].shift +
                                       mesh.bary(v, 1) * fit.stations[owner[1]].shift +
                                       mesh.bary(v, 2) * fit.stations[owner[2]].shift;
                    (*values)[v] = to_local_margin(xi[v], fit.gamma_pooled, a_v, b_v);
                    (*sources)[v] = VertexSource::Simulated;
                }
                break;
            }
        }
    }
}

DayField simulate_day(const RainPanel& panel, const MarginalFit& fit, const TriMesh& mesh,
                      const FieldSimulator& field, std::uint64_t seed, std::uint64_t sim_index) {
    if (field.n_points() != mesh.n_vertices())
        throw std::invalid_argument("simulate_day: field simulator not built on mesh vertices");

    DayField day;
    RandomStream pick(stream_key(seed, sim_index, 0, StreamKind::DayPick));
    day.day_index = std::min<long>(panel.n_days() - 1,
                                   static_cast<long>(pick.next_uniform() * panel.n_days()));
    const auto observed = panel.values.row(day.day_index);

    day.station_extreme = classify(observed, fit);
    day.triangle_extreme = classify_triangles(mesh, day.station_extreme);

    const bool any_extreme =
        std::any_of(day.station_extreme.begin(), day.station_extreme.end(),
                    [](char f) { return f != 0; });
    Eigen::VectorXd xi;
    if (any_extreme) {
        // one realization for the whole area; counter-keyed streams make
        // skipping it on fully nonextreme days side-effect free
        const FieldSample sample = field.sample(seed, sim_index);
        day.clamp_events = sample.clamp_events;
        xi = to_gpd_margins(sample.eta);
    } else {
        xi = Eigen::VectorXd::Ones(mesh.n_vertices());
    }

    assign_vertex_values(mesh, day.station_extreme, observed, fit, xi, &day.vertex_values,
                         &day.vertex_source);
    day.total = integrate_pwl(mesh, day.vertex_values);
    day.areal_avg = areal_average(day.total, mesh);
    return day;
}

}  // namespace rainfield
