#include "rainfield/report_io.hpp"

#include "rainfield/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace rainfield {

namespace {

std::string g10(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

}  // namespace

void write_margins_csv(const std::string& path, const StationCatalog& catalog,
                       const MarginalFit& fit) {
    auto out = open_out(path);
    out << "station_id,gamma_local,scale_mm,shift_mm,k\n";
    for (int s = 0; s < catalog.size(); ++s) {
        const StationFit& st = fit.stations[s];
        out << catalog.ids[s] << ',' << g10(st.gamma) << ',' << g10(st.scale) << ','
            << g10(st.shift) << ',' << fit.k << '\n';
    }
    out << "# gamma_pooled=" << g10(fit.gamma_pooled) << '\n';
}

void write_pairs_csv(const std::string& path, const StationCatalog& catalog,
                     const DependenceFit& fit) {
    auto out = open_out(path);
    out << "p_id,q_id,h_km,l11,beta_pq,included\n";
    for (const PairEstimate& pe : fit.pairs) {
        out << catalog.ids[pe.p] << ',' << catalog.ids[pe.q] << ',' << format_fixed(pe.h, 6)
            << ',' << g10(pe.l11) << ',';
        if (pe.beta) out << g10(*pe.beta);
        out << ',' << (pe.beta ? 1 : 0) << '\n';
    }
    out << "# beta_hat=" << g10(fit.beta_hat) << " q25=" << g10(fit.beta_q25)
        << " q75=" << g10(fit.beta_q75) << " n_excluded=" << fit.n_excluded << '\n';
}

void write_totals_csv(const std::string& path, const std::vector<DayRecord>& records) {
    auto out = open_out(path);
    out << "sim_index,source_day,areal_avg_mm,total_mm_km2,n_extreme_stations,n_extreme_triangles\n";
    for (const DayRecord& r : records)
        out << r.sim_index << ',' << r.source_day << ',' << format_fixed(r.areal_avg, 6) << ','
            << format_fixed(r.total, 6) << ',' << r.n_extreme_stations << ','
            << r.n_extreme_triangles << '\n';
}

std::vector<DayRecord> read_totals_csv(const std::string& path) {
    const auto rows = read_csv(path);
    if (rows.empty() || rows[0].fields.size() != 6 || rows[0].fields[0] != "sim_index")
        throw std::runtime_error(path + ": not a totals.csv file");
    std::vector<DayRecord> out;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& f = rows[r].fields;
        if (f.size() != 6)
            throw std::runtime_error(path + " line " + std::to_string(rows[r].line) +
                                     ": expected 6 fields");
        const std::string ctx = path + " line " + std::to_string(rows[r].line);
        DayRecord rec;
        rec.sim_index = static_cast<long>(parse_double(f[0], ctx));
        rec.source_day = static_cast<long>(parse_double(f[1], ctx));
        rec.areal_avg = parse_double(f[2], ctx);
        rec.total = parse_double(f[3], ctx);
        rec.n_extreme_stations = static_cast<int>(parse_double(f[4], ctx));
        rec.n_extreme_triangles = static_cast<int>(parse_double(f[5], ctx));
        out.push_back(rec);
    }
    return out;
}

void write_quantiles_csv(const std::string& path, const std::vector<double>& quantiles) {
    auto out = open_out(path);
    out << "replicate,quantile_mm\n";
    for (std::size_t r = 0; r < quantiles.size(); ++r)
        out << r << ',' << format_fixed(quantiles[r], 6) << '\n';
}

void write_report_txt(const std::string& path, const QuantileReport& report,
                      const ExperimentConfig& config, double beta) {
    auto out = open_out(path);
    out << "replicates=" << config.n_replicates << '\n'
        << "days_per_replicate=" << config.n_days_sim << '\n'
        << "return_period_days=" << config.return_period_days << '\n'
        << "k=" << config.k << '\n'
        << "d=" << config.d << '\n'
        << "m_terms=" << config.m_terms << '\n'
        << "beta=" << g10(beta) << '\n'
        << "rotation_deg=" << g10(config.rotation_deg) << '\n'
        << "seed=" << config.master_seed << '\n'
        << "mean_mm=" << format_fixed(report.mean, 4) << '\n'
        << "sample_std_mm=" << format_fixed(report.sample_std, 4) << '\n'
        << "min_mm=" << format_fixed(report.min, 4) << '\n'
        << "max_mm=" << format_fixed(report.max, 4) << '\n'
        << "mean_station_quantile_mm=" << format_fixed(report.mean_station_quantile, 4) << '\n'
        << "arf=" << format_fixed(report.arf, 4) << '\n'
        << "avg_series_quantile_mm=" << format_fixed(report.avg_series_quantile, 4) << '\n'
        << "arf_avg_series=" << format_fixed(report.arf_avg_series, 4) << '\n'
        << "clamp_events=" << report.clamp_events << '\n';
    out << "station_quantiles_mm=";
    for (std::size_t s = 0; s < report.station_quantiles.size(); ++s)
        out << (s ? ";" : "") << format_fixed(report.station_quantiles[s], 4);
    out << '\n';
}

void write_hist_csv(const std::string& path, const std::vector<HistogramBin>& bins) {
    auto out = open_out(path);
    out << "bin_left_mm,bin_right_mm,count\n";
    for (const HistogramBin& b : bins)
        out << format_fixed(b.left, 6) << ',' << format_fixed(b.right, 6) << ',' << b.count
            << '\n';
}

void write_gamma_scan_csv(const std::string& path,
                          const std::vector<std::pair<int, double>>& rows) {
    auto out = open_out(path);
    out << "k,gamma_mean\n";
    for (const auto& [k, g] : rows) out << k << ',' << g10(g) << '\n';
}

void write_sensitivity_csv(const std::string& path, const std::vector<SensitivityRow>& rows) {
    auto out = open_out(path);
    out << "beta,rotation_deg,replicates,mean_mm,sample_std_mm,min_mm,max_mm,arf\n";
    for (const SensitivityRow& r : rows)
        out << g10(r.beta) << ',' << g10(r.rotation_deg) << ','
            << r.report.replicate_quantiles.size() << ',' << format_fixed(r.report.mean, 4) << ','
            << format_fixed(r.report.sample_std, 4) << ',' << format_fixed(r.report.min, 4) << ','
            << format_fixed(r.report.max, 4) << ',' << format_fixed(r.report.arf, 4) << '\n';
}

void write_field_csv(const std::string& path, const TriMesh& mesh, const Eigen::VectorXd& eta,
                     const Eigen::VectorXd& xi, const Eigen::VectorXd& rain) {
    auto out = open_out(path);
    out << "x_km,y_km,eta,xi,rain_mm\n";
    for (long v = 0; v < mesh.n_vertices(); ++v)
        out << format_fixed(mesh.vertex_pos(v, 0), 6) << ','
            << format_fixed(mesh.vertex_pos(v, 1), 6) << ',' << g10(eta[v]) << ',' << g10(xi[v])
            << ',' << format_fixed(rain[v], 4) << '\n';
}

}  // namespace rainfield
