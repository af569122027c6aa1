#include "rainfield/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace rainfield {

void ExperimentConfig::validate() const {
    if (k < 1) throw std::invalid_argument("config: k must be >= 1");
    if (d < 1) throw std::invalid_argument("config: d must be >= 1");
    if (m_terms < 1) throw std::invalid_argument("config: m_terms must be >= 1");
    if (n_replicates < 1) throw std::invalid_argument("config: replicates must be >= 1");
    if (return_period_days < 1) throw std::invalid_argument("config: period must be >= 1");
    if (n_days_sim < 1 || n_days_sim % return_period_days != 0)
        throw std::invalid_argument(
            "config: n_days_sim must be a positive multiple of return_period_days");
    if (threads < 1) throw std::invalid_argument("config: threads must be >= 1");
    if (beta_override && !(*beta_override > 0.0))
        throw std::invalid_argument("config: beta override must be > 0");
}

void parallel_for_index(long n, int threads, const std::function<void(long)>& body) {
    if (threads <= 1 || n < 2) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    const int nw = static_cast<int>(std::min<long>(threads, n));
    std::vector<std::thread> pool;
    pool.reserve(nw);
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int w = 0; w < nw; ++w) {
        const long lo = n * w / nw;
        const long hi = n * (w + 1) / nw;
        pool.emplace_back([&, lo, hi] {
            try {
                for (long i = lo; i < hi; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

double extract_return_quantile(const std::vector<double>& totals, long return_period_days) {
    const long n = static_cast<long>(totals.size());
    if (n == 0 || return_period_days < 1 || n % return_period_days != 0)
        throw std::invalid_argument(
            "extract_return_quantile: sample size must be a positive multiple of the period");
    const long r = n / return_period_days;
    std::vector<double> copy = totals;
    std::nth_element(copy.begin(), copy.begin() + (r - 1), copy.end(), std::greater<double>());
    return copy[r - 1];
}

std::vector<DayRecord> simulate_days(const RainPanel& panel, const MarginalFit& fit,
                                     const TriMesh& mesh, const FieldSimulator& field,
                                     std::uint64_t seed, long n_days, int threads,
                                     long* clamp_total) {
    std::vector<DayRecord> records(n_days);
    std::vector<long> clamps(n_days, 0);
    parallel_for_index(n_days, threads, [&](long g) {
        const DayField day =
            simulate_day(panel, fit, mesh, field, seed, static_cast<std::uint64_t>(g));
        clamps[g] = day.clamp_events;
        records[g] = {g,
                      day.day_index,
                      day.areal_avg,
                      day.total,
                      day.n_extreme_stations(),
                      day.n_extreme_triangles()};
    });
    if (clamp_total) *clamp_total = std::accumulate(clamps.begin(), clamps.end(), 0L);
    return records;
}

QuantileReport run_experiment(const RainPanel& panel, const StationCatalog& catalog,
                              const TriMesh& mesh, const MarginalFit& fit, double beta,
                              const ExperimentConfig& config,
                              std::vector<DayRecord>* totals_out) {
    config.validate();
    if (!(beta > 0.0)) throw std::invalid_argument("run_experiment: beta must be > 0");

    FieldParams fp;
    fp.beta = beta;
    fp.m_terms = config.m_terms;
    fp.rotation_deg = config.rotation_deg;
    const FieldSimulator field(mesh.vertex_pos, fp);

    const long total_days = config.n_days_sim * config.n_replicates;
    std::vector<double> areal(total_days);
    std::vector<DayRecord> records(totals_out ? total_days : 0);
    std::vector<long> clamps(total_days, 0);

    parallel_for_index(total_days, config.threads, [&](long g) {
        const DayField day = simulate_day(panel, fit, mesh, field, config.master_seed,
                                          static_cast<std::uint64_t>(g));
        areal[g] = day.areal_avg;
        clamps[g] = day.clamp_events;
        if (totals_out) {
            records[g] = {g,
                          day.day_index,
                          day.areal_avg,
                          day.total,
                          day.n_extreme_stations(),
                          day.n_extreme_triangles()};
        }
    });

    QuantileReport rep;
    rep.clamp_events = std::accumulate(clamps.begin(), clamps.end(), 0L);
    for (int r = 0; r < config.n_replicates; ++r) {
        const std::vector<double> batch(areal.begin() + r * config.n_days_sim,
                                        areal.begin() + (r + 1) * config.n_days_sim);
        rep.replicate_quantiles.push_back(
            extract_return_quantile(batch, config.return_period_days));
    }

    const auto& q = rep.replicate_quantiles;
    rep.mean = std::accumulate(q.begin(), q.end(), 0.0) / static_cast<double>(q.size());
    double ss = 0.0;
    for (double v : q) ss += (v - rep.mean) * (v - rep.mean);
    rep.sample_std = q.size() > 1 ? std::sqrt(ss / static_cast<double>(q.size() - 1)) : 0.0;
    rep.min = *std::min_element(q.begin(), q.end());
    rep.max = *std::max_element(q.begin(), q.end());

    const double p = 1.0 / static_cast<double>(config.return_period_days);
    for (int s = 0; s < catalog.size(); ++s)
        rep.station_quantiles.push_back(return_level(fit.stations[s], fit.k, panel.n_days(), p));
    rep.mean_station_quantile =
        std::accumulate(rep.station_quantiles.begin(), rep.station_quantiles.end(), 0.0) /
        static_cast<double>(rep.station_quantiles.size());
    rep.arf = rep.mean / rep.mean_station_quantile;

    rep.avg_series_quantile =
        avg_series_return_level(panel, fit.k, fit.gamma_pooled, config.return_period_days);
    rep.arf_avg_series = rep.avg_series_quantile / rep.mean_station_quantile;

    if (totals_out) *totals_out = std::move(records);
    return rep;
}

double avg_series_return_level(const RainPanel& panel, int k, double gamma_pooled,
                               long return_period_days) {
    const Eigen::VectorXd series = panel.values.rowwise().mean();
    const LogMoments m = log_moments(series, k);
    StationFit fit;
    fit.gamma = gamma_pooled;
    fit.shift = kth_largest(series, k);
    const double gamma_minus = gamma_pooled - m.m1;
    fit.scale = m.base * m.m1 * (1.0 - gamma_minus);
    if (fit.scale <= 0.0)
        throw std::runtime_error("avg_series_return_level: nonpositive scale estimate");
    return return_level(fit, k, panel.n_days(), 1.0 / static_cast<double>(return_period_days));
}

std::vector<SensitivityRow> sensitivity_run(const RainPanel& panel,
                                            const StationCatalog& catalog, const TriMesh& mesh,
                                            const MarginalFit& fit,
                                            const std::vector<double>& betas,
                                            const std::vector<double>& rotations,
                                            const ExperimentConfig& config) {
    std::vector<SensitivityRow> rows;
    for (double beta : betas) {
        for (double rot : rotations) {
            ExperimentConfig c = config;
            c.rotation_deg = rot;
            SensitivityRow row;
            row.beta = beta;
            row.rotation_deg = rot;
            row.report = run_experiment(panel, catalog, mesh, fit, beta, c);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

RainPanel synth_generate(const StationCatalog& catalog, const SynthParams& params, long n_days,
                         std::uint64_t seed) {
    const int n_st = catalog.size();
    if (params.scale.size() != n_st || params.shift.size() != n_st)
        throw std::invalid_argument("synth_generate: need one scale and shift per station");
    if (!(params.censor_prob > 0.0 && params.censor_prob < 1.0))
        throw std::invalid_argument("synth_generate: censor_prob must lie in (0,1)");
    if (!(params.dry_prob >= 0.0 && params.dry_prob <= 1.0))
        throw std::invalid_argument("synth_generate: dry_prob must lie in [0,1]");
    for (int s = 0; s < n_st; ++s)
        if (!(params.scale[s] > 0.0))
            throw std::invalid_argument("synth_generate: scales must be positive");

    RainPanel panel;
    panel.dates = fall_season_dates(n_days);
    panel.values.resize(n_days, n_st);
    if (n_days == 0) return panel;

    FieldParams fp;
    fp.beta = params.beta;
    fp.m_terms = params.m_terms;
    const FieldSimulator field(catalog.positions, fp);

    const double xi_censor = 1.0 / params.censor_prob;  // P(xi > xi_censor) = censor_prob
    Eigen::VectorXd censor_level(n_st);
    for (int s = 0; s < n_st; ++s)
        censor_level[s] =
            to_local_margin(xi_censor, params.gamma, params.scale[s], params.shift[s]);

    for (long d = 0; d < n_days; ++d) {
        const FieldSample sample = field.sample(seed, static_cast<std::uint64_t>(d));
        RandomStream bulk(stream_key(seed, static_cast<std::uint64_t>(d), 0,
                                     StreamKind::SynthBulk));
        for (int s = 0; s < n_st; ++s) {
            const double xi = to_gpd_margin(sample.eta[s]);
            double v;
            if (xi > xi_censor) {
                v = to_local_margin(xi, params.gamma, params.scale[s], params.shift[s]);
            } else {
                const double u_wet = bulk.next_uniform();
                const double u_level = bulk.next_uniform();
                v = (u_wet < params.dry_prob) ? 0.0 : u_level * 0.95 * censor_level[s];
            }
            panel.values(d, s) = std::round(v * 10.0) / 10.0;  // gauge resolution
        }
    }
    return panel;
}

std::vector<HistogramBin> make_histogram(const std::vector<double>& values, int n_bins) {
    if (values.empty() || n_bins < 1) return {};
    const double lo = *std::min_element(values.begin(), values.end());
    const double hi = *std::max_element(values.begin(), values.end());
    std::vector<HistogramBin> bins(n_bins);
    const double width = (hi > lo) ? (hi - lo) / n_bins : 1.0;
    for (int b = 0; b < n_bins; ++b) {
        bins[b].left = lo + b * width;
        bins[b].right = lo + (b + 1) * width;
    }
    for (double v : values) {
        int b = static_cast<int>((v - lo) / width);
        if (b >= n_bins) b = n_bins - 1;
        if (b < 0) b = 0;
        ++bins[b].count;
    }
    return bins;
}

std::vector<std::string> fall_season_dates(long n_days) {
    static const int month_len[3] = {30, 31, 30};  // Sep, Oct, Nov
    static const int month_num[3] = {9, 10, 11};
    std::vector<std::string> dates;
    dates.reserve(n_days);
    int year = 1971, month = 0, day = 1;
    for (long i = 0; i < n_days; ++i) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month_num[month], day);
        dates.emplace_back(buf);
        if (++day > month_len[month]) {
            day = 1;
            if (++month == 3) {
                month = 0;
                ++year;
            }
        }
    }
    return dates;
}

}  // namespace rainfield
