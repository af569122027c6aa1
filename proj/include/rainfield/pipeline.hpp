#pragma once

#include "rainfield/day.hpp"
#include "rainfield/dependence.hpp"
#include "rainfield/field.hpp"
#include "rainfield/margins.hpp"
#include "rainfield/mesh.hpp"
#include "rainfield/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace rainfield {

struct ExperimentConfig {
    int k = 125;
    int d = 5;
    int m_terms = 4;
    long n_days_sim = 91000;        // per replicate; multiple of return_period_days
    long return_period_days = 9100; // once-in-100-fall-seasons
    int n_replicates = 60;
    std::uint64_t master_seed = 1;
    double rotation_deg = 0.0;
    std::optional<double> beta_override;
    int threads = 1;

    void validate() const;  // throws on violated invariants
};

/// One totals.csv row.
struct DayRecord {
    long sim_index = 0;
    long source_day = 0;
    double areal_avg = 0.0;
    double total = 0.0;
    int n_extreme_stations = 0;
    int n_extreme_triangles = 0;
};

struct QuantileReport {
    std::vector<double> replicate_quantiles;  // mm, one per replicate
    double mean = 0.0;
    double sample_std = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::vector<double> station_quantiles;  // mm, catalog order
    double mean_station_quantile = 0.0;
    double arf = 0.0;                  // mean / mean_station_quantile
    double avg_series_quantile = 0.0;  // GPD fit to the station-average series
    double arf_avg_series = 0.0;
    long clamp_events = 0;
};

/// The r-th largest value with r = N / period (requires divisibility).
double extract_return_quantile(const std::vector<double>& totals, long return_period_days);

/// One batch of simulated days with sim_index 0..n_days-1.
std::vector<DayRecord> simulate_days(const RainPanel& panel, const MarginalFit& fit,
                                     const TriMesh& mesh, const FieldSimulator& field,
                                     std::uint64_t seed, long n_days, int threads,
                                     long* clamp_total = nullptr);

/// Simulates n_replicates batches of n_days_sim days, one return quantile
/// per replicate, station return levels, ARF and the station-average
/// comparison fit. Day g of replicate r uses sim_index r*n_days_sim + g.
QuantileReport run_experiment(const RainPanel& panel, const StationCatalog& catalog,
                              const TriMesh& mesh, const MarginalFit& fit, double beta,
                              const ExperimentConfig& config,
                              std::vector<DayRecord>* totals_out = nullptr);

/// Return level of the cross-station daily mean series with the shape fixed
/// to gamma_pooled (scale recomputed from M1 with the forced gamma).
double avg_series_return_level(const RainPanel& panel, int k, double gamma_pooled,
                               long return_period_days);

struct SensitivityRow {
    double beta = 0.0;
    double rotation_deg = 0.0;
    QuantileReport report;
};

std::vector<SensitivityRow> sensitivity_run(const RainPanel& panel,
                                            const StationCatalog& catalog, const TriMesh& mesh,
                                            const MarginalFit& fit,
                                            const std::vector<double>& betas,
                                            const std::vector<double>& rotations,
                                            const ExperimentConfig& config);

/// Ground-truth generator for estimator validation: field-model tails with
/// known (beta, gamma) above a censoring level with analytic exceedance
/// rate, a documented bulk below it (dry days plus a bounded uniform),
/// values rounded to gauge resolution (0.1 mm).
struct SynthParams {
    double beta = 0.05;
    double gamma = 0.1;
    Eigen::VectorXd scale;  // per station, mm
    Eigen::VectorXd shift;  // per station, mm
    double censor_prob = 0.15;  // P(value above the censor level), per station
    double dry_prob = 0.5;      // P(zero | below censor level)
    int m_terms = 50;
};

RainPanel synth_generate(const StationCatalog& catalog, const SynthParams& params, long n_days,
                         std::uint64_t seed);

/// Histogram with equal-width bins over [min, max] of the data.
struct HistogramBin {
    double left = 0.0;
    double right = 0.0;
    long count = 0;
};
std::vector<HistogramBin> make_histogram(const std::vector<double>& values, int n_bins);

/// ISO date labels for consecutive fall-season days (Sep-Nov), starting 1971.
std::vector<std::string> fall_season_dates(long n_days);

/// Deterministic index-parallel loop; results must be written by index.
void parallel_for_index(long n, int threads, const std::function<void(long)>& body);

}  // namespace rainfield
