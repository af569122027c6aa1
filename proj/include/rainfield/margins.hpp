#pragma once

#include "rainfield/types.hpp"

#include <utility>
#include <vector>

namespace rainfield {

/// Per-station tail parameters: extreme value index, scale a(n/k) and
/// shift b(n/k), all in the peaks-over-threshold parameterization.
struct StationFit {
    double gamma = 0.0;
    double scale = 0.0;  // mm, > 0
    double shift = 0.0;  // mm, the k-th largest observation
};

struct MarginalFit {
    int k = 0;
    std::vector<StationFit> stations;
    double gamma_pooled = 0.0;  // arithmetic mean of local gammas, catalog order
};

/// k-th largest element under the deterministic tie rule: descending sort
/// with stable index order, duplicates included.
double kth_largest(Eigen::Ref<const Eigen::VectorXd> sample, int k);

/// Log moments of the top k order statistics relative to the (k+1)-th
/// largest: M_j = (1/k) sum_{i=0..k-1} (log X_{n-i,n} - log X_{n-k,n})^j.
struct LogMoments {
    double m1 = 0.0;
    double m2 = 0.0;
    double base = 0.0;  // X_{n-k,n}, the (k+1)-th largest
};
LogMoments log_moments(Eigen::Ref<const Eigen::VectorXd> sample, int k);

/// Moment estimator: gamma = M1 + 1 - (1/2) / (1 - M1^2/M2).
/// Requires the top k+1 order statistics strictly positive and not all equal.
double moment_estimator(Eigen::Ref<const Eigen::VectorXd> sample, int k);

/// Companion scale estimator: a = X_{n-k,n} * M1 * (1 - gamma_minus) with
/// gamma_minus = gamma - M1.
double scale_estimator(Eigen::Ref<const Eigen::VectorXd> sample, int k, double gamma);

/// Fits every station column; aborts with the station id on any failure.
/// Stations with |gamma| > 1 are kept but reported through `warnings`.
MarginalFit fit_margins(const RainPanel& panel, int k,
                        std::vector<std::string>* warnings = nullptr);

/// (k, mean local gamma) rows over [k_min, k_max]; k values whose fit fails
/// anywhere are skipped.
std::vector<std::pair<int, double>> gamma_stability_scan(const RainPanel& panel, int k_min,
                                                         int k_max);

/// T-day return level b + a ((k/(n p))^gamma - 1)/gamma, gamma -> 0 limit
/// b + a log(k/(n p)). Requires 0 < p_exceed <= k/n.
double return_level(const StationFit& fit, int k, long n, double p_exceed);

/// Mixed empirical/GPD distribution: empirical below the threshold, GPD
/// tail above it, continuous at the threshold.
struct TailModel {
    double threshold = 0.0;           // t, an upper order statistic
    std::vector<double> below;        // sorted sub-threshold sample (strictly < t)
    double gamma = 0.0;
    double scale = 0.0;               // a0 > 0
    double tail_mass = 0.0;           // 1 - F(t) = fraction of sample >= t
};

TailModel make_tail_model(Eigen::Ref<const Eigen::VectorXd> sample, int k, double gamma,
                          double scale);

double mixed_tail_cdf(const TailModel& model, double x);

}  // namespace rainfield
