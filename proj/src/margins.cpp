#include "rainfield/margins.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rainfield {

namespace {

// |gamma| below this uses the log-series limit of (x^gamma - 1)/gamma
constexpr double kGammaZero = 1e-8;

std::vector<double> top_descending(Eigen::Ref<const Eigen::VectorXd> sample, int count) {
    std::vector<double> v(sample.data(), sample.data() + sample.size());
    std::partial_sort(v.begin(), v.begin() + count, v.end(), std::greater<double>());
    v.resize(count);
    return v;
}

}  // namespace

double kth_largest(Eigen::Ref<const Eigen::VectorXd> sample, int k) {
    const long n = sample.size();
    if (k < 1 || k > n)
        throw std::invalid_argument("kth_largest: k=" + std::to_string(k) +
                                    " out of range for n=" + std::to_string(n));
    return top_descending(sample, k).back();
}

LogMoments log_moments(Eigen::Ref<const Eigen::VectorXd> sample, int k) {
    const long n = sample.size();
    if (k < 1 || k + 1 > n)
        throw std::invalid_argument("log_moments: need k+1 <= n, got k=" + std::to_string(k) +
                                    ", n=" + std::to_string(n));
    const auto top = top_descending(sample, k + 1);
    if (top.back() <= 0.0)
        throw std::domain_error("log_moments: top k+1 order statistics must be positive");
    const double log_base = std::log(top[k]);
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < k; ++i) {
        const double d = std::log(top[i]) - log_base;
        s1 += d;
        s2 += d * d;
    }
    return {s1 / k, s2 / k, top[k]};
}

double moment_estimator(Eigen::Ref<const Eigen::VectorXd> sample, int k) {
    // All top-k values equal makes M2 == M1^2 exactly; catch it combinatorially
    // before floating-point noise turns the pole into a huge finite gamma.
    {
        const auto top = top_descending(sample, k);
        if (top.front() == top.back())
            throw std::domain_error("moment_estimator: top k order statistics all equal");
    }
    const LogMoments m = log_moments(sample, k);
    if (m.m2 == 0.0)
        throw std::domain_error("moment_estimator: top k+1 order statistics all equal");
    const double denom = 1.0 - m.m1 * m.m1 / m.m2;
    if (denom == 0.0)
        throw std::domain_error("moment_estimator: degenerate moments (M2 == M1^2)");
    return m.m1 + 1.0 - 0.5 / denom;
}

double scale_estimator(Eigen::Ref<const Eigen::VectorXd> sample, int k, double gamma) {
    const LogMoments m = log_moments(sample, k);
    const double gamma_minus = gamma - m.m1;
    return m.base * m.m1 * (1.0 - gamma_minus);
}

MarginalFit fit_margins(const RainPanel& panel, int k, std::vector<std::string>* warnings) {
    const long n = panel.n_days();
    if (k < 1 || k >= n)
        throw std::invalid_argument("fit_margins: need 1 <= k < n_days");
    MarginalFit fit;
    fit.k = k;
    fit.stations.resize(panel.n_stations());
    double gamma_sum = 0.0;
    for (int s = 0; s < panel.n_stations(); ++s) {
        const auto col = panel.values.col(s);
        StationFit& st = fit.stations[s];
        try {
            st.shift = kth_largest(col, k);
            st.gamma = moment_estimator(col, k);
            st.scale = scale_estimator(col, k, st.gamma);
        } catch (const std::exception& e) {
            throw std::runtime_error("fit_margins: station index " + std::to_string(s) + ": " +
                                     e.what());
        }
        if (st.scale <= 0.0)
            throw std::runtime_error("fit_margins: station index " + std::to_string(s) +
                                     ": nonpositive scale estimate");
        if (warnings && std::abs(st.gamma) > 1.0)
            warnings->push_back("station index " + std::to_string(s) +
                                ": |gamma| > 1 (gamma=" + std::to_string(st.gamma) + ")");
        gamma_sum += st.gamma;
    }
    fit.gamma_pooled = gamma_sum / panel.n_stations();
    return fit;
}

std::vector<std::pair<int, double>> gamma_stability_scan(const RainPanel& panel, int k_min,
                                                         int k_max) {
    if (k_min < 2) throw std::invalid_argument("gamma_stability_scan: k_min must be >= 2");
    std::vector<std::pair<int, double>> rows;
    for (int k = k_min; k <= k_max; ++k) {
        if (k + 1 > panel.n_days()) break;
        try {
            double sum = 0.0;
            for (int s = 0; s < panel.n_stations(); ++s)
                sum += moment_estimator(panel.values.col(s), k);
            rows.emplace_back(k, sum / panel.n_stations());
        } catch (const std::exception&) {
            // fit failed for this k; row omitted
        }
    }
    return rows;
}

double return_level(const StationFit& fit, int k, long n, double p_exceed) {
    if (!(p_exceed > 0.0))
        throw std::invalid_argument("return_level: p_exceed must be positive");
    const double ratio = static_cast<double>(k) / (static_cast<double>(n) * p_exceed);
    if (ratio < 1.0)
        throw std::invalid_argument(
            "return_level: p_exceed inside the empirical range (use an empirical quantile)");
    if (std::abs(fit.gamma) < kGammaZero) return fit.shift + fit.scale * std::log(ratio);
    return fit.shift + fit.scale * std::expm1(fit.gamma * std::log(ratio)) / fit.gamma;
}

TailModel make_tail_model(Eigen::Ref<const Eigen::VectorXd> sample, int k, double gamma,
                          double scale) {
    if (scale <= 0.0) throw std::invalid_argument("make_tail_model: scale must be positive");
    TailModel m;
    m.threshold = kth_largest(sample, k);
    m.gamma = gamma;
    m.scale = scale;
    long at_or_above = 0;
    for (long i = 0; i < sample.size(); ++i) {
        if (sample[i] < m.threshold)
            m.below.push_back(sample[i]);
        else
            ++at_or_above;
    }
    std::sort(m.below.begin(), m.below.end());
    m.tail_mass = static_cast<double>(at_or_above) / static_cast<double>(sample.size());
    return m;
}

double mixed_tail_cdf(const TailModel& model, double x) {
    if (x < model.threshold) {
        if (model.below.empty()) return 0.0;
        const auto it = std::upper_bound(model.below.begin(), model.below.end(), x);
        const double ecdf = static_cast<double>(it - model.below.begin()) /
                            static_cast<double>(model.below.size());
        return (1.0 - model.tail_mass) * ecdf;
    }
    const double z = (x - model.threshold) / model.scale;
    double survival;
    if (std::abs(model.gamma) < kGammaZero) {
        survival = std::exp(-z);
    } else {
        const double arg = 1.0 + model.gamma * z;
        if (arg <= 0.0) return 1.0;  // beyond the finite endpoint (gamma < 0)
        survival = std::pow(arg, -1.0 / model.gamma);
    }
    return 1.0 - model.tail_mass * survival;
}

}  // namespace rainfield
