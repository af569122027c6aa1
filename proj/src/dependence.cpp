#include "rainfield/dependence.hpp"

#include "rainfield/normal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rainfield {

double bivariate_cdf_eq7(double x, double y, double h, double beta) {
    if (h < 0.0) throw std::invalid_argument("bivariate_cdf_eq7: h must be >= 0");
    if (!(beta > 0.0)) throw std::invalid_argument("bivariate_cdf_eq7: beta must be > 0");
    if (h == 0.0) return std::exp(-std::exp(-std::min(x, y)));
    const double s = std::sqrt(beta * h);
    const double a = std_normal_cdf(0.5 * s + (y - x) / s);
    const double b = std_normal_cdf(0.5 * s + (x - y) / s);
    return std::exp(-(std::exp(-x) * a + std::exp(-y) * b));
}

namespace {

// Indices of the k largest entries, ties broken by original index
// (stable descending order). With heavy ties this keeps the exceedance
// count at exactly k per margin.
std::vector<char> top_k_mask(Eigen::Ref<const Eigen::VectorXd> v, int k) {
    const long n = v.size();
    std::vector<long> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](long a, long b) { return v[a] > v[b]; });
    std::vector<char> mask(n, 0);
    for (int i = 0; i < k; ++i) mask[idx[i]] = 1;
    return mask;
}

}  // namespace

double l_estimator(Eigen::Ref<const Eigen::VectorXd> x, Eigen::Ref<const Eigen::VectorXd> y,
                   int k) {
    const long n = x.size();
    if (y.size() != n) throw std::invalid_argument("l_estimator: series lengths differ");
    if (k < 1 || k >= n)
        throw std::invalid_argument("l_estimator: need 1 <= k < n, got k=" + std::to_string(k));
    const auto mx = top_k_mask(x, k);
    const auto my = top_k_mask(y, k);
    long count = 0;
    for (long j = 0; j < n; ++j)
        if (mx[j] || my[j]) ++count;
    return static_cast<double>(count) / static_cast<double>(k);
}

std::optional<double> pair_beta(double l11, double h) {
    if (l11 < 1.0 || l11 > 2.0)
        throw std::invalid_argument("pair_beta: l11 must lie in [1,2], got " +
                                    std::to_string(l11));
    if (h == 0.0 || l11 == 2.0) return std::nullopt;
    if (h < 0.0) throw std::invalid_argument("pair_beta: h must be >= 0");
    const double z = std_normal_inv(l11 / 2.0);
    return (4.0 / h) * z * z;
}

DependenceFit fit_dependence(const RainPanel& panel, const StationCatalog& catalog, int k) {
    const int n_st = catalog.size();
    if (n_st < 2) throw std::invalid_argument("fit_dependence: need at least 2 stations");
    if (panel.n_stations() != n_st)
        throw std::invalid_argument("fit_dependence: panel/catalog station count mismatch");

    const long n = panel.n_days();
    if (k < 1 || k >= n) throw std::invalid_argument("fit_dependence: need 1 <= k < n_days");
    std::vector<std::vector<char>> masks(n_st);
    for (int s = 0; s < n_st; ++s) masks[s] = top_k_mask(panel.values.col(s), k);

    DependenceFit fit;
    std::vector<double> included;
    for (int p = 0; p < n_st; ++p) {
        for (int q = p + 1; q < n_st; ++q) {
            PairEstimate pe;
            pe.p = p;
            pe.q = q;
            pe.k = k;
            pe.h = (catalog.position(p) - catalog.position(q)).lpNorm<1>();
            long count = 0;
            for (long j = 0; j < n; ++j)
                if (masks[p][j] || masks[q][j]) ++count;
            pe.l11 = static_cast<double>(count) / static_cast<double>(k);
            pe.beta = pair_beta(pe.l11, pe.h);
            if (pe.beta)
                included.push_back(*pe.beta);
            else
                ++fit.n_excluded;
            fit.pairs.push_back(pe);
        }
    }
    if (included.empty()) throw std::runtime_error("fit_dependence: all pairs excluded");
    fit.beta_hat = std::accumulate(included.begin(), included.end(), 0.0) /
                   static_cast<double>(included.size());
    fit.beta_q25 = quantile_linear(included, 0.25);
    fit.beta_q75 = quantile_linear(included, 0.75);
    return fit;
}

double quantile_linear(std::vector<double> values, double p) {
    if (values.empty()) throw std::invalid_argument("quantile_linear: empty sample");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("quantile_linear: p outside [0,1]");
    std::sort(values.begin(), values.end());
    const double pos = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= values.size()) return values.back();
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

}  // namespace rainfield
