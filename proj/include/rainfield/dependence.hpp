#pragma once

#include "rainfield/types.hpp"

#include <optional>
#include <vector>

namespace rainfield {

/// One station pair: Manhattan distance h, stable-tail-dependence estimate
/// L(1,1) and the implied beta. `beta` is empty for excluded pairs
/// (h = 0 or L = 2, where the inversion is unbounded).
struct PairEstimate {
    int p = 0;
    int q = 0;  // p < q
    double h = 0.0;
    double l11 = 0.0;
    std::optional<double> beta;
    int k = 0;
};

struct DependenceFit {
    std::vector<PairEstimate> pairs;  // all N(N-1)/2, (p,q) lexicographic
    double beta_hat = 0.0;            // mean over included pairs
    double beta_q25 = 0.0;
    double beta_q75 = 0.0;
    int n_excluded = 0;
};

/// Bivariate law of the field at log-levels (x, y) and Manhattan distance h:
/// exp{-(e^-x Phi(sqrt(bh)/2 + (y-x)/sqrt(bh)) + e^-y Phi(sqrt(bh)/2 + (x-y)/sqrt(bh)))}.
/// h = 0 degenerates to the complete-dependence limit exp{-e^-min(x,y)}.
double bivariate_cdf_eq7(double x, double y, double h, double beta);

/// (1/k) #{j : rank_x(j) <= k or rank_y(j) <= k}, ranks by descending value
/// with stable index order (the margins tie rule). Always in [1, 2].
double l_estimator(Eigen::Ref<const Eigen::VectorXd> x, Eigen::Ref<const Eigen::VectorXd> y,
                   int k);

/// beta_pq = (4/h) (PhiInv(l11/2))^2; empty for h = 0 or l11 = 2.
std::optional<double> pair_beta(double l11, double h);

/// All-pairs dependence fit with a common k; the average and the quartiles
/// use included pairs only, with the divisor adjusted.
DependenceFit fit_dependence(const RainPanel& panel, const StationCatalog& catalog, int k);

/// Empirical quantile with linear interpolation between order statistics
/// (position (n-1)p). `values` need not be sorted.
double quantile_linear(std::vector<double> values, double p);

}  // namespace rainfield
