#pragma once

#include "rainfield/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rainfield {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Monte Carlo invariant suite. Each check pins its own sample sizes and
// tolerances; the catalog-dependent ones run on the supplied station set.

/// 1e5 draws of eta at a single origin point with one spectral term must be
/// exactly standard Frechet: KS distance < 0.006.
CheckResult check_origin_frechet(std::uint64_t seed, int threads);

/// Empirical P(eta(u)<=1, eta(v)<=1) over 2e5 draws (100 terms) against
/// exp{-2 Phi(sqrt(beta h)/2)} within 3 binomial sigma, for
/// (beta,h) in {(0.05,5),(0.05,50),(1,1)}.
CheckResult check_bivariate_law(std::uint64_t seed, int threads);

/// The bivariate check repeated at pairs translated by (13.7,-8.2) km.
CheckResult check_stationarity(std::uint64_t seed, int threads);

/// Two-sample KS between the 4-term and 50-term distributions of the
/// station-set field maximum (beta=0.05), 5e4 draws each: statistic < 0.02.
CheckResult check_truncation_adequacy(const StationCatalog& catalog, std::uint64_t seed,
                                      int threads);

/// pair_beta(2 Phi(sqrt(beta h)/2), h) must return beta within 1e-6 for 100
/// random (beta, h).
CheckResult check_beta_round_trip(std::uint64_t seed);

/// Margins and dependence fits on five synthetic ground-truth panels
/// (beta*=0.05, gamma*=0.1, n=2730, k=125): gamma within +-0.1 and beta
/// within +-30%, at least 4 of 5 panels each.
CheckResult check_estimator_recovery(const StationCatalog& catalog, std::uint64_t seed,
                                     int threads);

/// Conditional tail law: values simulated at a station classified extreme
/// follow the GPD with (pooled gamma, local scale, local shift);
/// Anderson-Darling over 1e4 conditional draws at the 1% level.
CheckResult check_conditional_tail(std::uint64_t seed, int threads);

std::vector<CheckResult> run_validation_suite(const StationCatalog& catalog, std::uint64_t seed,
                                              int threads);

// shared test statistics
double ks_statistic(std::vector<double> sample, double (*cdf)(double));
double ks_two_sample(std::vector<double> a, std::vector<double> b);
double anderson_darling(std::vector<double> u);  // u = hypothesized CDF values

}  // namespace rainfield
