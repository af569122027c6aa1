#include "rainfield/validate.hpp"

#include "rainfield/day.hpp"
#include "rainfield/delaunay.hpp"
#include "rainfield/dependence.hpp"
#include "rainfield/field.hpp"
#include "rainfield/margins.hpp"
#include "rainfield/mesh.hpp"
#include "rainfield/normal.hpp"
#include "rainfield/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <sstream>

namespace rainfield {

double ks_statistic(std::vector<double> sample, double (*cdf)(double)) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, f - static_cast<double>(i) / n);
        d = std::max(d, static_cast<double>(i + 1) / n - f);
    }
    return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double anderson_darling(std::vector<double> u) {
    std::sort(u.begin(), u.end());
    const long n = static_cast<long>(u.size());
    double s = 0.0;
    for (long i = 0; i < n; ++i) {
        const double ui = std::min(std::max(u[i], 1e-300), 1.0 - 1e-16);
        const double uj = std::min(std::max(u[n - 1 - i], 1e-300), 1.0 - 1e-16);
        s += (2.0 * i + 1.0) * (std::log(ui) + std::log1p(-uj));
    }
    return -static_cast<double>(n) - s / static_cast<double>(n);
}

namespace {

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

double frechet_cdf(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

// joint exceedance probability of eta <= 1 at two points, by simulation
double joint_below_one(const PointMatrix& pts, double beta, int m_terms, long n_draws,
                       std::uint64_t seed, int threads) {
    FieldParams fp;
    fp.beta = beta;
    fp.m_terms = m_terms;
    const FieldSimulator sim(pts, fp);
    std::atomic<long> hits{0};
    parallel_for_index(n_draws, threads, [&](long i) {
        const FieldSample s = sim.sample(seed, static_cast<std::uint64_t>(i));
        if (s.eta[0] <= 1.0 && s.eta[1] <= 1.0) hits.fetch_add(1, std::memory_order_relaxed);
    });
    return static_cast<double>(hits.load()) / static_cast<double>(n_draws);
}

CheckResult bivariate_at(const char* name, const Vec2& tau, std::uint64_t seed, int threads) {
    const double combos[3][2] = {{0.05, 5.0}, {0.05, 50.0}, {1.0, 1.0}};
    const long n = 200000;
    bool all_pass = true;
    std::ostringstream detail;
    for (int c = 0; c < 3; ++c) {
        const double beta = combos[c][0], h = combos[c][1];
        PointMatrix pts(2, 2);
        pts.row(0) = (Vec2(0.0, 0.0) + tau).transpose();
        pts.row(1) = (Vec2(h / 2.0, h / 2.0) + tau).transpose();
        const double p_emp = joint_below_one(pts, beta, 100, n, seed + c, threads);
        const double p_theory = std::exp(-2.0 * std_normal_cdf(std::sqrt(beta * h) / 2.0));
        const double sigma = std::sqrt(p_theory * (1.0 - p_theory) / static_cast<double>(n));
        const bool ok = std::abs(p_emp - p_theory) <= 3.0 * sigma;
        all_pass = all_pass && ok;
        detail << fmt("(beta=%g,h=%g: emp=%.5f th=%.5f, %+.2f sigma)", beta, h, p_emp, p_theory,
                      (p_emp - p_theory) / sigma);
    }
    return {name, all_pass, detail.str()};
}

}  // namespace

CheckResult check_origin_frechet(std::uint64_t seed, int threads) {
    const long n = 100000;
    PointMatrix pts(1, 2);
    pts.setZero();
    FieldParams fp;
    fp.m_terms = 1;
    const FieldSimulator sim(pts, fp);
    std::vector<double> draws(n);
    parallel_for_index(n, threads, [&](long i) {
        draws[i] = sim.sample(seed, static_cast<std::uint64_t>(i)).eta[0];
    });
    const double d = ks_statistic(std::move(draws), &frechet_cdf);
    return {"origin Frechet margin (m=1)", d < 0.006, fmt("KS=%.5f (limit 0.006)", d)};
}

CheckResult check_bivariate_law(std::uint64_t seed, int threads) {
    return bivariate_at("bivariate law at (u,v)", Vec2(0.0, 0.0), seed, threads);
}

CheckResult check_stationarity(std::uint64_t seed, int threads) {
    return bivariate_at("bivariate law at translated pair", Vec2(13.7, -8.2), seed + 17,
                        threads);
}

CheckResult check_truncation_adequacy(const StationCatalog& catalog, std::uint64_t seed,
                                      int threads) {
    const long n = 50000;
    auto max_draws = [&](int m_terms, std::uint64_t s) {
        FieldParams fp;
        fp.beta = 0.05;
        fp.m_terms = m_terms;
        const FieldSimulator sim(catalog.positions, fp);
        std::vector<double> out(n);
        parallel_for_index(n, threads, [&](long i) {
            out[i] = sim.sample(s, static_cast<std::uint64_t>(i)).eta.maxCoeff();
        });
        return out;
    };
    const double d = ks_two_sample(max_draws(4, seed), max_draws(50, seed + 1));
    return {"truncation adequacy (m=4 vs m=50 station max)", d < 0.02,
            fmt("two-sample KS=%.5f over %ld+%ld draws (limit 0.02)", d, n, n)};
}

CheckResult check_beta_round_trip(std::uint64_t seed) {
    RandomStream rs(stream_key(seed, 0, 0, StreamKind::Generic));
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double beta = 0.005 + 1.995 * rs.next_uniform();
        const double h = 0.5 + 99.5 * rs.next_uniform();
        const double l11 = 2.0 * std_normal_cdf(std::sqrt(beta * h) / 2.0);
        const auto back = pair_beta(l11, h);
        worst = std::max(worst, std::abs(*back - beta));
    }
    return {"beta inversion round trip", worst < 1e-6, fmt("max |error|=%.3g (limit 1e-6)", worst)};
}

CheckResult check_estimator_recovery(const StationCatalog& catalog, std::uint64_t seed,
                                     int threads) {
    (void)threads;
    const double gamma_true = 0.1, beta_true = 0.05;
    const long n_days = 2730;
    const int k = 125;
    SynthParams sp;
    sp.beta = beta_true;
    sp.gamma = gamma_true;
    sp.scale = Eigen::VectorXd::Constant(catalog.size(), 6.0);
    sp.shift = Eigen::VectorXd::Constant(catalog.size(), 12.0);
    int gamma_pass = 0, beta_pass = 0;
    std::ostringstream detail;
    for (int trial = 0; trial < 5; ++trial) {
        const RainPanel panel = synth_generate(catalog, sp, n_days, seed + 1000 + trial);
        const MarginalFit mf = fit_margins(panel, k);
        const DependenceFit df = fit_dependence(panel, catalog, k);
        if (std::abs(mf.gamma_pooled - gamma_true) <= 0.1) ++gamma_pass;
        if (df.beta_hat >= 0.7 * beta_true && df.beta_hat <= 1.3 * beta_true) ++beta_pass;
        detail << fmt("(gamma=%.4f beta=%.5f)", mf.gamma_pooled, df.beta_hat);
    }
    return {"estimator recovery on synthetic truth",
            gamma_pass >= 4 && beta_pass >= 4,
            fmt("gamma %d/5 within 0.1+-, beta %d/5 within 30%%: ", gamma_pass, beta_pass) +
                detail.str()};
}

CheckResult check_conditional_tail(std::uint64_t seed, int threads) {
    // five-station diamond around the anchor; the center margin is exact
    StationCatalog cat;
    cat.ids = {"c0", "e1", "e2", "e3", "e4"};
    cat.positions.resize(5, 2);
    cat.positions << 0.0, 0.0, 1.5, 0.0, -1.5, 0.0, 0.0, 1.5, 0.0, -1.5;
    cat.origin = 0;

    // iid lognormal-ish panel; only classification frequency matters
    const long n_days = 1000;
    const int k = 200;
    RainPanel panel;
    panel.dates = fall_season_dates(n_days);
    panel.values.resize(n_days, cat.size());
    RandomStream gen(stream_key(seed, 0, 0, StreamKind::Generic));
    for (long d = 0; d < n_days; ++d)
        for (int s = 0; s < cat.size(); ++s)
            panel.values(d, s) = std::exp(1.2 * gen.next_gaussian() + 1.0);
    const MarginalFit fit = fit_margins(panel, k);

    const TriMesh mesh = build_mesh(cat, delaunay_triangles(cat), 2);
    FieldParams fp;  // defaults: beta 0.05, m_terms 4
    const FieldSimulator field(mesh.vertex_pos, fp);
    const int center_vertex = mesh.station_vertex[0];

    const long target = 10000;
    const long n_sim = 70000;
    std::vector<double> values(n_sim, -1.0);
    parallel_for_index(n_sim, threads, [&](long g) {
        const DayField day =
            simulate_day(panel, fit, mesh, field, seed + 31, static_cast<std::uint64_t>(g));
        if (day.station_extreme[0]) values[g] = day.vertex_values[center_vertex];
    });

    std::vector<double> u;
    const StationFit& st = fit.stations[0];
    for (long g = 0; g < n_sim && static_cast<long>(u.size()) < target; ++g) {
        if (values[g] < 0.0) continue;
        const double z = (values[g] - st.shift) / st.scale;
        double cdf;
        if (std::abs(fit.gamma_pooled) < 1e-8) {
            cdf = -std::expm1(-z);
        } else {
            const double arg = 1.0 + fit.gamma_pooled * z;
            cdf = arg > 0.0 ? -std::expm1(-std::log(arg) / fit.gamma_pooled) : 1.0;
        }
        u.push_back(cdf);
    }
    if (static_cast<long>(u.size()) < target)
        return {"conditional GPD tail law", false,
                fmt("only %zu conditional draws collected", u.size())};
    const double a2 = anderson_darling(std::move(u));
    return {"conditional GPD tail law", a2 < 3.857,
            fmt("Anderson-Darling A2=%.3f over %ld draws (1%% level 3.857)", a2, target)};
}

std::vector<CheckResult> run_validation_suite(const StationCatalog& catalog, std::uint64_t seed,
                                              int threads) {
    std::vector<CheckResult> out;
    out.push_back(check_origin_frechet(seed, threads));
    out.push_back(check_bivariate_law(seed, threads));
    out.push_back(check_stationarity(seed, threads));
    out.push_back(check_truncation_adequacy(catalog, seed, threads));
    out.push_back(check_beta_round_trip(seed));
    out.push_back(check_estimator_recovery(catalog, seed, threads));
    out.push_back(check_conditional_tail(seed, threads));
    return out;
}

}  // namespace rainfield
