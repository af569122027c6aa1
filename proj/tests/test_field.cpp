#include "rainfield/field.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace rainfield;

namespace {

PointMatrix points_from(std::initializer_list<std::pair<double, double>> pts) {
    PointMatrix m(static_cast<long>(pts.size()), 2);
    long i = 0;
    for (const auto& [x, y] : pts) {
        m(i, 0) = x;
        m(i, 1) = y;
        ++i;
    }
    return m;
}

}  // namespace

TEST_CASE("eval points: rotation, anchoring and exact index maps") {
    SUBCASE("index maps reconstruct every point exactly") {
        const auto ep = make_eval_points(points_from({{1, 2}, {3, 2}, {1, 5}, {3, 5}, {1, 2}}), 0);
        for (long p = 0; p < ep.size(); ++p) {
            CHECK(ep.rel(p, 0) == ep.xs[ep.x_index[p]]);
            CHECK(ep.rel(p, 1) == ep.ys[ep.y_index[p]]);
        }
        CHECK(ep.xs.size() == 2);
        CHECK(ep.ys.size() == 2);
    }
    SUBCASE("midrange anchoring centers each axis") {
        const auto ep = make_eval_points(points_from({{0, 0}, {10, 4}}), 0);
        CHECK(ep.rel(0, 0) == -5.0);
        CHECK(ep.rel(1, 0) == 5.0);
        CHECK(ep.rel(0, 1) == -2.0);
        CHECK(ep.rel(1, 1) == 2.0);
    }
    SUBCASE("rotation by 90 degrees maps (x,y) to (-y,x)") {
        const auto ep = make_eval_points(points_from({{2, 0}, {-2, 0}}), 90.0);
        CHECK(ep.rel(0, 1) == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(ep.rel(1, 1) == doctest::Approx(-2.0).epsilon(1e-14));
    }
}

TEST_CASE("double-sided Brownian motion") {
    SUBCASE("coords {0} gives exactly 0") {
        RandomStream a(stream_key(1, 0, 0, StreamKind::BrownianXPos));
        RandomStream b(stream_key(1, 0, 0, StreamKind::BrownianXNeg));
        const auto w = double_sided_bm({0.0}, a, b);
        CHECK(w[0] == 0.0);
    }
    SUBCASE("Var[W(4)] is 4 within 3 sigma of the moment estimator") {
        const long n = 100000;
        double sum = 0.0, sum2 = 0.0;
        for (long i = 0; i < n; ++i) {
            RandomStream a(stream_key(2, i, 0, StreamKind::BrownianXPos));
            RandomStream b(stream_key(2, i, 0, StreamKind::BrownianXNeg));
            const auto w = double_sided_bm({-1.0, 0.0, 4.0}, a, b);
            sum += w[2];
            sum2 += w[2] * w[2];
        }
        const double var = sum2 / n - (sum / n) * (sum / n);
        // variance of the sample variance of N(0,4): 2*16/n
        CHECK(std::abs(var - 4.0) < 3.0 * std::sqrt(2.0 * 16.0 / n));
    }
    SUBCASE("the two sides are independent: Cov[W(-1), W(1)] near 0") {
        const long n = 100000;
        double sxy = 0.0, sx = 0.0, sy = 0.0;
        for (long i = 0; i < n; ++i) {
            RandomStream a(stream_key(3, i, 0, StreamKind::BrownianXPos));
            RandomStream b(stream_key(3, i, 0, StreamKind::BrownianXNeg));
            const auto w = double_sided_bm({-1.0, 1.0}, a, b);
            sx += w[0];
            sy += w[1];
            sxy += w[0] * w[1];
        }
        const double cov = sxy / n - (sx / n) * (sy / n);
        CHECK(std::abs(cov) < 3.0 / std::sqrt(static_cast<double>(n)));
    }
    SUBCASE("increment variance matches coordinate gaps") {
        const long n = 50000;
        double s2 = 0.0;
        for (long i = 0; i < n; ++i) {
            RandomStream a(stream_key(4, i, 0, StreamKind::BrownianYPos));
            RandomStream b(stream_key(4, i, 0, StreamKind::BrownianYNeg));
            const auto w = double_sided_bm({0.5, 2.0}, a, b);
            const double inc = w[1] - w[0];
            s2 += inc * inc;
        }
        CHECK(s2 / n == doctest::Approx(1.5).epsilon(0.05));
    }
}

TEST_CASE("spectral value") {
    SUBCASE("point (0,0) with zero path values is exactly 1") {
        CHECK(spectral_value(Vec2(0, 0), 0.0, 0.0, 0.7) == 1.0);
    }
    SUBCASE("zero paths give the pure drift term") {
        CHECK(spectral_value(Vec2(7, -3), 0.0, 0.0, 0.2) ==
              doctest::Approx(std::exp(-0.2 * 10.0 / 2.0)).epsilon(1e-15));
    }
    SUBCASE("unit expectation at (7,-3), beta=0.2, within 3 sigma") {
        const long n = 100000;
        const double beta = 0.2;
        const Vec2 s(7.0, -3.0);
        double sum = 0.0;
        for (long i = 0; i < n; ++i) {
            RandomStream xp(stream_key(5, i, 0, StreamKind::BrownianXPos));
            RandomStream xn(stream_key(5, i, 0, StreamKind::BrownianXNeg));
            RandomStream yp(stream_key(5, i, 0, StreamKind::BrownianYPos));
            RandomStream yn(stream_key(5, i, 0, StreamKind::BrownianYNeg));
            const auto w1 = double_sided_bm({beta * s.x()}, xp, xn);
            const auto w2 = double_sided_bm({beta * s.y()}, yp, yn);
            sum += spectral_value(s, w1[0], w2[0], beta);
        }
        // lognormal variance: exp(beta * (|7|+|3|)) - 1
        const double sigma = std::sqrt((std::exp(beta * 10.0) - 1.0) / n);
        CHECK(std::abs(sum / n - 1.0) < 3.0 * sigma);
    }
}

TEST_CASE("simulate_eta basics") {
    SUBCASE("all values positive, provenance recorded") {
        const FieldSimulator sim(points_from({{0, 0}, {5, 3}, {-2, 7}}), FieldParams{0.1, 4, 0.0});
        const auto s = simulate_eta(sim, 42, 7);
        CHECK(s.eta.size() == 3);
        CHECK(s.eta.minCoeff() > 0.0);
        CHECK(s.seed == 42);
        CHECK(s.index == 7);
        CHECK(s.m_terms == 4);
    }
    SUBCASE("deterministic: same key gives bit-identical samples") {
        const FieldSimulator sim(points_from({{0, 0}, {5, 3}}), FieldParams{0.05, 4, 0.0});
        const auto a = sim.sample(9, 123);
        const auto b = sim.sample(9, 123);
        CHECK(a.eta == b.eta);
        CHECK(sim.sample(9, 124).eta != a.eta);
    }
    SUBCASE("rotation by 360 degrees is bit-identical to 0") {
        const auto pts = points_from({{0, 0}, {5, 3}, {-2, 7}});
        const FieldSimulator s0(pts, FieldParams{0.05, 4, 0.0});
        const FieldSimulator s360(pts, FieldParams{0.05, 4, 360.0});
        CHECK(s0.sample(11, 5).eta == s360.sample(11, 5).eta);
    }
    SUBCASE("monotone coupling: more terms never decrease eta") {
        const auto pts = points_from({{0, 0}, {5, 3}, {-2, 7}, {4, -4}});
        const FieldSimulator s4(pts, FieldParams{0.05, 4, 0.0});
        const FieldSimulator s12(pts, FieldParams{0.05, 12, 0.0});
        for (std::uint64_t i = 0; i < 200; ++i) {
            const auto e4 = s4.sample(13, i).eta;
            const auto e12 = s12.sample(13, i).eta;
            for (long p = 0; p < e4.size(); ++p) CHECK(e12[p] >= e4[p]);
        }
    }
    SUBCASE("far points decorrelate as beta grows") {
        const auto pts = points_from({{-20, -20}, {20, 20}});
        const long n = 20000;
        auto corr_log_eta = [&](double beta) {
            const FieldSimulator sim(pts, FieldParams{beta, 20, 0.0});
            double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
            for (long i = 0; i < n; ++i) {
                const auto e = sim.sample(17, static_cast<std::uint64_t>(i)).eta;
                const double x = std::log(e[0]), y = std::log(e[1]);
                sx += x;
                sy += y;
                sxx += x * x;
                syy += y * y;
                sxy += x * y;
            }
            const double cov = sxy / n - (sx / n) * (sy / n);
            return cov /
                   std::sqrt((sxx / n - sx / n * (sx / n)) * (syy / n - sy / n * (sy / n)));
        };
        CHECK(corr_log_eta(0.005) > 0.55);
        CHECK(std::abs(corr_log_eta(5.0)) < 0.05);
    }
}

TEST_CASE("off-anchor margins are near-Frechet at m_terms = 100") {
    // truncation bias is the only residual; KS < 0.01 over 1e5 draws
    const auto pts = points_from({{0, 0}, {10, 7}});
    const FieldSimulator sim(pts, FieldParams{0.05, 100, 0.0});
    const long n = 100000;
    std::vector<double> a(n), b(n);
    for (long i = 0; i < n; ++i) {
        const auto s = sim.sample(19, static_cast<std::uint64_t>(i));
        a[i] = s.eta[0];
        b[i] = s.eta[1];
    }
    auto ks = [n](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        double d = 0.0;
        for (long i = 0; i < n; ++i) {
            const double f = std::exp(-1.0 / v[i]);
            d = std::max(d, std::max(f - static_cast<double>(i) / n,
                                     static_cast<double>(i + 1) / n - f));
        }
        return d;
    };
    CHECK(ks(std::move(a)) < 0.01);
    CHECK(ks(std::move(b)) < 0.01);
}

TEST_CASE("gpd margin transform") {
    SUBCASE("eta = 1/log 2 maps to xi = 2") {
        CHECK(to_gpd_margin(1.4426950408889634) == doctest::Approx(2.0).epsilon(1e-14));
    }
    SUBCASE("eta -> 0 gives xi -> 1 from above") {
        CHECK(to_gpd_margin(0.05) > 1.0);
        CHECK(to_gpd_margin(0.05) == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(to_gpd_margin(1e-8) >= 1.0);  // floating floor of the limit
    }
    SUBCASE("strictly increasing in eta") {
        double prev = 0.0;
        for (double eta = 0.05; eta < 50.0; eta *= 1.3) {
            const double xi = to_gpd_margin(eta);
            CHECK(xi > prev);
            CHECK(xi > 1.0);
            prev = xi;
        }
    }
    SUBCASE("composition with exact Frechet quantiles has cdf 1 - 1/x") {
        // eta = -1/log(u) at Frechet quantile level u gives xi = 1/(1-u) exactly
        for (double u : {0.1, 0.4, 0.73, 0.99}) {
            const double eta = -1.0 / std::log(u);
            CHECK(to_gpd_margin(eta) == doctest::Approx(1.0 / (1.0 - u)).epsilon(1e-12));
        }
    }
}

TEST_CASE("local margin transform") {
    SUBCASE("xi = 1 gives exactly the shift") {
        CHECK(to_local_margin(1.0, 0.1082, 5.0, 10.0) == 10.0);
        CHECK(to_local_margin(1.0, 0.0, 5.0, 10.0) == 10.0);
    }
    SUBCASE("frozen value (mpmath oracle)") {
        CHECK(to_local_margin(2.0, 0.1082, 5.0, 10.0) ==
              doctest::Approx(13.599009285505).epsilon(1e-12));
    }
    SUBCASE("gamma -> 0 continuity below 1e-6") {
        const double x0 = to_local_margin(5.0, 0.0, 3.0, 1.0);
        const double x1 = to_local_margin(5.0, 1e-9, 3.0, 1.0);
        CHECK(std::abs(x1 - x0) < 1e-6);
    }
    SUBCASE("never below the shift") {
        for (double xi : {1.0, 1.01, 2.0, 100.0, 1e9})
            for (double gamma : {-0.3, 0.0, 0.2})
                CHECK(to_local_margin(xi, gamma, 4.0, 7.5) >= 7.5);
    }
}
