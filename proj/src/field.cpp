#include "rainfield/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rainfield {

namespace {

constexpr double kExponentClamp = 700.0;  // exp(700) ~ 1e304, far above any field value
constexpr double kGammaZero = 1e-8;

}  // namespace

EvalPoints make_eval_points(const PointMatrix& points_km, double rotation_deg) {
    EvalPoints ep;
    const long n = points_km.rows();
    if (n < 1) throw std::invalid_argument("make_eval_points: empty point set");

    const double deg = std::fmod(rotation_deg, 360.0);
    const double rad = deg * M_PI / 180.0;
    const double c = std::cos(rad), s = std::sin(rad);
    ep.rel.resize(n, 2);
    for (long i = 0; i < n; ++i) {
        const double x = points_km(i, 0), y = points_km(i, 1);
        ep.rel(i, 0) = c * x - s * y;
        ep.rel(i, 1) = s * x + c * y;
    }
    // anchor at the per-axis midrange
    for (int ax = 0; ax < 2; ++ax) {
        const double mid = 0.5 * (ep.rel.col(ax).minCoeff() + ep.rel.col(ax).maxCoeff());
        ep.rel.col(ax).array() -= mid;
    }

    auto build_axis = [n](const Eigen::VectorXd& coords, std::vector<double>& uniq,
                          std::vector<int>& index) {
        uniq.assign(coords.data(), coords.data() + n);
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        index.resize(n);
        for (long i = 0; i < n; ++i) {
            const auto it = std::lower_bound(uniq.begin(), uniq.end(), coords[i]);
            index[i] = static_cast<int>(it - uniq.begin());
        }
    };
    build_axis(ep.rel.col(0), ep.xs, ep.x_index);
    build_axis(ep.rel.col(1), ep.ys, ep.y_index);
    return ep;
}

Eigen::VectorXd double_sided_bm(const std::vector<double>& coords, RandomStream& pos_side,
                                RandomStream& neg_side) {
    const long n = static_cast<long>(coords.size());
    Eigen::VectorXd w(n);
    // positive half-line: ascending from 0
    {
        double level = 0.0, prev = 0.0;
        for (long i = 0; i < n; ++i) {
            if (coords[i] <= 0.0) continue;
            level += pos_side.next_gaussian() * std::sqrt(coords[i] - prev);
            prev = coords[i];
            w[i] = level;
        }
    }
    // negative half-line: independent path at |s|, descending from 0
    {
        double level = 0.0, prev = 0.0;
        for (long i = n - 1; i >= 0; --i) {
            if (coords[i] >= 0.0) continue;
            level += neg_side.next_gaussian() * std::sqrt(prev - coords[i]);
            prev = coords[i];
            w[i] = level;
        }
    }
    for (long i = 0; i < n; ++i)
        if (coords[i] == 0.0) w[i] = 0.0;
    return w;
}

double spectral_value(const Vec2& s, double w1, double w2, double beta) {
    return std::exp(w1 + w2 - beta * (std::abs(s.x()) + std::abs(s.y())) / 2.0);
}

FieldSimulator::FieldSimulator(const PointMatrix& points_km, const FieldParams& params)
    : params_(params), points_(make_eval_points(points_km, params.rotation_deg)) {
    if (!(params.beta > 0.0)) throw std::invalid_argument("FieldSimulator: beta must be > 0");
    if (params.m_terms < 1) throw std::invalid_argument("FieldSimulator: m_terms must be >= 1");
    bx_.resize(points_.xs.size());
    by_.resize(points_.ys.size());
    for (std::size_t i = 0; i < points_.xs.size(); ++i) bx_[i] = params.beta * points_.xs[i];
    for (std::size_t i = 0; i < points_.ys.size(); ++i) by_[i] = params.beta * points_.ys[i];
    drift_ = params.beta *
             (points_.rel.col(0).array().abs() + points_.rel.col(1).array().abs()) / 2.0;
}

FieldSample FieldSimulator::sample(std::uint64_t seed, std::uint64_t index) const {
    FieldSample out;
    out.seed = seed;
    out.index = index;
    out.m_terms = params_.m_terms;
    out.eta = Eigen::VectorXd::Zero(points_.size());

    double gamma_i = 0.0;  // cumulative exponential sum
    for (int term = 0; term < params_.m_terms; ++term) {
        RandomStream ex(stream_key(seed, index, term, StreamKind::Exponential));
        gamma_i += ex.next_exponential();

        RandomStream wx_pos(stream_key(seed, index, term, StreamKind::BrownianXPos));
        RandomStream wx_neg(stream_key(seed, index, term, StreamKind::BrownianXNeg));
        RandomStream wy_pos(stream_key(seed, index, term, StreamKind::BrownianYPos));
        RandomStream wy_neg(stream_key(seed, index, term, StreamKind::BrownianYNeg));
        const Eigen::VectorXd w1 = double_sided_bm(bx_, wx_pos, wx_neg);
        const Eigen::VectorXd w2 = double_sided_bm(by_, wy_pos, wy_neg);

        for (long p = 0; p < points_.size(); ++p) {
            double expo = w1[points_.x_index[p]] + w2[points_.y_index[p]] - drift_[p];
            if (expo > kExponentClamp) {
                expo = kExponentClamp;
                ++out.clamp_events;
            }
            const double v = std::exp(expo) / gamma_i;
            if (v > out.eta[p]) out.eta[p] = v;
        }
    }
    return out;
}

FieldSample simulate_eta(const FieldSimulator& sim, std::uint64_t seed, std::uint64_t index) {
    return sim.sample(seed, index);
}

double to_gpd_margin(double eta) {
    if (!(eta > 0.0)) throw std::invalid_argument("to_gpd_margin: eta must be positive");
    // 1/(1 - exp(-1/eta)) via expm1 to stay accurate for large eta
    return -1.0 / std::expm1(-1.0 / eta);
}

Eigen::VectorXd to_gpd_margins(const Eigen::VectorXd& eta) {
    Eigen::VectorXd xi(eta.size());
    for (long i = 0; i < eta.size(); ++i) xi[i] = to_gpd_margin(eta[i]);
    return xi;
}

double to_local_margin(double xi, double gamma, double scale, double shift) {
    if (xi < 1.0) throw std::invalid_argument("to_local_margin: xi must be >= 1");
    const double lx = std::log(xi);
    if (std::abs(gamma) < kGammaZero) return scale * lx + shift;
    return scale * std::expm1(gamma * lx) / gamma + shift;
}

}  // namespace rainfield
