#pragma once

#include "rainfield/rng.hpp"
#include "rainfield/types.hpp"

#include <cstdint>
#include <vector>

namespace rainfield {

struct FieldParams {
    double beta = 0.05;        // spatial dependence; small = strong dependence
    int m_terms = 4;           // spectral truncation
    double rotation_deg = 0.0; // coordinate rotation applied before evaluation
};

/// Evaluation coordinates prepared for the spectral construction: rotated,
/// then shifted so the per-axis midrange sits at 0 (the process is shift
/// stationary, and anchoring at the midrange keeps the truncation error of
/// a finite-term maximum both minimal and translation invariant). Unique
/// sorted axis coordinates carry inverse maps that reconstruct every point
/// exactly.
struct EvalPoints {
    PointMatrix rel;            // anchored coordinates, one row per point
    std::vector<double> xs, ys; // sorted unique axis coordinates
    std::vector<int> x_index, y_index;

    long size() const { return rel.rows(); }
};

EvalPoints make_eval_points(const PointMatrix& points_km, double rotation_deg);

/// One realization of the max-stable field at the evaluation points.
struct FieldSample {
    Eigen::VectorXd eta;  // > 0
    std::uint64_t seed = 0;
    std::uint64_t index = 0;
    int m_terms = 0;
    long clamp_events = 0;  // spectral exponents clamped at 700 (reported, never silent)
};

/// Double-sided Brownian motion evaluated at sorted coordinates: one path
/// for the positive half-line, an independent one for the negative, W(0)=0.
Eigen::VectorXd double_sided_bm(const std::vector<double>& sorted_coords, RandomStream& pos_side,
                                RandomStream& neg_side);

/// exp{W1(beta s1) + W2(beta s2) - beta(|s1|+|s2|)/2}; expectation 1.
double spectral_value(const Vec2& s, double w1, double w2, double beta);

/// Simulates eta = max_i V_i / Gamma_i, truncated at m_terms. Every
/// realization is a pure function of (seed, index, term, axis).
class FieldSimulator {
public:
    FieldSimulator(const PointMatrix& points_km, const FieldParams& params);

    FieldSample sample(std::uint64_t seed, std::uint64_t index) const;
    long n_points() const { return points_.size(); }
    const FieldParams& params() const { return params_; }

private:
    FieldParams params_;
    EvalPoints points_;
    std::vector<double> bx_, by_;  // beta-scaled unique axis coordinates
    Eigen::VectorXd drift_;        // beta (|s1| + |s2|) / 2 per point
};

FieldSample simulate_eta(const FieldSimulator& sim, std::uint64_t seed, std::uint64_t index);

/// Eq-(5) marginal transform: xi = 1 / (1 - exp(-1/eta)), strictly
/// increasing, xi > 1.
double to_gpd_margin(double eta);
Eigen::VectorXd to_gpd_margins(const Eigen::VectorXd& eta);

/// Eq-(6) local transform: scale (xi^gamma - 1)/gamma + shift, with the
/// log limit below |gamma| = 1e-8. Always >= shift.
double to_local_margin(double xi, double gamma, double scale, double shift);

}  // namespace rainfield
