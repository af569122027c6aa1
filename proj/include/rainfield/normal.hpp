#pragma once

namespace rainfield {

/// Standard normal distribution function, absolute error well below 1e-9.
double std_normal_cdf(double x);

/// Inverse of std_normal_cdf (Wichura's rational approximation).
/// Throws std::domain_error for p outside (0,1).
double std_normal_inv(double p);

}  // namespace rainfield
