#pragma once

#include <cstdint>

namespace zetadist {

struct BesselEval {
    double t;
    double i0;
    double log_i0;
    double dlog_i0;  // I1(t) / I0(t)
};

/// Modified Bessel function of order zero, with log and logarithmic
/// derivative. Power series for t <= 20, scaled ratio recurrence above.
/// DomainError for t < 0, OverflowError for t > 700.
BesselEval bessel_i0(double t);

/// log I0(t) for any t >= 0. Identical to bessel_i0(t).log_i0 on
/// [0, 700]; beyond that the asymptotic expansion
/// t - log(2 pi t)/2 + 1/(8t) + 1/(16t^2) + 25/(384t^3) + 13/(128t^4) + 1073/(5120t^5).
double log_i0(double t);

/// Point where log_i0 switches to the asymptotic expansion.
inline constexpr double kLogI0AsymptoticSwitch = 700.0;

struct DivisorValue {
    double z;
    int nu;
    double value;  // prod_{j<nu} (z+j)/(j+1)
};

/// Coefficient of X^nu in (1 - X)^{-z}. DomainError for nu < 0 or z < 0.
DivisorValue divisor_dz(double z, int nu);

/// Maximum nu retained in local_factor_sum.
inline constexpr int kLocalFactorMaxNu = 400;

/// sum_{nu >= 0} d_{k/2}(p^nu)^2 p^{-2 nu sigma}, truncated once terms are
/// decreasing and the next term is below rel_tol times the running sum.
double local_factor_sum(std::uint64_t p, double k, double sigma, double rel_tol);

/// Natural log of local_factor_sum. NumericError if the series has not
/// converged by nu = kLocalFactorMaxNu.
double local_factor_log_sum(std::uint64_t p, double k, double sigma, double rel_tol);

/// int_0^1 (1 - 2 cos(2 pi theta) p^-sigma + p^-2sigma)^{-k/2} dtheta by
/// adaptive Gauss-Kronrod bisection to abs_tol.
double local_factor_integral(std::uint64_t p, double k, double sigma, double abs_tol);

}  // namespace zetadist
