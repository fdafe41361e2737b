#include "zetadist/special_fns.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "quadrature.hpp"
#include "zetadist/error.hpp"
#include "zetadist/primes.hpp"
#include "zetadist/summation.hpp"

namespace zetadist {

namespace {

constexpr double kSeriesSwitch = 20.0;
constexpr double kOverflowLimit = 700.0;
constexpr double kSeriesTol = 1e-17;

BesselEval bessel_series(double t) {
    const double half = 0.5 * t;
    const double x = half * half;
    CompensatedSum tail0;  // I0 - 1
    CompensatedSum sum1;   // I1 / (t/2)
    sum1.add(1.0);
    double term0 = 1.0;
    double term1 = 1.0;
    for (int n = 1; n < 200; ++n) {
        term0 *= x / (static_cast<double>(n) * n);
        term1 *= x / (static_cast<double>(n) * (n + 1));
        tail0.add(term0);
        sum1.add(term1);
        if (term0 < kSeriesTol * (1.0 + tail0.value()) && term1 < kSeriesTol * sum1.value()) break;
    }
    const double i0m1 = tail0.value();
    const double i0 = 1.0 + i0m1;
    return {t, i0, std::log1p(i0m1), half * sum1.value() / i0};
}

// Ratios r_n = I_n / I_{n-1} from a backward recurrence started far above
// the turning point, normalised through e^t = I0 + 2 sum_{n>=1} I_n.
BesselEval bessel_ratio_recurrence(double t) {
    const auto top = static_cast<std::size_t>(std::ceil(t) + 20.0 * std::ceil(std::sqrt(t)) + 40.0);
    std::vector<double> ratio(top + 2, 0.0);
    for (std::size_t n = top; n >= 1; --n) {
        ratio[n] = 1.0 / (2.0 * static_cast<double>(n) / t + ratio[n + 1]);
    }
    CompensatedSum s(1.0);
    double prod = 1.0;
    for (std::size_t n = 1; n <= top; ++n) {
        prod *= ratio[n];
        s.add(2.0 * prod);
        if (prod < 1e-18) break;
    }
    const double log_i0 = t - std::log(s.value());
    const double i0 = t <= kOverflowLimit ? std::exp(log_i0) : HUGE_VAL;
    return {t, i0, log_i0, ratio[1]};
}

double log_i0_asymptotic(double t) {
    const double w = 1.0 / t;
    const double corr = w * (1.0 / 8 + w * (1.0 / 16 + w * (25.0 / 384 + w * (13.0 / 128 + w * (1073.0 / 5120)))));
    return t - 0.5 * std::log(2.0 * std::numbers::pi * t) + corr;
}

void require_local_factor_args(std::uint64_t p, double k, double sigma, const char* where) {
    if (!is_prime(p)) throw DomainError(std::string(where) + ": p = " + std::to_string(p) + " is not prime");
    if (!(k >= 0)) throw DomainError(std::string(where) + ": k must be >= 0");
    if (!(sigma > 0.5 && sigma < 1.0)) throw DomainError(std::string(where) + ": sigma must lie in (1/2, 1)");
}

}  // namespace

BesselEval bessel_i0(double t) {
    if (!(t >= 0)) throw DomainError("bessel_i0: t must be >= 0");
    if (t > kOverflowLimit) throw OverflowError("bessel_i0: t > 700 overflows I0");
    if (t == 0) return {0.0, 1.0, 0.0, 0.0};
    return t <= kSeriesSwitch ? bessel_series(t) : bessel_ratio_recurrence(t);
}

double log_i0(double t) {
    if (!(t >= 0)) throw DomainError("log_i0: t must be >= 0");
    if (t <= kLogI0AsymptoticSwitch) return bessel_i0(t).log_i0;
    return log_i0_asymptotic(t);
}

DivisorValue divisor_dz(double z, int nu) {
    if (nu < 0) throw DomainError("divisor_dz: nu must be >= 0");
    if (!(z >= 0)) throw DomainError("divisor_dz: z must be >= 0");
    double value = 1.0;
    for (int j = 0; j < nu; ++j) value *= (z + j) / (j + 1);
    return {z, nu, value};
}

double local_factor_log_sum(std::uint64_t p, double k, double sigma, double rel_tol) {
    require_local_factor_args(p, k, sigma, "local_factor_sum");
    if (k == 0) return 0.0;
    const double z = 0.5 * k;
    const double x2 = std::pow(static_cast<double>(p), -2.0 * sigma);
    CompensatedSum sum(1.0);
    double term = 1.0;
    for (int nu = 1; nu <= kLocalFactorMaxNu; ++nu) {
        const double d = (z + nu - 1) / nu;
        const double ratio = d * d * x2;
        term *= ratio;
        sum.add(term);
        if (!std::isfinite(term)) break;
        if (ratio < 1.0 && term < rel_tol * sum.value()) return std::log(sum.value());
    }
    throw NumericError("local_factor_sum: series for p = " + std::to_string(p) + ", k = " + std::to_string(k) +
                       " not converged by nu = " + std::to_string(kLocalFactorMaxNu));
}

double local_factor_sum(std::uint64_t p, double k, double sigma, double rel_tol) {
    return std::exp(local_factor_log_sum(p, k, sigma, rel_tol));
}

double local_factor_integral(std::uint64_t p, double k, double sigma, double abs_tol) {
    require_local_factor_args(p, k, sigma, "local_factor_integral");
    if (k == 0) return 1.0;
    const double x = std::pow(static_cast<double>(p), -sigma);
    const double one_minus = (1.0 - x) * (1.0 - x);
    const double half_k = 0.5 * k;
    // |1 - x e(theta)|^2 = (1 - x)^2 + 4 x sin^2(pi theta); symmetric about 1/2.
    auto integrand = [=](double theta) {
        const double s = std::sin(std::numbers::pi * theta);
        return std::exp(-half_k * std::log(one_minus + 4.0 * x * s * s));
    };
    const auto half = detail::integrate_adaptive(integrand, 0.0, 0.5, 0.5 * abs_tol, "local_factor_integral");
    return 2.0 * half.value;
}

}  // namespace zetadist
