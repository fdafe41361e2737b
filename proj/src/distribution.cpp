#include "zetadist/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "zetadist/error.hpp"
#include "zetadist/format.hpp"
#include "zetadist/summation.hpp"

namespace zetadist {

EmpiricalDistribution::EmpiricalDistribution(const LogModulusSamples& samples)
    : EmpiricalDistribution(samples.values, samples.sigma, samples.y, samples.grid.T) {}

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> values, double sigma, double y, double T)
    : sorted_(std::move(values)), sigma_(sigma), y_(y), T_(T) {
    for (double v : sorted_)
        if (std::isnan(v)) throw DomainError("EmpiricalDistribution: NaN sample");
    std::sort(sorted_.begin(), sorted_.end());
}

double empirical_tail(const EmpiricalDistribution& dist, double tau) {
    const auto& s = dist.sorted();
    if (s.empty()) return 0.0;
    const auto above = s.end() - std::upper_bound(s.begin(), s.end(), tau);
    return static_cast<double>(above) / static_cast<double>(s.size());
}

double laplace_log_moment_from_tail(const EmpiricalDistribution& dist, double k) {
    if (!(k > 0)) throw DomainError("laplace_moment_from_tail: k must be positive");
    const auto& x = dist.sorted();
    if (x.empty()) throw DomainError("laplace_moment_from_tail: empty distribution");
    const std::size_t n = x.size();
    const double shift = k * x.back();
    // Phi = (n - j)/n on [x_{j-1}, x_j), with x_{-1} = -inf; integrating
    // k e^{ku} over that gap gives e^{k x_j} - e^{k x_{j-1}}.
    CompensatedSum sum;
    sum.add(std::exp(k * x[0] - shift));
    for (std::size_t j = 1; j < n; ++j) {
        const double gap = x[j] - x[j - 1];
        if (gap == 0) continue;
        const double weight = static_cast<double>(n - j) / static_cast<double>(n);
        sum.add(weight * std::exp(k * x[j] - shift) * -std::expm1(-k * gap));
    }
    // The j = 0 gap carries weight n/n = 1.
    return shift + std::log(sum.value());
}

double laplace_moment_from_tail(const EmpiricalDistribution& dist, double k) {
    return std::exp(laplace_log_moment_from_tail(dist, k));
}

double saddle_log_tau(double sigma, double lambda, const std::vector<double>& a_seq) {
    double sum = 0.0;
    for (auto it = a_seq.rbegin(); it != a_seq.rend(); ++it) sum = sum / lambda + *it;
    if (!(sum > 0)) return std::numeric_limits<double>::quiet_NaN();
    return (1.0 / sigma - 1.0) * lambda - std::log(sigma) - std::log(lambda) + std::log(sum);
}

namespace {

void check_saddle_args(double sigma, const std::vector<double>& a_seq) {
    if (!(sigma > 0.5 && sigma < 1.0)) throw DomainError("sigma must lie in (1/2, 1)");
    if (a_seq.empty() || !(a_seq[0] > 0)) throw DomainError("solve_saddle: a_0 must be positive");
}

// d/dlambda of saddle_log_tau.
double saddle_slope(double sigma, double lambda, const std::vector<double>& a_seq) {
    double sum = 0.0, dsum = 0.0;
    for (std::size_t n = 0; n < a_seq.size(); ++n) {
        const double p = std::pow(lambda, -static_cast<double>(n));
        sum += a_seq[n] * p;
        dsum -= static_cast<double>(n) * a_seq[n] * p / lambda;
    }
    if (!(sum > 0)) return std::numeric_limits<double>::quiet_NaN();
    return 1.0 / sigma - 1.0 - 1.0 / lambda + dsum / sum;
}

}  // namespace

double saddle_threshold(double sigma, const std::vector<double>& a_seq) {
    check_saddle_args(sigma, a_seq);
    constexpr double step = 1e-3;
    const auto steps = static_cast<int>(std::lround((kSaddleLambdaMax - kSaddleLambdaMin) / step));
    double threshold = kSaddleLambdaMin;
    for (int i = 0; i <= steps; ++i) {
        const double lambda = kSaddleLambdaMin + step * i;
        const double slope = saddle_slope(sigma, lambda, a_seq);
        if (!(slope > 0)) threshold = std::min(kSaddleLambdaMax, lambda + step);
    }
    return threshold;
}

SaddleSolution solve_saddle(double sigma, double tau, const std::vector<double>& a_seq) {
    check_saddle_args(sigma, a_seq);
    if (!(tau > 0)) throw DomainError("solve_saddle: tau must be positive");
    const double target = std::log(tau);
    const double lo = saddle_threshold(sigma, a_seq);
    const double hi = kSaddleLambdaMax;
    const double f_lo = saddle_log_tau(sigma, lo, a_seq) - target;
    const double f_hi = saddle_log_tau(sigma, hi, a_seq) - target;
    if (!(lo < hi) || !(f_lo < 0)) {
        std::ostringstream msg;
        msg << "saddle not unique: tau = " << tau << " is below the monotone threshold tau(k = e^" << lo << ")";
        throw DomainError(msg.str());
    }
    if (!(f_hi >= 0)) throw DomainError("solve_saddle: tau beyond the bracket log k <= 200");

    auto f = [&](double lambda) { return saddle_log_tau(sigma, lambda, a_seq) - target; };
    std::uintmax_t max_iter = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi,
                                                          boost::math::tools::eps_tolerance<double>(), max_iter);
    const double lambda = std::fabs(f(a)) <= std::fabs(f(b)) ? a : b;
    SaddleSolution sol{sigma, tau, std::exp(lambda), lambda, static_cast<int>(a_seq.size()) - 1, a_seq, 0.0};
    sol.residual = std::fabs(std::expm1(f(lambda)));
    if (!(sol.residual <= 1e-13)) throw NumericError("solve_saddle: residual above 1e-13");
    return sol;
}

double tail_prediction(double sigma, double tau, const std::vector<CoeffPolynomial>& frak_a, int N) {
    if (!(sigma > 0.5 && sigma < 1.0)) throw DomainError("sigma must lie in (1/2, 1)");
    if (N < 0 || static_cast<std::size_t>(N) >= frak_a.size()) throw DomainError("tail_prediction: N exceeds the coefficients");
    const double floor = N == 0 ? 1.0 : std::exp(std::numbers::e);
    if (!(tau > floor)) throw DomainError("tail_prediction: tau outside the domain of the expansion");
    const double L = std::log(tau);
    const double ell = std::log(L);
    double sum = 0.0, power = 1.0;
    for (int n = 0; n <= N; ++n) {
        sum += frak_a[static_cast<std::size_t>(n)](ell) / power;
        power *= L;
    }
    return std::pow(tau * std::pow(L, sigma), 1.0 / (1.0 - sigma)) * sum;
}

std::vector<TailComparisonRow> tail_comparison_report(const EmpiricalDistribution& dist, double sigma,
                                                      const std::vector<CoeffPolynomial>& frak_a,
                                                      const std::vector<double>& tau_grid, int N) {
    if (dist.count() == 0) throw DomainError("tail_comparison_report: empty distribution");
    std::vector<TailComparisonRow> rows;
    for (double tau : tau_grid) {
        TailComparisonRow row{tau, empirical_tail(dist, tau), {}, {}, {}};
        if (row.phi_emp > 0) row.neglog_phi_emp = 0.0 - std::log(row.phi_emp);  // +0 rather than -0 at phi = 1
        try {
            row.neglog_phi_pred = tail_prediction(sigma, tau, frak_a, N);
        } catch (const DomainError&) {
        }
        if (row.neglog_phi_emp && row.neglog_phi_pred) row.ratio = *row.neglog_phi_emp / *row.neglog_phi_pred;
        rows.push_back(row);
    }
    return rows;
}

void write_tail_comparison(std::ostream& out, const std::vector<TailComparisonRow>& rows) {
    out << "tau\tphi_emp\tneglog_phi_emp\tneglog_phi_pred\tratio\n";
    for (const auto& r : rows) {
        out << fmt17(r.tau) << '\t' << fmt17(r.phi_emp) << '\t'
            << (r.neglog_phi_emp ? fmt17(*r.neglog_phi_emp) : "below resolution") << '\t'
            << (r.neglog_phi_pred ? fmt17(*r.neglog_phi_pred) : "undefined") << '\t'
            << (r.ratio ? fmt17(*r.ratio) : r.neglog_phi_emp ? "undefined" : "below resolution") << '\n';
    }
}

}  // namespace zetadist
