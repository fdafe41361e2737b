#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "zetadist/asymptotic_series.hpp"
#include "zetadist/euler_product.hpp"

namespace zetadist {

/// Sorted log-moduli with the metadata of the run that produced them.
class EmpiricalDistribution {
public:
    explicit EmpiricalDistribution(const LogModulusSamples& samples);
    EmpiricalDistribution(std::vector<double> values, double sigma = 0, double y = 0, double T = 0);

    [[nodiscard]] const std::vector<double>& sorted() const { return sorted_; }
    [[nodiscard]] std::size_t count() const { return sorted_.size(); }
    [[nodiscard]] double sigma() const { return sigma_; }
    [[nodiscard]] double y() const { return y_; }
    [[nodiscard]] double T() const { return T_; }

private:
    std::vector<double> sorted_;
    double sigma_, y_, T_;
};

/// Fraction of samples strictly greater than tau.
double empirical_tail(const EmpiricalDistribution& dist, double tau);

/// int Phi(u) k e^{ku} du for the empirical step function Phi, summed over
/// the gaps between consecutive order statistics. DomainError for k <= 0.
double laplace_moment_from_tail(const EmpiricalDistribution& dist, double k);
/// Natural log of the same integral; finite where the integral overflows.
double laplace_log_moment_from_tail(const EmpiricalDistribution& dist, double k);

struct SaddleSolution {
    double sigma;
    double tau;
    double k;
    double log_k;
    int N_trunc;  // a_seq.size() - 1
    std::vector<double> a_seq;
    double residual;  // |tau(k) / tau - 1|
};

/// log tau(k) for tau(k) = k^{1/sigma-1}/(sigma log k) sum_n a_n (log k)^{-n},
/// as a function of lambda = log k. NaN where the sum is not positive.
double saddle_log_tau(double sigma, double lambda, const std::vector<double>& a_seq);

inline constexpr double kSaddleLambdaMin = 2.0;
inline constexpr double kSaddleLambdaMax = 200.0;

/// Smallest lambda in [2, 200] past which tau(lambda) is increasing, from a
/// scan of the logarithmic derivative on a 1e-3 grid.
double saddle_threshold(double sigma, const std::vector<double>& a_seq);

/// Unique k >= e^threshold with tau(k) = tau, by TOMS 748 bracketing on
/// log k in [threshold, 200]. DomainError "saddle not unique" for tau below
/// the threshold value, and for tau beyond the bracket.
SaddleSolution solve_saddle(double sigma, double tau, const std::vector<double>& a_seq);

/// Predicted -log Phi: (tau log^sigma tau)^{1/(1-sigma)} sum_{n<=N} frak_a[n](log log tau)/(log tau)^n.
/// DomainError unless tau > e^e, relaxed to tau > 1 for N = 0 (where the
/// only coefficient is a constant).
double tail_prediction(double sigma, double tau, const std::vector<CoeffPolynomial>& frak_a, int N);

struct TailComparisonRow {
    double tau;
    double phi_emp;
    std::optional<double> neglog_phi_emp;   // empty when Phi = 0
    std::optional<double> neglog_phi_pred;  // empty outside the prediction's domain
    std::optional<double> ratio;
};

std::vector<TailComparisonRow> tail_comparison_report(const EmpiricalDistribution& dist, double sigma,
                                                      const std::vector<CoeffPolynomial>& frak_a,
                                                      const std::vector<double>& tau_grid, int N = 0);

/// Header "tau	phi_emp	neglog_phi_emp	neglog_phi_pred	ratio"; missing
/// cells are written as "below resolution" or "undefined".
void write_tail_comparison(std::ostream& out, const std::vector<TailComparisonRow>& rows);

}  // namespace zetadist
