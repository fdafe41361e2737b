#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

#include "zetadist/primes.hpp"

namespace zetadist {

/// Equispaced sample points t_i = T + (i + offset) * T / count, i < count,
/// covering [T, 2T).
struct GridSpec {
    double T = 0;
    std::int64_t count = 0;
    double offset = 0;       // in [0, 1)
    std::uint64_t seed = 0;  // recorded; drives offset only when randomized

    [[nodiscard]] double spacing() const { return T / static_cast<double>(count); }
    [[nodiscard]] double node(std::int64_t i) const {
        return T + (static_cast<double>(i) + offset) * spacing();
    }
    /// DomainError unless count >= 2, T >= 3 and 0 <= offset < 1.
    void validate() const;

    /// Grid whose offset is drawn from a 64-bit Mersenne Twister seeded with `seed`.
    static GridSpec randomized(double T, std::int64_t count, std::uint64_t seed);
};

inline constexpr double kFullZeta = std::numeric_limits<double>::infinity();

struct LogModulusSamples {
    double sigma = 0;
    double y = 0;  // kFullZeta: values are log|zeta| rather than the short product
    GridSpec grid;
    std::vector<double> values;
};

/// Termwise logarithm sum_{p <= y} sum_{nu >= 1} p^{-nu s} / nu of the short
/// Euler product at s = sigma + it. Zero for y < 2.
std::complex<double> log_zeta_short(double sigma, double t, double y, const PrimeTable& table);

/// The short Euler product prod_{p <= y} (1 - p^{-s})^{-1} as a complex
/// product; an evaluation path independent of log_zeta_short.
std::complex<double> zeta_short_product(double sigma, double t, double y, const PrimeTable& table);

inline constexpr int kEulerMaclaurinDepth = 8;
inline constexpr double kZetaMaxAbsT = 1e6;

/// Euler-Maclaurin head length used by zeta_em for a given t.
std::int64_t euler_maclaurin_terms(double t);

/// zeta(sigma + it) by Euler-Maclaurin summation with an explicit head
/// length N and correction depth kEulerMaclaurinDepth.
std::complex<double> zeta_em(double sigma, double t, std::int64_t head_terms);

/// zeta(sigma + it) with head length euler_maclaurin_terms(t).
/// ResourceError for |t| > 1e6; DomainError at the pole.
std::complex<double> zeta_em(double sigma, double t);

/// log |zeta(sigma + it; y)| (or log |zeta| when y is kFullZeta) on every
/// grid node. Results do not depend on the thread count.
LogModulusSamples sample_log_moduli(double sigma, double y, const GridSpec& grid, const PrimeTable& table,
                                    unsigned threads = 1);

struct DefectSurvey {
    double exceed_fraction;
    double max_defect;
};

/// Fraction of nodes where | log|zeta| - log|zeta(.; y)| | > 2 lambda, and
/// the largest such difference. Compares real parts (moduli) only.
DefectSurvey approximation_defect_survey(double sigma, const GridSpec& grid, double y, double lambda,
                                         const PrimeTable& table, unsigned threads = 1);

/// Columnar text: sigma=, y=, T=, count=, offset=, seed= header lines, then
/// one value per line with 17 significant digits.
void write_samples(std::ostream& out, const LogModulusSamples& samples);
LogModulusSamples read_samples(std::istream& in);

}  // namespace zetadist
