#include "zetadist/euler_product.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <string>

#include "zetadist/error.hpp"
#include "zetadist/format.hpp"
#include "zetadist/parallel.hpp"
#include "zetadist/summation.hpp"

namespace zetadist {

namespace {

constexpr double kMachineTail = 1e-17;

void require_sigma(double sigma, const char* where) {
    if (!(sigma > 0.5 && sigma < 1.0)) {
        throw DomainError(std::string(where) + ": sigma must lie in (1/2, 1)");
    }
}

void require_table(double y, const PrimeTable& table, const char* where) {
    if (std::isfinite(y) && std::floor(y) > static_cast<double>(table.limit())) {
        throw DomainError(std::string(where) + ": y exceeds prime table limit");
    }
}

// B_{2r} / (2r)! for r = 1..8.
constexpr std::array<double, kEulerMaclaurinDepth> kBernoulliOverFactorial = {
    (1.0 / 6) / 2,
    (-1.0 / 30) / 24,
    (1.0 / 42) / 720,
    (-1.0 / 30) / 40320,
    (5.0 / 66) / 3628800,
    (-691.0 / 2730) / 479001600,
    (7.0 / 6) / 87178291200.0,
    (-3617.0 / 510) / 20922789888000.0,
};

}  // namespace

void GridSpec::validate() const {
    if (count < 2) throw DomainError("grid: count must be >= 2");
    if (!(T >= 3)) throw DomainError("grid: T must be >= 3");
    if (!(offset >= 0 && offset < 1)) throw DomainError("grid: offset must lie in [0, 1)");
}

GridSpec GridSpec::randomized(double T, std::int64_t count, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    // 53 random mantissa bits; avoids implementation-defined distributions.
    const double offset = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return GridSpec{T, count, offset, seed};
}

std::complex<double> log_zeta_short(double sigma, double t, double y, const PrimeTable& table) {
    require_sigma(sigma, "log_zeta_short");
    if (y < 2) return {0.0, 0.0};
    require_table(y, table, "log_zeta_short");
    CompensatedComplexSum total;
    const auto& ps = table.primes();
    const std::size_t n = table.count_up_to(y);
    for (std::size_t i = 0; i < n; ++i) {
        const double logp = std::log(static_cast<double>(ps[i]));
        const std::complex<double> z = std::polar(std::exp(-sigma * logp), -t * logp);
        std::complex<double> power = z;
        std::complex<double> local = z;
        for (int nu = 2;; ++nu) {
            power *= z;
            const std::complex<double> term = power / static_cast<double>(nu);
            local += term;
            if (std::abs(power) < kMachineTail) break;
        }
        total.add(local);
    }
    return total.value();
}

std::complex<double> zeta_short_product(double sigma, double t, double y, const PrimeTable& table) {
    require_sigma(sigma, "zeta_short_product");
    if (y < 2) return {1.0, 0.0};
    require_table(y, table, "zeta_short_product");
    std::complex<double> product{1.0, 0.0};
    const auto& ps = table.primes();
    const std::size_t n = table.count_up_to(y);
    for (std::size_t i = 0; i < n; ++i) {
        const double logp = std::log(static_cast<double>(ps[i]));
        product /= 1.0 - std::polar(std::exp(-sigma * logp), -t * logp);
    }
    return product;
}

std::int64_t euler_maclaurin_terms(double t) {
    return std::max<std::int64_t>(20, static_cast<std::int64_t>(std::ceil(std::fabs(t) / 2.0)));
}

std::complex<double> zeta_em(double sigma, double t, std::int64_t head_terms) {
    if (std::fabs(t) > kZetaMaxAbsT) throw ResourceError("zeta_em: |t| exceeds the 1e6 evaluation budget");
    if (sigma == 1.0 && t == 0.0) throw DomainError("zeta_em: pole at s = 1");
    if (head_terms < 2) throw DomainError("zeta_em: head length must be >= 2");
    const std::complex<double> s{sigma, t};
    CompensatedComplexSum head;
    for (std::int64_t n = 1; n <= head_terms; ++n) {
        const double logn = std::log(static_cast<double>(n));
        head.add(std::polar(std::exp(-sigma * logn), -t * logn));
    }
    const double big_n = static_cast<double>(head_terms);
    const double log_n = std::log(big_n);
    const std::complex<double> n_pow_minus_s = std::polar(std::exp(-sigma * log_n), -t * log_n);

    std::complex<double> result = head.value();
    result += n_pow_minus_s * big_n / (s - 1.0);
    result -= 0.5 * n_pow_minus_s;

    // term_r = B_{2r}/(2r)! * s (s+1) ... (s+2r-2) * N^{-s-2r+1}
    std::complex<double> rising = s;
    std::complex<double> power = n_pow_minus_s / big_n;
    const double inv_n2 = 1.0 / (big_n * big_n);
    CompensatedComplexSum corrections;
    for (int r = 1; r <= kEulerMaclaurinDepth; ++r) {
        corrections.add(kBernoulliOverFactorial[static_cast<std::size_t>(r - 1)] * rising * power);
        rising *= (s + static_cast<double>(2 * r - 1)) * (s + static_cast<double>(2 * r));
        power *= inv_n2;
    }
    return result + corrections.value();
}

std::complex<double> zeta_em(double sigma, double t) { return zeta_em(sigma, t, euler_maclaurin_terms(t)); }

LogModulusSamples sample_log_moduli(double sigma, double y, const GridSpec& grid, const PrimeTable& table,
                                    unsigned threads) {
    require_sigma(sigma, "sample_log_moduli");
    grid.validate();
    require_table(y, table, "sample_log_moduli");
    LogModulusSamples out{sigma, y, grid, std::vector<double>(static_cast<std::size_t>(grid.count))};
    const bool full = std::isinf(y);
    if (full && std::fabs(2 * grid.T) > kZetaMaxAbsT) {
        throw ResourceError("sample_log_moduli: grid exceeds the zeta_em |t| budget");
    }
    const std::size_t chunk = full ? 16 : 1024;
    for_each_chunk(out.values.size(), chunk, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double t = grid.node(static_cast<std::int64_t>(i));
            out.values[i] = full ? std::log(std::abs(zeta_em(sigma, t))) : log_zeta_short(sigma, t, y, table).real();
        }
    });
    return out;
}

DefectSurvey approximation_defect_survey(double sigma, const GridSpec& grid, double y, double lambda,
                                         const PrimeTable& table, unsigned threads) {
    require_sigma(sigma, "approximation_defect_survey");
    grid.validate();
    require_table(y, table, "approximation_defect_survey");
    if (!(lambda >= 0)) throw DomainError("approximation_defect_survey: lambda must be >= 0");
    const auto full = sample_log_moduli(sigma, kFullZeta, grid, table, threads);
    const auto shortp = sample_log_moduli(sigma, y, grid, table, threads);
    std::int64_t exceed = 0;
    double worst = 0.0;
    for (std::size_t i = 0; i < full.values.size(); ++i) {
        const double defect = std::fabs(full.values[i] - shortp.values[i]);
        worst = std::max(worst, defect);
        if (defect > 2 * lambda) ++exceed;
    }
    return {static_cast<double>(exceed) / static_cast<double>(grid.count), worst};
}

void write_samples(std::ostream& out, const LogModulusSamples& samples) {
    out << "sigma=" << fmt17(samples.sigma) << '\n'
        << "y=" << fmt17(samples.y) << '\n'
        << "T=" << fmt17(samples.grid.T) << '\n'
        << "count=" << samples.grid.count << '\n'
        << "offset=" << fmt17(samples.grid.offset) << '\n'
        << "seed=" << samples.grid.seed << '\n';
    for (double v : samples.values) out << fmt17(v) << '\n';
}

LogModulusSamples read_samples(std::istream& in) {
    LogModulusSamples s;
    auto header = [&](const char* key) {
        std::string line;
        if (!std::getline(in, line)) throw DomainError(std::string("read_samples: missing header ") + key);
        const std::string prefix = std::string(key) + "=";
        if (line.rfind(prefix, 0) != 0) throw DomainError("read_samples: expected " + prefix + ", got " + line);
        return line.substr(prefix.size());
    };
    s.sigma = parse_double(header("sigma"));
    s.y = parse_double(header("y"));
    s.grid.T = parse_double(header("T"));
    s.grid.count = std::stoll(header("count"));
    s.grid.offset = parse_double(header("offset"));
    s.grid.seed = std::stoull(header("seed"));
    s.values.reserve(static_cast<std::size_t>(std::max<std::int64_t>(s.grid.count, 0)));
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        s.values.push_back(parse_double(line));
    }
    if (static_cast<std::int64_t>(s.values.size()) != s.grid.count) {
        throw DomainError("read_samples: value count does not match count= header");
    }
    return s;
}

}  // namespace zetadist
