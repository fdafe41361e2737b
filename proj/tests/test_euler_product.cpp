#include "doctest_main.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "zetadist/error.hpp"
#include "zetadist/euler_product.hpp"
#include "zetadist/primes.hpp"

using namespace zetadist;

namespace {

const PrimeTable& table_1e4() {
    static const PrimeTable table = sieve_primes(10'000);
    return table;
}

std::complex<double> direct_product(double sigma, double t, int y) {
    std::complex<double> prod{1.0, 0.0};
    for (int p = 2; p <= y; ++p) {
        if (!is_prime(static_cast<std::uint64_t>(p))) continue;
        prod /= 1.0 - std::pow(std::complex<double>(p, 0.0), std::complex<double>(-sigma, -t));
    }
    return prod;
}

}  // namespace

TEST_CASE("log_zeta_short oracles") {
    const auto& table = table_1e4();
    CHECK(log_zeta_short(0.75, 3.0, 1.5, table) == std::complex<double>(0, 0));

    const auto ten = log_zeta_short(0.75, 0, 10, table);
    CHECK(ten.imag() == 0.0);
    CHECK(ten.real() == doctest::Approx(std::log(direct_product(0.75, 0, 10).real())).epsilon(1e-14));
    CHECK(std::exp(ten.real()) == doctest::Approx(8.16753).epsilon(1e-5));

    const auto hundred = std::exp(log_zeta_short(0.75, 1, 100, table));
    const auto oracle = direct_product(0.75, 1, 100);
    CHECK(std::abs(hundred - oracle) <= 1e-12 * std::abs(oracle));

    CHECK_THROWS_AS(log_zeta_short(0.75, 1, 20'000, table), DomainError);
    CHECK_THROWS_AS(log_zeta_short(0.4, 1, 100, table), DomainError);
}

TEST_CASE("log_zeta_short symmetry and agreement with the product form") {
    const auto& table = table_1e4();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ty(-1e5, 1e5), yy(2, 10'000), sy(0.51, 0.99);
    for (int trial = 0; trial < 200; ++trial) {
        const double t = ty(rng), y = yy(rng), sigma = sy(rng);
        const auto plus = log_zeta_short(sigma, t, y, table);
        const auto minus = log_zeta_short(sigma, -t, y, table);
        CHECK(std::abs(minus - std::conj(plus)) <= 1e-12 * (1 + std::abs(plus)));
        const double via_product = std::log(std::abs(zeta_short_product(sigma, t, y, table)));
        CHECK(std::fabs(via_product - plus.real()) <= 1e-12 * (1 + std::fabs(plus.real())));
    }
}

TEST_CASE("prime-power cutoff and full-factor log sums differ by O(log log z / z^(sigma - 1/2))") {
    const auto table = sieve_primes(1'000'000);
    for (double sigma : {0.6, 0.75}) {
        double lo = 1e300, hi = 0;
        for (double z = 100; z <= 1e6; z *= 10) {
            const double diff = std::fabs(log_zeta_short(sigma, 0, z, table).real() -
                                          mangoldt_log_sum(table, z, sigma, 0).real());
            const double shape = std::log(std::log(z)) * std::pow(z, 0.5 - sigma);
            lo = std::min(lo, diff / shape);
            hi = std::max(hi, diff / shape);
        }
        MESSAGE("sigma = " << sigma << ": fitted constant range [" << lo << ", " << hi << "]");
        CHECK(hi <= 2.0);
        CHECK(lo > 0.0);
    }
}

TEST_CASE("zeta_em") {
    CHECK(zeta_em(0.75, 0).real() == doctest::Approx(-3.441).epsilon(1e-3));
    const auto oracle = zeta_em(0.75, 0, 10'000);
    CHECK(std::abs(zeta_em(0.75, 0) - oracle) <= 1e-12);
    CHECK(std::fabs(zeta_em(0.75, 0).imag()) == 0.0);

    for (double t : {3.0, 14.134725, 77.0, 1234.5}) {
        for (double sigma : {0.6, 0.8}) {
            CHECK(std::abs(zeta_em(sigma, -t) - std::conj(zeta_em(sigma, t))) <= 1e-12 * std::abs(zeta_em(sigma, t)));
        }
    }

    // Near the first zero the modulus is small at sigma = 1/2.
    CHECK(std::abs(zeta_em(0.5, 14.134725141734693)) < 1e-9);

    // Head length doubling changes nothing beyond the accuracy target.
    for (double t : {100.0, 1e3, 1e4}) {
        const auto a = zeta_em(0.7, t);
        const auto b = zeta_em(0.7, t, 4 * euler_maclaurin_terms(t));
        CHECK(std::abs(a - b) <= 1e-9 * std::abs(b));
    }

    CHECK_THROWS_AS(zeta_em(0.75, 2e6), ResourceError);
    CHECK_THROWS_AS(zeta_em(1.0, 0.0), DomainError);
}

TEST_CASE("zeta_em against the prime-power Dirichlet polynomial off exceptional points") {
    const auto& table = table_1e4();
    const double sigma = 0.9, t = 100.0, y = 1e4;
    const auto full = zeta_em(sigma, t);
    const auto approx = mangoldt_log_sum(table, y, sigma, t);
    const double gap = std::fabs(std::log(std::abs(full)) - approx.real());
    // Error shape (log t) y^(sigma1 - sigma) / (sigma1 - sigma0)^2 with sigma0 = 1/2.
    const double sigma1 = std::min(0.5 + 1 / std::log(y), 0.5 * (sigma + 0.5));
    const double shape = std::log(t) * std::pow(y, sigma1 - sigma) / ((sigma1 - 0.5) * (sigma1 - 0.5));
    MESSAGE("log-modulus gap " << gap << " vs error shape " << shape);
    CHECK(gap <= shape);
    CHECK(gap <= 0.05);
}

TEST_CASE("sample_log_moduli") {
    const auto& table = table_1e4();
    const auto empty = sample_log_moduli(0.75, 1.5, GridSpec{10, 2, 0, 0}, table);
    CHECK(empty.values == std::vector<double>{0.0, 0.0});

    const auto s = sample_log_moduli(0.75, 10, GridSpec{1e3, 1000, 0, 0}, table);
    double mean = 0;
    for (double v : s.values) mean += std::exp(2 * v);
    mean /= static_cast<double>(s.values.size());
    CHECK(std::fabs(mean / 2.223806 - 1) <= 0.05);

    const auto coarse = sample_log_moduli(0.75, 100, GridSpec{1e4, 500, 0, 0}, table);
    const auto fine = sample_log_moduli(0.75, 100, GridSpec{1e4, 1000, 0, 0}, table);
    for (std::size_t i = 0; i < coarse.values.size(); ++i) REQUIRE(coarse.values[i] == fine.values[2 * i]);

    const auto grid = GridSpec::randomized(5e3, 20'000, 42);
    const auto one = sample_log_moduli(0.7, 1000, grid, table, 1);
    const auto four = sample_log_moduli(0.7, 1000, grid, table, 4);
    CHECK(one.values == four.values);
    CHECK(GridSpec::randomized(5e3, 20'000, 42).offset == grid.offset);
    CHECK(GridSpec::randomized(5e3, 20'000, 43).offset != grid.offset);

    CHECK_THROWS_AS(sample_log_moduli(0.75, 10, GridSpec{1e3, 1, 0, 0}, table), DomainError);
    CHECK_THROWS_AS(sample_log_moduli(0.75, 10, GridSpec{2, 10, 0, 0}, table), DomainError);
    CHECK_THROWS_AS(sample_log_moduli(0.75, 10, GridSpec{1e3, 10, 1.0, 0}, table), DomainError);
}

TEST_CASE("samples serialise losslessly") {
    const auto& table = table_1e4();
    auto s = sample_log_moduli(0.65, 500, GridSpec::randomized(1e4, 300, 5), table);
    std::ostringstream out;
    write_samples(out, s);
    std::istringstream in(out.str());
    const auto back = read_samples(in);
    CHECK(back.sigma == s.sigma);
    CHECK(back.y == s.y);
    CHECK(back.grid.T == s.grid.T);
    CHECK(back.grid.count == s.grid.count);
    CHECK(back.grid.offset == s.grid.offset);
    CHECK(back.grid.seed == s.grid.seed);
    CHECK(back.values == s.values);
    CHECK(out.str().rfind("sigma=0.65000000000000002\ny=500\nT=10000\ncount=300\noffset=", 0) == 0);

    s.y = kFullZeta;
    s.values.resize(2);
    s.grid.count = 2;
    std::ostringstream full;
    write_samples(full, s);
    CHECK(full.str().find("y=inf\n") != std::string::npos);
    std::istringstream full_in(full.str());
    CHECK(std::isinf(read_samples(full_in).y));
}

TEST_CASE("approximation_defect_survey") {
    const auto& table = table_1e4();
    const auto tight = approximation_defect_survey(0.9, GridSpec{100, 200, 0, 0}, 1e4, 1.0, table);
    CHECK(tight.exceed_fraction == 0.0);
    CHECK(tight.max_defect < 2.0);

    const auto unbounded = approximation_defect_survey(0.75, GridSpec{100, 50, 0, 0}, 10, kFullZeta, table);
    CHECK(unbounded.exceed_fraction == 0.0);

    const GridSpec grid{1e4, 10'000, 0, 0};
    double prev_half = 1.1, prev_tenth = 1.1, prev_max = 1e300;
    for (double y : {10.0, 30.0, 85.0}) {
        const auto half = approximation_defect_survey(0.75, grid, y, 0.5, table);
        const auto tenth = approximation_defect_survey(0.75, grid, y, 0.1, table);
        MESSAGE("y = " << y << ": exceed fraction " << half.exceed_fraction << " (lambda 0.5), "
                       << tenth.exceed_fraction << " (lambda 0.1), max defect " << half.max_defect);
        CHECK(half.exceed_fraction <= prev_half);
        CHECK(tenth.exceed_fraction < prev_tenth);
        CHECK(half.max_defect < prev_max);
        CHECK(half.max_defect == tenth.max_defect);
        prev_half = half.exceed_fraction;
        prev_tenth = tenth.exceed_fraction;
        prev_max = half.max_defect;
    }
    CHECK(prev_half == 0.0);
}
