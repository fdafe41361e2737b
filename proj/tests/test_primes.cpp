#include "doctest_main.hpp"

#include <cmath>
#include <random>

#include "zetadist/error.hpp"
#include "zetadist/primes.hpp"

using namespace zetadist;

namespace {

bool trial_division_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("sieve_primes small limits") {
    const auto ten = sieve_primes(10);
    CHECK(ten.primes() == std::vector<std::uint32_t>{2, 3, 5, 7});

    const auto two = sieve_primes(2);
    CHECK(two.primes() == std::vector<std::uint32_t>{2});
    REQUIRE(two.prime_powers().size() == 1);
    CHECK(two.prime_powers()[0] == PrimePower{2, 2, 1});

    std::size_t oracle = 0;
    for (std::uint64_t n = 2; n <= 100; ++n) oracle += trial_division_prime(n);
    CHECK(oracle == 25);
    CHECK(sieve_primes(100).primes().size() == oracle);
}

TEST_CASE("sieve_primes matches trial division up to 1e4") {
    const auto table = sieve_primes(10'000);
    std::vector<std::uint32_t> oracle;
    for (std::uint32_t n = 2; n <= 10'000; ++n) {
        if (trial_division_prime(n)) oracle.push_back(n);
    }
    CHECK(table.primes() == oracle);

    const auto& pp = table.prime_powers();
    for (std::size_t i = 0; i < pp.size(); ++i) {
        CHECK(trial_division_prime(pp[i].p));
        REQUIRE(pp[i].nu >= 1);
        std::uint64_t n = 1;
        for (int j = 0; j < pp[i].nu; ++j) n *= pp[i].p;
        CHECK(n == pp[i].n);
        if (i > 0) CHECK(pp[i - 1].n < pp[i].n);
    }
    // Every prime power <= limit appears.
    std::size_t count = 0;
    for (std::uint32_t n = 2; n <= 10'000; ++n) {
        std::uint32_t m = n, base = 0;
        for (std::uint32_t d = 2; d <= m; ++d) {
            if (m % d == 0) {
                base = d;
                break;
            }
        }
        while (m % base == 0) m /= base;
        count += (m == 1);
    }
    CHECK(pp.size() == count);
}

TEST_CASE("segment boundaries do not drop or duplicate primes") {
    const std::uint64_t limit = 600'000;  // spans three 2^18 segments
    const auto table = sieve_primes(limit);
    CHECK(table.primes().size() == 49'098);
    const auto& ps = table.primes();
    for (std::size_t i = 1; i < ps.size(); ++i) REQUIRE(ps[i - 1] < ps[i]);
    for (std::uint64_t n = 262'100; n < 262'200; ++n) {
        const bool in_table = std::binary_search(ps.begin(), ps.end(), static_cast<std::uint32_t>(n));
        CHECK(in_table == trial_division_prime(n));
    }
}

TEST_CASE("sieve_primes errors") {
    CHECK_THROWS_AS(sieve_primes(1), DomainError);
    CHECK_THROWS_AS(sieve_primes(kMaxSieveLimit + 1), DomainError);
    CHECK_THROWS_AS(sieve_primes(10'000'000, 1024), ResourceError);
}

TEST_CASE("prime_sum_sigma direct values") {
    const auto at2 = prime_sum_sigma(2, 0.75);
    CHECK(at2.sum == doctest::Approx(std::pow(2.0, -0.75)).epsilon(1e-15));
    CHECK(at2.sum == doctest::Approx(0.594604).epsilon(1e-6));

    double oracle = 0;
    for (std::uint64_t n = 2; n <= 100; ++n) {
        if (trial_division_prime(n)) oracle += std::pow(static_cast<double>(n), -0.75);
    }
    const auto at100 = prime_sum_sigma(100, 0.75);
    CHECK(at100.sum == doctest::Approx(oracle).epsilon(1e-14));
    CHECK(at100.sum == doctest::Approx(3.0089660437).epsilon(1e-10));
    CHECK(at100.main_term == doctest::Approx(std::pow(100.0, 0.25) / (0.25 * std::log(100.0))));

    CHECK_THROWS_AS(prime_sum_sigma(100, 1.2), DomainError);
    CHECK_THROWS_AS(prime_sum_sigma(100, 0.5), DomainError);
    CHECK_THROWS_AS(prime_sum_sigma(sieve_primes(50), 100, 0.75), DomainError);
}

TEST_CASE("prime_sum_sigma error against main term has the x^{1-s}/((1-s)^2 log^2 x) shape") {
    const auto table = sieve_primes(1'000'000);
    const double sigma = 0.75;
    double fitted = 0;
    for (double x : {1e3, 1e4, 1e5, 1e6}) {
        const auto r = prime_sum_sigma(table, x, sigma);
        const double shape = std::pow(x, 1 - sigma) / ((1 - sigma) * (1 - sigma) * std::log(x) * std::log(x));
        fitted = std::max(fitted, std::fabs(r.sum - r.main_term) / shape);
    }
    MESSAGE("fitted Lemma-shape constant: " << fitted);
    CHECK(fitted <= 20.0);
}

TEST_CASE("prime_sum_sigma monotonicity") {
    const auto table = sieve_primes(20'000);
    double prev = 0;
    for (double x = 2; x <= 20'000; x *= 1.7) {
        const double s = prime_sum_sigma(table, x, 0.7).sum;
        CHECK(s >= prev);
        prev = s;
        CHECK(prime_sum_sigma(table, x, 0.6).sum > prime_sum_sigma(table, x, 0.8).sum);
    }
}

TEST_CASE("mangoldt_log_sum oracles") {
    const auto table = sieve_primes(1000);
    const auto two = mangoldt_log_sum(table, 2, 0.75, 0);
    CHECK(two.real() == doctest::Approx(std::pow(2.0, -0.75)).epsilon(1e-15));
    CHECK(two.imag() == 0.0);

    const auto four = mangoldt_log_sum(table, 4, 0.75, 0);
    const double four_oracle = std::pow(2.0, -0.75) + std::pow(3.0, -0.75) + 0.5 * std::pow(4.0, -0.75);
    CHECK(four.real() == doctest::Approx(four_oracle).epsilon(1e-15));

    double oracle = 0;
    for (std::uint64_t p = 2; p <= 100; ++p) {
        if (!trial_division_prime(p)) continue;
        std::uint64_t n = p;
        for (int nu = 1; n <= 100; ++nu, n *= p) oracle += std::pow(static_cast<double>(p), -0.6 * nu) / nu;
    }
    const auto hundred = mangoldt_log_sum(table, 100, 0.6, 0);
    CHECK(hundred.real() == doctest::Approx(oracle).epsilon(1e-14));

    CHECK_THROWS_AS(mangoldt_log_sum(table, 1.5, 0.75, 0), DomainError);
    CHECK_THROWS_AS(mangoldt_log_sum(table, 5000, 0.75, 0), DomainError);
}

TEST_CASE("mangoldt_log_sum modulus is dominated by its t = 0 value") {
    const auto table = sieve_primes(5000);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ty(-1e4, 1e4), yy(2, 5000), sy(0.51, 0.99);
    for (int trial = 0; trial < 300; ++trial) {
        const double y = yy(rng), sigma = sy(rng), t = ty(rng);
        CHECK(std::abs(mangoldt_log_sum(table, y, sigma, t)) <=
              mangoldt_log_sum(table, y, sigma, 0).real() * (1 + 1e-14));
    }
}

TEST_CASE("is_prime") {
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK(is_prime(2));
    CHECK(is_prime(97));
    CHECK_FALSE(is_prime(91));
    CHECK(is_prime(1'000'000'007));
}
