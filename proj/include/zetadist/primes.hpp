#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace zetadist {

struct PrimePower {
    std::uint32_t n;   // p^nu
    std::uint32_t p;
    std::uint8_t nu;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Primes and prime powers up to an inclusive limit. Immutable after
/// construction; safe to share read-only between threads.
class PrimeTable {
public:
    PrimeTable(std::uint64_t limit, std::vector<std::uint32_t> primes,
               std::vector<PrimePower> prime_powers);

    [[nodiscard]] std::uint64_t limit() const noexcept { return limit_; }
    [[nodiscard]] const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }
    [[nodiscard]] const std::vector<PrimePower>& prime_powers() const noexcept { return prime_powers_; }

    /// Number of primes <= x; saturates at the table size.
    [[nodiscard]] std::size_t count_up_to(double x) const;

private:
    std::uint64_t limit_;
    std::vector<std::uint32_t> primes_;
    std::vector<PrimePower> prime_powers_;
};

inline constexpr std::uint64_t kMaxSieveLimit = 1'000'000'000;
inline constexpr std::size_t kDefaultSieveBudgetBytes = std::size_t{1} << 30;

/// Segmented sieve of Eratosthenes. Throws DomainError for limit < 2 or
/// limit > 1e9, ResourceError if the table would exceed budget_bytes.
PrimeTable sieve_primes(std::uint64_t limit, std::size_t budget_bytes = kDefaultSieveBudgetBytes);

struct PrimeSum {
    double sum;        // sum_{p <= x} p^-sigma
    double main_term;  // x^{1-sigma} / ((1 - sigma) log x)
};

/// Direct compensated summation over the table; requires x <= table.limit().
PrimeSum prime_sum_sigma(const PrimeTable& table, double x, double sigma);
/// Convenience overload that sieves up to floor(x).
PrimeSum prime_sum_sigma(double x, double sigma);

/// sum over prime powers n = p^nu <= y of n^{-sigma-it} / nu.
std::complex<double> mangoldt_log_sum(const PrimeTable& table, double y, double sigma, double t);

/// True iff n is prime, by trial division.
bool is_prime(std::uint64_t n);

}  // namespace zetadist
