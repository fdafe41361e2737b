#include "zetadist/primes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zetadist/error.hpp"
#include "zetadist/summation.hpp"

namespace zetadist {

namespace {

constexpr std::size_t kSegmentBytes = std::size_t{1} << 18;

void require_sigma(double sigma, const char* where) {
    if (!(sigma > 0.5 && sigma < 1.0)) {
        throw DomainError(std::string(where) + ": sigma must lie in (1/2, 1), got " + std::to_string(sigma));
    }
}

std::vector<std::uint32_t> small_primes(std::uint32_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = std::uint64_t{i} * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

// Rough upper estimate of the table footprint, used only for the budget check.
std::size_t estimated_bytes(std::uint64_t limit) {
    const double x = static_cast<double>(limit);
    const double pi_upper = x < 17 ? 7.0 : 1.26 * x / std::log(x);
    return static_cast<std::size_t>(pi_upper * (sizeof(std::uint32_t) + sizeof(PrimePower))) + kSegmentBytes;
}

}  // namespace

PrimeTable::PrimeTable(std::uint64_t limit, std::vector<std::uint32_t> primes,
                       std::vector<PrimePower> prime_powers)
    : limit_(limit), primes_(std::move(primes)), prime_powers_(std::move(prime_powers)) {}

std::size_t PrimeTable::count_up_to(double x) const {
    if (x < 2) return 0;
    if (x >= static_cast<double>(limit_)) return primes_.size();
    const auto bound = static_cast<std::uint64_t>(std::floor(x));
    return static_cast<std::size_t>(
        std::upper_bound(primes_.begin(), primes_.end(), bound,
                         [](std::uint64_t v, std::uint32_t p) { return v < p; }) -
        primes_.begin());
}

PrimeTable sieve_primes(std::uint64_t limit, std::size_t budget_bytes) {
    if (limit < 2) throw DomainError("sieve_primes: limit must be >= 2");
    if (limit > kMaxSieveLimit) throw DomainError("sieve_primes: limit must be <= 1e9");
    if (estimated_bytes(limit) > budget_bytes) {
        throw ResourceError("sieve_primes: table for limit " + std::to_string(limit) +
                            " exceeds memory budget of " + std::to_string(budget_bytes) + " bytes");
    }

    auto root = static_cast<std::uint32_t>(std::sqrt(static_cast<double>(limit)));
    while (std::uint64_t{root + 1} * (root + 1) <= limit) ++root;
    while (std::uint64_t{root} * root > limit) --root;
    const auto base = small_primes(std::max<std::uint32_t>(root, 2));

    std::vector<std::uint32_t> primes;
    primes.reserve(static_cast<std::size_t>(estimated_bytes(limit) / (sizeof(std::uint32_t) + sizeof(PrimePower))));

    std::vector<unsigned char> segment(kSegmentBytes);
    for (std::uint64_t low = 2; low <= limit; low += kSegmentBytes) {
        const std::uint64_t high = std::min<std::uint64_t>(low + kSegmentBytes - 1, limit);
        std::fill(segment.begin(), segment.end(), 1);
        for (const std::uint32_t p : base) {
            const std::uint64_t pp = std::uint64_t{p} * p;
            if (pp > high) break;
            std::uint64_t start = std::max(pp, (low + p - 1) / p * p);
            for (std::uint64_t j = start; j <= high; j += p) segment[j - low] = 0;
        }
        for (std::uint64_t n = low; n <= high; ++n) {
            if (segment[n - low]) primes.push_back(static_cast<std::uint32_t>(n));
        }
    }

    std::vector<PrimePower> higher;
    for (const std::uint32_t p : primes) {
        if (std::uint64_t{p} * p > limit) break;
        std::uint64_t n = p;
        std::uint8_t nu = 1;
        while (n <= limit / p) {
            n *= p;
            ++nu;
            higher.push_back({static_cast<std::uint32_t>(n), p, nu});
        }
    }
    std::sort(higher.begin(), higher.end(), [](const PrimePower& a, const PrimePower& b) { return a.n < b.n; });

    std::vector<PrimePower> powers;
    powers.reserve(primes.size() + higher.size());
    auto h = higher.begin();
    for (const std::uint32_t p : primes) {
        while (h != higher.end() && h->n < p) powers.push_back(*h++);
        powers.push_back({p, p, 1});
    }
    powers.insert(powers.end(), h, higher.end());

    return PrimeTable(limit, std::move(primes), std::move(powers));
}

PrimeSum prime_sum_sigma(const PrimeTable& table, double x, double sigma) {
    require_sigma(sigma, "prime_sum_sigma");
    if (!(x >= 2)) throw DomainError("prime_sum_sigma: x must be >= 2");
    if (std::floor(x) > static_cast<double>(table.limit())) {
        throw DomainError("prime_sum_sigma: x exceeds prime table limit");
    }
    CompensatedSum acc;
    const auto& ps = table.primes();
    const std::size_t n = table.count_up_to(x);
    for (std::size_t i = 0; i < n; ++i) acc.add(std::pow(static_cast<double>(ps[i]), -sigma));
    const double main = std::pow(x, 1.0 - sigma) / ((1.0 - sigma) * std::log(x));
    return {acc.value(), main};
}

PrimeSum prime_sum_sigma(double x, double sigma) {
    require_sigma(sigma, "prime_sum_sigma");
    if (!(x >= 2)) throw DomainError("prime_sum_sigma: x must be >= 2");
    return prime_sum_sigma(sieve_primes(static_cast<std::uint64_t>(std::floor(x))), x, sigma);
}

std::complex<double> mangoldt_log_sum(const PrimeTable& table, double y, double sigma, double t) {
    require_sigma(sigma, "mangoldt_log_sum");
    if (!(y >= 2)) throw DomainError("mangoldt_log_sum: y must be >= 2");
    if (std::floor(y) > static_cast<double>(table.limit())) {
        throw DomainError("mangoldt_log_sum: y exceeds prime table limit");
    }
    CompensatedComplexSum acc;
    for (const PrimePower& pp : table.prime_powers()) {
        if (static_cast<double>(pp.n) > y) break;
        const double logn = std::log(static_cast<double>(pp.n));
        const double mod = std::exp(-sigma * logn) / pp.nu;
        acc.add(std::polar(mod, -t * logn));
    }
    return acc.value();
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (std::uint64_t d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

}  // namespace zetadist
