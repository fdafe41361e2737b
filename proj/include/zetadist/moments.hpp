#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "zetadist/euler_product.hpp"
#include "zetadist/primes.hpp"

namespace zetadist {

enum class MomentMethod { empirical, diagonal, asymptotic };

std::string to_string(MomentMethod method);

struct MomentResolution {
    std::int64_t grid_count = 0;  // empirical: number of nodes
    int terms = -1;               // asymptotic: highest C_n used
    double tol = 0;               // diagonal: local-factor rel_tol
};

/// A k-th moment estimate; value_log is the natural log of the moment.
struct MomentEstimate {
    double sigma = 0;
    double k = 0;
    double y = 0;
    double T = 0;
    double value_log = 0;
    MomentMethod method = MomentMethod::empirical;
    MomentResolution resolution;
};

/// log of the grid average of exp(k * values), max-shifted. DomainError for k < 0.
MomentEstimate empirical_moment(const LogModulusSamples& samples, double k);

/// sum_{p <= y} local_factor_log_sum(p, k, sigma, rel_tol). Primes are
/// reduced in fixed-size chunks in ascending order, so the result does not
/// depend on `threads`.
MomentEstimate friable_diagonal_sum(double sigma, double y, double k, const PrimeTable& table, double rel_tol,
                                    unsigned threads = 1);

enum class CnScheme {
    adaptive,   // global adaptive Gauss-Kronrod on the log scale
    composite,  // fixed composite Simpson rule, kCompositePanels panels
};

inline constexpr int kMaxCnIndex = 8;
inline constexpr std::int64_t kCompositePanels = 1'000'000;

struct CnValue {
    int n;
    double c_n;
    double err;
};

/// int_{t_lo}^{t_hi} (log t)^n t^{-1/sigma-1} log I0(t) dt for
/// 0 <= t_lo, t_hi <= inf. Pieces below t = 1e-3 (1e-4 for the composite
/// scheme) and beyond t = 700 use closed forms from the small-t series and
/// the large-t expansion of log I0; the rest is integrated in u = log t.
/// NumericError if the self-estimated error exceeds abs_tol.
CnValue cn_integral(double sigma, int n, double t_lo, double t_hi, double abs_tol,
                    CnScheme scheme = CnScheme::adaptive);

/// C_n = cn_integral over (0, inf). DomainError unless 1/2 < sigma < 1 and 0 <= n <= 8.
CnValue constant_cn(double sigma, int n, double abs_tol, CnScheme scheme = CnScheme::adaptive);

/// Truncated constant C_n(k, y): the same integral over [k / y^sigma, sqrt(k)].
CnValue finite_cutoff_cn(double sigma, int n, double k, double y, double abs_tol);

/// Growth scale n! r^{n+1} of |C_n|, r = max(sigma/(1-sigma), sigma/(2 sigma-1)):
/// the (log t)^n weight picks up n!/c^{n+1} from each end, where the
/// integrand decays like t^{-c/sigma}.
double cn_scale(double sigma, int n);

struct ConstantsTable {
    double sigma = 0;
    std::vector<CnValue> values;  // n = 0, 1, ... consecutively

    [[nodiscard]] int max_n() const { return static_cast<int>(values.size()) - 1; }
    [[nodiscard]] double c(int n) const;
};

/// C_0 .. C_{n_max}; entry n is computed to abs_tol = rel_tol * cn_scale(sigma, n).
/// InvariantError if C_0 <= 0.
ConstantsTable build_constants_table(double sigma, int n_max, double rel_tol, CnScheme scheme = CnScheme::adaptive);

/// "# sigma=<17g>" line, then header "n	c_n	err" and one row per n.
void write_constants(std::ostream& out, const ConstantsTable& table);
ConstantsTable read_constants(std::istream& in);

/// (k^{1/sigma} / log k) * sum_{n <= N} C_n / (log k)^n.
/// DomainError for k < 3 or N outside the table.
MomentEstimate moment_asymptotic(double sigma, double k, double y, int N, const ConstantsTable& constants);

/// k y^{1-sigma} <= (1 - sigma) log T / 8, the range in which the asymptotic
/// moment is expected to hold. Reported, never enforced.
bool moment_range_ok(double sigma, double k, double y, double T);

}  // namespace zetadist
