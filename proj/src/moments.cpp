#include "zetadist/moments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "quadrature.hpp"
#include "zetadist/error.hpp"
#include "zetadist/format.hpp"
#include "zetadist/parallel.hpp"
#include "zetadist/special_fns.hpp"
#include "zetadist/summation.hpp"

namespace zetadist {

std::string to_string(MomentMethod method) {
    switch (method) {
        case MomentMethod::empirical: return "empirical";
        case MomentMethod::diagonal: return "diagonal";
        case MomentMethod::asymptotic: return "asymptotic";
    }
    return "unknown";
}

namespace {

void require_sigma(double sigma) {
    if (!(sigma > 0.5 && sigma < 1.0)) throw DomainError("sigma must lie in (1/2, 1)");
}

}  // namespace

MomentEstimate empirical_moment(const LogModulusSamples& samples, double k) {
    if (!(k >= 0)) throw DomainError("empirical_moment: k must be >= 0");
    if (samples.values.empty()) throw DomainError("empirical_moment: no samples");
    MomentEstimate est;
    est.sigma = samples.sigma;
    est.k = k;
    est.y = samples.y;
    est.T = samples.grid.T;
    est.method = MomentMethod::empirical;
    est.resolution.grid_count = static_cast<std::int64_t>(samples.values.size());
    if (k == 0) return est;

    double shift = -std::numeric_limits<double>::infinity();
    for (double v : samples.values) shift = std::max(shift, k * v);
    CompensatedSum sum;
    for (double v : samples.values) sum.add(std::exp(k * v - shift));
    est.value_log = shift + std::log(sum.value() / static_cast<double>(samples.values.size()));
    return est;
}

MomentEstimate friable_diagonal_sum(double sigma, double y, double k, const PrimeTable& table, double rel_tol,
                                    unsigned threads) {
    require_sigma(sigma);
    if (!(k >= 0)) throw DomainError("friable_diagonal_sum: k must be >= 0");
    if (y >= 2 && std::floor(y) > static_cast<double>(table.limit()))
        throw DomainError("friable_diagonal_sum: y exceeds the prime table");
    const std::size_t count = y < 2 ? 0 : table.count_up_to(y);
    const auto& primes = table.primes();

    std::vector<CompensatedSum> partial(chunk_count(count));
    for_each_chunk(count, kReductionChunk, threads, [&](std::size_t c, std::size_t begin, std::size_t end) {
        CompensatedSum s;
        for (std::size_t i = begin; i < end; ++i) s.add(local_factor_log_sum(primes[i], k, sigma, rel_tol));
        partial[c] = s;
    });
    CompensatedSum total;
    for (const auto& s : partial) total.merge(s);

    MomentEstimate est;
    est.sigma = sigma;
    est.k = k;
    est.y = y;
    est.value_log = total.value();
    est.method = MomentMethod::diagonal;
    est.resolution.tol = rel_tol;
    return est;
}

namespace {

// log I0(t) = sum_j kSmall[j] t^{2j+2} + O(t^12)
constexpr std::array<double, 5> kSmall{1.0 / 4, -1.0 / 64, 1.0 / 576, -11.0 / 49152, 19.0 / 614400};
// log I0(t) = t - log(2 pi t)/2 + sum_j kLarge[j] t^{-j-1} + O(t^-6)
constexpr std::array<double, 5> kLarge{1.0 / 8, 1.0 / 16, 25.0 / 384, 13.0 / 128, 1073.0 / 5120};

// Antiderivative of u^n e^{cu} evaluated at U; U = +-inf where e^{cU} -> 0.
double power_exp_antiderivative(int n, double c, double U) {
    if (std::isinf(U)) return 0.0;
    double coef = 1.0 / c;  // (-1)^m n!/(n-m)! / c^{m+1}
    double sum = 0.0;
    for (int m = 0; m <= n; ++m) {
        sum += coef * std::pow(U, n - m);
        coef *= -static_cast<double>(n - m) / c;
    }
    return std::exp(c * U) * sum;
}

double power_exp_integral(int n, double c, double a, double b) {
    return power_exp_antiderivative(n, c, b) - power_exp_antiderivative(n, c, a);
}

struct Piece {
    double value = 0;
    double err = 0;
};

Piece head_piece(double sigma, int n, double a, double b) {
    Piece p;
    CompensatedSum s;
    double scale = 0;
    for (std::size_t j = 0; j < kSmall.size(); ++j) {
        const double c = 2.0 * static_cast<double>(j + 1) - 1.0 / sigma;
        const double v = kSmall[j] * power_exp_integral(n, c, a, b);
        s.add(v);
        scale += std::fabs(v);
    }
    p.value = s.value();
    p.err = 64 * std::numeric_limits<double>::epsilon() * scale;
    return p;
}

Piece tail_piece(double sigma, int n, double a, double b) {
    const double inv = 1.0 / sigma;
    CompensatedSum s;
    double scale = 0;
    auto add = [&](double v) {
        s.add(v);
        scale += std::fabs(v);
    };
    add(power_exp_integral(n, 1.0 - inv, a, b));
    add(-0.5 * std::log(2.0 * std::numbers::pi) * power_exp_integral(n, -inv, a, b));
    add(-0.5 * power_exp_integral(n + 1, -inv, a, b));
    for (std::size_t j = 0; j < kLarge.size(); ++j)
        add(kLarge[j] * power_exp_integral(n, -inv - static_cast<double>(j + 1), a, b));
    Piece p;
    p.value = s.value();
    p.err = 64 * std::numeric_limits<double>::epsilon() * scale;
    return p;
}

double middle_integrand(double sigma, int n, double u) {
    return std::pow(u, n) * std::exp(-u / sigma) * log_i0(std::exp(u));
}

Piece middle_adaptive(double sigma, int n, double a, double b, double abs_tol) {
    const auto r = detail::integrate_adaptive([&](double u) { return middle_integrand(sigma, n, u); }, a, b,
                                              abs_tol, "cn_integral", {0.0, std::log(20.0)});
    return {r.value, r.error};
}

// Composite Simpson on kCompositePanels panels; the error is the Richardson
// difference against the rule on every other node.
Piece middle_composite(double sigma, int n, double a, double b) {
    const std::int64_t panels = kCompositePanels;
    const double h = (b - a) / static_cast<double>(panels);
    CompensatedSum fine, coarse;
    for (std::int64_t i = 0; i <= panels; ++i) {
        const double f = middle_integrand(sigma, n, i == panels ? b : a + static_cast<double>(i) * h);
        const bool end = i == 0 || i == panels;
        fine.add(f * (end ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0)));
        if (i % 2 == 0) coarse.add(f * (end ? 1.0 : (i % 4 == 2 ? 4.0 : 2.0)));
    }
    const double s_fine = fine.value() * h / 3.0;
    const double s_coarse = coarse.value() * 2.0 * h / 3.0;
    return {s_fine, std::fabs(s_fine - s_coarse) / 15.0 + 1e3 * std::numeric_limits<double>::epsilon() * std::fabs(s_fine)};
}

}  // namespace

CnValue cn_integral(double sigma, int n, double t_lo, double t_hi, double abs_tol, CnScheme scheme) {
    require_sigma(sigma);
    if (n < 0 || n > kMaxCnIndex + 1) throw DomainError("cn_integral: n out of range");
    if (!(t_lo >= 0) || !(t_hi >= 0)) throw DomainError("cn_integral: limits must be >= 0");
    if (!(abs_tol > 0)) throw DomainError("cn_integral: abs_tol must be positive");
    if (t_lo > t_hi) {
        CnValue r = cn_integral(sigma, n, t_hi, t_lo, abs_tol, scheme);
        r.c_n = -r.c_n;
        return r;
    }
    const double a = t_lo == 0 ? -std::numeric_limits<double>::infinity() : std::log(t_lo);
    const double b = std::log(t_hi);
    const double u0 = std::log(scheme == CnScheme::adaptive ? 1e-3 : 1e-4);
    const double u1 = std::log(kLogI0AsymptoticSwitch);

    Piece head, middle, tail;
    if (a < u0) head = head_piece(sigma, n, a, std::min(b, u0));
    if (b > u1) tail = tail_piece(sigma, n, std::max(a, u1), b);
    const double ma = std::max(a, u0), mb = std::min(b, u1);
    if (ma < mb) {
        middle = scheme == CnScheme::adaptive ? middle_adaptive(sigma, n, ma, mb, abs_tol)
                                              : middle_composite(sigma, n, ma, mb);
    }
    CompensatedSum total;
    total.add(head.value);
    total.add(middle.value);
    total.add(tail.value);
    const CnValue out{n, total.value(), head.err + middle.err + tail.err};
    if (!std::isfinite(out.c_n) || out.err > abs_tol) {
        std::ostringstream msg;
        msg << "cn_integral: error estimate " << out.err << " exceeds tolerance " << abs_tol << " (n = " << n
            << ", sigma = " << sigma << ")";
        throw NumericError(msg.str());
    }
    return out;
}

CnValue constant_cn(double sigma, int n, double abs_tol, CnScheme scheme) {
    if (n < 0 || n > kMaxCnIndex + 1) throw DomainError("constant_cn: n must lie in [0, 9]");
    return cn_integral(sigma, n, 0.0, std::numeric_limits<double>::infinity(), abs_tol, scheme);
}

CnValue finite_cutoff_cn(double sigma, int n, double k, double y, double abs_tol) {
    require_sigma(sigma);
    if (!(k > 0) || !(y > 0)) throw DomainError("finite_cutoff_cn: k and y must be positive");
    return cn_integral(sigma, n, k / std::pow(y, sigma), std::sqrt(k), abs_tol);
}

double cn_scale(double sigma, int n) {
    const double rate = std::max(sigma / (1.0 - sigma), sigma / (2.0 * sigma - 1.0));
    return std::tgamma(n + 1.0) * std::pow(rate, n + 1.0);
}

double ConstantsTable::c(int n) const {
    if (n < 0 || n > max_n()) throw DomainError("ConstantsTable: n out of range");
    return values[static_cast<std::size_t>(n)].c_n;
}

ConstantsTable build_constants_table(double sigma, int n_max, double rel_tol, CnScheme scheme) {
    require_sigma(sigma);
    if (n_max < 0 || n_max > kMaxCnIndex + 1) throw DomainError("build_constants_table: n_max out of range");
    ConstantsTable table;
    table.sigma = sigma;
    for (int n = 0; n <= n_max; ++n) table.values.push_back(constant_cn(sigma, n, rel_tol * cn_scale(sigma, n), scheme));
    if (!(table.values.front().c_n > 0)) throw InvariantError("build_constants_table: C_0 is not positive");
    return table;
}

void write_constants(std::ostream& out, const ConstantsTable& table) {
    out << "# sigma=" << fmt17(table.sigma) << '\n' << "n\tc_n\terr\n";
    for (const auto& v : table.values) out << v.n << '\t' << fmt17(v.c_n) << '\t' << fmt17(v.err) << '\n';
}

ConstantsTable read_constants(std::istream& in) {
    ConstantsTable table;
    bool have_sigma = false, have_header = false;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("# sigma=", 0) == 0) {
            table.sigma = parse_double(line.substr(8));
            have_sigma = true;
            continue;
        }
        if (line[0] == '#') continue;
        if (line == "n\tc_n\terr") {
            have_header = true;
            continue;
        }
        std::istringstream row(line);
        std::string n, c, e;
        if (!std::getline(row, n, '\t') || !std::getline(row, c, '\t') || !std::getline(row, e))
            throw DomainError("read_constants: malformed row: " + line);
        const int index = static_cast<int>(parse_double(n));
        if (index != static_cast<int>(table.values.size()))
            throw DomainError("read_constants: rows must be consecutive from n = 0");
        table.values.push_back({index, parse_double(c), parse_double(e)});
    }
    if (!have_sigma || !have_header || table.values.empty()) throw DomainError("read_constants: incomplete table");
    return table;
}

MomentEstimate moment_asymptotic(double sigma, double k, double y, int N, const ConstantsTable& constants) {
    require_sigma(sigma);
    if (!(k >= 3)) throw DomainError("moment_asymptotic: k must be >= 3");
    if (N < 0 || N > constants.max_n()) throw DomainError("moment_asymptotic: N exceeds the constants table");
    const double L = std::log(k);
    CompensatedSum sum;
    double power = 1.0;
    for (int n = 0; n <= N; ++n) {
        sum.add(constants.c(n) / power);
        power *= L;
    }
    MomentEstimate est;
    est.sigma = sigma;
    est.k = k;
    est.y = y;
    est.value_log = std::pow(k, 1.0 / sigma) / L * sum.value();
    est.method = MomentMethod::asymptotic;
    est.resolution.terms = N;
    return est;
}

bool moment_range_ok(double sigma, double k, double y, double T) {
    return k * std::pow(y, 1.0 - sigma) <= 0.125 * (1.0 - sigma) * std::log(T);
}

}  // namespace zetadist
