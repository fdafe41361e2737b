#include "zetadist/asymptotic_series.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "zetadist/error.hpp"
#include "zetadist/format.hpp"

namespace zetadist {

CoeffPolynomial::CoeffPolynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

CoeffPolynomial CoeffPolynomial::monomial(int degree, double c) {
    std::vector<double> v(static_cast<std::size_t>(degree) + 1, 0.0);
    v.back() = c;
    return CoeffPolynomial(std::move(v));
}

void CoeffPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double CoeffPolynomial::coeff(int i) const {
    return i >= 0 && i < static_cast<int>(coeffs_.size()) ? coeffs_[static_cast<std::size_t>(i)] : 0.0;
}

double CoeffPolynomial::operator()(double ell) const {
    double v = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * ell + *it;
    return v;
}

CoeffPolynomial& CoeffPolynomial::operator+=(const CoeffPolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0.0);
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
}

CoeffPolynomial& CoeffPolynomial::operator-=(const CoeffPolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0.0);
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
}

CoeffPolynomial& CoeffPolynomial::operator*=(double s) {
    for (double& c : coeffs_) c *= s;
    trim();
    return *this;
}

CoeffPolynomial operator*(const CoeffPolynomial& a, const CoeffPolynomial& b) {
    if (a.coeffs_.empty() || b.coeffs_.empty()) return {};
    std::vector<double> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return CoeffPolynomial(std::move(out));
}

AsymptoticSeries::AsymptoticSeries(int N) : N_(N) {
    if (N < 0 || N > 2 * kMaxSeriesOrder + 2) throw DomainError("AsymptoticSeries: order out of range");
    terms_.resize(static_cast<std::size_t>(N) + 1);
}

AsymptoticSeries::AsymptoticSeries(int N, std::vector<CoeffPolynomial> terms) : AsymptoticSeries(N) {
    if (terms.size() > terms_.size()) throw DomainError("AsymptoticSeries: more terms than the order allows");
    for (std::size_t i = 0; i < terms.size(); ++i) terms_[i] = std::move(terms[i]);
    check_degrees();
}

AsymptoticSeries AsymptoticSeries::constant(int N, double c) {
    AsymptoticSeries s(N);
    s.terms_[0] = CoeffPolynomial::constant(c);
    return s;
}

void AsymptoticSeries::set_term(int n, CoeffPolynomial p) {
    terms_.at(static_cast<std::size_t>(n)) = std::move(p);
    check_degrees();
}

double AsymptoticSeries::evaluate(double L, double ell) const {
    double v = 0.0;
    for (int n = N_; n >= 0; --n) v = v / L + terms_[static_cast<std::size_t>(n)](ell);
    return v;
}

AsymptoticSeries AsymptoticSeries::shifted(int m) const {
    AsymptoticSeries out(N_);
    for (int n = 0; n + m <= N_; ++n) out.terms_[static_cast<std::size_t>(n + m)] = terms_[static_cast<std::size_t>(n)];
    return out;
}

void AsymptoticSeries::check_degrees() const {
    for (int n = 0; n <= N_; ++n) {
        if (terms_[static_cast<std::size_t>(n)].degree() > n) {
            throw InvariantError("AsymptoticSeries: term " + std::to_string(n) + " has degree " +
                                 std::to_string(terms_[static_cast<std::size_t>(n)].degree()));
        }
    }
}

namespace {

void require_same_order(const AsymptoticSeries& a, const AsymptoticSeries& b) {
    if (a.order() != b.order()) throw DomainError("series order mismatch");
}

bool has_constant_part(const AsymptoticSeries& s) { return s.term(0).degree() >= 0; }

// sum_j coef[j] s^j for s with zero order-0 part; exact through order N.
AsymptoticSeries compose_powers(const AsymptoticSeries& s, const std::vector<double>& coef) {
    AsymptoticSeries out = AsymptoticSeries::constant(s.order(), coef[0]);
    AsymptoticSeries power = AsymptoticSeries::constant(s.order(), 1.0);
    for (std::size_t j = 1; j < coef.size(); ++j) {
        power = series_mul(power, s);
        out = series_add(out, series_scale(power, coef[j]));
    }
    return out;
}

}  // namespace

AsymptoticSeries series_add(const AsymptoticSeries& a, const AsymptoticSeries& b) {
    require_same_order(a, b);
    std::vector<CoeffPolynomial> t(a.terms());
    for (int n = 0; n <= a.order(); ++n) t[static_cast<std::size_t>(n)] += b.term(n);
    return AsymptoticSeries(a.order(), std::move(t));
}

AsymptoticSeries series_sub(const AsymptoticSeries& a, const AsymptoticSeries& b) {
    return series_add(a, series_scale(b, -1.0));
}

AsymptoticSeries series_scale(const AsymptoticSeries& a, double s) {
    std::vector<CoeffPolynomial> t(a.terms());
    for (auto& p : t) p *= s;
    return AsymptoticSeries(a.order(), std::move(t));
}

AsymptoticSeries series_add(const AsymptoticSeries& a, double s) {
    return series_add(a, AsymptoticSeries::constant(a.order(), s));
}

AsymptoticSeries series_mul(const AsymptoticSeries& a, const AsymptoticSeries& b) {
    require_same_order(a, b);
    const int N = a.order();
    std::vector<CoeffPolynomial> t(static_cast<std::size_t>(N) + 1);
    for (int i = 0; i <= N; ++i)
        for (int j = 0; i + j <= N; ++j) t[static_cast<std::size_t>(i + j)] += a.term(i) * b.term(j);
    return AsymptoticSeries(N, std::move(t));
}

AsymptoticSeries series_recip(const AsymptoticSeries& s) {
    const double c0 = s.leading_constant();
    if (c0 == 0.0) throw DomainError("series_recip: constant term is zero");
    AsymptoticSeries r = series_scale(s, 1.0 / c0);
    r.set_term(0, CoeffPolynomial());
    std::vector<double> coef(static_cast<std::size_t>(s.order()) + 1);
    for (std::size_t j = 0; j < coef.size(); ++j) coef[j] = (j % 2 == 0 ? 1.0 : -1.0);
    return series_scale(compose_powers(r, coef), 1.0 / c0);
}

AsymptoticSeries series_log1p(const AsymptoticSeries& s) {
    if (has_constant_part(s)) throw DomainError("series_log1p: argument has a constant term");
    std::vector<double> coef(static_cast<std::size_t>(s.order()) + 1, 0.0);
    for (std::size_t j = 1; j < coef.size(); ++j) coef[j] = (j % 2 == 1 ? 1.0 : -1.0) / static_cast<double>(j);
    return compose_powers(s, coef);
}

AsymptoticSeries series_exp(const AsymptoticSeries& s) {
    if (has_constant_part(s)) throw DomainError("series_exp: argument has a constant term");
    std::vector<double> coef(static_cast<std::size_t>(s.order()) + 1, 1.0);
    for (std::size_t j = 1; j < coef.size(); ++j) coef[j] = coef[j - 1] / static_cast<double>(j);
    return compose_powers(s, coef);
}

std::vector<double> an_sequence(double sigma, const std::vector<double>& c, int N) {
    if (N < 0 || static_cast<std::size_t>(N) >= c.size()) throw DomainError("an_sequence: constants do not cover n <= N");
    std::vector<double> a(static_cast<std::size_t>(N) + 1);
    a[0] = c[0];
    for (int n = 1; n <= N; ++n)
        a[static_cast<std::size_t>(n)] = c[static_cast<std::size_t>(n)] - sigma * n * c[static_cast<std::size_t>(n - 1)];
    return a;
}

std::vector<double> an_sequence(const ConstantsTable& constants, int N) {
    std::vector<double> c;
    for (const auto& v : constants.values) c.push_back(v.c_n);
    return an_sequence(constants.sigma, c, N);
}

namespace {

void require_series_args(double sigma, int N) {
    if (!(sigma > 0.5 && sigma < 1.0)) throw DomainError("sigma must lie in (1/2, 1)");
    if (N < 0 || N > kMaxSeriesOrder) throw DomainError("series order must lie in [0, 4]");
}

struct Inversion {
    AsymptoticSeries u;       // log k = beta L (1 + u)
    AsymptoticSeries lam_inv; // 1 / log k
    AsymptoticSeries w;       // L u - (ell + c)
    double c;
};

// With beta = sigma/(1-sigma) and log k = beta L (1 + u), the saddle
// relation is exactly
//   L u = ell + c + log(1 + u) - log(1 + A),
//   c = log(sigma beta / a_0),  A = sum_{n>=1} (a_n / a_0) (log k)^{-n}.
// Each substitution fixes one more order of u.
Inversion invert_saddle(double sigma, const std::vector<double>& a_seq, int N) {
    if (a_seq.empty() || !(a_seq[0] > 0)) throw DomainError("a_0 must be positive");
    const double beta = sigma / (1.0 - sigma);
    const double c = std::log(sigma * beta / a_seq[0]);
    const AsymptoticSeries one = AsymptoticSeries::constant(N, 1.0);
    AsymptoticSeries u(N);
    AsymptoticSeries lam_inv(N), w(N);
    for (int iter = 0; iter <= N + 1; ++iter) {
        lam_inv = series_scale(series_recip(series_add(u, 1.0)), 1.0 / beta).shifted(1);
        AsymptoticSeries A(N);
        AsymptoticSeries power = one;
        for (std::size_t n = 1; n < a_seq.size(); ++n) {
            power = series_mul(power, lam_inv);
            A = series_add(A, series_scale(power, a_seq[n] / a_seq[0]));
        }
        w = series_sub(series_log1p(u), series_log1p(A));
        AsymptoticSeries next(N);
        if (N >= 1) next.set_term(1, CoeffPolynomial({c, 1.0}));
        next = series_add(next, w.shifted(1));
        u = next;
    }
    return {u, lam_inv, w, c};
}

}  // namespace

AsymptoticSeries bn_expansion(double sigma, const std::vector<double>& a_seq, int N) {
    require_series_args(sigma, N);
    const double beta = sigma / (1.0 - sigma);
    const Inversion inv = invert_saddle(sigma, a_seq, N);
    AsymptoticSeries b = series_scale(inv.u, beta);
    b.set_term(0, CoeffPolynomial::constant(beta));
    return b;
}

// k^{1/sigma} / (tau log^sigma tau)^{1/(1-sigma)} = L e^{c/(1-sigma)} exp(W/(1-sigma))
// and 1/(sigma log k) = (1-sigma)/(sigma^2 L) (1+u)^{-1}, so
// E / reference = K exp(W/(1-sigma)) (1+u)^{-1} sum_n (a_n - sigma C_n) (log k)^{-n}.
std::vector<CoeffPolynomial> frak_a_polynomials(double sigma, const ConstantsTable& constants, int N) {
    require_series_args(sigma, N);
    if (constants.max_n() < N + 1) throw DomainError("frak_a_polynomials: constants must cover n <= N+1");
    const std::vector<double> a = an_sequence(constants, N + 1);
    const Inversion inv = invert_saddle(sigma, a, N);
    const double K = (1.0 - sigma) / (sigma * sigma) * std::exp(inv.c / (1.0 - sigma));

    AsymptoticSeries sum = AsymptoticSeries::constant(N, a[0] - sigma * constants.c(0));
    AsymptoticSeries power = AsymptoticSeries::constant(N, 1.0);
    for (int n = 1; n <= N; ++n) {
        power = series_mul(power, inv.lam_inv);
        sum = series_add(sum, series_scale(power, a[static_cast<std::size_t>(n)] - sigma * constants.c(n)));
    }
    AsymptoticSeries out = series_mul(series_exp(series_scale(inv.w, 1.0 / (1.0 - sigma))),
                                      series_recip(series_add(inv.u, 1.0)));
    out = series_scale(series_mul(out, sum), K);
    return out.terms();
}

double frak_a0_closed_form(double sigma, double c0) {
    return std::pow(std::pow(sigma, 2 * sigma) / (std::pow(c0, sigma) * std::pow(1 - sigma, 2 * sigma - 1)),
                    1 / (1 - sigma));
}

void write_polynomials(std::ostream& out, const std::vector<CoeffPolynomial>& polys) {
    for (std::size_t n = 0; n < polys.size(); ++n) {
        out << n << ':';
        const int deg = std::max(polys[n].degree(), 0);
        for (int i = 0; i <= deg; ++i) out << ' ' << fmt17(polys[n].coeff(i));
        out << '\n';
    }
}

std::vector<CoeffPolynomial> read_polynomials(std::istream& in) {
    std::vector<CoeffPolynomial> polys;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) throw DomainError("read_polynomials: missing ':' in " + line);
        if (static_cast<std::size_t>(parse_double(line.substr(0, colon))) != polys.size())
            throw DomainError("read_polynomials: rows must be consecutive from 0");
        std::istringstream row(line.substr(colon + 1));
        std::vector<double> c;
        std::string tok;
        while (row >> tok) c.push_back(parse_double(tok));
        polys.emplace_back(std::move(c));
    }
    return polys;
}

}  // namespace zetadist
