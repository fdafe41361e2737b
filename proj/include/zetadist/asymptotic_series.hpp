#pragma once

#include <iosfwd>
#include <vector>

#include "zetadist/moments.hpp"

namespace zetadist {

/// Real polynomial in ell, ascending coefficients, trailing zeros trimmed.
class CoeffPolynomial {
public:
    CoeffPolynomial() = default;
    explicit CoeffPolynomial(std::vector<double> coeffs);
    static CoeffPolynomial constant(double c) { return CoeffPolynomial({c}); }
    static CoeffPolynomial monomial(int degree, double c = 1.0);

    /// -1 for the zero polynomial.
    [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] const std::vector<double>& coeffs() const { return coeffs_; }
    [[nodiscard]] double coeff(int i) const;
    [[nodiscard]] double operator()(double ell) const;

    CoeffPolynomial& operator+=(const CoeffPolynomial& o);
    CoeffPolynomial& operator-=(const CoeffPolynomial& o);
    CoeffPolynomial& operator*=(double s);
    friend CoeffPolynomial operator+(CoeffPolynomial a, const CoeffPolynomial& b) { return a += b; }
    friend CoeffPolynomial operator-(CoeffPolynomial a, const CoeffPolynomial& b) { return a -= b; }
    friend CoeffPolynomial operator*(CoeffPolynomial a, double s) { return a *= s; }
    friend CoeffPolynomial operator*(double s, CoeffPolynomial a) { return a *= s; }
    friend CoeffPolynomial operator*(const CoeffPolynomial& a, const CoeffPolynomial& b);
    friend bool operator==(const CoeffPolynomial&, const CoeffPolynomial&) = default;

private:
    void trim();
    std::vector<double> coeffs_;
};

inline constexpr int kMaxSeriesOrder = 4;

/// sum_{n <= N} P_n(ell) / L^n with deg P_n <= n. Every operation truncates
/// at order N and checks the degree bound (InvariantError on violation).
class AsymptoticSeries {
public:
    explicit AsymptoticSeries(int N);
    AsymptoticSeries(int N, std::vector<CoeffPolynomial> terms);
    static AsymptoticSeries constant(int N, double c);

    [[nodiscard]] int order() const { return N_; }
    [[nodiscard]] const std::vector<CoeffPolynomial>& terms() const { return terms_; }
    [[nodiscard]] const CoeffPolynomial& term(int n) const { return terms_.at(static_cast<std::size_t>(n)); }
    void set_term(int n, CoeffPolynomial p);
    [[nodiscard]] double leading_constant() const { return terms_[0].coeff(0); }
    /// sum_n P_n(ell) / L^n.
    [[nodiscard]] double evaluate(double L, double ell) const;
    /// Multiply by L^{-m}, dropping what falls beyond order N.
    [[nodiscard]] AsymptoticSeries shifted(int m) const;
    void check_degrees() const;

private:
    int N_;
    std::vector<CoeffPolynomial> terms_;
};

AsymptoticSeries series_add(const AsymptoticSeries& a, const AsymptoticSeries& b);
AsymptoticSeries series_sub(const AsymptoticSeries& a, const AsymptoticSeries& b);
AsymptoticSeries series_scale(const AsymptoticSeries& a, double s);
AsymptoticSeries series_add(const AsymptoticSeries& a, double s);
AsymptoticSeries series_mul(const AsymptoticSeries& a, const AsymptoticSeries& b);
/// DomainError if the constant term vanishes.
AsymptoticSeries series_recip(const AsymptoticSeries& s);
/// log(1 + s); DomainError unless s has no order-0 part.
AsymptoticSeries series_log1p(const AsymptoticSeries& s);
/// exp(s); DomainError unless s has no order-0 part.
AsymptoticSeries series_exp(const AsymptoticSeries& s);

/// a_0 = C_0, a_n = C_n - sigma n C_{n-1}, n <= N. DomainError if the table is short.
std::vector<double> an_sequence(const ConstantsTable& constants, int N);
std::vector<double> an_sequence(double sigma, const std::vector<double>& c, int N);

/// log k / log tau as a series in L = log tau, ell = log log tau, where k
/// solves tau = k^{1/sigma-1} / (sigma log k) * sum_n a_n (log k)^{-n}.
/// The constant offsets log sigma, log a_0 are carried exactly.
AsymptoticSeries bn_expansion(double sigma, const std::vector<double>& a_seq, int N);

/// Coefficients of -log Phi / (tau log^sigma tau)^{1/(1-sigma)} for
/// -log Phi = k^{1/sigma}/(sigma log k) sum_{n<=N} (a_n - sigma C_n)(log k)^{-n}
/// at the saddle k(tau). Needs C_0 .. C_{N+1}.
std::vector<CoeffPolynomial> frak_a_polynomials(double sigma, const ConstantsTable& constants, int N);

/// Closed form (sigma^{2 sigma} / (C_0^sigma (1-sigma)^{2 sigma-1}))^{1/(1-sigma)}.
double frak_a0_closed_form(double sigma, double c0);

/// One line "n: c0 c1 ... cn" per polynomial, 17 significant digits.
void write_polynomials(std::ostream& out, const std::vector<CoeffPolynomial>& polys);
std::vector<CoeffPolynomial> read_polynomials(std::istream& in);

}  // namespace zetadist
