#pragma once

#include <cmath>
#include <complex>

namespace zetadist {

// Neumaier's variant of Kahan summation. Order of add() calls fixes the
// result bit-for-bit.
class CompensatedSum {
public:
    constexpr CompensatedSum() = default;
    explicit constexpr CompensatedSum(double init) : sum_(init) {}

    void add(double x) {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    CompensatedSum& operator+=(double x) {
        add(x);
        return *this;
    }

    void merge(const CompensatedSum& other) {
        add(other.sum_);
        add(other.comp_);
    }

    [[nodiscard]] double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class CompensatedComplexSum {
public:
    void add(std::complex<double> z) {
        re_.add(z.real());
        im_.add(z.imag());
    }

    CompensatedComplexSum& operator+=(std::complex<double> z) {
        add(z);
        return *this;
    }

    void merge(const CompensatedComplexSum& other) {
        re_.merge(other.re_);
        im_.merge(other.im_);
    }

    [[nodiscard]] std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

}  // namespace zetadist
