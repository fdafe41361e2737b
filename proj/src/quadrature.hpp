#pragma once

// Internal adaptive quadrature shared by special_fns and moments: global
// adaptive bisection with the nested 7-point Gauss / 15-point Kronrod pair.
// Node and weight tables come from Boost.Math.

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "zetadist/error.hpp"
#include "zetadist/summation.hpp"

namespace zetadist::detail {

struct QuadratureResult {
    double value;
    double error;
    int intervals;
};

inline constexpr int kMaxIntervals = 4000;

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel kronrod_panel(F& f, double a, double b) {
    using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
    using Gauss = boost::math::quadrature::gauss<double, 7>;
    const auto& x = Kronrod::abscissa();
    const auto& wk = Kronrod::weights();
    const auto& wg = Gauss::weights();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double f0 = f(mid);
    double kronrod = f0 * wk[0];
    double gauss = f0 * wg[0];
    double l1 = std::fabs(f0) * wk[0];
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double fp = f(mid + half * x[i]);
        const double fm = f(mid - half * x[i]);
        kronrod += (fp + fm) * wk[i];
        l1 += (std::fabs(fp) + std::fabs(fm)) * wk[i];
        if (i % 2 == 0) gauss += (fp + fm) * wg[i / 2];
    }
    const double value = half * kronrod;
    const double floor = 2 * std::numeric_limits<double>::epsilon() * std::fabs(half) * l1;
    return {a, b, value, std::max(std::fabs(half * (kronrod - gauss)), floor)};
}

// Integrates f over [a, b] until the summed |Kronrod - Gauss| estimate is
// at most abs_tol. Throws NumericError when the interval budget runs out.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double abs_tol, const char* what,
                                    std::vector<double> breakpoints = {}) {
    if (a == b) return {0.0, 0.0, 0};
    std::vector<double> cuts{a};
    for (double c : breakpoints) {
        if (c > a && c < b) cuts.push_back(c);
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());

    std::priority_queue<Panel> panels;
    double total_error = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Panel p = kronrod_panel(f, cuts[i], cuts[i + 1]);
        total_error += p.error;
        panels.push(p);
    }
    int count = static_cast<int>(panels.size());
    while (total_error > abs_tol && count < kMaxIntervals) {
        const Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Panel left = kronrod_panel(f, worst.a, mid);
        const Panel right = kronrod_panel(f, mid, worst.b);
        total_error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++count;
    }

    std::vector<Panel> leaves;
    leaves.reserve(panels.size());
    while (!panels.empty()) {
        leaves.push_back(panels.top());
        panels.pop();
    }
    std::sort(leaves.begin(), leaves.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
    CompensatedSum value, error;
    for (const Panel& p : leaves) {
        value.add(p.value);
        error.add(p.error);
    }
    const QuadratureResult result{value.value(), error.value(), count};
    if (!std::isfinite(result.value) || result.error > abs_tol) {
        std::ostringstream msg;
        msg.precision(6);
        msg << what << ": quadrature did not converge on [" << a << ", " << b << "]: estimate " << result.value
            << ", error " << result.error << " > tolerance " << abs_tol << " after " << count << " intervals";
        throw NumericError(msg.str());
    }
    return result;
}

}  // namespace zetadist::detail
