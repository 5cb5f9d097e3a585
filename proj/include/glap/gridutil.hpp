#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace glap {

/// Log-spaced grid on [a, b], endpoints included.
inline std::vector<double> logspace(double a, double b, int n) {
    if (a <= 0 || b <= a || n < 2) {
        throw std::invalid_argument("logspace: need 0 < a < b and n >= 2");
    }
    std::vector<double> t(static_cast<std::size_t>(n));
    const double r = std::log(b / a) / (n - 1);
    for (int i = 0; i < n; ++i) {
        t[static_cast<std::size_t>(i)] = a * std::exp(r * i);
    }
    t.front() = a;
    t.back() = b;
    return t;
}

inline std::vector<double> linspace(double a, double b, int n) {
    if (n < 2) throw std::invalid_argument("linspace: n >= 2");
    std::vector<double> t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        t[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
    }
    return t;
}

struct LsqLine {
    double slope = 0;
    double intercept = 0;
};

/// Least-squares fit y = slope*x + intercept.
inline LsqLine lsq_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("lsq_fit: need two equal-length samples");
    }
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0) throw std::invalid_argument("lsq_fit: degenerate abscissae");
    LsqLine out;
    out.slope = (n * sxy - sx * sy) / denom;
    out.intercept = (sy - out.slope * sx) / n;
    return out;
}

}  // namespace glap
