#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "errors.hpp"

namespace confcauchy {

/// Pairwise (cascade) summation. Deterministic for a fixed element order
/// and accurate to O(log n) rounding errors.
inline double pairwise_sum(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

struct mean_se {
    double mean;
    double std_error; // sample std / sqrt(n)
    std::size_t n;
};

inline mean_se sample_mean_se(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 2) throw contract_error("sample_mean_se: need at least 2 samples");
    const double mean = pairwise_sum(xs) / static_cast<double>(n);
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = xs[i] - mean;
        sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / static_cast<double>(n - 1);
    return {mean, std::sqrt(var / static_cast<double>(n)), n};
}

inline double standard_normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

inline double cauchy_cdf(double x, double scale) {
    return 0.5 + std::atan(x / scale) / std::numbers::pi;
}

/// Asymptotic Kolmogorov distribution: P(sqrt(n) D > lambda).
inline double kolmogorov_pvalue(double lambda) {
    if (lambda < 1e-8) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term =
            std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-16) break;
    }
    return std::min(1.0, std::max(0.0, 2.0 * sum));
}

/// One-sample KS test against a continuous CDF. Returns the p-value.
inline double ks_test_one_sample(std::vector<double> xs,
                                 const std::function<double(double)>& cdf) {
    const std::size_t n = xs.size();
    if (n == 0) throw contract_error("ks_test_one_sample: empty sample");
    std::sort(xs.begin(), xs.end());
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f  = cdf(xs[i]);
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        d = std::max(d, std::max(f - lo, hi - f));
    }
    const double sn = std::sqrt(static_cast<double>(n));
    return kolmogorov_pvalue((sn + 0.12 + 0.11 / sn) * d);
}

/// Two-sample KS test. Returns the p-value.
inline double ks_test_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty())
        throw contract_error("ks_test_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const std::size_t na = a.size(), nb = b.size();
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < na && j < nb) {
        const double x = std::min(a[i], b[j]);
        while (i < na && a[i] <= x) ++i;
        while (j < nb && b[j] <= x) ++j;
        const double fa = static_cast<double>(i) / na;
        const double fb = static_cast<double>(j) / nb;
        d = std::max(d, std::abs(fa - fb));
    }
    const double ne = static_cast<double>(na) * nb / (na + nb);
    const double sn = std::sqrt(ne);
    return kolmogorov_pvalue((sn + 0.12 + 0.11 / sn) * d);
}

/// Least-squares slope of y over x.
inline double least_squares_slope(std::span<const double> x,
                                  std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw contract_error("least_squares_slope: need matching sizes >= 2");
    const double n  = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-300)
        throw contract_error("least_squares_slope: degenerate abscissae");
    return (n * sxy - sx * sy) / denom;
}

} // namespace confcauchy
