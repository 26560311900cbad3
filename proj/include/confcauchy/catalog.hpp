#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "errors.hpp"

namespace confcauchy {

/// Named initial-datum catalog shared by the CLI and the validation
/// harness. All entries work for any dimension (product / radial forms).
namespace datum {

/// Normalized Gaussian density centered at `center`, per-coordinate
/// standard deviation sigma.
inline std::function<double(std::span<const double>)>
gaussian(double sigma, std::vector<double> center) {
    if (!(sigma > 0.0)) throw contract_error("datum: sigma must be positive");
    return [sigma, center = std::move(center)](std::span<const double> x) {
        double q = 0.0;
        for (std::size_t c = 0; c < x.size(); ++c) {
            const double d = x[c] - (c < center.size() ? center[c] : 0.0);
            q += d * d;
        }
        const double norm = std::pow(
            2.0 * std::numbers::pi * sigma * sigma,
            -0.5 * static_cast<double>(x.size()));
        return norm * std::exp(-q / (2.0 * sigma * sigma));
    };
}

/// sin(n pi x / L) in the first coordinate; the Dirichlet eigenfunction.
inline std::function<double(std::span<const double>)> sine_mode(int n,
                                                                double l) {
    if (n < 1) throw contract_error("datum: sine mode index must be >= 1");
    if (!(l > 0.0)) throw contract_error("datum: interval length must be > 0");
    const double w = n * std::numbers::pi / l;
    return [w](std::span<const double> x) { return std::sin(w * x[0]); };
}

/// sum_i coeffs[i] * x^i in the first coordinate.
inline std::function<double(std::span<const double>)>
polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) throw contract_error("datum: empty polynomial");
    return [coeffs = std::move(coeffs)](std::span<const double> x) {
        double acc = 0.0;
        for (std::size_t i = coeffs.size(); i-- > 0;)
            acc = acc * x[0] + coeffs[i];
        return acc;
    };
}

/// Indicator of the box [lo, hi] in every coordinate.
inline std::function<double(std::span<const double>)> indicator(double lo,
                                                                double hi) {
    if (!(hi > lo)) throw contract_error("datum: indicator needs lo < hi");
    return [lo, hi](std::span<const double> x) {
        for (double c : x)
            if (c < lo || c > hi) return 0.0;
        return 1.0;
    };
}

/// Adapter for 1-d call sites.
inline std::function<double(double)>
as_1d(std::function<double(std::span<const double>)> f) {
    return [f = std::move(f)](double x) {
        return f(std::span<const double>(&x, 1));
    };
}

} // namespace datum

} // namespace confcauchy
