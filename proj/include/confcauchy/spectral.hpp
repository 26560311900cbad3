#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "conformable.hpp"
#include "errors.hpp"

namespace confcauchy {

// Dirichlet eigenpairs of the Laplacian on [0, L]:
//   lambda_n = (n pi / L)^2,  phi_n(x) = sin(n pi x / L).
// Eigenfunctions are stored unnormalized; the 2/L factor is carried in the
// expansion coefficients and in the kernel series.

struct spectral_basis {
    double length_l = 0.0;
    int n_modes = 0;
    std::vector<double> eigenvalues;  // lambda_n, n = 1..N
    std::vector<double> coefficients; // b_n = (2/L) int_0^L f sin(n pi y/L) dy
};

namespace detail {

// Composite Simpson of f * sin(n pi y / L) over [0, L].
inline double sine_moment(const std::function<double(double)>& f, double l,
                          int mode, int intervals) {
    const double w = mode * std::numbers::pi / l;
    auto g = [&](double y) { return f(y) * std::sin(w * y); };
    if (intervals % 2 != 0) ++intervals;
    const double h = l / intervals;
    double odd = 0.0, even = 0.0;
    for (int i = 1; i < intervals; i += 2) odd += g(i * h);
    for (int i = 2; i < intervals; i += 2) even += g(i * h);
    return h / 3.0 * (g(0.0) + g(l) + 4.0 * odd + 2.0 * even);
}

} // namespace detail

inline spectral_basis expand_sine_basis(const std::function<double(double)>& f,
                                        double length_l, int n_modes,
                                        int quad_intervals = 0) {
    if (!(length_l > 0.0))
        throw contract_error("expand_sine_basis: length must be positive");
    if (n_modes < 1)
        throw contract_error("expand_sine_basis: need at least one mode");
    if (quad_intervals <= 0)
        quad_intervals = std::max(2048, 16 * n_modes);

    spectral_basis basis;
    basis.length_l = length_l;
    basis.n_modes  = n_modes;
    basis.eigenvalues.resize(n_modes);
    basis.coefficients.resize(n_modes);
    for (int n = 1; n <= n_modes; ++n) {
        const double w = n * std::numbers::pi / length_l;
        basis.eigenvalues[n - 1] = w * w;
        basis.coefficients[n - 1] =
            2.0 / length_l *
            detail::sine_moment(f, length_l, n, quad_intervals);
    }
    return basis;
}

struct spectral_result {
    std::vector<double> values;
    double tail_bound = 0.0;
    int n_modes = 0;
    bool truncation_warning = false;
};

namespace detail {

// Geometric bound on sum_{n>N} e^{-lambda_n s}: consecutive eigenvalue gaps
// grow, so the tail is dominated once lambda_n s >= 1.
inline double mode_tail(double length_l, int n_modes, double s,
                        double coeff_scale) {
    if (s <= 0.0) return std::numeric_limits<double>::infinity();
    const double w1 = std::numbers::pi / length_l;
    const double next = static_cast<double>(n_modes) + 1.0;
    const double lam_next = next * next * w1 * w1;
    const double gap = (2.0 * next + 1.0) * w1 * w1; // lambda_{N+2}-lambda_{N+1}
    const double q = std::exp(-gap * s);
    if (q >= 1.0) return std::numeric_limits<double>::infinity();
    return coeff_scale * std::exp(-lam_next * s) / (1.0 - q);
}

} // namespace detail

/// u(t,x) = sum_n b_n sin(n pi x/L) e^{-lambda_n tau(t)} at the query points.
inline spectral_result solve_spectral_interval(const spectral_basis& basis,
                                               fractional_order order, double t,
                                               std::span<const double> query_x) {
    if (t < 0.0)
        throw contract_error("solve_spectral_interval: t must be >= 0");
    for (double x : query_x)
        if (x < 0.0 || x > basis.length_l)
            throw contract_error(
                "solve_spectral_interval: query point outside [0,L]");

    const double s = nonlinear_clock(order, t);
    spectral_result result;
    result.n_modes = basis.n_modes;
    result.values.assign(query_x.size(), 0.0);

    std::vector<double> damped(basis.n_modes);
    for (int n = 0; n < basis.n_modes; ++n)
        damped[n] = basis.coefficients[n] * std::exp(-basis.eigenvalues[n] * s);

    const double w = std::numbers::pi / basis.length_l;
    for (std::size_t q = 0; q < query_x.size(); ++q) {
        double acc = 0.0;
        for (int n = basis.n_modes; n >= 1; --n) // small terms first
            acc += damped[n - 1] * std::sin(n * w * query_x[q]);
        result.values[q] = acc;
    }

    double coeff_scale = 0.0;
    for (int n = std::max(0, basis.n_modes - 8); n < basis.n_modes; ++n)
        coeff_scale = std::max(coeff_scale, std::abs(basis.coefficients[n]));
    result.tail_bound = detail::mode_tail(basis.length_l, basis.n_modes, s,
                                          coeff_scale);
    return result;
}

/// Expands f with the default mode count and doubles it (up to max_modes)
/// until the reported tail bound is below tol; sets truncation_warning if
/// the cap is reached first.
inline spectral_result solve_spectral_auto(
    const std::function<double(double)>& f, double length_l,
    fractional_order order, double t, std::span<const double> query_x,
    double tol = tol::abs_default, int start_modes = 256,
    int max_modes = 4096) {
    int n_modes = start_modes;
    for (;;) {
        const spectral_basis basis = expand_sine_basis(f, length_l, n_modes);
        spectral_result result =
            solve_spectral_interval(basis, order, t, query_x);
        if (result.tail_bound <= tol || n_modes >= max_modes) {
            result.truncation_warning = result.tail_bound > tol;
            return result;
        }
        n_modes = std::min(max_modes, 2 * n_modes);
    }
}

struct kernel_value {
    double value = 0.0;
    double tail_bound = 0.0;
};

/// Killed heat kernel on [0, L] as a truncated eigenfunction series,
///   p_D(t,x,y) = (2/L) sum_n e^{-lambda_n t} sin(n pi x/L) sin(n pi y/L),
/// summed until the geometric tail bound drops below tail_tol.
inline kernel_value kernel_series_pd(double length_l, double t, double x,
                                     double y, double tail_tol = 1e-15,
                                     int max_modes = 100000) {
    if (!(length_l > 0.0))
        throw contract_error("kernel_series_pd: length must be positive");
    if (!(t > 0.0))
        throw contract_error("kernel_series_pd: series requires t > 0");
    if (x < 0.0 || x > length_l || y < 0.0 || y > length_l)
        throw contract_error("kernel_series_pd: points must lie in [0,L]");

    const double w = std::numbers::pi / length_l;
    const double norm = 2.0 / length_l;
    double acc = 0.0;
    int n = 0;
    double tail = std::numeric_limits<double>::infinity();
    while (n < max_modes) {
        ++n;
        const double lam = n * w * (n * w);
        acc += norm * std::exp(-lam * t) * std::sin(n * w * x) *
               std::sin(n * w * y);
        tail = detail::mode_tail(length_l, n, t, norm);
        if (tail <= tail_tol) break;
    }
    return {acc, tail};
}

inline kernel_value kernel_series_pd(const spectral_basis& basis, double t,
                                     double x, double y,
                                     double tail_tol = 1e-15) {
    return kernel_series_pd(basis.length_l, t, x, y, tail_tol);
}

} // namespace confcauchy
