#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"

namespace confcauchy {

/// Order alpha of the conformable derivative T_alpha, restricted to (0,1].
/// alpha = 1 is the classical limit and is treated exactly.
struct fractional_order {
    double alpha;

    explicit fractional_order(double a) : alpha(a) {
        if (!(a > 0.0) || !(a <= 1.0))
            throw contract_error("fractional_order: alpha must lie in (0,1]");
    }
};

/// The deterministic clock tau(t) = t^alpha / alpha. Conformable evolution
/// up to time t equals classical evolution up to tau(t).
inline double nonlinear_clock(fractional_order order, double t) {
    if (t < 0.0) throw contract_error("nonlinear_clock: t must be >= 0");
    if (order.alpha == 1.0) return t; // identity, exact in floating point
    if (t == 0.0) return 0.0;
    return std::pow(t, order.alpha) / order.alpha;
}

/// Real function of one variable with an optional analytic derivative.
struct scalar_function {
    std::function<double(double)> value;
    std::function<double(double)> derivative; // may be empty

    bool has_derivative() const { return static_cast<bool>(derivative); }
};

/// Geometric schedule of difference-quotient step sizes.
struct eps_schedule {
    double eps0  = 1e-2;
    double ratio = 0.5;
    int levels   = 8;

    void validate() const {
        if (!(eps0 > 0.0) || !(ratio > 0.0) || !(ratio < 1.0) || levels < 2)
            throw contract_error(
                "eps_schedule: need eps0 > 0, ratio in (0,1), levels >= 2");
    }
};

/// Derivative value together with an estimated truncation + roundoff error.
struct deriv_estimate {
    double value;
    double err_est;
};

// T_alpha(f)(t) = lim_{eps->0} (f(t + eps t^{1-alpha}) - f(t)) / eps.
//
// The one-sided quotient q(eps) has an expansion L + a1 eps + a2 eps^2 + ...
// for smooth f, so a Neville tableau over the geometric schedule removes the
// leading error terms one power at a time. The reported error combines the
// last diagonal correction with a rounding floor |f(t)| eps_mach / eps_min,
// which dominates once extrapolation reaches the noise.
template <typename F>
deriv_estimate conformable_derivative_limit(F&& f, fractional_order order,
                                            double t,
                                            eps_schedule sched = {}) {
    if (!(t > 0.0))
        throw contract_error("conformable_derivative_limit: t must be > 0");
    sched.validate();

    const double step_scale = std::pow(t, 1.0 - order.alpha);
    const double f0 = f(t);
    if (!std::isfinite(f0))
        throw evaluation_error(
            "conformable_derivative_limit: f(t) is not finite at t=" +
            std::to_string(t));

    const int levels = sched.levels;
    std::vector<double> diag(levels); // T_{j,j}
    std::vector<double> row(levels);  // previous tableau row
    double eps = sched.eps0;
    double max_abs_f = std::abs(f0);

    for (int j = 0; j < levels; ++j, eps *= sched.ratio) {
        const double fj = f(t + eps * step_scale);
        if (!std::isfinite(fj))
            throw evaluation_error(
                "conformable_derivative_limit: f not finite near t=" +
                std::to_string(t));
        max_abs_f = std::max(max_abs_f, std::abs(fj));

        double cur = (fj - f0) / eps;
        double pow_r = sched.ratio;
        // Neville update: column k removes the eps^k error term.
        for (int k = 1; k <= j; ++k, pow_r *= sched.ratio) {
            const double prev = row[k - 1];
            row[k - 1] = cur;
            cur = (cur - pow_r * prev) / (1.0 - pow_r);
        }
        row[j] = cur;
        diag[j] = cur;
    }

    // Take the diagonal entry with the smallest successive correction.
    double best = diag[levels - 1];
    double err  = std::numeric_limits<double>::infinity();
    for (int j = 1; j < levels; ++j) {
        const double delta = std::abs(diag[j] - diag[j - 1]);
        if (delta <= err) {
            err  = delta;
            best = diag[j];
        }
    }
    if (!std::isfinite(err) || err > std::max(std::abs(best), 1.0))
        throw convergence_error(
            "conformable_derivative_limit: quotient sequence does not settle");

    const double eps_min = sched.eps0 * std::pow(sched.ratio, levels - 1);
    const double roundoff =
        8.0 * std::numeric_limits<double>::epsilon() * max_abs_f / eps_min;
    return {best, err + roundoff};
}

inline deriv_estimate conformable_derivative_limit(const scalar_function& f,
                                                   fractional_order order,
                                                   double t,
                                                   eps_schedule sched = {}) {
    if (!f.value)
        throw contract_error("conformable_derivative_limit: missing evaluator");
    return conformable_derivative_limit(
        [&f](double u) { return f.value(u); }, order, t, sched);
}

/// T_alpha(f)(t) = t^{1-alpha} f'(t) for differentiable f.
inline double conformable_derivative_smooth(const scalar_function& f,
                                            fractional_order order, double t) {
    if (!(t > 0.0))
        throw contract_error("conformable_derivative_smooth: t must be > 0");
    if (!f.has_derivative())
        throw contract_error(
            "conformable_derivative_smooth: derivative evaluator required");
    return std::pow(t, 1.0 - order.alpha) * f.derivative(t);
}

namespace detail {

// Composite Simpson on [a,b]; n subintervals (rounded up to even).
template <typename F>
double simpson(F&& f, double a, double b, int n) {
    if (n < 2) n = 2;
    if (n % 2 != 0) ++n;
    const double h = (b - a) / n;
    double odd = 0.0, even = 0.0;
    for (int i = 1; i < n; i += 2) odd += f(a + i * h);
    for (int i = 2; i < n; i += 2) even += f(a + i * h);
    return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

} // namespace detail

// I_alpha^a(f)(t) = integral_a^t f(x) x^{alpha-1} dx.
//
// For a = 0 the substitution x = s^{1/alpha} maps the integrand to
// f(s^{1/alpha}) / alpha on [0, t^alpha], removing the endpoint singularity,
// so composite Simpson keeps its O(n^-4) rate uniformly in alpha. The rule
// is refined (n doubling) until two successive values agree or a cap is hit.
template <typename F>
double conformable_integral(F&& f, fractional_order order, double a, double t,
                            int n_nodes) {
    if (a < 0.0 || !(t > a))
        throw contract_error("conformable_integral: need 0 <= a < t");
    if (n_nodes < 1)
        throw contract_error("conformable_integral: n_nodes must be positive");

    const double alpha = order.alpha;
    auto integrand = [&](double x) {
        const double v = f(x) * std::pow(x, alpha - 1.0);
        if (!std::isfinite(v))
            throw evaluation_error(
                "conformable_integral: non-finite integrand at x=" +
                std::to_string(x));
        return v;
    };
    auto substituted = [&](double s) {
        const double x = std::pow(s, 1.0 / alpha);
        const double v = f(x) / alpha;
        if (!std::isfinite(v))
            throw evaluation_error(
                "conformable_integral: non-finite integrand at x=" +
                std::to_string(x));
        return v;
    };

    auto value = [&](int n) {
        return a == 0.0 ? detail::simpson(substituted, 0.0, std::pow(t, alpha), n)
                        : detail::simpson(integrand, a, t, n);
    };

    int n = n_nodes;
    double prev = value(n);
    for (int pass = 0; pass < 12; ++pass) {
        n *= 2;
        const double cur = value(n);
        if (std::abs(cur - prev) <=
            tol::abs_default + tol::rel_default * std::abs(cur))
            return cur;
        prev = cur;
    }
    return prev;
}

inline double conformable_integral(const scalar_function& f,
                                   fractional_order order, double a, double t,
                                   int n_nodes) {
    if (!f.value)
        throw contract_error("conformable_integral: missing evaluator");
    return conformable_integral([&f](double x) { return f.value(x); }, order,
                                a, t, n_nodes);
}

/// Eigenfunction of T_alpha: g(t) = c exp(lambda t^alpha / alpha), the
/// solution of T_alpha g = lambda g with g(0) = c.
inline std::complex<double> conformable_eigenfunction(
    std::complex<double> lambda, std::complex<double> c,
    fractional_order order, double t) {
    return c * std::exp(lambda * nonlinear_clock(order, t));
}

} // namespace confcauchy
