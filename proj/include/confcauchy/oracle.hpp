#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "conformable.hpp"
#include "errors.hpp"
#include "grid.hpp"
#include "levy_symbol.hpp"
#include "stats.hpp"

namespace confcauchy {

// Independent finite-difference oracle for T_alpha u = L u. It shares no
// evolution code with the solvers: the transform is a direct O(N^2) DFT
// (not the FFT), and time is integrated by explicit RK2 instead of a
// one-shot multiplier, so agreement with solve_fourier / solve_spectral is
// evidence rather than tautology.

enum class stepping_mode {
    direct_t,      // du/dt = t^{alpha-1} L u, graded mesh, start at t0 > 0
    substituted_s, // du/ds = L u on s in [0, tau(t_final)]
};

struct stepping_scheme {
    stepping_mode mode = stepping_mode::substituted_s;
    double t_final = 1.0;
    int n_steps = 1000;
    double safety = 0.9; // fraction of the RK2 stability bound

    void validate() const {
        if (!(t_final > 0.0))
            throw contract_error("stepping_scheme: t_final must be > 0");
        if (n_steps < 10)
            throw contract_error("stepping_scheme: n_steps must be >= 10");
        if (!(safety > 0.0) || safety > 1.0)
            throw contract_error("stepping_scheme: safety must be in (0,1]");
    }
};

enum class fd_operator_kind { laplacian_1d, spectral_multiplier };

struct fd_operator {
    fd_operator_kind kind = fd_operator_kind::laplacian_1d;
    const levy_symbol* sym = nullptr; // spectral_multiplier only

    static fd_operator laplacian() { return {}; }
    static fd_operator spectral(const levy_symbol& s) {
        return {fd_operator_kind::spectral_multiplier, &s};
    }
};

enum class fd_boundary_kind { free_periodic, dirichlet_interval };

struct fd_boundary {
    fd_boundary_kind kind = fd_boundary_kind::free_periodic;
    double length_l = 0.0; // dirichlet_interval only

    static fd_boundary periodic() { return {}; }
    static fd_boundary dirichlet(double l) {
        return {fd_boundary_kind::dirichlet_interval, l};
    }
};

namespace detail {

inline void direct_dft(std::span<const std::complex<double>> in,
                       std::span<std::complex<double>> out, bool inverse) {
    const std::size_t n = in.size();
    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t m = 0; m < n; ++m) {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            const double angle = sign * 2.0 * std::numbers::pi *
                                 static_cast<double>((m * j) % n) /
                                 static_cast<double>(n);
            acc += in[j] * std::complex<double>(std::cos(angle),
                                                std::sin(angle));
        }
        out[m] = inverse ? acc / static_cast<double>(n) : acc;
    }
}

// RK2 (Heun) right-hand side magnitudes for the stability bound:
// laplacian eigenvalues lie in [-4/h^2, 0]; multiplier modes in Re psi <= 0.
inline double operator_spectral_radius(const fd_operator& op,
                                       const grid_field& f) {
    if (op.kind == fd_operator_kind::laplacian_1d)
        return 4.0 / (f.spacing[0] * f.spacing[0]);
    double rad = 0.0;
    const int n = f.extent[0];
    for (int m = 0; m < n; ++m) {
        const int signed_m = m <= n / 2 ? m : m - n;
        const double k = 2.0 * std::numbers::pi * signed_m /
                         (static_cast<double>(n) * f.spacing[0]);
        rad = std::max(rad, std::abs(evaluate_symbol(*op.sym, k)));
    }
    return rad;
}

} // namespace detail

// Explicit RK2 time stepping of the conformable problem in either of its
// two equivalent classical forms. direct-t mode steps
// du/dt = t^{alpha-1} L u on the graded mesh dt_i = h t_i^{1-alpha}
// (h = tau(t_final)/n_steps), which keeps the effective step
// dt_i t_i^{alpha-1} = h uniformly inside the stability bound; it starts at
// t0 = (alpha s0)^{1/alpha} with s0 = 1e-6 tau(t_final), where the state is
// produced by a short substituted-s integration over [0, s0]. That removes
// the t=0 coefficient singularity without touching the direct-form test
// itself.
inline grid_field solve_fd(const grid_field& f, const fd_operator& op,
                           fractional_order order,
                           const stepping_scheme& scheme,
                           const fd_boundary& boundary) {
    f.validate();
    scheme.validate();
    if (f.dim != 1)
        throw contract_error("solve_fd: oracle supports 1-d grids only");
    if (op.kind == fd_operator_kind::spectral_multiplier && !op.sym)
        throw contract_error("solve_fd: spectral operator requires a symbol");
    if (op.kind == fd_operator_kind::spectral_multiplier &&
        boundary.kind != fd_boundary_kind::free_periodic)
        throw contract_error(
            "solve_fd: spectral multiplier requires a periodic boundary");
    const int n = f.extent[0];
    const bool dirichlet = boundary.kind == fd_boundary_kind::dirichlet_interval;
    if (dirichlet) {
        const double l = boundary.length_l;
        if (!(l > 0.0))
            throw contract_error("solve_fd: dirichlet boundary needs L > 0");
        const double span = f.spacing[0] * (n - 1);
        if (std::abs(f.origin[0]) > 1e-12 || std::abs(span - l) > 1e-12)
            throw contract_error("solve_fd: dirichlet grid must cover [0,L]");
        if (std::abs(f.values.front()) > 1e-12 ||
            std::abs(f.values.back()) > 1e-12)
            throw contract_error(
                "solve_fd: dirichlet data must vanish at the boundary");
    }

    const double s_final = nonlinear_clock(order, scheme.t_final);
    const double s0 = scheme.mode == stepping_mode::direct_t
                          ? 1e-6 * s_final
                          : 0.0;
    const double span_s = s_final - s0;
    const double ds = span_s / scheme.n_steps;
    const double radius = detail::operator_spectral_radius(op, f);
    // Heun on du/ds = lambda u is stable for |lambda| ds <= 2.
    const double ds_max = 2.0 * scheme.safety / std::max(radius, 1e-300);
    if (ds > ds_max) {
        const int min_steps =
            static_cast<int>(std::ceil(span_s / ds_max));
        throw stability_error(
            "solve_fd: step violates the RK2 stability bound; need n_steps >= " +
                std::to_string(min_steps),
            min_steps);
    }

    // State: mode coefficients for the spectral operator, grid values
    // otherwise.
    std::vector<std::complex<double>> state(n), stage(n), rhs1(n), rhs2(n);
    const bool spectral = op.kind == fd_operator_kind::spectral_multiplier;
    std::vector<std::complex<double>> multiplier;
    if (spectral) {
        std::vector<std::complex<double>> input(n);
        for (int i = 0; i < n; ++i) input[i] = f.values[i];
        detail::direct_dft(input, state, false);
        multiplier.resize(n);
        for (int m = 0; m < n; ++m) {
            const int signed_m = m <= n / 2 ? m : m - n;
            const double k = 2.0 * std::numbers::pi * signed_m /
                             (static_cast<double>(n) * f.spacing[0]);
            multiplier[m] = evaluate_symbol(*op.sym, k);
        }
    } else {
        for (int i = 0; i < n; ++i) state[i] = f.values[i];
    }

    auto apply_op = [&](const std::vector<std::complex<double>>& u,
                        std::vector<std::complex<double>>& out) {
        if (spectral) {
            for (int m = 0; m < n; ++m) out[m] = multiplier[m] * u[m];
            return;
        }
        const double inv_h2 = 1.0 / (f.spacing[0] * f.spacing[0]);
        if (dirichlet) {
            out[0] = out[n - 1] = 0.0;
            for (int i = 1; i < n - 1; ++i)
                out[i] = (u[i - 1] - 2.0 * u[i] + u[i + 1]) * inv_h2;
        } else {
            for (int i = 0; i < n; ++i) {
                const int lo = i == 0 ? n - 1 : i - 1;
                const int hi = i == n - 1 ? 0 : i + 1;
                out[i] = (u[lo] - 2.0 * u[i] + u[hi]) * inv_h2;
            }
        }
    };

    auto heun_step = [&](double coeff_left, double coeff_right, double h) {
        apply_op(state, rhs1);
        for (int i = 0; i < n; ++i)
            stage[i] = state[i] + h * coeff_left * rhs1[i];
        apply_op(stage, rhs2);
        for (int i = 0; i < n; ++i)
            state[i] += 0.5 * h * (coeff_left * rhs1[i] + coeff_right * rhs2[i]);
    };

    if (scheme.mode == stepping_mode::substituted_s) {
        for (int step = 0; step < scheme.n_steps; ++step)
            heun_step(1.0, 1.0, ds);
    } else {
        // Initialization micro-integration over [0, s0].
        const int init_steps = 16;
        for (int step = 0; step < init_steps; ++step)
            heun_step(1.0, 1.0, s0 / init_steps);
        const double alpha = order.alpha;
        double time = std::pow(alpha * s0, 1.0 / alpha);
        const long max_iters = 16L * scheme.n_steps + 4096;
        long iters = 0;
        while (time < scheme.t_final) {
            const double dt = std::min(ds * std::pow(time, 1.0 - alpha),
                                       scheme.t_final - time);
            const double t_right = time + dt;
            heun_step(std::pow(time, alpha - 1.0),
                      std::pow(t_right, alpha - 1.0), dt);
            time = t_right;
            if (++iters > max_iters)
                throw internal_error(
                    "solve_fd: direct-t mesh failed to reach t_final");
        }
    }

    grid_field out = f;
    if (spectral) {
        std::vector<std::complex<double>> phys(n);
        detail::direct_dft(state, phys, true);
        for (int i = 0; i < n; ++i) out.values[i] = phys[i].real();
    } else {
        for (int i = 0; i < n; ++i) out.values[i] = state[i].real();
    }
    return out;
}

/// Norms of the difference between two fields: max-abs, grid-weighted L2,
/// and relative L2 with the second argument as reference.
struct error_report {
    double max_abs = 0.0;
    double l2 = 0.0;
    double rel_l2 = 0.0;
    std::size_t n_points = 0;
    bool rel_valid = true; // false when the reference norm is < 1e-14
};

inline error_report compare_fields(const grid_field& a, const grid_field& b) {
    a.validate();
    b.validate();
    if (a.dim != b.dim || a.extent != b.extent)
        throw contract_error("compare_fields: shape mismatch");
    error_report rep;
    rep.n_points = a.size();
    double diff2 = 0.0, ref2 = 0.0;
    for (int i0 = 0; i0 < a.extent[0]; ++i0)
        for (int i1 = 0; i1 < a.extent[1]; ++i1) {
            const std::size_t idx = a.index(i0, i1);
            const double w = a.trapezoid_weight(i0, i1);
            const double d = a.values[idx] - b.values[idx];
            rep.max_abs = std::max(rep.max_abs, std::abs(d));
            diff2 += w * d * d;
            ref2 += w * b.values[idx] * b.values[idx];
        }
    rep.l2 = std::sqrt(diff2);
    const double ref_norm = std::sqrt(ref2);
    rep.rel_valid = ref_norm >= 1e-14;
    rep.rel_l2 = rep.rel_valid ? rep.l2 / ref_norm : 0.0;
    return rep;
}

/// Point-value overload with unit weights.
inline error_report compare_points(std::span<const double> a,
                                   std::span<const double> b) {
    if (a.size() != b.size())
        throw contract_error("compare_points: size mismatch");
    error_report rep;
    rep.n_points = a.size();
    double diff2 = 0.0, ref2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        rep.max_abs = std::max(rep.max_abs, std::abs(d));
        diff2 += d * d;
        ref2 += b[i] * b[i];
    }
    rep.l2 = std::sqrt(diff2);
    const double ref_norm = std::sqrt(ref2);
    rep.rel_valid = ref_norm >= 1e-14;
    rep.rel_l2 = rep.rel_valid ? rep.l2 / ref_norm : 0.0;
    return rep;
}

struct convergence_row {
    std::size_t n_paths;
    double error; // l2 over the query points vs. the reference
};

struct convergence_study {
    std::vector<convergence_row> rows;
    double fitted_slope = 0.0; // of log error vs. log n_paths
};

/// Runs the Monte Carlo estimator at each n in n_paths_list (taking the
/// median error over `repeats` seed offsets) and fits the log-log slope.
inline convergence_study mc_convergence_study(
    const std::function<std::vector<double>(std::size_t, std::uint64_t)>& run,
    std::span<const double> reference, std::span<const std::size_t> n_paths_list,
    std::uint64_t seed, int repeats = 1) {
    if (n_paths_list.size() < 2)
        throw contract_error("mc_convergence_study: need >= 2 path counts");
    if (repeats < 1)
        throw contract_error("mc_convergence_study: repeats must be >= 1");

    convergence_study study;
    std::vector<double> log_n, log_err;
    for (std::size_t idx = 0; idx < n_paths_list.size(); ++idx) {
        const std::size_t n = n_paths_list[idx];
        std::vector<double> errors(repeats);
        for (int r = 0; r < repeats; ++r) {
            const std::vector<double> est =
                run(n, seed + static_cast<std::uint64_t>(r) * 0x9E3779B9ull);
            errors[r] = compare_points(est, reference).l2;
        }
        std::sort(errors.begin(), errors.end());
        const double median = errors[errors.size() / 2];
        study.rows.push_back({n, median});
        if (median > 0.0) {
            log_n.push_back(std::log(static_cast<double>(n)));
            log_err.push_back(std::log(median));
        }
    }
    if (log_n.size() >= 2)
        study.fitted_slope = least_squares_slope(log_n, log_err);
    return study;
}

} // namespace confcauchy
