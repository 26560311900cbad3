#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Cholesky>

#include "conformable.hpp"
#include "errors.hpp"
#include "fbm.hpp"
#include "fft.hpp"
#include "grid.hpp"
#include "levy_symbol.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "sample_path.hpp"
#include "stable.hpp"
#include "stats.hpp"

namespace confcauchy {

/// Monte Carlo estimate at a list of query points.
struct mc_estimate {
    std::vector<double> mean;
    std::vector<double> std_error;
    std::size_t n_paths = 0;
    std::uint64_t seed = 0;
};

namespace detail {

// Fixed-size path blocks make the reduction deterministic: each block sum
// runs over its own path indices in order, and blocks are combined by
// pairwise summation, so the result is independent of the thread count.
inline constexpr std::size_t mc_block = 4096;

struct block_accumulator {
    std::size_t n_points;
    std::size_t n_blocks;
    std::vector<double> sums;    // n_blocks x n_points
    std::vector<double> sq_sums; // n_blocks x n_points

    block_accumulator(std::size_t points, std::size_t paths)
        : n_points(points), n_blocks((paths + mc_block - 1) / mc_block),
          sums(n_blocks * points, 0.0), sq_sums(n_blocks * points, 0.0) {}

    void add(std::size_t path, std::size_t point, double value) {
        const std::size_t b = path / mc_block;
        sums[b * n_points + point] += value;
        sq_sums[b * n_points + point] += value * value;
    }

    mc_estimate reduce(std::size_t n_paths, std::uint64_t seed) const {
        mc_estimate est;
        est.n_paths = n_paths;
        est.seed    = seed;
        est.mean.resize(n_points);
        est.std_error.resize(n_points);
        std::vector<double> col(n_blocks);
        const double n = static_cast<double>(n_paths);
        for (std::size_t q = 0; q < n_points; ++q) {
            for (std::size_t b = 0; b < n_blocks; ++b)
                col[b] = sums[b * n_points + q];
            const double mean = pairwise_sum(col) / n;
            for (std::size_t b = 0; b < n_blocks; ++b)
                col[b] = sq_sums[b * n_points + q];
            const double msq = pairwise_sum(col) / n;
            double var = (msq - mean * mean) * n / std::max(1.0, n - 1.0);
            if (var < 0.0) var = 0.0; // roundoff on constant samples
            est.mean[q]      = mean;
            est.std_error[q] = std::sqrt(var / n);
        }
        return est;
    }
};

/// One increment of the process generated by the symbol, over semigroup
/// time s, written into out[0..dim). chol_q is the Cholesky factor of Q
/// (gaussian family only).
inline void symbol_increment(const levy_symbol& sym, double s,
                             const Eigen::MatrixXd& chol_q, counter_rng& rng,
                             std::span<double> out) {
    const int d = sym.dim();
    switch (sym.family()) {
    case symbol_family::gaussian: {
        Eigen::VectorXd z(d);
        for (int c = 0; c < d; ++c) z(c) = rng.normal();
        const Eigen::VectorXd x = std::sqrt(s) * (chol_q * z);
        for (int c = 0; c < d; ++c) out[c] = sym.drift()[c] * s + x(c);
        return;
    }
    case symbol_family::symmetric_stable: {
        const stable_spec spec(sym.beta(), sym.scale_d(), d,
                               marginals_mode::spherically_symmetric);
        stable_increment(spec, s, rng, out);
        return;
    }
    case symbol_family::independent_stable_marginals: {
        // Per coordinate, exp(s D (ik)^beta) is the characteristic function
        // of a totally skewed stable law (skew -1) with scale
        // (s D |cos(beta pi/2)|)^{1/beta}; beta = 1 degenerates to drift
        // D s and beta = 2 to a Gaussian.
        for (int c = 0; c < d; ++c) {
            const double b = sym.betas()[c];
            if (b == 1.0) {
                out[c] = sym.scale_d() * s;
            } else if (b == 2.0) {
                out[c] = std::sqrt(2.0 * sym.scale_d() * s) * rng.normal();
            } else {
                const double cosb = std::abs(std::cos(std::numbers::pi * b / 2));
                const double sigma = std::pow(sym.scale_d() * s * cosb, 1.0 / b);
                out[c] = sigma * standard_skewed_stable(b, -1.0, rng);
            }
        }
        return;
    }
    }
}

} // namespace detail

// u(t,x) = E_x[f(X at clock time)] for Levy generators: a single increment
// of size tau(t) is the exact marginal, so no path is needed. For fBm the
// solution is E[f(x + B^H(t))] at physical time t, with no clock.
template <typename F>
mc_estimate solve_mc_free(F&& f, const levy_symbol& sym,
                          fractional_order order, double t,
                          std::span<const double> query_points,
                          std::size_t n_paths, std::uint64_t seed,
                          unsigned n_threads = 1) {
    if (!(t > 0.0)) throw contract_error("solve_mc_free: t must be > 0");
    if (n_paths < 100)
        throw contract_error(
            "solve_mc_free: need n_paths >= 100 for a meaningful std_error");
    const int d = sym.dim();
    if (query_points.size() % d != 0)
        throw contract_error("solve_mc_free: query point layout mismatch");
    if (sym.family() != symbol_family::gaussian && sym.has_drift())
        throw contract_error(
            "solve_mc_free: stable-family drift is transform-side only");

    const std::size_t n_points = query_points.size() / d;
    const double s = nonlinear_clock(order, t);

    Eigen::MatrixXd chol_q;
    if (sym.family() == symbol_family::gaussian) {
        Eigen::LLT<Eigen::MatrixXd> llt(sym.q());
        if (llt.info() == Eigen::Success) {
            chol_q = llt.matrixL();
        } else {
            // PSD but singular: fall back to the eigen square root.
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym.q());
            chol_q = es.eigenvectors() *
                     es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
        }
    }

    detail::block_accumulator acc(n_points, n_paths);
    parallel_for(n_paths, n_threads, [&](std::size_t begin, std::size_t end) {
        std::vector<double> incr(d), pt(d);
        for (std::size_t i = begin; i < end; ++i) {
            counter_rng rng(seed, stream_tag::mc_free, i);
            detail::symbol_increment(sym, s, chol_q, rng, incr);
            for (std::size_t q = 0; q < n_points; ++q) {
                for (int c = 0; c < d; ++c)
                    pt[c] = query_points[q * d + c] + incr[c];
                const double v = f(std::span<const double>(pt));
                if (!std::isfinite(v))
                    throw evaluation_error(
                        "solve_mc_free: f not finite at a sampled point");
                acc.add(i, q, v);
            }
        }
    }, detail::mc_block);
    return acc.reduce(n_paths, seed);
}

template <typename F>
mc_estimate solve_mc_free(F&& f, const fbm_spec& spec, fractional_order,
                          double t, std::span<const double> query_points,
                          std::size_t n_paths, std::uint64_t seed,
                          unsigned n_threads = 1) {
    if (!(t > 0.0)) throw contract_error("solve_mc_free: t must be > 0");
    if (n_paths < 100)
        throw contract_error(
            "solve_mc_free: need n_paths >= 100 for a meaningful std_error");
    const int d = spec.dim;
    if (query_points.size() % d != 0)
        throw contract_error("solve_mc_free: query point layout mismatch");

    const std::size_t n_points = query_points.size() / d;
    const double sd = std::pow(t, spec.hurst);

    detail::block_accumulator acc(n_points, n_paths);
    parallel_for(n_paths, n_threads, [&](std::size_t begin, std::size_t end) {
        std::vector<double> incr(d), pt(d);
        for (std::size_t i = begin; i < end; ++i) {
            counter_rng rng(seed, stream_tag::mc_free, i);
            for (int c = 0; c < d; ++c) incr[c] = sd * rng.normal();
            for (std::size_t q = 0; q < n_points; ++q) {
                for (int c = 0; c < d; ++c)
                    pt[c] = query_points[q * d + c] + incr[c];
                const double v = f(std::span<const double>(pt));
                if (!std::isfinite(v))
                    throw evaluation_error(
                        "solve_mc_free: f not finite at a sampled point");
                acc.add(i, q, v);
            }
        }
    }, detail::mc_block);
    return acc.reduce(n_paths, seed);
}

// Killed problem on [0, L]: simulate the stable path (unit D) to the clock
// horizon, zero the paths that leave (0, L), and average f over survivors.
// Exit checks are discrete-time only; the O(sqrt(dt)) survival bias is the
// caller's budget.
template <typename F>
mc_estimate solve_mc_killed(F&& f, interval_domain domain,
                            fractional_order order, double beta, double t,
                            double start_x, std::size_t n_paths, double dt,
                            std::uint64_t seed, unsigned n_threads = 1) {
    if (!(t > 0.0)) throw contract_error("solve_mc_killed: t must be > 0");
    if (n_paths < 100)
        throw contract_error(
            "solve_mc_killed: need n_paths >= 100 for a meaningful std_error");
    if (!(start_x > 0.0) || !(start_x < domain.length_l))
        throw contract_error("solve_mc_killed: start_x must be interior");
    const double s = nonlinear_clock(order, t);
    if (!(dt > 0.0) || dt > s / 100.0)
        throw contract_error("solve_mc_killed: require 0 < dt <= clock(t)/100");

    // Uniform steps of size <= dt that land exactly on the horizon.
    const std::size_t n_steps =
        static_cast<std::size_t>(std::ceil(s / dt - 1e-12));
    const double step = s / static_cast<double>(n_steps);
    const stable_spec spec(beta, 1.0, 1);
    const bool brownian = beta == 2.0;
    const double brownian_sd = std::sqrt(2.0 * step);
    const double stable_scale = std::pow(step, 1.0 / beta);

    detail::block_accumulator acc(1, n_paths);
    parallel_for(n_paths, n_threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            counter_rng rng(seed, stream_tag::mc_killed, i);
            double x = start_x;
            bool alive = true;
            for (std::size_t k = 0; k < n_steps; ++k) {
                x += brownian
                         ? brownian_sd * rng.normal()
                         : stable_scale * standard_symmetric_stable(beta, rng);
                if (x <= 0.0 || x >= domain.length_l) {
                    alive = false;
                    break;
                }
            }
            double v = 0.0;
            if (alive) {
                v = f(x);
                if (!std::isfinite(v))
                    throw evaluation_error(
                        "solve_mc_killed: f not finite at a surviving point");
            }
            acc.add(i, 0, v);
        }
    }, detail::mc_block);
    return acc.reduce(n_paths, seed);
}

// Fourier-multiplier evolution on a uniform periodic grid: transform f,
// multiply mode k by exp(psi(k) tau(t)), transform back. The caller is
// responsible for enough padding that the periodic extension is harmless.
inline grid_field solve_fourier(const grid_field& f, const levy_symbol& sym,
                                fractional_order order, double t) {
    f.validate();
    if (t < 0.0) throw contract_error("solve_fourier: t must be >= 0");
    if (sym.dim() != f.dim)
        throw contract_error("solve_fourier: symbol/grid dimension mismatch");

    const int n0 = f.extent[0];
    const int n1 = f.extent[1];
    const std::size_t n = f.size();

    std::vector<std::complex<double>> work(n);
    double f_scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        work[i] = f.values[i];
        f_scale = std::max(f_scale, std::abs(f.values[i]));
    }

    // Multiplier table. Self-paired modes (0 and Nyquist) must be real for
    // a real-output operator; any drift phase there is aliased, so it is
    // dropped before the Hermitian-symmetry guard runs.
    std::vector<std::complex<double>> mult(n);
    std::vector<double> k(f.dim);
    for (int m0 = 0; m0 < n0; ++m0) {
        k[0] = angular_frequency(m0, n0, f.spacing[0]);
        for (int m1 = 0; m1 < n1; ++m1) {
            if (f.dim == 2) k[1] = angular_frequency(m1, n1, f.spacing[1]);
            std::complex<double> m =
                conformable_characteristic(sym, order, t, k);
            const bool self0 = m0 == 0 || 2 * m0 == n0;
            const bool self1 = f.dim == 1 || m1 == 0 || 2 * m1 == n1;
            if (self0 && self1) m = {m.real(), 0.0};
            mult[f.index(m0, m1)] = m;
        }
    }
    for (int m0 = 0; m0 < n0; ++m0)
        for (int m1 = 0; m1 < n1; ++m1) {
            const auto a = mult[f.index(m0, m1)];
            const auto b =
                mult[f.index((n0 - m0) % n0, (n1 - m1) % n1)];
            if (std::abs(a - std::conj(b)) > 1e-10 * (1.0 + std::abs(a)))
                throw internal_error(
                    "solve_fourier: non-Hermitian multiplier detected");
        }

    if (f.dim == 1)
        dft_inplace(work, false);
    else
        dft_2d_inplace(work, n0, n1, false);
    for (std::size_t i = 0; i < n; ++i) work[i] *= mult[i];
    if (f.dim == 1)
        dft_inplace(work, true);
    else
        dft_2d_inplace(work, n0, n1, true);

    grid_field out = f;
    double max_imag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        out.values[i] = work[i].real();
        max_imag = std::max(max_imag, std::abs(work[i].imag()));
    }
    if (max_imag > 1e-10 * std::max(1e-300, f_scale))
        throw internal_error(
            "solve_fourier: output has a non-negligible imaginary part");
    return out;
}

/// Transition density of B^H: Gaussian with variance t^{2H} per coordinate.
inline double heat_kernel_fbm(const fbm_spec& spec, double t,
                              std::span<const double> x,
                              std::span<const double> y) {
    if (!(t > 0.0)) throw contract_error("heat_kernel_fbm: t must be > 0");
    if (x.size() != y.size() ||
        static_cast<int>(x.size()) != spec.dim)
        throw contract_error("heat_kernel_fbm: point dimension mismatch");
    const double var = std::pow(t, 2.0 * spec.hurst);
    double dist2 = 0.0;
    for (std::size_t c = 0; c < x.size(); ++c) {
        const double d = x[c] - y[c];
        dist2 += d * d;
    }
    return std::pow(2.0 * std::numbers::pi * var,
                    -0.5 * static_cast<double>(spec.dim)) *
           std::exp(-dist2 / (2.0 * var));
}

inline double heat_kernel_fbm(const fbm_spec& spec, double t, double x,
                              double y) {
    return heat_kernel_fbm(spec, t, std::span<const double>(&x, 1),
                           std::span<const double>(&y, 1));
}

} // namespace confcauchy
