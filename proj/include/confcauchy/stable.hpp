#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"
#include "sample_path.hpp"

namespace confcauchy {

enum class marginals_mode {
    spherically_symmetric,
    independent_per_coordinate,
};

/// Symmetric stable process of index beta, normalized so that the increment
/// over dt has characteristic function exp(-D dt |k|^beta) per coordinate
/// (spherical mode: exp(-D dt ||k||^beta)). beta = 2 is Brownian motion with
/// variance 2 D dt per coordinate.
struct stable_spec {
    double beta;
    double scale_d;
    int dim = 1;
    marginals_mode mode = marginals_mode::spherically_symmetric;
    std::vector<double> betas; // per-coordinate overrides, independent mode

    stable_spec(double b, double d, int dimension = 1,
                marginals_mode m = marginals_mode::spherically_symmetric,
                std::vector<double> per_coord = {})
        : beta(b), scale_d(d), dim(dimension), mode(m),
          betas(std::move(per_coord)) {
        if (!(beta > 0.0) || !(beta <= 2.0))
            throw contract_error("stable_spec: beta must lie in (0,2]");
        if (!(scale_d > 0.0))
            throw contract_error("stable_spec: scale D must be positive");
        if (dim < 1) throw contract_error("stable_spec: dim must be positive");
        if (!betas.empty()) {
            if (mode != marginals_mode::independent_per_coordinate)
                throw contract_error(
                    "stable_spec: per-coordinate betas need independent mode");
            if (static_cast<int>(betas.size()) != dim)
                throw contract_error("stable_spec: betas size must equal dim");
            for (double bj : betas)
                if (!(bj > 0.0) || !(bj <= 2.0))
                    throw contract_error(
                        "stable_spec: beta_j must lie in (0,2]");
        }
    }

    double beta_for(int coord) const {
        return betas.empty() ? beta : betas[coord];
    }
};

// Chambers-Mallows-Stuck samplers. V is uniform on (-pi/2, pi/2) and W is
// a unit exponential throughout; each draw consumes exactly (V, W) from the
// stream, so sample positions stay aligned across runs.

/// Standard symmetric stable, characteristic function exp(-|k|^beta).
inline double standard_symmetric_stable(double beta, counter_rng& rng) {
    const double v = rng.uniform(-std::numbers::pi / 2, std::numbers::pi / 2);
    const double w = rng.exponential();
    if (beta == 2.0) {
        // Gaussian endpoint: reuse (v, w) as a Box-Muller pair.
        return 2.0 * std::sqrt(w) * std::sin(v);
    }
    if (beta == 1.0) return std::tan(v);
    const double bv = beta * v;
    return std::sin(bv) / std::pow(std::cos(v), 1.0 / beta) *
           std::pow(std::cos(v - bv) / w, (1.0 - beta) / beta);
}

/// One-sided stable on (0,inf) with Laplace transform exp(-u^{beta'}),
/// beta' in (0,1]. Used as the subordinator in spherical sampling.
inline double standard_positive_stable(double beta_prime, counter_rng& rng) {
    if (!(beta_prime > 0.0) || beta_prime > 1.0)
        throw contract_error("standard_positive_stable: index must be in (0,1]");
    const double v = rng.uniform(-std::numbers::pi / 2, std::numbers::pi / 2);
    const double w = rng.exponential();
    if (beta_prime == 1.0) return 1.0;
    const double shifted = beta_prime * (v + std::numbers::pi / 2);
    return std::sin(shifted) / std::pow(std::cos(v), 1.0 / beta_prime) *
           std::pow(std::cos(v - shifted) / w,
                    (1.0 - beta_prime) / beta_prime);
}

/// Totally skewed stable S_beta(1, skew, 0), beta in (1,2), skew in [-1,1];
/// characteristic function exp(-|k|^beta (1 - i skew sign(k) tan(pi beta/2))).
inline double standard_skewed_stable(double beta, double skew,
                                     counter_rng& rng) {
    if (!(beta > 1.0) || !(beta < 2.0))
        throw contract_error("standard_skewed_stable: beta must be in (1,2)");
    if (skew < -1.0 || skew > 1.0)
        throw contract_error("standard_skewed_stable: skew must be in [-1,1]");
    const double v = rng.uniform(-std::numbers::pi / 2, std::numbers::pi / 2);
    const double w = rng.exponential();
    const double tb = std::tan(std::numbers::pi * beta / 2.0);
    const double b  = std::atan(skew * tb) / beta;
    const double s  = std::pow(1.0 + skew * skew * tb * tb, 0.5 / beta);
    const double bv = beta * (v + b);
    return s * std::sin(bv) / std::pow(std::cos(v), 1.0 / beta) *
           std::pow(std::cos(v - bv) / w, (1.0 - beta) / beta);
}

namespace detail {

/// One increment over dt into out[0..dim). Draw order: subordinator (if any)
/// first, then one variate per coordinate.
inline void stable_increment(const stable_spec& spec, double dt,
                             counter_rng& rng, std::span<double> out) {
    const int d = spec.dim;
    if (spec.mode == marginals_mode::independent_per_coordinate || d == 1) {
        for (int c = 0; c < d; ++c) {
            const double b = spec.beta_for(c);
            const double scale = std::pow(spec.scale_d * dt, 1.0 / b);
            out[c] = scale * standard_symmetric_stable(b, rng);
        }
        return;
    }
    // Spherically symmetric: Gaussian subordination. X = sqrt(2 S) Z with
    // E exp(-uS) = exp(-u^{beta/2}) gives characteristic function
    // exp(-||k||^beta).
    if (spec.beta == 2.0) {
        const double sd = std::sqrt(2.0 * spec.scale_d * dt);
        for (int c = 0; c < d; ++c) out[c] = sd * rng.normal();
        return;
    }
    const double s = standard_positive_stable(spec.beta / 2.0, rng);
    const double scale =
        std::pow(spec.scale_d * dt, 1.0 / spec.beta) * std::sqrt(2.0 * s);
    for (int c = 0; c < d; ++c) out[c] = scale * rng.normal();
}

} // namespace detail

/// n independent increments of the stable process over time dt,
/// row-major n x dim. Sample i uses stream (stable_increment, i).
inline std::vector<double> sample_stable_increment(const stable_spec& spec,
                                                   double dt, std::size_t n,
                                                   std::uint64_t seed) {
    if (!(dt > 0.0))
        throw contract_error("sample_stable_increment: dt must be > 0");
    std::vector<double> out(n * static_cast<std::size_t>(spec.dim));
    for (std::size_t i = 0; i < n; ++i) {
        counter_rng rng(seed, stream_tag::stable_increment, i);
        detail::stable_increment(
            spec, dt, rng,
            {out.data() + i * spec.dim, static_cast<std::size_t>(spec.dim)});
    }
    return out;
}

/// Cumulative sums of independent stable increments over each time step.
inline sample_path sample_levy_path(const stable_spec& spec,
                                    std::span<const double> times,
                                    std::uint64_t seed) {
    validate_time_grid(times);
    const std::size_t m = times.size();
    sample_path path;
    path.times.assign(times.begin(), times.end());
    path.dim  = spec.dim;
    path.seed = seed;
    path.values.assign(m * static_cast<std::size_t>(spec.dim), 0.0);

    counter_rng rng(seed, stream_tag::levy_path, 0);
    std::vector<double> step(spec.dim);
    for (std::size_t i = 1; i < m; ++i) {
        detail::stable_increment(spec, times[i] - times[i - 1], rng, step);
        for (int c = 0; c < spec.dim; ++c)
            path.values[i * spec.dim + c] =
                path.values[(i - 1) * spec.dim + c] + step[c];
    }
    return path;
}

} // namespace confcauchy
