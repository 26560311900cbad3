#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "errors.hpp"
#include "rng.hpp"
#include "sample_path.hpp"

namespace confcauchy {

/// Fractional Brownian motion with Hurst index H; coordinates are
/// independent one-dimensional copies.
struct fbm_spec {
    double hurst;
    int dim = 1;

    explicit fbm_spec(double h, int d = 1) : hurst(h), dim(d) {
        if (!(h > 0.0) || !(h < 1.0))
            throw contract_error("fbm_spec: hurst must lie in (0,1)");
        if (d < 1) throw contract_error("fbm_spec: dim must be positive");
    }
};

/// E[B^H(s) B^H(t)] = (|s|^{2H} + |t|^{2H} - |s-t|^{2H}) / 2 per coordinate.
inline double fbm_covariance(const fbm_spec& spec, double s, double t) {
    if (s < 0.0 || t < 0.0)
        throw contract_error("fbm_covariance: times must be >= 0");
    const double h2 = 2.0 * spec.hurst;
    return 0.5 * (std::pow(s, h2) + std::pow(t, h2) -
                  std::pow(std::abs(s - t), h2));
}

// Exact synthesis by dense covariance factorization: build the covariance
// matrix over the positive grid times, take its Cholesky factor (with a
// small diagonal jitter retry), and apply it to seeded standard normals.
// O(n^3), intended for grids up to 8192 points.
inline sample_path sample_fbm_path(const fbm_spec& spec,
                                   std::span<const double> times,
                                   std::uint64_t seed) {
    validate_time_grid(times);
    const std::size_t m = times.size();
    if (m > 8192)
        throw contract_error(
            "sample_fbm_path: dense factorization supports <= 8192 points");

    const std::size_t n = m - 1; // positive times
    Eigen::MatrixXd cov(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const double c = fbm_covariance(spec, times[i + 1], times[j + 1]);
            cov(i, j) = c;
            cov(j, i) = c;
        }

    Eigen::MatrixXd factor;
    if (n > 0) {
        const double scale = cov.diagonal().maxCoeff();
        double jitter = 0.0;
        bool ok = false;
        for (int attempt = 0; attempt < 4 && !ok; ++attempt) {
            Eigen::MatrixXd shifted = cov;
            if (jitter > 0.0)
                shifted.diagonal().array() += jitter;
            Eigen::LLT<Eigen::MatrixXd> llt(shifted);
            if (llt.info() == Eigen::Success) {
                factor = llt.matrixL();
                ok = true;
            }
            jitter = jitter == 0.0 ? 1e-14 * scale : 10.0 * jitter;
        }
        if (!ok)
            throw factorization_error(
                "sample_fbm_path: covariance not positive definite after jitter");
    }

    sample_path path;
    path.times.assign(times.begin(), times.end());
    path.dim  = spec.dim;
    path.seed = seed;
    path.values.assign(m * static_cast<std::size_t>(spec.dim), 0.0);

    Eigen::VectorXd z(n), x(n);
    for (int c = 0; c < spec.dim; ++c) {
        counter_rng rng(seed, stream_tag::fbm_path,
                        static_cast<std::uint64_t>(c));
        for (std::size_t i = 0; i < n; ++i) z(i) = rng.normal();
        x = factor * z;
        for (std::size_t i = 0; i < n; ++i)
            path.values[(i + 1) * spec.dim + c] = x(i);
    }
    return path;
}

/// n independent draws of B^H(t): exact Gaussian marginal with per-coordinate
/// standard deviation t^H. Row-major n x dim.
inline std::vector<double> sample_fbm_marginal(const fbm_spec& spec, double t,
                                               std::size_t n,
                                               std::uint64_t seed) {
    if (!(t > 0.0))
        throw contract_error("sample_fbm_marginal: t must be > 0");
    const double sd = std::pow(t, spec.hurst);
    std::vector<double> out(n * static_cast<std::size_t>(spec.dim));
    for (std::size_t i = 0; i < n; ++i) {
        counter_rng rng(seed, stream_tag::fbm_marginal, i);
        for (int c = 0; c < spec.dim; ++c)
            out[i * spec.dim + c] = sd * rng.normal();
    }
    return out;
}

} // namespace confcauchy
