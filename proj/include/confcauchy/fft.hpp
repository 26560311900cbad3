#pragma once

#include <bit>
#include <complex>
#include <numbers>
#include <vector>

#include "errors.hpp"

namespace confcauchy {

// In-place complex DFT, unnormalized forward X_m = sum_j x_j e^{-2pi i jm/n},
// inverse carries the 1/n. Radix-2 Cooley-Tukey for powers of two, Bluestein
// chirp-z otherwise, so any grid extent works.

namespace detail {

inline void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n < 2) return;
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle =
            (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(angle), std::sin(angle));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const auto u = a[i + j];
                const auto v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

inline void fft_bluestein(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    // Chirp: w_j = exp(+-i pi j^2 / n); X_m = conj(w_m) sum_j (a_j w_j^-1)...
    // implemented as the classic chirp-z convolution of length >= 2n-1.
    std::size_t m = 1;
    while (m < 2 * n - 1) m <<= 1;
    std::vector<std::complex<double>> chirp(n);
    for (std::size_t j = 0; j < n; ++j) {
        // j^2 mod 2n keeps the angle argument small for large n.
        const std::size_t j2 = (j * j) % (2 * n);
        const double angle = (inverse ? 1.0 : -1.0) * std::numbers::pi *
                             static_cast<double>(j2) / static_cast<double>(n);
        chirp[j] = std::complex<double>(std::cos(angle), std::sin(angle));
    }
    std::vector<std::complex<double>> u(m, {0.0, 0.0}), v(m, {0.0, 0.0});
    for (std::size_t j = 0; j < n; ++j) u[j] = a[j] * chirp[j];
    v[0] = std::conj(chirp[0]);
    for (std::size_t j = 1; j < n; ++j)
        v[j] = v[m - j] = std::conj(chirp[j]);
    fft_pow2(u, false);
    fft_pow2(v, false);
    for (std::size_t j = 0; j < m; ++j) u[j] *= v[j];
    fft_pow2(u, true);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t j = 0; j < n; ++j) a[j] = u[j] * scale * chirp[j];
}

} // namespace detail

inline void dft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0) throw contract_error("dft_inplace: empty input");
    if (std::has_single_bit(n))
        detail::fft_pow2(a, inverse);
    else
        detail::fft_bluestein(a, inverse);
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= scale;
    }
}

/// Row-major 2-d DFT over an n0 x n1 block.
inline void dft_2d_inplace(std::vector<std::complex<double>>& a, int n0,
                           int n1, bool inverse) {
    if (a.size() != static_cast<std::size_t>(n0) * n1)
        throw contract_error("dft_2d_inplace: size mismatch");
    std::vector<std::complex<double>> row(n1), col(n0);
    for (int i = 0; i < n0; ++i) {
        for (int j = 0; j < n1; ++j) row[j] = a[i * static_cast<std::size_t>(n1) + j];
        dft_inplace(row, inverse);
        for (int j = 0; j < n1; ++j) a[i * static_cast<std::size_t>(n1) + j] = row[j];
    }
    for (int j = 0; j < n1; ++j) {
        for (int i = 0; i < n0; ++i) col[i] = a[i * static_cast<std::size_t>(n1) + j];
        dft_inplace(col, inverse);
        for (int i = 0; i < n0; ++i) a[i * static_cast<std::size_t>(n1) + j] = col[i];
    }
}

/// Angular frequency of DFT mode m on an n-point grid with spacing h,
/// using the signed (wrapped) mode index.
inline double angular_frequency(int m, int n, double h) {
    const int signed_m = m <= n / 2 ? m : m - n;
    return 2.0 * std::numbers::pi * static_cast<double>(signed_m) /
           (static_cast<double>(n) * h);
}

} // namespace confcauchy
