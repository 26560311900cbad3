#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "conformable.hpp"
#include "errors.hpp"

namespace confcauchy {

enum class symbol_family {
    gaussian,
    symmetric_stable,
    independent_stable_marginals,
};

// Fourier symbol psi(k) of the generator, for the closed-form families:
//
//   gaussian                       psi(k) = i k.a - 1/2 k.Qk
//   symmetric stable               psi(k) = i k.a - D |k|^beta
//   independent stable marginals   psi(k) = i k.a + D sum_j (i k_j)^{beta_j}
//
// The semigroup acts on the transform side as exp(t psi(k)); the conformable
// problem replaces t by the clock t^alpha/alpha. Drift is carried on the
// transform side only; path samplers reject it.
//
// (i k_j)^{beta_j} uses the principal complex power. Its real part is
// D |k_j|^{beta_j} cos(beta_j pi/2), which is <= 0 only for beta_j in [1,2];
// smaller indices would break contractivity (Re psi <= 0), so construction
// rejects them for this family.
class levy_symbol {
public:
    static levy_symbol gaussian(std::vector<double> drift,
                                Eigen::MatrixXd q) {
        const int d = static_cast<int>(drift.size());
        if (d < 1) throw contract_error("levy_symbol: empty drift vector");
        if (q.rows() != d || q.cols() != d)
            throw contract_error("levy_symbol: Q must be dim x dim");
        if (!q.isApprox(q.transpose(), 1e-12))
            throw contract_error("levy_symbol: Q must be symmetric");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q);
        const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
        if (es.eigenvalues().minCoeff() < -1e-12 * scale)
            throw contract_error("levy_symbol: Q must be positive semidefinite");
        levy_symbol s;
        s.family_ = symbol_family::gaussian;
        s.dim_    = d;
        s.drift_  = std::move(drift);
        s.q_      = std::move(q);
        return s;
    }

    static levy_symbol symmetric_stable(int dim, double scale_d, double beta,
                                        std::vector<double> drift = {}) {
        if (dim < 1) throw contract_error("levy_symbol: dim must be positive");
        if (!(scale_d > 0.0))
            throw contract_error("levy_symbol: scale D must be positive");
        if (!(beta > 0.0) || !(beta <= 2.0))
            throw contract_error("levy_symbol: beta must lie in (0,2]");
        levy_symbol s;
        s.family_  = symbol_family::symmetric_stable;
        s.dim_     = dim;
        s.scale_d_ = scale_d;
        s.beta_    = beta;
        s.drift_   = normalize_drift(std::move(drift), dim);
        return s;
    }

    static levy_symbol independent_marginals(double scale_d,
                                             std::vector<double> betas,
                                             std::vector<double> drift = {}) {
        const int d = static_cast<int>(betas.size());
        if (d < 1) throw contract_error("levy_symbol: empty beta list");
        if (!(scale_d > 0.0))
            throw contract_error("levy_symbol: scale D must be positive");
        for (double b : betas) {
            if (!(b > 0.0) || !(b <= 2.0))
                throw contract_error("levy_symbol: beta_j must lie in (0,2]");
            if (b < 1.0)
                throw contract_error(
                    "levy_symbol: independent-marginals beta_j < 1 makes "
                    "Re psi > 0 under the principal branch; use beta_j in "
                    "[1,2]");
        }
        levy_symbol s;
        s.family_  = symbol_family::independent_stable_marginals;
        s.dim_     = d;
        s.scale_d_ = scale_d;
        s.betas_   = std::move(betas);
        s.drift_   = normalize_drift(std::move(drift), d);
        return s;
    }

    symbol_family family() const { return family_; }
    int dim() const { return dim_; }
    const std::vector<double>& drift() const { return drift_; }
    const Eigen::MatrixXd& q() const { return q_; }
    double scale_d() const { return scale_d_; }
    double beta() const { return beta_; }
    const std::vector<double>& betas() const { return betas_; }

    bool has_drift() const {
        for (double a : drift_)
            if (a != 0.0) return true;
        return false;
    }

private:
    static std::vector<double> normalize_drift(std::vector<double> drift,
                                               int dim) {
        if (drift.empty()) return std::vector<double>(dim, 0.0);
        if (static_cast<int>(drift.size()) != dim)
            throw contract_error("levy_symbol: drift dimension mismatch");
        return drift;
    }

    symbol_family family_ = symbol_family::gaussian;
    int dim_ = 0;
    std::vector<double> drift_;
    Eigen::MatrixXd q_;
    double scale_d_ = 0.0;
    double beta_    = 0.0;
    std::vector<double> betas_;
};

inline std::complex<double> evaluate_symbol(const levy_symbol& sym,
                                            std::span<const double> k) {
    if (static_cast<int>(k.size()) != sym.dim())
        throw contract_error("evaluate_symbol: k dimension mismatch");
    std::complex<double> psi(0.0, 0.0);
    double ka = 0.0;
    for (int j = 0; j < sym.dim(); ++j) ka += k[j] * sym.drift()[j];
    psi += std::complex<double>(0.0, ka);

    switch (sym.family()) {
    case symbol_family::gaussian: {
        Eigen::Map<const Eigen::VectorXd> kv(k.data(), k.size());
        psi += std::complex<double>(-0.5 * kv.dot(sym.q() * kv), 0.0);
        break;
    }
    case symbol_family::symmetric_stable: {
        double norm2 = 0.0;
        for (double kj : k) norm2 += kj * kj;
        psi += std::complex<double>(
            -sym.scale_d() * std::pow(norm2, 0.5 * sym.beta()), 0.0);
        break;
    }
    case symbol_family::independent_stable_marginals: {
        std::complex<double> acc(0.0, 0.0);
        for (int j = 0; j < sym.dim(); ++j) {
            if (k[j] == 0.0) continue;
            acc += std::pow(std::complex<double>(0.0, k[j]), sym.betas()[j]);
        }
        psi += sym.scale_d() * acc;
        break;
    }
    }
    return psi;
}

inline std::complex<double> evaluate_symbol(const levy_symbol& sym, double k) {
    return evaluate_symbol(sym, std::span<const double>(&k, 1));
}

/// exp(psi(k) tau(t)): the conformable characteristic function
/// u_hat(t,k)/f_hat(k). Equals 1 at t = 0 and the classical characteristic
/// function exp(t psi(k)) at alpha = 1.
inline std::complex<double> conformable_characteristic(
    const levy_symbol& sym, fractional_order order, double t,
    std::span<const double> k) {
    if (t < 0.0)
        throw contract_error("conformable_characteristic: t must be >= 0");
    if (t == 0.0) return {1.0, 0.0};
    return std::exp(evaluate_symbol(sym, k) * nonlinear_clock(order, t));
}

inline std::complex<double> conformable_characteristic(const levy_symbol& sym,
                                                       fractional_order order,
                                                       double t, double k) {
    return conformable_characteristic(sym, order, t,
                                      std::span<const double>(&k, 1));
}

} // namespace confcauchy
