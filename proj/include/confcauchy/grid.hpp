#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace confcauchy {

/// Real-valued function sampled on a uniform grid, dim 1 or 2, row-major
/// (index = i0 * extent[1] + i1).
struct grid_field {
    int dim = 1;
    std::array<double, 2> origin{0.0, 0.0};
    std::array<double, 2> spacing{1.0, 1.0};
    std::array<int, 2> extent{2, 1};
    std::vector<double> values;

    void validate() const {
        if (dim != 1 && dim != 2)
            throw contract_error("grid_field: dim must be 1 or 2");
        for (int ax = 0; ax < dim; ++ax) {
            if (extent[ax] < 2)
                throw contract_error("grid_field: extent must be >= 2 per axis");
            if (!(spacing[ax] > 0.0))
                throw contract_error("grid_field: spacing must be positive");
        }
        if (dim == 1 && extent[1] != 1)
            throw contract_error("grid_field: 1-d field must have extent[1]=1");
        const std::size_t n = static_cast<std::size_t>(extent[0]) *
                              static_cast<std::size_t>(extent[1]);
        if (values.size() != n)
            throw contract_error("grid_field: values size mismatch");
    }

    std::size_t size() const { return values.size(); }

    double coordinate(int axis, int i) const {
        return origin[axis] + spacing[axis] * i;
    }

    std::size_t index(int i0, int i1 = 0) const {
        return static_cast<std::size_t>(i0) * extent[1] + i1;
    }

    /// Trapezoid weight of grid node (i0, i1), including the cell volume.
    double trapezoid_weight(int i0, int i1 = 0) const {
        auto edge = [](int i, int n) {
            return (i == 0 || i == n - 1) ? 0.5 : 1.0;
        };
        double w = spacing[0] * edge(i0, extent[0]);
        if (dim == 2) w *= spacing[1] * edge(i1, extent[1]);
        return w;
    }

    double trapezoid_mass() const {
        double mass = 0.0;
        for (int i0 = 0; i0 < extent[0]; ++i0)
            for (int i1 = 0; i1 < extent[1]; ++i1)
                mass += trapezoid_weight(i0, i1) * values[index(i0, i1)];
        return mass;
    }

    /// Checks the probability-density invariant: nonnegative values and
    /// trapezoidal mass within 1e-6 of the declared mass.
    void validate_density(double declared_mass) const {
        for (double v : values)
            if (v < 0.0)
                throw contract_error("grid_field: density has negative values");
        if (std::abs(trapezoid_mass() - declared_mass) > 1e-6)
            throw contract_error(
                "grid_field: trapezoidal mass deviates from declared mass by "
                "more than 1e-6");
    }
};

inline grid_field make_grid_1d(double origin, double spacing, int n,
                               const std::function<double(double)>& f) {
    grid_field g;
    g.dim     = 1;
    g.origin  = {origin, 0.0};
    g.spacing = {spacing, 1.0};
    g.extent  = {n, 1};
    g.values.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g.values[i] = f(origin + spacing * i);
    g.validate();
    return g;
}

inline grid_field make_grid_2d(std::array<double, 2> origin,
                               std::array<double, 2> spacing,
                               std::array<int, 2> extent,
                               const std::function<double(double, double)>& f) {
    grid_field g;
    g.dim     = 2;
    g.origin  = origin;
    g.spacing = spacing;
    g.extent  = extent;
    g.values.resize(static_cast<std::size_t>(extent[0]) * extent[1]);
    for (int i0 = 0; i0 < extent[0]; ++i0)
        for (int i1 = 0; i1 < extent[1]; ++i1)
            g.values[g.index(i0, i1)] =
                f(origin[0] + spacing[0] * i0, origin[1] + spacing[1] * i1);
    g.validate();
    return g;
}

/// Centered 1-d grid of n points with spacing span/n (periodic convention:
/// the right endpoint is excluded).
inline grid_field make_centered_grid_1d(double center, double span, int n,
                                        const std::function<double(double)>& f) {
    const double h = span / n;
    return make_grid_1d(center - span / 2.0, h, n, f);
}

} // namespace confcauchy
