#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "errors.hpp"

namespace confcauchy {

/// Interval [0, L].
struct interval_domain {
    double length_l;

    explicit interval_domain(double l) : length_l(l) {
        if (!(l > 0.0))
            throw contract_error("interval_domain: length must be positive");
    }
};

/// Discretely sampled trajectory started at the origin. values is row-major
/// (one dim-vector per time point).
struct sample_path {
    std::vector<double> times;
    std::vector<double> values;
    int dim = 1;
    std::uint64_t seed = 0;

    std::size_t size() const { return times.size(); }

    std::span<const double> at(std::size_t i) const {
        return {values.data() + i * static_cast<std::size_t>(dim),
                static_cast<std::size_t>(dim)};
    }
};

inline void validate_time_grid(std::span<const double> times) {
    if (times.empty())
        throw contract_error("time grid must be nonempty");
    if (times[0] != 0.0)
        throw contract_error("time grid must start at 0");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw contract_error("time grid must be strictly increasing");
}

/// Smallest index i with start_x + values[i] outside the open interval
/// (0, L); nullopt if the discretized path never exits. Exit is attributed
/// to times[i], a discrete over-estimate of survival.
inline std::optional<std::size_t> first_exit_index(const sample_path& path,
                                                   interval_domain domain,
                                                   double start_x) {
    if (path.dim != 1)
        throw contract_error("first_exit_index: path must be one-dimensional");
    if (!(start_x > 0.0) || !(start_x < domain.length_l))
        throw contract_error("first_exit_index: start_x must be interior");
    for (std::size_t i = 0; i < path.size(); ++i) {
        const double x = start_x + path.values[i];
        if (x <= 0.0 || x >= domain.length_l) return i;
    }
    return std::nullopt;
}

} // namespace confcauchy
