#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "reflinv/errors.hpp"

namespace reflinv {

using State = std::vector<double>;
using StateDeriv = std::function<State(double, const State&)>;

struct TrajectoryPoint {
    double t;
    State y;
};

using Trajectory = std::vector<TrajectoryPoint>;

/// Classical fixed-step RK4; the final partial step is shortened to land
/// exactly on t1. Every accepted state must stay finite.
inline Trajectory rk4_integrate(const StateDeriv& field, State y0, double t0, double t1,
                                double h) {
    if (h <= 0.0) throw Error("rk4_integrate: step must be positive");
    if (t1 < t0) throw Error("rk4_integrate: t1 must be >= t0");

    const size_t dim = y0.size();
    auto check_finite = [&](const State& y) {
        for (double v : y)
            if (!std::isfinite(v)) throw NonFiniteState("rk4_integrate: state not finite");
    };
    check_finite(y0);

    Trajectory out;
    out.push_back({t0, y0});
    if (t1 == t0) return out;

    // index-based stepping: node i sits at t0 + i h, the last node lands
    // exactly on t1 (never producing a degenerate final step)
    const long steps = std::max(1L, long(std::ceil((t1 - t0) / h - 1e-9)));
    State y = std::move(y0);
    State k1, k2, k3, k4, tmp(dim);
    double t = t0;
    for (long i = 1; i <= steps; ++i) {
        const double t_next = (i == steps) ? t1 : t0 + double(i) * h;
        const double step = t_next - t;
        k1 = field(t, y);
        for (size_t j = 0; j < dim; ++j) tmp[j] = y[j] + 0.5 * step * k1[j];
        k2 = field(t + 0.5 * step, tmp);
        for (size_t j = 0; j < dim; ++j) tmp[j] = y[j] + 0.5 * step * k2[j];
        k3 = field(t + 0.5 * step, tmp);
        for (size_t j = 0; j < dim; ++j) tmp[j] = y[j] + step * k3[j];
        k4 = field(t_next, tmp);
        for (size_t j = 0; j < dim; ++j)
            y[j] += step / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        t = t_next;
        check_finite(y);
        out.push_back({t, y});
    }
    return out;
}

} // namespace reflinv
