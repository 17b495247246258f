#pragma once

#include <utility>

namespace reflinv {

/// (f(t+h) - f(t-h)) / 2h
template <typename F>
auto central_diff(F&& f, double t, double h) {
    return (f(t + h) - f(t - h)) * (1.0 / (2.0 * h));
}

/// (f(t+h) - 2 f(t) + f(t-h)) / h^2
template <typename F>
auto central_diff2(F&& f, double t, double h) {
    return (f(t + h) - f(t) * 2.0 + f(t - h)) * (1.0 / (h * h));
}

/// Fourth-order five-point first derivative.
template <typename F>
auto central_diff_4th(F&& f, double t, double h) {
    return (f(t - 2 * h) - f(t + 2 * h) + (f(t + h) - f(t - h)) * 8.0) * (1.0 / (12.0 * h));
}

/// Fourth-order five-point second derivative.
template <typename F>
auto central_diff2_4th(F&& f, double t, double h) {
    return ((f(t + h) + f(t - h)) * 16.0 - (f(t + 2 * h) + f(t - 2 * h)) - f(t) * 30.0) *
           (1.0 / (12.0 * h * h));
}

} // namespace reflinv
