#pragma once

#include "reflinv/matrix.hpp"

namespace reflinv {

namespace detail {

// C(t) = sum_k E^k t^(2k) / (2k)!   when odd == false
// S(t) = sum_k E^k t^(2k+1) / (2k+1)!  when odd == true
// Adaptive: stop once the new term's max-norm drops below 1e-16 times the
// accumulated max-norm; 300 terms without that is reported as divergence.
template <typename T>
Matrix<T> hyperbolic_series(const Matrix<T>& e, double t, bool odd) {
    if (!e.is_square()) throw DimensionMismatch("series argument must be square");
    const int n = e.rows();
    const double t2 = t * t;
    Matrix<T> term = Matrix<T>::identity(n);
    if (odd) term *= T(t);
    Matrix<T> acc = term;
    constexpr int kMaxTerms = 300;
    for (int k = 1; k <= kMaxTerms; ++k) {
        const double denom = odd ? double(2 * k) * double(2 * k + 1)
                                 : double(2 * k - 1) * double(2 * k);
        term = (term * e) * T(t2 / denom);
        acc += term;
        if (!acc.all_finite())
            throw SeriesDiverged("series sum overflowed; ||E|| t^2 too large");
        // <= so the all-zero cases (t = 0, E = 0) stop immediately
        if (term.max_abs() <= 1e-16 * acc.max_abs()) return acc;
    }
    throw SeriesDiverged("series did not converge within 300 terms");
}

} // namespace detail

/// C(t) = sum E^k t^(2k) / (2k)!
template <typename T>
Matrix<T> even_series(const Matrix<T>& e, double t) {
    return detail::hyperbolic_series(e, t, false);
}

/// S(t) = sum E^k t^(2k+1) / (2k+1)!
template <typename T>
Matrix<T> odd_series(const Matrix<T>& e, double t) {
    return detail::hyperbolic_series(e, t, true);
}

/// exp(m t) = C(t) + m S(t) with C, S the even/odd series in m^2.
template <typename T>
Matrix<T> matrix_exp(const Matrix<T>& m, double t) {
    const Matrix<T> sq = m * m;
    return even_series(sq, t) + m * odd_series(sq, t);
}

} // namespace reflinv
