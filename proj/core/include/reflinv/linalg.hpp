#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "reflinv/matrix.hpp"

namespace reflinv {

/// LU factorization with partial pivoting. Pivots below 1e-12 * max|m| mark
/// the factorization singular; the offending column is recorded.
template <typename T>
struct Lu {
    Matrix<T> lu;
    std::vector<int> perm;
    int sign = 1;
    bool singular = false;
    int bad_column = -1;
};

template <typename T>
Lu<T> lu_factor(const Matrix<T>& m) {
    if (!m.is_square()) throw DimensionMismatch("lu_factor of non-square matrix");
    const int n = m.rows();
    Lu<T> f{m, std::vector<int>(n), 1, false, -1};
    for (int i = 0; i < n; ++i) f.perm[i] = i;

    const double tol = 1e-12 * std::max(m.max_abs(), std::numeric_limits<double>::min());
    auto& a = f.lu;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(a(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(a(i, k));
            if (v > best) { best = v; piv = i; }
        }
        if (best < tol) {
            f.singular = true;
            f.bad_column = k;
            return f;
        }
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(f.perm[k], f.perm[piv]);
            f.sign = -f.sign;
        }
        for (int i = k + 1; i < n; ++i) {
            a(i, k) /= a(k, k);
            const T lik = a(i, k);
            if (lik == T{}) continue;
            for (int j = k + 1; j < n; ++j) a(i, j) -= lik * a(k, j);
        }
    }
    return f;
}

/// det via LU; structurally singular input yields an exact 0.
template <typename T>
T determinant(const Matrix<T>& m) {
    if (!m.is_square()) throw DimensionMismatch("determinant of non-square matrix");
    auto f = lu_factor(m);
    if (f.singular) return T{};
    T d = T(double(f.sign));
    for (int i = 0; i < m.rows(); ++i) d *= f.lu(i, i);
    if (!finite_value(d)) throw NonFiniteState("determinant is not finite");
    return d;
}

/// Solve m x = rhs given a factorization (rhs may have several columns).
template <typename T>
Matrix<T> lu_solve(const Lu<T>& f, const Matrix<T>& rhs) {
    if (f.singular) throw SingularMatrix("lu_solve on singular factorization");
    const int n = f.lu.rows();
    if (rhs.rows() != n) throw DimensionMismatch("lu_solve: rhs rows");
    Matrix<T> x(n, rhs.cols());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < rhs.cols(); ++j) x(i, j) = rhs(f.perm[i], j);
    // forward substitution (unit lower factor)
    for (int k = 0; k < n; ++k)
        for (int i = k + 1; i < n; ++i) {
            const T lik = f.lu(i, k);
            if (lik == T{}) continue;
            for (int j = 0; j < rhs.cols(); ++j) x(i, j) -= lik * x(k, j);
        }
    // back substitution
    for (int k = n - 1; k >= 0; --k) {
        for (int j = 0; j < rhs.cols(); ++j) x(k, j) /= f.lu(k, k);
        for (int i = 0; i < k; ++i) {
            const T uik = f.lu(i, k);
            if (uik == T{}) continue;
            for (int j = 0; j < rhs.cols(); ++j) x(i, j) -= uik * x(k, j);
        }
    }
    return x;
}

template <typename T>
Matrix<T> inverse(const Matrix<T>& m) {
    if (!m.is_square()) throw DimensionMismatch("inverse of non-square matrix");
    auto f = lu_factor(m);
    if (f.singular)
        throw SingularMatrix("inverse: pivot below tolerance in column " +
                             std::to_string(f.bad_column));
    auto inv = lu_solve(f, Matrix<T>::identity(m.rows()));
    if (!inv.all_finite()) throw NonFiniteState("inverse is not finite");
    return inv;
}

template <typename T>
Matrix<T> solve(const Matrix<T>& m, const Matrix<T>& rhs) {
    auto f = lu_factor(m);
    if (f.singular) throw SingularMatrix("solve: singular system matrix");
    return lu_solve(f, rhs);
}

namespace detail {

template <typename T>
Matrix<T> minor_of(const Matrix<T>& m, int row, int col) {
    Matrix<T> s(m.rows() - 1, m.cols() - 1);
    for (int i = 0, si = 0; i < m.rows(); ++i) {
        if (i == row) continue;
        for (int j = 0, sj = 0; j < m.cols(); ++j) {
            if (j == col) continue;
            s(si, sj) = m(i, j);
            ++sj;
        }
        ++si;
    }
    return s;
}

template <typename T>
Matrix<T> adjugate_cofactor(const Matrix<T>& m) {
    const int n = m.rows();
    Matrix<T> adj(n, n);
    if (n == 1) {
        adj(0, 0) = T(1);
        return adj;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const T c = determinant(minor_of(m, i, j));
            adj(j, i) = ((i + j) % 2 == 0) ? c : -c;
        }
    return adj;
}

} // namespace detail

/// Adjugate: cofactors for n <= 4, det * inverse beyond that, falling back to
/// cofactors (n <= 6) when the input is singular.
template <typename T>
Matrix<T> adjugate(const Matrix<T>& m) {
    if (!m.is_square()) throw DimensionMismatch("adjugate of non-square matrix");
    const int n = m.rows();
    if (n <= 4) return detail::adjugate_cofactor(m);
    auto f = lu_factor(m);
    if (!f.singular) {
        T d = T(double(f.sign));
        for (int i = 0; i < n; ++i) d *= f.lu(i, i);
        return lu_solve(f, Matrix<T>::identity(n)) * d;
    }
    if (n <= 6) return detail::adjugate_cofactor(m);
    throw Unsupported("adjugate of singular matrix with n > 6");
}

/// Frobenius-based condition estimate; +inf on singular input.
template <typename T>
double cond_estimate(const Matrix<T>& m) {
    auto f = lu_factor(m);
    if (f.singular) return std::numeric_limits<double>::infinity();
    auto inv = lu_solve(f, Matrix<T>::identity(m.rows()));
    return m.frobenius() * inv.frobenius();
}

/// 2-norm upper estimate by power iteration on m^T m (deterministic start).
inline double two_norm_estimate(const Mat& m, int iters = 120) {
    const int n = m.cols();
    std::vector<double> x(n, 1.0 / std::sqrt(double(n)));
    const Mat g = m.transpose() * m;
    double lambda = 0.0;
    for (int it = 0; it < iters; ++it) {
        std::vector<double> y(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) y[i] += g(i, j) * x[j];
        double norm = 0.0;
        for (double v : y) norm += v * v;
        norm = std::sqrt(norm);
        if (norm == 0.0) return 0.0;
        lambda = norm;
        for (int i = 0; i < n; ++i) x[i] = y[i] / norm;
    }
    return std::sqrt(lambda);
}

} // namespace reflinv
