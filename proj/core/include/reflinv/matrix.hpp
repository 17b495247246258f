#pragma once

#include <cmath>
#include <complex>
#include <initializer_list>
#include <string>
#include <type_traits>
#include <vector>

#include "reflinv/errors.hpp"

namespace reflinv {

using Complex = std::complex<double>;

template <typename T>
inline constexpr bool is_matrix_scalar_v =
    std::is_same_v<T, double> || std::is_same_v<T, Complex>;

inline double conj_value(double x) { return x; }
inline Complex conj_value(const Complex& x) { return std::conj(x); }

inline bool finite_value(double x) { return std::isfinite(x); }
inline bool finite_value(const Complex& x) {
    return std::isfinite(x.real()) && std::isfinite(x.imag());
}

/// Dense row-major matrix over double or complex<double>.
template <typename T>
class Matrix {
    static_assert(is_matrix_scalar_v<T>, "Matrix element type must be double or complex<double>");

    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> data_;

public:
    using value_type = T;

    Matrix() = default;

    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(size_t(rows) * cols, T{}) {
        if (rows <= 0 || cols <= 0)
            throw DimensionMismatch("matrix dimensions must be positive");
    }

    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = int(init.size());
        cols_ = rows_ > 0 ? int(init.begin()->size()) : 0;
        if (rows_ == 0 || cols_ == 0)
            throw DimensionMismatch("empty initializer for matrix");
        data_.reserve(size_t(rows_) * cols_);
        for (const auto& row : init) {
            if (int(row.size()) != cols_)
                throw DimensionMismatch("ragged initializer for matrix");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    T& operator()(int i, int j) { return data_[size_t(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return data_[size_t(i) * cols_ + j]; }

    const std::vector<T>& data() const { return data_; }
    std::vector<T>& data() { return data_; }

    Matrix& operator+=(const Matrix& o) {
        require_same_shape(o, "operator+=");
        for (size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }

    Matrix& operator-=(const Matrix& o) {
        require_same_shape(o, "operator-=");
        for (size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }

    Matrix& operator*=(const T& s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    Matrix operator-() const {
        Matrix m = *this;
        for (auto& x : m.data_) x = -x;
        return m;
    }

    Matrix transpose() const {
        Matrix m(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    Matrix conjugate() const {
        Matrix m = *this;
        for (auto& x : m.data_) x = conj_value(x);
        return m;
    }

    T trace() const {
        if (!is_square()) throw DimensionMismatch("trace of non-square matrix");
        T s{};
        for (int i = 0; i < rows_; ++i) s += (*this)(i, i);
        return s;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& x : data_) m = std::max(m, std::abs(x));
        return m;
    }

    double frobenius() const {
        double s = 0.0;
        for (const auto& x : data_) s += std::norm(Complex(x));
        return std::sqrt(s);
    }

    bool all_finite() const {
        for (const auto& x : data_)
            if (!finite_value(x)) return false;
        return true;
    }

    void require_same_shape(const Matrix& o, const char* where) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimensionMismatch(std::string(where) + ": shape mismatch " + shape_str() +
                                    " vs " + o.shape_str());
    }

    std::string shape_str() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }
};

template <typename T>
Matrix<T> operator+(Matrix<T> a, const Matrix<T>& b) { return a += b; }

template <typename T>
Matrix<T> operator-(Matrix<T> a, const Matrix<T>& b) { return a -= b; }

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows())
        throw DimensionMismatch("matrix product: " + a.shape_str() + " * " + b.shape_str());
    Matrix<T> c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const T aik = a(i, k);
            if (aik == T{}) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

template <typename T>
Matrix<T> operator*(Matrix<T> a, std::type_identity_t<T> s) { return a *= s; }

template <typename T>
Matrix<T> operator*(std::type_identity_t<T> s, Matrix<T> a) { return a *= s; }

// double scalars on complex matrices
inline Matrix<Complex> operator*(Matrix<Complex> a, double s) { return a *= Complex(s); }
inline Matrix<Complex> operator*(double s, Matrix<Complex> a) { return a *= Complex(s); }

using Mat = Matrix<double>;
using CMat = Matrix<Complex>;

inline Mat real_part(const CMat& m) {
    Mat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).real();
    return r;
}

inline Mat imag_part(const CMat& m) {
    Mat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).imag();
    return r;
}

inline CMat to_complex(const Mat& m) {
    CMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = Complex(m(i, j));
    return r;
}

/// m^k by repeated multiplication, k >= 0.
template <typename T>
Matrix<T> matrix_power(const Matrix<T>& m, int k) {
    if (!m.is_square()) throw DimensionMismatch("matrix_power of non-square matrix");
    Matrix<T> acc = Matrix<T>::identity(m.rows());
    for (int i = 0; i < k; ++i) acc = acc * m;
    return acc;
}

} // namespace reflinv
