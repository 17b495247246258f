#pragma once

#include <vector>

#include "reflinv/matrix.hpp"

namespace reflinv {

/// Polynomial matrix path X(t) = sum_k t^k X_k with square coefficients of
/// one common size.
class PolyPath {
    std::vector<Mat> coeffs_;

public:
    explicit PolyPath(std::vector<Mat> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw DimensionMismatch("PolyPath needs at least one coefficient");
        const int n = coeffs_.front().rows();
        for (const auto& c : coeffs_)
            if (!c.is_square() || c.rows() != n)
                throw DimensionMismatch("PolyPath coefficients must be square of equal size");
    }

    int degree() const { return int(coeffs_.size()) - 1; }
    int dim() const { return coeffs_.front().rows(); }
    const Mat& coeff(int k) const { return coeffs_[size_t(k)]; }

    Mat value(double t) const {
        // Horner evaluation
        Mat acc = coeffs_.back();
        for (int k = degree() - 1; k >= 0; --k) acc = acc * t + coeffs_[size_t(k)];
        return acc;
    }

    PolyPath derivative() const {
        if (degree() == 0) return PolyPath({Mat::zero(dim(), dim())});
        std::vector<Mat> d;
        d.reserve(coeffs_.size() - 1);
        for (int k = 1; k <= degree(); ++k) d.push_back(coeffs_[size_t(k)] * double(k));
        return PolyPath(std::move(d));
    }

    /// k-th derivative evaluated at t; zero matrix beyond the path degree.
    Mat derivative_value(int order, double t) const {
        if (order > degree()) return Mat::zero(dim(), dim());
        PolyPath p = *this;
        for (int k = 0; k < order; ++k) p = p.derivative();
        return p.value(t);
    }
};

} // namespace reflinv
