#pragma once

#include <map>
#include <vector>

#include "reflinv/errors.hpp"

namespace reflinv {

/// Sparse multivariate polynomial truncated at a per-variable and total degree
/// cap. Arithmetic silently drops anything above the cap; coefficients below
/// 1e-14 in magnitude are pruned to keep the maps small.
class TruncatedMultiPoly {
public:
    using Exponents = std::vector<int>;

    TruncatedMultiPoly(int var_count, int total_cap);

    static TruncatedMultiPoly constant(int var_count, int total_cap, double c);
    static TruncatedMultiPoly variable(int var_count, int total_cap, int index);

    int var_count() const { return var_count_; }
    int total_cap() const { return total_cap_; }
    const std::map<Exponents, double>& terms() const { return coeffs_; }

    double coefficient(const Exponents& e) const;
    void add_term(const Exponents& e, double c);

    TruncatedMultiPoly& operator+=(const TruncatedMultiPoly& o);
    TruncatedMultiPoly& operator-=(const TruncatedMultiPoly& o);
    TruncatedMultiPoly& operator*=(double s);
    TruncatedMultiPoly operator*(const TruncatedMultiPoly& o) const;

    friend TruncatedMultiPoly operator+(TruncatedMultiPoly a, const TruncatedMultiPoly& b) {
        return a += b;
    }
    friend TruncatedMultiPoly operator-(TruncatedMultiPoly a, const TruncatedMultiPoly& b) {
        return a -= b;
    }
    friend TruncatedMultiPoly operator*(TruncatedMultiPoly a, double s) { return a *= s; }

private:
    bool within_caps(const Exponents& e) const;
    void prune();

    int var_count_;
    int total_cap_;
    std::map<Exponents, double> coeffs_;
};

} // namespace reflinv
