#pragma once

#include <utility>
#include <vector>

#include "reflinv/matrix.hpp"

namespace reflinv {

/// Index vector (m_1, ..., m_N) naming the coefficient of
/// prod alpha_i^{m_i} in det(I + sum alpha_i X_i).
using MultiIndex = std::vector<int>;

inline int order_of(const MultiIndex& ms) {
    int s = 0;
    for (int m : ms) s += m;
    return s;
}

long binomial(int n, int k);

/// Invariant Z_{ms}(xs) by determinant evaluation on a symmetric integer node
/// grid scaled by 1/(1 + max ||X_i||) and nested Newton coefficient
/// extraction. Exact 0 for a negative index or order above the matrix size.
double z_value(const MultiIndex& ms, const std::vector<Mat>& xs);

/// Same algorithm without the order > n short-circuit, so the vanishing rule
/// can be observed as a computed near-zero.
double z_value_interpolated(const MultiIndex& ms, const std::vector<Mat>& xs);

/// Structurally independent route: coefficient extraction from
/// exp(Tr log(I + sum alpha_i X_i)) over truncated polynomial arithmetic.
double z_via_tracelog(const MultiIndex& ms, const std::vector<Mat>& xs);

/// Printed trace forms for Z_1, Z_2, Z_3, Z_{1,1} and Z_n = det.
double closed_form(const MultiIndex& ms, const std::vector<Mat>& xs);

/// lhs = Z_{l,ms}(a, bs); rhs = det(a) Z_{n-l-sum(ms), ms}(a^{-1}, a^{-1} b_i).
std::pair<double, double> duality_pair(int l, const MultiIndex& ms, const Mat& a,
                                       const std::vector<Mat>& bs);

/// lhs = Z_{n-sum(ms), ms}(x, x y_1, ...); rhs = det(x) Z_{ms}(ys).
std::pair<double, double> det_factorization(const MultiIndex& ms, const Mat& x,
                                            const std::vector<Mat>& ys);

/// lhs = Z_{a,b}(w, w); rhs = binomial(a+b, a) Z_{a+b}(w).
std::pair<double, double> collapse_repeated(int a, int b, const Mat& w);

struct EpsilonDeltas {
    double exact;      // Z_{l,ms}(a1 + eps a2, bs) - Z_{l,ms}(a1, bs)
    double predicted;  // eps * Z_{l-1,1,ms}(a1, a2, bs)
    double eps;
};

/// First-order perturbation of the leading argument; exact - predicted is
/// O(eps^2) with curvature Z_{l-2,2,ms}.
EpsilonDeltas epsilon_first_order(int l, const MultiIndex& ms, const Mat& a1, const Mat& a2,
                                  const std::vector<Mat>& bs, double eps);

} // namespace reflinv
