#pragma once

#include <utility>
#include <vector>

#include "reflinv/matrix.hpp"

namespace reflinv {

using CVec = std::vector<Complex>;

/// Element A0 + A1 C of the conjugation algebra: C^2 = I, C A = conj(A) C.
/// Acts on vectors as z -> A0 z + A1 conj(z).
struct GradedElement {
    CMat a0;
    CMat a1;

    int n() const { return a0.rows(); }

    /// max of the two component max-norms
    double norm() const { return std::max(a0.max_abs(), a1.max_abs()); }
};

GradedElement graded_identity(int n);
GradedElement gadd(const GradedElement& a, const GradedElement& b);
GradedElement gsub(const GradedElement& a, const GradedElement& b);
GradedElement gscale(const GradedElement& a, Complex s);

/// (A0 B0 + A1 conj(B1),  A0 B1 + A1 conj(B0))
GradedElement gmul(const GradedElement& a, const GradedElement& b);

/// Inverse via the block kernel Delta(A0,A1) = (A0 - A1 conj(A0^{-1} A1))^{-1},
/// second component Delta(conj(A1), conj(A0)). Falls back to inverting the
/// real representation when an intermediate inverse does not exist.
GradedElement ginv(const GradedElement& a);

/// Repeated gmul; k = 0 yields the identity element.
GradedElement gpow(const GradedElement& a, int k);

CVec apply_element(const GradedElement& a, const CVec& z);

/// Faithful real 2n x 2n representation: blocks [[Re, -Im],[Im, Re]] for the
/// even part and the reflection [[I,0],[0,-I]] for C.
Mat rho(const GradedElement& a);
std::vector<double> rho_vec(const CVec& z);
CVec rho_vec_inverse(const std::vector<double>& w);

/// Recover (A0, A1) from a 2n x 2n real matrix in the image of rho.
GradedElement rho_split(const Mat& r);

/// ||ginv(I - t a) - sum_{k<=kmax} t^k a^k|| (max over both components).
/// Requires spectral radius of |t| rho(a) below one, estimated by power
/// iteration (2-norm bound).
double neumann_identity_check(const GradedElement& a, double t, int kmax);

/// Canonical complex system z' + A z + B conj(z) = 0.
struct ComplexSystem {
    CMat a;
    CMat b;

    int n() const { return a.rows(); }
};

/// Reduce bigB z' + bigA z = 0 (graded coefficients) to canonical form:
/// components of ginv(bigB) * bigA.
ComplexSystem reduce_to_canonical(const GradedElement& bigA, const GradedElement& bigB);

/// Fundamental pair sampled on the integration grid: z(t) = X0(t) z0 + X1(t) conj(z0)
/// solves the canonical system for every z0; X0(0) = I, X1(0) = 0.
struct FundamentalPairSamples {
    std::vector<double> ts;
    std::vector<CMat> x0;
    std::vector<CMat> x1;

    CVec reconstruct(size_t idx, const CVec& z0) const;
};

/// Integrates X0' = -A X0 - B conj(X1), X1' = -A X1 - B conj(X0) by RK4 on the
/// 4n^2-dimensional real flattening.
FundamentalPairSamples solve_fundamental_pair(const ComplexSystem& sys, double t1, double h);

/// Coefficients (F, G) of the second-order reduction X'' + F X' + G X = 0
/// satisfied by both fundamental-pair components:
///   F = A + B conj(A) B^{-1},  G = B conj(A) B^{-1} A - B conj(B).
std::pair<CMat, CMat> second_order_coeffs(const ComplexSystem& sys);

/// alpha = (xp0 - x0 (Gamma-Omega)) Omega^{-1} / 2,
/// beta = -(xp0 - x0 (Gamma+Omega)) Omega^{-1} / 2; the pair recomposes to
/// alpha + beta = x0 and alpha (Gamma+Omega) + beta (Gamma-Omega) = xp0.
std::pair<CMat, CMat> ansatz_coeffs(const CMat& x0, const CMat& xp0, const CMat& gamma,
                                    const CMat& omega);

} // namespace reflinv
