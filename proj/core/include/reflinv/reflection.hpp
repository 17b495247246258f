#pragma once

#include <utility>
#include <vector>

#include "reflinv/linalg.hpp"
#include "reflinv/matrix.hpp"
#include "reflinv/rng.hpp"
#include "reflinv/series.hpp"

namespace reflinv {

/// Coefficients of the reflection system F u'(t) + G u'(-t) + A u(t) + B u(-t) = 0.
struct ReflectionSystem {
    Mat F, G, A, B;

    int n() const { return F.rows(); }

    /// max of the coefficient max-norms, used to scale residual tolerances
    double norm() const {
        return std::max(std::max(F.max_abs(), G.max_abs()), std::max(A.max_abs(), B.max_abs()));
    }
};

/// E = (F-G)^{-1} (A-B) (F+G)^{-1} (A+B)  and  M_plus = (F+G)^{-1} (A+B).
/// X'' = X E holds for the fundamental matrix below, with E on the right.
struct ReflectionOperators {
    Mat E;
    Mat M_plus;
};

ReflectionOperators derive_operators(const ReflectionSystem& sys);

/// X(t) = C(t) - M_plus S(t), C and S the even/odd series in E. X(0) = I.
Mat fundamental_matrix(const ReflectionSystem& sys, double t);
Mat fundamental_matrix(const ReflectionOperators& ops, double t);

/// X'(t) = S(t) E - M_plus C(t). X'(0) = -M_plus.
Mat fundamental_matrix_derivative(const ReflectionSystem& sys, double t);
Mat fundamental_matrix_derivative(const ReflectionOperators& ops, double t);

/// F u'(t) + G u'(-t) + A u(t) + B u(-t), columnwise for matrix-valued u.
/// `u` maps a time to (value, derivative).
template <typename U>
Mat reflection_residual(const ReflectionSystem& sys, double t, U&& u) {
    const auto [up, dp] = u(t);
    const auto [um, dm] = u(-t);
    return sys.F * dp + sys.G * dm + sys.A * up + sys.B * um;
}

/// Determinant ODE system for n = 2 with candidate states x ~ det X, y ~ det X'.
/// `theorem2` integrates x'' = tr(E) x - 2y, y'' = -2 det(E) x + tr(E) y from
/// y'(0) = +tr(Adj(M+)E); `section45` integrates x'' = tr(E) x + 2y,
/// y'' = 2 det(E) x + tr(E) y from y'(0) = -tr(Adj(M+)E). Only the latter is
/// consistent with det of the fundamental matrix; the former is kept as a
/// selectable convention for comparison.
enum class AjlMode { theorem2, section45 };

struct AjlState {
    double x, y, xp, yp;
};

std::vector<std::pair<double, AjlState>> ajl_integrate(const ReflectionSystem& sys, double t1,
                                                       double h, AjlMode mode);

/// Y(t) = X(t)^{-1} X'(t); Y(0) = -M_plus; satisfies Y' = E - Y^2.
Mat y_direct(const ReflectionSystem& sys, double t);

/// Y(t) = (-C(t) M_plus + E S(t)) (-S(t) M_plus + C(t))^{-1}.
Mat y_closed_form(const ReflectionSystem& sys, double t);

/// central_diff(Y, t, h) - (E - Y(t)^2); O(h^2) + roundoff in exact arithmetic.
Mat riccati_residual(const ReflectionSystem& sys, double t, double h);

/// Log-derivative trace relation for Y. `rhs` follows the printed convention
/// Tr(Y) - (log|det Y|)'; the relation that actually holds along the Riccati
/// flow is lhs = trace_y + logdet_rate, both parts are exposed.
struct YTraceIdentity {
    double lhs;          // Tr(Y^{-1} E)
    double rhs;          // trace_y - logdet_rate
    double trace_y;      // Tr(Y)
    double logdet_rate;  // d/dt log |det Y|, central difference
};

YTraceIdentity y_trace_identity(const ReflectionSystem& sys, double t, double h);

/// Entries uniform in [-1,1]; draws are rejected until cond(F-G) and
/// cond(F+G) are below 100 and max|E| <= 4, which keeps both the series
/// evaluation and every finite-difference referee inside its accurate range
/// on the test grids.
ReflectionSystem random_reflection_system(Rng& rng, int n);

} // namespace reflinv
