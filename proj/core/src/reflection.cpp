#include "reflinv/reflection.hpp"

#include <cmath>

#include "reflinv/diff.hpp"
#include "reflinv/ode.hpp"

namespace reflinv {

ReflectionOperators derive_operators(const ReflectionSystem& sys) {
    const int n = sys.n();
    if (!sys.F.is_square() || sys.G.rows() != n || sys.G.cols() != n || sys.A.rows() != n ||
        sys.A.cols() != n || sys.B.rows() != n || sys.B.cols() != n)
        throw DimensionMismatch("reflection system needs four square matrices of equal size");

    Mat fmg_inv, fpg_inv;
    try {
        fmg_inv = inverse(sys.F - sys.G);
    } catch (const SingularMatrix&) {
        throw SingularCoefficient("F-G");
    }
    try {
        fpg_inv = inverse(sys.F + sys.G);
    } catch (const SingularMatrix&) {
        throw SingularCoefficient("F+G");
    }
    const Mat m_plus = fpg_inv * (sys.A + sys.B);
    const Mat e = fmg_inv * (sys.A - sys.B) * m_plus;
    return {e, m_plus};
}

Mat fundamental_matrix(const ReflectionOperators& ops, double t) {
    return even_series(ops.E, t) - ops.M_plus * odd_series(ops.E, t);
}

Mat fundamental_matrix(const ReflectionSystem& sys, double t) {
    return fundamental_matrix(derive_operators(sys), t);
}

Mat fundamental_matrix_derivative(const ReflectionOperators& ops, double t) {
    return odd_series(ops.E, t) * ops.E - ops.M_plus * even_series(ops.E, t);
}

Mat fundamental_matrix_derivative(const ReflectionSystem& sys, double t) {
    return fundamental_matrix_derivative(derive_operators(sys), t);
}

std::vector<std::pair<double, AjlState>> ajl_integrate(const ReflectionSystem& sys, double t1,
                                                       double h, AjlMode mode) {
    if (sys.n() != 2) throw DimensionMismatch("ajl_integrate requires n = 2");
    const auto ops = derive_operators(sys);
    const double tr_e = ops.E.trace();
    const double det_e = determinant(ops.E);
    const double det_m = determinant(ops.M_plus);
    const double tr_m = ops.M_plus.trace();
    const double tr_adj_e = (adjugate(ops.M_plus) * ops.E).trace();

    // coupling sign and y'(0) sign are the only differences between the modes
    const double s = (mode == AjlMode::section45) ? 1.0 : -1.0;
    AjlState init{};
    init.x = 1.0;
    init.y = (mode == AjlMode::section45) ? determinant(-ops.M_plus) : det_m;
    init.xp = -tr_m;
    init.yp = (mode == AjlMode::section45) ? -tr_adj_e : tr_adj_e;

    auto field = [&](double, const State& y) -> State {
        return {y[2], y[3], tr_e * y[0] + s * 2.0 * y[1], s * 2.0 * det_e * y[0] + tr_e * y[1]};
    };

    std::vector<std::pair<double, AjlState>> out;
    if (t1 == 0.0) {
        out.emplace_back(0.0, init);
        return out;
    }
    const auto traj = rk4_integrate(field, {init.x, init.y, init.xp, init.yp}, 0.0, t1, h);
    out.reserve(traj.size());
    for (const auto& p : traj)
        out.emplace_back(p.t, AjlState{p.y[0], p.y[1], p.y[2], p.y[3]});
    return out;
}

Mat y_direct(const ReflectionSystem& sys, double t) {
    const auto ops = derive_operators(sys);
    const Mat x = fundamental_matrix(ops, t);
    Lu<double> f = lu_factor(x);
    if (f.singular) throw SingularMatrix("y_direct: fundamental matrix X(t) singular");
    return lu_solve(f, fundamental_matrix_derivative(ops, t));
}

Mat y_closed_form(const ReflectionSystem& sys, double t) {
    const auto ops = derive_operators(sys);
    const Mat c = even_series(ops.E, t);
    const Mat s = odd_series(ops.E, t);
    const Mat denom = c - s * ops.M_plus;
    Lu<double> f = lu_factor(denom.transpose());
    if (f.singular) throw SingularMatrix("y_closed_form: denominator -S M+ + C singular");
    const Mat num = ops.E * s - c * ops.M_plus;
    // right division: num * denom^{-1} = (denom^T \ num^T)^T
    return lu_solve(f, num.transpose()).transpose();
}

Mat riccati_residual(const ReflectionSystem& sys, double t, double h) {
    const auto ops = derive_operators(sys);
    const Mat y = y_direct(sys, t);
    // fourth-order stencil: the h^2 term of the plain difference carries
    // Y''' ~ ||Y||^4 and would swamp the identity at desk scales
    const Mat yd = central_diff_4th([&](double s) { return y_direct(sys, s); }, t, h);
    return yd - (ops.E - y * y);
}

YTraceIdentity y_trace_identity(const ReflectionSystem& sys, double t, double h) {
    const auto ops = derive_operators(sys);
    const Mat y = y_direct(sys, t);
    Lu<double> f = lu_factor(y);
    if (f.singular) throw SingularMatrix("y_trace_identity: Y(t) singular");

    auto logdet = [&](double s) {
        const double d = determinant(y_direct(sys, s));
        if (d == 0.0) throw SingularMatrix("y_trace_identity: det Y vanishes on stencil");
        return std::log(std::abs(d));
    };

    YTraceIdentity out{};
    out.lhs = lu_solve(f, ops.E).trace();
    out.trace_y = y.trace();
    out.logdet_rate = central_diff_4th(logdet, t, h);
    out.rhs = out.trace_y - out.logdet_rate;
    return out;
}

ReflectionSystem random_reflection_system(Rng& rng, int n) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        ReflectionSystem sys{rng.matrix(n, n), rng.matrix(n, n), rng.matrix(n, n),
                             rng.matrix(n, n)};
        if (cond_estimate(sys.F - sys.G) >= 100.0) continue;
        if (cond_estimate(sys.F + sys.G) >= 100.0) continue;
        const auto ops = derive_operators(sys);
        if (ops.E.max_abs() > 4.0) continue;
        return sys;
    }
    throw Error("random_reflection_system: rejection sampling failed");
}

} // namespace reflinv
