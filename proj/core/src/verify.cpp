#include "reflinv/verify.hpp"

#include <algorithm>
#include <cmath>

#include "reflinv/closure.hpp"
#include "reflinv/diff.hpp"
#include "reflinv/graded.hpp"
#include "reflinv/invariants.hpp"
#include "reflinv/linalg.hpp"
#include "reflinv/ode.hpp"
#include "reflinv/rng.hpp"
#include "reflinv/series.hpp"
#include "reflinv/signature.hpp"

namespace reflinv {

namespace {

Check make_check(std::string name, std::string identity, double residual, double tolerance,
                 std::string note = "") {
    Check c;
    c.name = std::move(name);
    c.identity = std::move(identity);
    c.residual = residual;
    c.tolerance = tolerance;
    c.pass = residual <= tolerance;
    c.note = std::move(note);
    return c;
}

std::vector<double> grid(double start, double stop, double step) {
    std::vector<double> ts;
    const int count = int(std::floor((stop - start) / step + 1e-9)) + 1;
    ts.reserve(size_t(count));
    for (int i = 0; i < count; ++i) ts.push_back(start + double(i) * step);
    return ts;
}

/// random E with max-norm exactly `norm`
Mat random_e_with_norm(Rng& rng, int n, double norm) {
    Mat e = rng.matrix(n, n);
    const double m = e.max_abs();
    if (m > 0.0) e *= norm / m;
    return e;
}

GradedElement random_graded(Rng& rng, int n, double cond_limit = 100.0) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        GradedElement a{rng.cmatrix(n, n), rng.cmatrix(n, n)};
        if (cond_estimate(rho(a)) < cond_limit) return a;
    }
    throw Error("random_graded: rejection sampling failed");
}

CVec random_cvec(Rng& rng, int n) {
    CVec z(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double re = rng.uniform();
        const double im = rng.uniform();
        z[size_t(i)] = Complex(re, im);
    }
    return z;
}

/// All index vectors with `vars` nonnegative entries and order <= max_order.
void enumerate_indices(int vars, int max_order, std::vector<MultiIndex>& out) {
    MultiIndex cur(size_t(vars), 0);
    while (true) {
        if (order_of(cur) <= max_order) out.push_back(cur);
        int v = vars - 1;
        while (v >= 0) {
            if (++cur[size_t(v)] <= max_order) break;
            cur[size_t(v)] = 0;
            --v;
        }
        if (v < 0) break;
    }
}

} // namespace

std::vector<Check> verify_reflection(const VerifyOptions& opt) {
    std::vector<Check> checks;
    Rng rng(opt.seed);

    // residual of the fundamental matrix in the reflection equation
    {
        double worst = 0.0, worst_x0 = 0.0;
        for (int n = 1; n <= 4; ++n) {
            for (int trial = 0; trial < opt.trials; ++trial) {
                const auto sys = random_reflection_system(rng, n);
                const auto ops = derive_operators(sys);
                const double scale = 1.0 + sys.norm();
                for (double t : grid(-1.0, 1.0, 0.1)) {
                    const Mat r = reflection_residual(sys, t, [&](double s) {
                        return std::pair<Mat, Mat>(fundamental_matrix(ops, s),
                                                   fundamental_matrix_derivative(ops, s));
                    });
                    worst = std::max(worst, r.max_abs() / scale);
                }
                worst_x0 = std::max(worst_x0,
                                    (fundamental_matrix(ops, 0.0) - Mat::identity(n)).max_abs());
            }
        }
        checks.push_back(make_check("fundamental residual",
                                    "F X'(t) + G X'(-t) + A X(t) + B X(-t) = 0", worst, 1e-8));
        checks.push_back(make_check("fundamental initial value", "X(0) = I", worst_x0, 1e-13));
    }

    // X'' = X E and the derivative formula, by central differences
    {
        double worst_xpp = 0.0, worst_xp = 0.0;
        for (int trial = 0; trial < opt.trials; ++trial) {
            const auto sys = random_reflection_system(rng, 3);
            const auto ops = derive_operators(sys);
            for (double t : {0.3, 0.7}) {
                const Mat xpp = central_diff2_4th(
                    [&](double s) { return fundamental_matrix(ops, s); }, t, 1e-3);
                worst_xpp = std::max(worst_xpp,
                                     (xpp - fundamental_matrix(ops, t) * ops.E).max_abs());
                const Mat xp = central_diff(
                    [&](double s) { return fundamental_matrix(ops, s); }, t, 1e-5);
                worst_xp = std::max(
                    worst_xp, (xp - fundamental_matrix_derivative(ops, t)).max_abs());
            }
        }
        checks.push_back(make_check("second derivative reduction", "X'' = X E", worst_xpp, 1e-7));
        checks.push_back(
            make_check("derivative formula", "X' = S E - M+ C", worst_xp, 1e-7));
    }

    // series identities
    {
        double worst_hyp = 0.0, worst_dc = 0.0, worst_ds = 0.0;
        for (int trial = 0; trial < opt.trials; ++trial) {
            const int n = 1 + trial % 4;
            const Mat e = random_e_with_norm(rng, n, 4.0 * std::max(rng.unit(), 0.1));
            const double t = 2.0 * rng.uniform();
            const Mat c = even_series(e, t);
            const Mat s = odd_series(e, t);
            worst_hyp = std::max(worst_hyp, (c * c - e * s * s - Mat::identity(n)).max_abs());
            const Mat dc = central_diff([&](double u) { return even_series(e, u); }, t, 1e-5);
            const Mat ds = central_diff([&](double u) { return odd_series(e, u); }, t, 1e-5);
            worst_dc = std::max(worst_dc, (dc - e * s).max_abs());
            worst_ds = std::max(worst_ds, (ds - c).max_abs());
        }
        checks.push_back(
            make_check("hyperbolic identity", "C(t)^2 - E S(t)^2 = I", worst_hyp, 1e-10));
        checks.push_back(make_check("even series derivative", "C' = E S", worst_dc, 1e-7));
        checks.push_back(make_check("odd series derivative", "S' = C", worst_ds, 1e-7));
    }

    // plain dense-algebra properties
    {
        double worst_inv = 0.0, worst_det = 0.0;
        for (int trial = 0; trial < opt.trials; ++trial) {
            const int n = 2 + trial % 5;
            Mat m = rng.matrix(n, n);
            while (cond_estimate(m) >= 1e6) m = rng.matrix(n, n);
            worst_inv = std::max(worst_inv, (inverse(inverse(m)) - m).max_abs());
            const Mat m2 = rng.matrix(n, n);
            const double lhs = determinant(m * m2);
            const double rhs = determinant(m) * determinant(m2);
            worst_det = std::max(worst_det, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
        }
        checks.push_back(
            make_check("inverse round trip", "inv(inv(M)) = M", worst_inv, 1e-9));
        checks.push_back(make_check("determinant multiplicativity",
                                    "det(M1 M2) = det(M1) det(M2)", worst_det, 1e-10));
    }

    // RK4 order and series cross-check
    {
        auto exp_error = [](double h) {
            const auto traj =
                rk4_integrate([](double, const State& y) { return State{y[0]}; }, {1.0}, 0.0,
                              1.0, h);
            return std::abs(traj.back().y[0] - std::exp(1.0));
        };
        const double ratio = exp_error(2e-3) / exp_error(1e-3);
        checks.push_back(make_check("rk4 step scaling", "halving h shrinks error >= 12x",
                                    ratio >= 12.0 ? 0.0 : 12.0 - ratio, 0.0));

        const Mat m = rng.matrix(3, 3);
        auto field = [&](double, const State& y) {
            State d(9);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    double acc = 0.0;
                    for (int k = 0; k < 3; ++k) acc += m(i, k) * y[size_t(k * 3 + j)];
                    d[size_t(i * 3 + j)] = acc;
                }
            return d;
        };
        State y0(9, 0.0);
        for (int i = 0; i < 3; ++i) y0[size_t(i * 3 + i)] = 1.0;
        const auto traj = rk4_integrate(field, y0, 0.0, 1.0, 1e-3);
        const Mat expm = matrix_exp(m, 1.0);
        double worst = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                worst = std::max(worst, std::abs(traj.back().y[size_t(i * 3 + j)] - expm(i, j)));
        checks.push_back(make_check("rk4 vs series exponential",
                                    "Y' = M Y matches exp(M t) from the even/odd series", worst,
                                    1e-8));
    }

    return checks;
}

std::vector<Check> verify_ajl(const VerifyOptions& opt) {
    std::vector<Check> checks;
    Rng rng(opt.seed);
    const bool printed_signs = opt.ajl_mode == AjlMode::theorem2;
    const std::string note =
        printed_signs ? "known discrepancy of the printed sign convention" : "";

    // closed-form system E = I, M+ = I: det X = det X' = e^{-2t}
    {
        const ReflectionSystem sys{Mat::identity(2), Mat::zero(2, 2), Mat::identity(2),
                                   Mat::zero(2, 2)};
        double worst = 0.0;
        for (const auto& [t, state] : ajl_integrate(sys, 2.0, 1e-3, opt.ajl_mode)) {
            worst = std::max(worst, std::abs(state.x - std::exp(-2.0 * t)));
            worst = std::max(worst, std::abs(state.y - std::exp(-2.0 * t)));
        }
        checks.push_back(make_check("determinant system, closed-form case",
                                    "x(t) = det X(t) = e^{-2t} when E = I, M+ = I", worst, 1e-8,
                                    note));
    }

    // random systems against det of the fundamental matrix
    {
        double worst = 0.0;
        for (int trial = 0; trial < opt.trials; ++trial) {
            const auto sys = random_reflection_system(rng, 2);
            const auto ops = derive_operators(sys);
            for (const auto& [t, state] : ajl_integrate(sys, 2.0, 1e-3, opt.ajl_mode)) {
                worst = std::max(worst,
                                 std::abs(state.x - determinant(fundamental_matrix(ops, t))));
                worst = std::max(
                    worst,
                    std::abs(state.y - determinant(fundamental_matrix_derivative(ops, t))));
            }
        }
        checks.push_back(make_check("determinant system, random sweep",
                                    "(x, y) = (det X, det X') on [0, 2]", worst, 1e-6, note));
    }

    // E = 0 keeps det X a polynomial: x(t) = det(I - M+ t)
    {
        Mat a = rng.matrix(2, 2);
        const ReflectionSystem sys{Mat::identity(2), Mat::zero(2, 2), a, a};
        const auto ops = derive_operators(sys);
        double worst = 0.0;
        for (const auto& [t, state] : ajl_integrate(sys, 2.0, 1e-3, opt.ajl_mode))
            worst = std::max(
                worst, std::abs(state.x - determinant(Mat::identity(2) - ops.M_plus * t)));
        checks.push_back(make_check("determinant system, E = 0 polynomial case",
                                    "x(t) = det(I - M+ t) when E = 0", worst, 1e-9, note));
    }

    // the two printed conventions genuinely disagree; document it
    if (!printed_signs) {
        const ReflectionSystem sys{Mat::identity(2), Mat::zero(2, 2), Mat::identity(2),
                                   Mat::zero(2, 2)};
        double deviation = 0.0;
        for (const auto& [t, state] : ajl_integrate(sys, 2.0, 1e-3, AjlMode::theorem2))
            deviation = std::max(deviation, std::abs(state.x - std::exp(-2.0 * t)));
        checks.push_back(make_check(
            "printed-sign mode deviates (expected)",
            "x'' = tr(E) x - 2y with y'(0) = +tr(Adj(M+)E) does not reproduce det X",
            deviation >= 0.1 ? 0.0 : 0.1 - deviation, 0.0,
            "pass means the documented discrepancy is observed"));
    }

    return checks;
}

std::vector<Check> verify_riccati(const VerifyOptions& opt) {
    std::vector<Check> checks;
    Rng rng(opt.seed);

    double worst_riccati = 0.0, worst_agree = 0.0, worst_y0 = 0.0;
    double worst_trace = 0.0, worst_sign_gap = 0.0;
    for (int trial = 0; trial < opt.trials; ++trial) {
        const int n = 2 + trial % 2;
        const auto sys = random_reflection_system(rng, n);
        const auto ops = derive_operators(sys);
        worst_y0 = std::max(worst_y0, (y_direct(sys, 0.0) + ops.M_plus).max_abs());
        for (double t : grid(-1.0, 1.0, 0.25)) {
            try {
                // the identities require X(t) invertible and Y(t) of moderate
                // size; near poles of Y the difference stencil carries no
                // information
                const Mat x = fundamental_matrix(ops, t);
                if (cond_estimate(x) > 50.0) continue;
                const Mat y = y_direct(sys, t);
                if (y.max_abs() > 10.0) continue;
                worst_riccati =
                    std::max(worst_riccati, riccati_residual(sys, t, 1e-4).max_abs());
                worst_agree = std::max(worst_agree, (y - y_closed_form(sys, t)).max_abs());

                if (std::abs(determinant(y)) < 0.1 || cond_estimate(y) > 50.0) continue;
                const auto id = y_trace_identity(sys, t, 1e-4);
                // relation consistent with Y' = E - Y^2 and Jacobi's formula
                worst_trace =
                    std::max(worst_trace, std::abs(id.lhs - (id.trace_y + id.logdet_rate)));
                // printed convention differs from it by exactly 2 (log|det Y|)'
                worst_sign_gap =
                    std::max(worst_sign_gap, std::abs((id.lhs - id.rhs) - 2.0 * id.logdet_rate));
            } catch (const SingularMatrix&) {
                continue;  // grid point too close to a singularity of X or Y
            }
        }
    }
    checks.push_back(
        make_check("riccati residual", "Y' = E - Y^2", worst_riccati, 1e-6));
    checks.push_back(make_check("closed form agreement",
                                "X^{-1} X' = (-C M+ + E S)(-S M+ + C)^{-1}", worst_agree, 1e-8));
    checks.push_back(make_check("initial value", "Y(0) = -M+", worst_y0, 1e-13));
    checks.push_back(make_check("trace identity, flow-consistent sign",
                                "Tr(Y^{-1}E) = Tr(Y) + (log|det Y|)'", worst_trace, 1e-5));
    checks.push_back(make_check(
        "trace identity, printed sign characterized",
        "Tr(Y^{-1}E) - [Tr(Y) - (log|det Y|)'] = 2 (log|det Y|)'", worst_sign_gap, 1e-5,
        "the printed form holds only where det Y is stationary"));
    return checks;
}

std::vector<Check> verify_graded(const VerifyOptions& opt) {
    std::vector<Check> checks;
    Rng rng(opt.seed);

    double worst_hom = 0.0, worst_inv = 0.0, worst_ginv = 0.0, worst_pow = 0.0,
           worst_assoc = 0.0;
    for (int trial = 0; trial < opt.trials; ++trial) {
        const int n = 1 + trial % 3;
        const auto a = random_graded(rng, n);
        const auto b = random_graded(rng, n);
        const auto c = random_graded(rng, n);

        worst_hom = std::max(worst_hom, (rho(gmul(a, b)) - rho(a) * rho(b)).max_abs());
        worst_inv = std::max(worst_inv, (rho(ginv(a)) - inverse(rho(a))).max_abs());
        worst_ginv = std::max(
            worst_ginv,
            (rho(gmul(a, ginv(a))) - Mat::identity(2 * n)).max_abs());
        const int k = 2 + int(rng.next_u64() % 5);  // 2..6
        worst_pow =
            std::max(worst_pow, (rho(gpow(a, k)) - matrix_power(rho(a), k)).max_abs());
        worst_assoc = std::max(
            worst_assoc,
            (rho(gmul(gmul(a, b), c)) - rho(gmul(a, gmul(b, c)))).max_abs());
    }
    checks.push_back(make_check("representation homomorphism",
                                "rho(a b) = rho(a) rho(b)", worst_hom, 1e-10));
    checks.push_back(
        make_check("representation of inverse", "rho(a^{-1}) = rho(a)^{-1}", worst_inv, 1e-10));
    checks.push_back(
        make_check("explicit inverse", "a a^{-1} = identity element", worst_ginv, 1e-10));
    checks.push_back(make_check("powers", "rho(a^k) = rho(a)^k, k <= 6", worst_pow, 1e-10));
    checks.push_back(make_check("associativity", "(a b) c = a (b c)", worst_assoc, 1e-10));

    // conjugation relations in the representation
    {
        const int n = 3;
        GradedElement conj_op{CMat::zero(n, n), CMat::identity(n)};
        const Mat rc = rho(conj_op);
        const double r1 = (rc * rc - Mat::identity(2 * n)).max_abs();
        const CMat a = rng.cmatrix(n, n);
        GradedElement even{a, CMat::zero(n, n)};
        GradedElement even_conj{a.conjugate(), CMat::zero(n, n)};
        const double r2 = (rc * rho(even) * rc - rho(even_conj)).max_abs();
        checks.push_back(make_check("conjugation relations",
                                    "rho(C)^2 = I and rho(C) rho(A) rho(C) = rho(conj A)",
                                    std::max(r1, r2), 1e-14));
    }

    // Neumann series for the explicit inverse
    {
        const int n = 2;
        GradedElement a = random_graded(rng, n);
        const double sigma = two_norm_estimate(rho(a));
        a = gscale(a, Complex(0.5 / sigma));
        const double defect = neumann_identity_check(a, 1.0, 40);
        checks.push_back(make_check("Neumann identity",
                                    "(I - t a)^{-1} = sum_k (t a)^k, radius 0.5, kmax 40",
                                    defect, 1e-10));

        GradedElement a2 = random_graded(rng, n);
        a2 = gscale(a2, Complex(0.45 / two_norm_estimate(rho(a2))));
        const double d20 = neumann_identity_check(a2, 1.0, 20);
        const double d30 = neumann_identity_check(a2, 1.0, 30);
        checks.push_back(make_check("Neumann geometric decay",
                                    "ten more terms shrink the defect by at least 2^{-10}",
                                    d30 / std::max(d20, 1e-300), std::pow(2.0, -10)));
    }

    // complex systems via the fundamental pair
    {
        const int n = 3;
        CMat a = rng.cmatrix(n, n);
        CMat b = rng.cmatrix(n, n);
        while (cond_estimate(b) >= 100.0) b = rng.cmatrix(n, n);
        const ComplexSystem sys{a, b};
        const auto pair = solve_fundamental_pair(sys, 1.0, 1e-3);

        double worst_res = 0.0, worst_rho = 0.0;
        for (int zi = 0; zi < 10; ++zi) {
            const CVec z0 = random_cvec(rng, n);
            // five-point derivative stencil over the sampled trajectory
            for (size_t k = 2; k + 2 < pair.ts.size(); k += 100) {
                const double h = pair.ts[k + 1] - pair.ts[k];
                CVec zs[5];
                for (int o = -2; o <= 2; ++o)
                    zs[size_t(o + 2)] = pair.reconstruct(k + size_t(o + 2) - 2, z0);
                const CVec z = zs[2];
                const CVec az = apply_element(GradedElement{sys.a, sys.b}, z);
                for (int i = 0; i < n; ++i) {
                    const Complex zp = (zs[0][size_t(i)] - 8.0 * zs[1][size_t(i)] +
                                        8.0 * zs[3][size_t(i)] - zs[4][size_t(i)]) /
                                       (12.0 * h);
                    worst_res = std::max(worst_res, std::abs(zp + az[size_t(i)]));
                }
            }
            // real 2n-dimensional integration through the representation
            const GradedElement op{sys.a, sys.b};
            const Mat r = rho(op);
            auto field = [&](double, const State& w) {
                State d(w.size(), 0.0);
                for (int i = 0; i < 2 * n; ++i) {
                    double acc = 0.0;
                    for (int j = 0; j < 2 * n; ++j) acc += r(i, j) * w[size_t(j)];
                    d[size_t(i)] = -acc;
                }
                return d;
            };
            const auto traj = rk4_integrate(field, rho_vec(z0), 0.0, 1.0, 1e-3);
            for (size_t k = 0; k < traj.size(); k += 200) {
                const CVec direct = rho_vec_inverse(traj[k].y);
                const CVec recon = pair.reconstruct(k, z0);
                for (int i = 0; i < n; ++i)
                    worst_rho = std::max(worst_rho, std::abs(direct[size_t(i)] - recon[size_t(i)]));
            }
        }
        checks.push_back(make_check("fundamental pair residual",
                                    "z' + A z + B conj(z) = 0 for z = X0 z0 + X1 conj(z0)",
                                    worst_res, 1e-6));
        checks.push_back(make_check("representation integration agreement",
                                    "pair reconstruction matches the real 2n-dim flow",
                                    worst_rho, 1e-6));

        // second-order reduction satisfied by both components
        const auto [f, g] = second_order_coeffs(sys);
        double worst_second = 0.0;
        for (size_t k = 2; k + 2 < pair.ts.size(); k += 50) {
            const double h = pair.ts[k + 1] - pair.ts[k];
            for (const auto* comp : {&pair.x0, &pair.x1}) {
                const CMat xpp = ((*comp)[k + 1] + (*comp)[k - 1]) * 16.0 -
                                 ((*comp)[k + 2] + (*comp)[k - 2]) - (*comp)[k] * 30.0;
                const CMat xp = ((*comp)[k - 2] - (*comp)[k + 2]) +
                                ((*comp)[k + 1] - (*comp)[k - 1]) * 8.0;
                const CMat res = xpp * (1.0 / (12.0 * h * h)) + f * (xp * (1.0 / (12.0 * h))) +
                                 g * (*comp)[k];
                worst_second = std::max(worst_second, res.max_abs());
            }
        }
        checks.push_back(make_check("second-order reduction",
                                    "X'' + (A + B conj(A) B^{-1}) X' + "
                                    "(B conj(A) B^{-1} A - B conj(B)) X = 0",
                                    worst_second, 1e-6));

        // canonical reduction: solutions satisfy the original graded equation
        const GradedElement big_b = random_graded(rng, n);
        const GradedElement big_a = random_graded(rng, n);
        const ComplexSystem canon = reduce_to_canonical(big_a, big_b);
        const auto canon_pair = solve_fundamental_pair(canon, 1.0, 1e-3);
        double worst_canon = 0.0;
        const CVec z0 = random_cvec(rng, n);
        for (size_t k = 2; k + 2 < canon_pair.ts.size(); k += 100) {
            const double h = canon_pair.ts[k + 1] - canon_pair.ts[k];
            CVec zs[5];
            for (int o = 0; o < 5; ++o) zs[size_t(o)] = canon_pair.reconstruct(k + size_t(o) - 2, z0);
            CVec zp(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i)
                zp[size_t(i)] = (zs[0][size_t(i)] - 8.0 * zs[1][size_t(i)] +
                                 8.0 * zs[3][size_t(i)] - zs[4][size_t(i)]) /
                                (12.0 * h);
            const CVec term1 = apply_element(big_b, zp);
            const CVec term2 = apply_element(big_a, zs[2]);
            for (int i = 0; i < n; ++i)
                worst_canon = std::max(worst_canon, std::abs(term1[size_t(i)] + term2[size_t(i)]));
        }
        checks.push_back(make_check("canonical reduction",
                                    "solutions of z' + (B^{-1}A) z = 0 satisfy B z' + A z = 0",
                                    worst_canon, 1e-7));
    }

    // ansatz inversion round trip
    {
        double worst = 0.0;
        for (int trial = 0; trial < opt.trials; ++trial) {
            const int n = 2;
            const CMat x0 = rng.cmatrix(n, n);
            const CMat xp0 = rng.cmatrix(n, n);
            const CMat gamma = rng.cmatrix(n, n);
            CMat omega = rng.cmatrix(n, n);
            while (cond_estimate(omega) >= 100.0) omega = rng.cmatrix(n, n);
            const auto [alpha, beta] = ansatz_coeffs(x0, xp0, gamma, omega);
            worst = std::max(worst, (alpha + beta - x0).max_abs());
            worst = std::max(
                worst,
                (alpha * (gamma + omega) + beta * (gamma - omega) - xp0).max_abs());
        }
        checks.push_back(make_check("ansatz inversion",
                                    "alpha + beta = X(0), alpha(G+W) + beta(G-W) = X'(0)", worst,
                                    1e-10));
    }

    return checks;
}

std::vector<Check> verify_invariants(const VerifyOptions& opt) {
    std::vector<Check> checks;
    Rng rng(opt.seed);
    const int trials = std::max(1, opt.trials / 2);

    // two independent routes agree on every valid index
    {
        double worst = 0.0;
        for (int trial = 0; trial < trials; ++trial) {
            const int n = 2 + trial % 3;
            for (int nvars = 1; nvars <= 3; ++nvars) {
                std::vector<Mat> xs;
                for (int v = 0; v < nvars; ++v) xs.push_back(rng.matrix(n, n));
                std::vector<MultiIndex> indices;
                enumerate_indices(nvars, n, indices);
                for (const auto& ms : indices)
                    worst = std::max(worst,
                                     std::abs(z_value(ms, xs) - z_via_tracelog(ms, xs)));
            }
        }
        checks.push_back(make_check("route agreement",
                                    "interpolation and exp-Tr-log extraction coincide", worst,
                                    1e-9));
    }

    // vanishing rules
    {
        const std::vector<Mat> xs{rng.matrix(3, 3), rng.matrix(3, 3)};
        double exact = std::abs(z_value({-1, 2}, xs)) + std::abs(z_value({2, 2}, xs));
        checks.push_back(make_check("vanishing short-circuit",
                                    "negative index or order > n gives exactly 0", exact, 0.0));
        double computed = 0.0;
        for (const auto& ms : {MultiIndex{2, 2}, MultiIndex{3, 1}, MultiIndex{1, 3}})
            computed = std::max(computed, std::abs(z_value_interpolated(ms, xs)));
        checks.push_back(make_check("vanishing computed",
                                    "the interpolation route reproduces the vanishing rule",
                                    computed, 1e-9));
    }

    // zero-index reduction and permutation symmetry
    {
        double worst_zero = 0.0, worst_perm = 0.0;
        for (int trial = 0; trial < trials; ++trial) {
            const int n = 3;
            const Mat x = rng.matrix(n, n);
            const Mat y = rng.matrix(n, n);
            const Mat extra = rng.matrix(n, n);
            worst_zero = std::max(
                worst_zero, std::abs(z_value({1, 2, 0}, {x, y, extra}) - z_value({1, 2}, {x, y})));
            worst_perm =
                std::max(worst_perm, std::abs(z_value({1, 2}, {x, y}) - z_value({2, 1}, {y, x})));
        }
        checks.push_back(make_check("zero-index reduction",
                                    "Z_{ms,0}(xs, extra) = Z_{ms}(xs)", worst_zero, 1e-10));
        checks.push_back(make_check("permutation equivariance",
                                    "jointly permuting indices and arguments is neutral",
                                    worst_perm, 1e-10));
    }

    // printed closed forms
    {
        double worst = 0.0;
        for (int trial = 0; trial < trials; ++trial) {
            const int n = 4;
            const Mat x = rng.matrix(n, n);
            const Mat y = rng.matrix(n, n);
            for (const auto& ms : {MultiIndex{1}, MultiIndex{2}, MultiIndex{3}, MultiIndex{n}})
                worst = std::max(worst, std::abs(closed_form(ms, {x}) - z_value(ms, {x})));
            worst = std::max(worst,
                             std::abs(closed_form({1, 1}, {x, y}) - z_value({1, 1}, {x, y})));
        }
        checks.push_back(
            make_check("closed trace forms", "Z_1, Z_2, Z_3, Z_{1,1}, Z_n", worst, 1e-9));
    }

    // duality, its involution, and the determinant factorization
    {
        double worst_dual = 0.0, worst_invol = 0.0, worst_fact = 0.0;
        for (int trial = 0; trial < trials; ++trial) {
            const int n = 3;
            Mat a = rng.matrix(n, n);
            while (cond_estimate(a) >= 50.0) a = rng.matrix(n, n);
            const Mat b = rng.matrix(n, n);
            for (int l = 0; l <= n; ++l)
                for (int m = 0; l + m <= n; ++m) {
                    const auto [lhs, rhs] = duality_pair(l, {m}, a, {b});
                    worst_dual = std::max(worst_dual,
                                          std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
                    // applying the transform twice returns the original
                    const auto [lhs2, rhs2] =
                        duality_pair(n - l - m, {m}, inverse(a), {inverse(a) * b});
                    const double back = determinant(a) * rhs2;
                    worst_invol = std::max(worst_invol,
                                           std::abs(back - lhs) / std::max(1.0, std::abs(lhs)));
                }
            const Mat y1 = rng.matrix(n, n);
            const Mat y2 = rng.matrix(n, n);
            for (int m1 = 0; m1 <= n; ++m1)
                for (int m2 = 0; m1 + m2 <= n; ++m2) {
                    const auto [lhs, rhs] = det_factorization({m1, m2}, a, {y1, y2});
                    worst_fact = std::max(worst_fact,
                                          std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
                }
        }
        checks.push_back(make_check(
            "duality", "Z_{l,ms}(A,Bs) = det(A) Z_{n-l-sum,ms}(A^{-1}, A^{-1}Bs)", worst_dual,
            1e-8));
        checks.push_back(
            make_check("duality involution", "the dual of the dual is the original", worst_invol,
                       1e-8));
        checks.push_back(make_check("determinant factorization",
                                    "Z_{n-sum,ms}(X, X Ys) = det(X) Z_{ms}(Ys)", worst_fact,
                                    1e-8));
    }

    // repeated-argument collapse
    {
        double worst = 0.0;
        for (int trial = 0; trial < trials; ++trial) {
            const Mat w = rng.matrix(3, 3);
            for (int a = 0; a <= 3; ++a)
                for (int b = 0; a + b <= 3; ++b) {
                    const auto [lhs, rhs] = collapse_repeated(a, b, w);
                    worst = std::max(worst, std::abs(lhs - rhs));
                }
        }
        checks.push_back(make_check("repeated-argument collapse",
                                    "Z_{a,b}(W,W) = binom(a+b,a) Z_{a+b}(W)", worst, 1e-10));
    }

    // first-order perturbation is exact to O(eps^2), Richardson ratio near 4
    {
        double worst = 0.0;
        int measured = 0;
        for (int trial = 0; trial < 4 * trials && measured < trials; ++trial) {
            const int n = 3;
            const Mat a1 = rng.matrix(n, n);
            const Mat a2 = rng.matrix(n, n);
            const Mat b = rng.matrix(n, n);
            const auto d1 = epsilon_first_order(2, {1}, a1, a2, {b}, 1e-3);
            const auto d2 = epsilon_first_order(2, {1}, a1, a2, {b}, 5e-4);
            const double r1 = d1.exact - d1.predicted;
            const double r2 = d2.exact - d2.predicted;
            if (std::abs(r2) < 1e-9) continue;  // negligible curvature, ratio undefined
            ++measured;
            worst = std::max(worst, std::abs(r1 / r2 - 4.0));
        }
        checks.push_back(make_check("first-order expansion",
                                    "the eps^2 remainder quarters when eps halves", worst, 0.5));
    }

    return checks;
}

std::vector<Check> verify_derivatives(const VerifyOptions& opt) {
    std::vector<Check> checks;
    Rng rng(opt.seed);

    // printed derivative formulas, exact integer coefficients
    {
        const int m = 7;
        const SignatureCombo first = derivative_expand(DerivSignature{{m}});
        const bool ok1 =
            first == SignatureCombo{{1, DerivSignature{{m - 1, 1}}}};
        const SignatureCombo second = derivative_expand(first);
        const bool ok2 = second == SignatureCombo{{2, DerivSignature{{m - 2, 2}}},
                                                  {1, DerivSignature{{m - 1, 0, 1}}}};
        const SignatureCombo third = derivative_expand(second);
        const bool ok3 = third == SignatureCombo{{6, DerivSignature{{m - 3, 3}}},
                                                 {3, DerivSignature{{m - 2, 1, 1}}},
                                                 {1, DerivSignature{{m - 1, 0, 0, 1}}}};
        checks.push_back(make_check("derivative formulas",
                                    "(Z^{(m)})', '', ''' expand with coefficients 1; 2,1; 6,3,1",
                                    (ok1 && ok2 && ok3) ? 0.0 : 1.0, 0.0));

        bool order_ok = true;
        for (const auto& combo : {first, second, third})
            for (const auto& [c, sig] : combo) order_ok = order_ok && sig.order() == m;
        checks.push_back(make_check("order preservation",
                                    "differentiation preserves the total order", order_ok ? 0.0 : 1.0,
                                    0.0));
    }

    // finite differences referee the expansion on polynomial paths
    {
        double worst = 0.0;
        for (int trial = 0; trial < opt.trials; ++trial) {
            const int n = 3;
            const PolyPath path({Mat::identity(n) + rng.matrix(n, n) * 0.4,
                                 rng.matrix(n, n) * 0.4, rng.matrix(n, n) * 0.4});
            for (const auto& sig :
                 {DerivSignature{{3}}, DerivSignature{{2, 1}}, DerivSignature{{1, 1, 1}},
                  DerivSignature{{2, 0, 1}}}) {
                const auto expansion = derivative_expand(sig);
                for (double t : {0.2, 0.6}) {
                    const double fd = central_diff(
                        [&](double s) { return signature_value(sig, path, s); }, t, 1e-5);
                    const double sym = signature_combo_value(expansion, path, t);
                    worst = std::max(worst, std::abs(fd - sym));
                }
            }
        }
        checks.push_back(make_check("signature derivative referee",
                                    "d/dt Z^{(sig)} matches its expansion on quadratic paths",
                                    worst, 1e-6));
    }

    // Liouville's formula through the invariant calculus
    {
        double worst = 0.0;
        for (int trial = 0; trial < opt.trials; ++trial) {
            const int n = 3;
            const PolyPath path({Mat::identity(n) + rng.matrix(n, n) * 0.3,
                                 rng.matrix(n, n) * 0.3, rng.matrix(n, n) * 0.3});
            for (double t : {0.0, 0.5, 1.0})
                worst = std::max(worst, liouville_residual(path, t));
        }
        checks.push_back(make_check("Liouville formula",
                                    "det(X)' = Z_{n-1,1}(X,X') = det(X) Tr(X^{-1}X')", worst,
                                    1e-8));
    }

    return checks;
}

std::vector<Check> verify_closure(const VerifyOptions& opt) {
    std::vector<Check> checks;
    Rng rng(opt.seed);

    // n = 2 closes onto {det X, det X'}
    const ClosureReport r2 = explore(2, 6);
    {
        const bool shape_ok = r2.closed && r2.states.size() == 2;
        checks.push_back(make_check("n=2 closure",
                                    "repeated differentiation of det X closes on {det X, det X'}",
                                    shape_ok ? 0.0 : 1.0, 0.0));
        bool trans_ok = shape_ok;
        if (shape_ok) {
            trans_ok = r2.transition[0][0].str(2) == "tr(E)" &&
                       r2.transition[0][1].str(2) == "2" &&
                       r2.transition[1][0].str(2) == "2*det(E)" &&
                       r2.transition[1][1].str(2) == "tr(E)";
        }
        checks.push_back(make_check("n=2 transition",
                                    "x'' = tr(E) x + 2 y, y'' = 2 det(E) x + tr(E) y",
                                    trans_ok ? 0.0 : 1.0, 0.0));
    }

    // numeric verification of the closed system on random systems
    {
        double worst = 0.0;
        const auto ts = grid(0.2, 1.0, 0.2);
        for (int trial = 0; trial < opt.trials; ++trial) {
            const auto sys = random_reflection_system(rng, 2);
            worst = std::max(worst, numeric_verify(r2, sys, ts, 1e-3));
        }
        checks.push_back(make_check("n=2 numeric verification",
                                    "second differences of the states match the transition",
                                    worst, 1e-5));
    }

    // the evaluated transition equals the determinant-system coefficients
    {
        double worst = 0.0;
        for (int trial = 0; trial < 3; ++trial) {
            const auto sys = random_reflection_system(rng, 2);
            const auto ops = derive_operators(sys);
            const double tr_e = ops.E.trace();
            const double det_e = determinant(ops.E);
            worst = std::max(worst, std::abs(r2.transition[0][0].eval(ops.E) - tr_e));
            worst = std::max(worst, std::abs(r2.transition[0][1].eval(ops.E) - 2.0));
            worst = std::max(worst, std::abs(r2.transition[1][0].eval(ops.E) - 2.0 * det_e));
            worst = std::max(worst, std::abs(r2.transition[1][1].eval(ops.E) - tr_e));
        }
        checks.push_back(make_check("n=2 coefficients",
                                    "explorer transition evaluates to [[tr E, 2],[2 det E, tr E]]",
                                    worst, 1e-12));
    }

    // canonicalization is idempotent
    {
        bool ok = true;
        for (int n = 2; n <= 4; ++n) {
            CanonicalSignature det_x;
            det_x.n = n;
            det_x.slots[ArgSymbol{0, 0}] = n;
            for (const auto& [c1, s1] : differentiate_signature(det_x))
                for (const auto& [c2, s2] : differentiate_signature(s1)) {
                    ClosureTerm t;
                    t.coeff = c1 * c2;
                    t.signature = s2;
                    const ClosureTerm once = canonicalize(t);
                    const ClosureTerm twice = canonicalize(once);
                    ok = ok && once.coeff == twice.coeff &&
                         once.signature == twice.signature &&
                         once.constant == twice.constant;
                }
        }
        checks.push_back(
            make_check("canonicalization idempotent", "canonicalize(canonicalize(t)) = canonicalize(t)",
                       ok ? 0.0 : 1.0, 0.0));
    }

    // n > 2 does not close; state counts keep growing and the chain appears
    {
        bool ok = true;
        std::string detail;
        for (int n = 3; n <= 5; ++n) {
            const ClosureReport r = explore(n, 6);
            ok = ok && !r.closed;
            for (int c : r.new_states_per_depth) ok = ok && c > 0;
            int chain = 0;
            for (const auto& s : r.states) {
                // Z^{(n-2,1,0,...,0,1)}: bulk index on X, one unit on X', one
                // unit on a later derivative symbol
                if (s.slots.size() == 3) {
                    auto it = s.slots.find(ArgSymbol{0, 0});
                    auto it2 = s.slots.find(ArgSymbol{1, 0});
                    if (it != s.slots.end() && it->second == n - 2 && it2 != s.slots.end() &&
                        it2->second == 1)
                        ++chain;
                }
            }
            ok = ok && chain >= 3;
        }
        checks.push_back(make_check("non-closure for n = 3, 4, 5",
                                    "every depth adds states; the derivative chain persists",
                                    ok ? 0.0 : 1.0, 0.0));
    }

    // symbolic derivative steps agree with numeric evaluation along systems
    {
        double worst = 0.0;
        for (int n = 2; n <= 3; ++n) {
            const ClosureReport r = explore(n, 3);
            const auto sys = random_reflection_system(rng, n);
            const auto ops = derive_operators(sys);
            for (const auto& state : r.states) {
                const auto expansion = differentiate_signature(state);
                for (double t : {0.3, 0.7}) {
                    const double fd = central_diff(
                        [&](double s) { return signature_value_on_system(state, ops, s); }, t,
                        1e-4);
                    double sym = 0.0;
                    for (const auto& [c, sig] : expansion)
                        sym += double(c) * signature_value_on_system(sig, ops, t);
                    worst = std::max(worst, std::abs(fd - sym));
                }
            }
        }
        checks.push_back(make_check("symbolic vs numeric differentiation",
                                    "each rewrite step holds along concrete trajectories", worst,
                                    1e-5));
    }

    return checks;
}

std::vector<Check> verify_suite(const std::string& name, const VerifyOptions& opt) {
    if (name == "reflection") return verify_reflection(opt);
    if (name == "ajl") return verify_ajl(opt);
    if (name == "riccati") return verify_riccati(opt);
    if (name == "graded") return verify_graded(opt);
    if (name == "invariants") return verify_invariants(opt);
    if (name == "derivatives") return verify_derivatives(opt);
    if (name == "closure") return verify_closure(opt);
    if (name == "all") {
        std::vector<Check> all;
        for (const char* suite :
             {"reflection", "ajl", "riccati", "graded", "invariants", "derivatives", "closure"}) {
            auto part = verify_suite(suite, opt);
            for (auto& c : part) c.name = std::string(suite) + ": " + c.name;
            all.insert(all.end(), part.begin(), part.end());
        }
        return all;
    }
    throw Unsupported("unknown suite: " + name);
}

bool all_pass(const std::vector<Check>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

} // namespace reflinv
