#include "reflinv/graded.hpp"

#include <cmath>

#include "reflinv/linalg.hpp"
#include "reflinv/ode.hpp"

namespace reflinv {

namespace {

void require_same_size(const GradedElement& a, const GradedElement& b, const char* where) {
    if (a.n() != b.n())
        throw DimensionMismatch(std::string(where) + ": graded elements of different size");
}

bool is_zero(const CMat& m) { return m.max_abs() == 0.0; }

} // namespace

GradedElement graded_identity(int n) {
    return {CMat::identity(n), CMat::zero(n, n)};
}

GradedElement gadd(const GradedElement& a, const GradedElement& b) {
    require_same_size(a, b, "gadd");
    return {a.a0 + b.a0, a.a1 + b.a1};
}

GradedElement gsub(const GradedElement& a, const GradedElement& b) {
    require_same_size(a, b, "gsub");
    return {a.a0 - b.a0, a.a1 - b.a1};
}

GradedElement gscale(const GradedElement& a, Complex s) {
    return {a.a0 * s, a.a1 * s};
}

GradedElement gmul(const GradedElement& a, const GradedElement& b) {
    require_same_size(a, b, "gmul");
    return {a.a0 * b.a0 + a.a1 * b.a1.conjugate(), a.a0 * b.a1 + a.a1 * b.a0.conjugate()};
}

GradedElement ginv(const GradedElement& a) {
    const int n = a.n();
    if (a.a0.rows() != a.a1.rows() || a.a0.cols() != a.a1.cols() || !a.a0.is_square())
        throw DimensionMismatch("ginv: components must be square of equal size");

    if (is_zero(a.a1)) {
        try {
            return {inverse(a.a0), CMat::zero(n, n)};
        } catch (const SingularMatrix&) {
            throw NotInvertible("ginv: even part singular and odd part zero");
        }
    }
    if (is_zero(a.a0)) {
        try {
            return {CMat::zero(n, n), inverse(a.a1.conjugate())};
        } catch (const SingularMatrix&) {
            throw NotInvertible("ginv: odd part singular and even part zero");
        }
    }

    // Delta route; any singular intermediate falls through to the real
    // representation, which is faithful.
    try {
        const CMat a0_inv = inverse(a.a0);
        const CMat d0 = inverse(a.a0 - a.a1 * (a0_inv * a.a1).conjugate());
        const CMat a1c = a.a1.conjugate();
        const CMat a1c_inv = inverse(a1c);
        const CMat d1 = inverse(a1c - a.a0.conjugate() * ((a1c_inv * a.a0.conjugate()).conjugate()));
        return {d0, d1};
    } catch (const SingularMatrix&) {
        // fall through
    }

    Mat r;
    try {
        r = inverse(rho(a));
    } catch (const SingularMatrix&) {
        throw NotInvertible("ginv: real representation singular");
    }
    return rho_split(r);
}

GradedElement gpow(const GradedElement& a, int k) {
    GradedElement acc = graded_identity(a.n());
    for (int i = 0; i < k; ++i) acc = gmul(acc, a);
    return acc;
}

CVec apply_element(const GradedElement& a, const CVec& z) {
    const int n = a.n();
    if (int(z.size()) != n) throw DimensionMismatch("apply: vector size");
    CVec out(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        Complex s{};
        for (int j = 0; j < n; ++j) s += a.a0(i, j) * z[size_t(j)] + a.a1(i, j) * std::conj(z[size_t(j)]);
        out[size_t(i)] = s;
    }
    return out;
}

Mat rho(const GradedElement& a) {
    const int n = a.n();
    const Mat re0 = real_part(a.a0), im0 = imag_part(a.a0);
    const Mat re1 = real_part(a.a1), im1 = imag_part(a.a1);
    Mat r(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            r(i, j) = re0(i, j) + re1(i, j);
            r(i, j + n) = -im0(i, j) + im1(i, j);
            r(i + n, j) = im0(i, j) + im1(i, j);
            r(i + n, j + n) = re0(i, j) - re1(i, j);
        }
    return r;
}

std::vector<double> rho_vec(const CVec& z) {
    std::vector<double> w(2 * z.size());
    for (size_t i = 0; i < z.size(); ++i) {
        w[i] = z[i].real();
        w[i + z.size()] = z[i].imag();
    }
    return w;
}

CVec rho_vec_inverse(const std::vector<double>& w) {
    const size_t n = w.size() / 2;
    CVec z(n);
    for (size_t i = 0; i < n; ++i) z[i] = Complex(w[i], w[i + n]);
    return z;
}

GradedElement rho_split(const Mat& r) {
    if (!r.is_square() || r.rows() % 2 != 0)
        throw DimensionMismatch("rho_split: expected even-sized square matrix");
    const int n = r.rows() / 2;
    CMat a0(n, n), a1(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double r11 = r(i, j), r12 = r(i, j + n);
            const double r21 = r(i + n, j), r22 = r(i + n, j + n);
            a0(i, j) = Complex(0.5 * (r11 + r22), 0.5 * (r21 - r12));
            a1(i, j) = Complex(0.5 * (r11 - r22), 0.5 * (r21 + r12));
        }
    return {a0, a1};
}

double neumann_identity_check(const GradedElement& a, double t, int kmax) {
    const double radius = two_norm_estimate(rho(a)) * std::abs(t);
    if (radius >= 1.0)
        throw NotContractive("neumann_identity_check: spectral radius bound " +
                             std::to_string(radius) + " >= 1");
    const GradedElement lhs = ginv(gsub(graded_identity(a.n()), gscale(a, Complex(t))));
    GradedElement sum = graded_identity(a.n());
    GradedElement term = graded_identity(a.n());
    for (int k = 1; k <= kmax; ++k) {
        term = gmul(term, gscale(a, Complex(t)));
        sum = gadd(sum, term);
    }
    const GradedElement defect = gsub(lhs, sum);
    return defect.norm();
}

ComplexSystem reduce_to_canonical(const GradedElement& bigA, const GradedElement& bigB) {
    require_same_size(bigA, bigB, "reduce_to_canonical");
    const GradedElement red = gmul(ginv(bigB), bigA);
    return {red.a0, red.a1};
}

CVec FundamentalPairSamples::reconstruct(size_t idx, const CVec& z0) const {
    const CMat& m0 = x0[idx];
    const CMat& m1 = x1[idx];
    const int n = m0.rows();
    CVec out(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        Complex s{};
        for (int j = 0; j < n; ++j)
            s += m0(i, j) * z0[size_t(j)] + m1(i, j) * std::conj(z0[size_t(j)]);
        out[size_t(i)] = s;
    }
    return out;
}

FundamentalPairSamples solve_fundamental_pair(const ComplexSystem& sys, double t1, double h) {
    const int n = sys.n();
    if (sys.b.rows() != n || sys.b.cols() != n || !sys.a.is_square())
        throw DimensionMismatch("solve_fundamental_pair: system matrices must match");

    const int block = n * n;
    auto pack = [&](const CMat& m0, const CMat& m1) {
        State s(size_t(4 * block));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const int k = i * n + j;
                s[size_t(k)] = m0(i, j).real();
                s[size_t(block + k)] = m0(i, j).imag();
                s[size_t(2 * block + k)] = m1(i, j).real();
                s[size_t(3 * block + k)] = m1(i, j).imag();
            }
        return s;
    };
    auto unpack = [&](const State& s) {
        CMat m0(n, n), m1(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const int k = i * n + j;
                m0(i, j) = Complex(s[size_t(k)], s[size_t(block + k)]);
                m1(i, j) = Complex(s[size_t(2 * block + k)], s[size_t(3 * block + k)]);
            }
        return std::pair<CMat, CMat>(m0, m1);
    };

    auto field = [&](double, const State& s) -> State {
        const auto [m0, m1] = unpack(s);
        const CMat d0 = -(sys.a * m0 + sys.b * m1.conjugate());
        const CMat d1 = -(sys.a * m1 + sys.b * m0.conjugate());
        return pack(d0, d1);
    };

    FundamentalPairSamples out;
    const State y0 = pack(CMat::identity(n), CMat::zero(n, n));
    if (t1 == 0.0) {
        out.ts.push_back(0.0);
        out.x0.push_back(CMat::identity(n));
        out.x1.push_back(CMat::zero(n, n));
        return out;
    }
    const auto traj = rk4_integrate(field, y0, 0.0, t1, h);
    out.ts.reserve(traj.size());
    for (const auto& p : traj) {
        const auto [m0, m1] = unpack(p.y);
        out.ts.push_back(p.t);
        out.x0.push_back(m0);
        out.x1.push_back(m1);
    }
    return out;
}

std::pair<CMat, CMat> second_order_coeffs(const ComplexSystem& sys) {
    CMat b_inv;
    try {
        b_inv = inverse(sys.b);
    } catch (const SingularMatrix&) {
        throw SingularMatrix("second_order_coeffs: B singular, only the first-order form exists");
    }
    const CMat k = sys.b * sys.a.conjugate() * b_inv;
    return {sys.a + k, k * sys.a - sys.b * sys.b.conjugate()};
}

std::pair<CMat, CMat> ansatz_coeffs(const CMat& x0, const CMat& xp0, const CMat& gamma,
                                    const CMat& omega) {
    CMat omega_inv;
    try {
        omega_inv = inverse(omega);
    } catch (const SingularMatrix&) {
        throw SingularMatrix("ansatz_coeffs: Omega singular");
    }
    const CMat alpha = (xp0 - x0 * (gamma - omega)) * omega_inv * Complex(0.5);
    const CMat beta = (xp0 - x0 * (gamma + omega)) * omega_inv * Complex(-0.5);
    return {alpha, beta};
}

} // namespace reflinv
