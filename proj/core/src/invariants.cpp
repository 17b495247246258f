#include "reflinv/invariants.hpp"

#include <algorithm>
#include <cmath>

#include "reflinv/linalg.hpp"
#include "reflinv/multipoly.hpp"

namespace reflinv {

long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long acc = 1;
    for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
    return acc;
}

namespace {

void check_arguments(const MultiIndex& ms, const std::vector<Mat>& xs, int& n) {
    if (ms.size() != xs.size())
        throw DimensionMismatch("invariant: index count must match argument count");
    if (xs.empty()) throw DimensionMismatch("invariant: needs at least one argument");
    n = xs.front().rows();
    for (const auto& x : xs)
        if (!x.is_square() || x.rows() != n)
            throw DimensionMismatch("invariant: arguments must be square of equal size");
    if (n > 8)
        throw ConditioningWarning("invariant: interpolation grid is not reliable beyond n = 8");
}

bool has_negative(const MultiIndex& ms) {
    return std::any_of(ms.begin(), ms.end(), [](int m) { return m < 0; });
}

// Symmetric integer nodes 0, 1, -1, 2, -2, ...
std::vector<double> integer_nodes(int count) {
    std::vector<double> nodes;
    nodes.reserve(size_t(count));
    nodes.push_back(0.0);
    for (int k = 1; int(nodes.size()) < count; ++k) {
        nodes.push_back(double(k));
        if (int(nodes.size()) < count) nodes.push_back(double(-k));
    }
    return nodes;
}

// In-place 1-D conversion of samples at `nodes` into monomial coefficients:
// divided differences followed by Newton-basis expansion.
void newton_to_monomial(const std::vector<double>& nodes, std::vector<double>& v) {
    const int m = int(v.size());
    for (int level = 1; level < m; ++level)
        for (int i = m - 1; i >= level; --i)
            v[size_t(i)] = (v[size_t(i)] - v[size_t(i - 1)]) / (nodes[size_t(i)] - nodes[size_t(i - level)]);
    // expand sum dd[j] * prod_{k<j} (x - nodes[k])
    std::vector<double> mono(size_t(m), 0.0);
    std::vector<double> basis(size_t(m), 0.0);
    basis[0] = 1.0;
    int basis_deg = 0;
    for (int j = 0; j < m; ++j) {
        for (int k = 0; k <= basis_deg; ++k) mono[size_t(k)] += v[size_t(j)] * basis[size_t(k)];
        if (j + 1 < m) {
            // basis *= (x - nodes[j])
            for (int k = basis_deg + 1; k >= 1; --k)
                basis[size_t(k)] = basis[size_t(k - 1)] - nodes[size_t(j)] * basis[size_t(k)];
            basis[0] *= -nodes[size_t(j)];
            ++basis_deg;
        }
    }
    v = std::move(mono);
}

double z_interpolate(const MultiIndex& ms, const std::vector<Mat>& xs, int n) {
    const int nvars = int(xs.size());
    const int pts = n + 1;

    double max_norm = 0.0;
    for (const auto& x : xs) max_norm = std::max(max_norm, x.max_abs());
    const double scale = 1.0 / (1.0 + max_norm);

    const std::vector<double> nodes = integer_nodes(pts);

    // tensor grid of determinant samples, last variable fastest
    size_t total = 1;
    for (int v = 0; v < nvars; ++v) total *= size_t(pts);
    std::vector<double> values(total);
    std::vector<int> idx(size_t(nvars), 0);
    for (size_t flat = 0; flat < total; ++flat) {
        Mat m = Mat::identity(n);
        for (int v = 0; v < nvars; ++v) {
            const double alpha = nodes[size_t(idx[size_t(v)])] * scale;
            if (alpha != 0.0) m += xs[size_t(v)] * alpha;
        }
        values[flat] = determinant(m);
        for (int v = nvars - 1; v >= 0; --v) {
            if (++idx[size_t(v)] < pts) break;
            idx[size_t(v)] = 0;
        }
    }

    // innermost variable first: convert samples to monomial coefficients axis
    // by axis
    std::vector<double> line(static_cast<size_t>(pts));
    size_t stride = 1;
    for (int v = nvars - 1; v >= 0; --v) {
        const size_t block = stride * size_t(pts);
        for (size_t base = 0; base < total; base += block) {
            for (size_t off = 0; off < stride; ++off) {
                for (int k = 0; k < pts; ++k) line[size_t(k)] = values[base + off + size_t(k) * stride];
                newton_to_monomial(nodes, line);
                for (int k = 0; k < pts; ++k) values[base + off + size_t(k) * stride] = line[size_t(k)];
            }
        }
        stride = block;
    }

    size_t flat = 0;
    for (int v = 0; v < nvars; ++v) flat = flat * size_t(pts) + size_t(ms[size_t(v)]);
    return values[flat] / std::pow(scale, order_of(ms));
}

} // namespace

double z_value(const MultiIndex& ms, const std::vector<Mat>& xs) {
    int n = 0;
    check_arguments(ms, xs, n);
    if (has_negative(ms)) return 0.0;
    if (order_of(ms) > n) return 0.0;
    return z_interpolate(ms, xs, n);
}

double z_value_interpolated(const MultiIndex& ms, const std::vector<Mat>& xs) {
    int n = 0;
    check_arguments(ms, xs, n);
    if (has_negative(ms)) return 0.0;
    const bool representable = std::all_of(ms.begin(), ms.end(), [&](int m) { return m <= n; });
    if (!representable) return 0.0;  // grid cannot carry per-variable degree > n
    return z_interpolate(ms, xs, n);
}

double z_via_tracelog(const MultiIndex& ms, const std::vector<Mat>& xs) {
    int n = 0;
    check_arguments(ms, xs, n);
    if (has_negative(ms)) return 0.0;
    if (order_of(ms) > n) return 0.0;

    const int nvars = int(xs.size());
    using Poly = TruncatedMultiPoly;

    // entries of M(alpha) = sum alpha_i X_i as degree-1 polynomials
    std::vector<Poly> m_entries(size_t(n) * size_t(n), Poly(nvars, n));
    for (int v = 0; v < nvars; ++v) {
        const Poly alpha = Poly::variable(nvars, n, v);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m_entries[size_t(i) * size_t(n) + size_t(j)] += alpha * xs[size_t(v)](i, j);
    }

    auto mat_mul = [&](const std::vector<Poly>& a, const std::vector<Poly>& b) {
        std::vector<Poly> c(size_t(n) * size_t(n), Poly(nvars, n));
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const Poly& aik = a[size_t(i) * size_t(n) + size_t(k)];
                if (aik.terms().empty()) continue;
                for (int j = 0; j < n; ++j)
                    c[size_t(i) * size_t(n) + size_t(j)] +=
                        aik * b[size_t(k) * size_t(n) + size_t(j)];
            }
        return c;
    };
    auto mat_trace = [&](const std::vector<Poly>& a) {
        Poly t(nvars, n);
        for (int i = 0; i < n; ++i) t += a[size_t(i) * size_t(n) + size_t(i)];
        return t;
    };

    // L = sum_{k=1..n} (-1)^{k+1} Tr(M^k) / k
    Poly l(nvars, n);
    std::vector<Poly> power = m_entries;
    for (int k = 1; k <= n; ++k) {
        if (k > 1) power = mat_mul(power, m_entries);
        Poly tr = mat_trace(power);
        tr *= (k % 2 == 1 ? 1.0 : -1.0) / double(k);
        l += tr;
    }

    // exp(L) = sum_{j=0..n} L^j / j!
    Poly result = Poly::constant(nvars, n, 1.0);
    Poly term = Poly::constant(nvars, n, 1.0);
    for (int j = 1; j <= n; ++j) {
        term = term * l;
        term *= 1.0 / double(j);
        result += term;
    }
    return result.coefficient(ms);
}

double closed_form(const MultiIndex& ms, const std::vector<Mat>& xs) {
    int n = 0;
    check_arguments(ms, xs, n);
    if (ms.size() == 1) {
        const Mat& x = xs[0];
        const int m = ms[0];
        if (m == 1) return x.trace();
        if (m == 2) {
            const double t1 = x.trace();
            const double t2 = (x * x).trace();
            return 0.5 * (t1 * t1 - t2);
        }
        if (m == 3) {
            const double t1 = x.trace();
            const double t2 = (x * x).trace();
            const double t3 = (x * x * x).trace();
            return (t1 * t1 * t1 - 3.0 * t2 * t1 + 2.0 * t3) / 6.0;
        }
        if (m == n) return determinant(x);
        throw UnsupportedIndex("closed_form: single index must be 1, 2, 3 or n");
    }
    if (ms.size() == 2 && ms[0] == 1 && ms[1] == 1) {
        const Mat& x = xs[0];
        const Mat& y = xs[1];
        return x.trace() * y.trace() - (x * y).trace();
    }
    throw UnsupportedIndex("closed_form: no printed formula for this index");
}

std::pair<double, double> duality_pair(int l, const MultiIndex& ms, const Mat& a,
                                       const std::vector<Mat>& bs) {
    const int n = a.rows();
    MultiIndex lhs_idx{l};
    lhs_idx.insert(lhs_idx.end(), ms.begin(), ms.end());
    std::vector<Mat> lhs_args{a};
    lhs_args.insert(lhs_args.end(), bs.begin(), bs.end());
    const double lhs = z_value(lhs_idx, lhs_args);

    const Mat a_inv = inverse(a);
    MultiIndex rhs_idx{n - l - order_of(ms)};
    rhs_idx.insert(rhs_idx.end(), ms.begin(), ms.end());
    std::vector<Mat> rhs_args{a_inv};
    for (const auto& b : bs) rhs_args.push_back(a_inv * b);
    const double rhs = determinant(a) * z_value(rhs_idx, rhs_args);
    return {lhs, rhs};
}

std::pair<double, double> det_factorization(const MultiIndex& ms, const Mat& x,
                                            const std::vector<Mat>& ys) {
    const int n = x.rows();
    MultiIndex lhs_idx{n - order_of(ms)};
    lhs_idx.insert(lhs_idx.end(), ms.begin(), ms.end());
    std::vector<Mat> lhs_args{x};
    for (const auto& y : ys) lhs_args.push_back(x * y);
    const double lhs = z_value(lhs_idx, lhs_args);
    const double rhs = determinant(x) * z_value(ms, ys);
    return {lhs, rhs};
}

std::pair<double, double> collapse_repeated(int a, int b, const Mat& w) {
    const double lhs = z_value({a, b}, {w, w});
    const double rhs = double(binomial(a + b, a)) * z_value({a + b}, {w});
    return {lhs, rhs};
}

EpsilonDeltas epsilon_first_order(int l, const MultiIndex& ms, const Mat& a1, const Mat& a2,
                                  const std::vector<Mat>& bs, double eps) {
    MultiIndex base_idx{l};
    base_idx.insert(base_idx.end(), ms.begin(), ms.end());
    std::vector<Mat> base_args{a1};
    base_args.insert(base_args.end(), bs.begin(), bs.end());

    std::vector<Mat> shifted_args{a1 + a2 * eps};
    shifted_args.insert(shifted_args.end(), bs.begin(), bs.end());

    MultiIndex pred_idx{l - 1, 1};
    pred_idx.insert(pred_idx.end(), ms.begin(), ms.end());
    std::vector<Mat> pred_args{a1, a2};
    pred_args.insert(pred_args.end(), bs.begin(), bs.end());

    EpsilonDeltas out{};
    out.eps = eps;
    out.exact = z_value(base_idx, shifted_args) - z_value(base_idx, base_args);
    out.predicted = eps * z_value(pred_idx, pred_args);
    return out;
}

} // namespace reflinv
