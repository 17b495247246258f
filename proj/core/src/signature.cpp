#include "reflinv/signature.hpp"

#include <map>

#include "reflinv/linalg.hpp"

namespace reflinv {

void DerivSignature::trim() {
    while (!indices.empty() && indices.back() == 0) indices.pop_back();
}

std::string DerivSignature::str() const {
    std::string s = "(";
    for (size_t i = 0; i < indices.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(indices[i]);
    }
    return s + ")";
}

SignatureCombo derivative_expand(const DerivSignature& sig) {
    std::map<DerivSignature, long> acc;
    const auto& m = sig.indices;
    for (size_t i = 1; i <= m.size(); ++i) {
        if (m[i - 1] < 1) continue;  // decrement would go negative
        DerivSignature term = sig;
        if (i == term.indices.size()) term.indices.push_back(0);
        const long coeff = term.indices[i] + 1;
        term.indices[i - 1] -= 1;
        term.indices[i] += 1;
        term.trim();
        acc[term] += coeff;
    }
    SignatureCombo out;
    out.reserve(acc.size());
    for (const auto& [s, c] : acc) out.emplace_back(c, s);
    return out;
}

SignatureCombo derivative_expand(const SignatureCombo& combo) {
    std::map<DerivSignature, long> acc;
    for (const auto& [coeff, sig] : combo)
        for (const auto& [c, s] : derivative_expand(sig)) acc[s] += coeff * c;
    SignatureCombo out;
    out.reserve(acc.size());
    for (const auto& [s, c] : acc)
        if (c != 0) out.emplace_back(c, s);
    return out;
}

double signature_value(const DerivSignature& sig, const PolyPath& path, double t) {
    // zero-index slots contribute nothing to the coefficient; drop them
    MultiIndex ms;
    std::vector<Mat> xs;
    for (size_t k = 0; k < sig.indices.size(); ++k) {
        if (sig.indices[k] == 0) continue;
        ms.push_back(sig.indices[k]);
        xs.push_back(path.derivative_value(int(k), t));
    }
    if (ms.empty()) return 1.0;
    return z_value(ms, xs);
}

double signature_combo_value(const SignatureCombo& combo, const PolyPath& path, double t) {
    double s = 0.0;
    for (const auto& [c, sig] : combo) s += double(c) * signature_value(sig, path, t);
    return s;
}

double liouville_residual(const PolyPath& path, double t) {
    const int n = path.dim();
    const Mat x = path.value(t);
    const Mat xp = path.derivative().value(t);
    const double lhs = z_value({n - 1, 1}, {x, xp});
    Lu<double> f = lu_factor(x);
    if (f.singular) throw SingularMatrix("liouville_residual: X(t) singular");
    const double rhs = determinant(x) * lu_solve(f, xp).trace();
    return std::abs(lhs - rhs);
}

} // namespace reflinv
