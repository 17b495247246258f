#include "reflinv/multipoly.hpp"

#include <cmath>
#include <numeric>

namespace reflinv {

namespace {
constexpr double kDropThreshold = 1e-14;
}

TruncatedMultiPoly::TruncatedMultiPoly(int var_count, int total_cap)
    : var_count_(var_count), total_cap_(total_cap) {
    if (var_count < 0 || total_cap < 0)
        throw DimensionMismatch("TruncatedMultiPoly: negative var count or cap");
}

TruncatedMultiPoly TruncatedMultiPoly::constant(int var_count, int total_cap, double c) {
    TruncatedMultiPoly p(var_count, total_cap);
    p.add_term(Exponents(size_t(var_count), 0), c);
    return p;
}

TruncatedMultiPoly TruncatedMultiPoly::variable(int var_count, int total_cap, int index) {
    if (index < 0 || index >= var_count)
        throw DimensionMismatch("TruncatedMultiPoly::variable: index out of range");
    TruncatedMultiPoly p(var_count, total_cap);
    Exponents e(size_t(var_count), 0);
    e[size_t(index)] = 1;
    p.add_term(e, 1.0);
    return p;
}

bool TruncatedMultiPoly::within_caps(const Exponents& e) const {
    int total = 0;
    for (int v : e) {
        if (v > total_cap_) return false;
        total += v;
    }
    return total <= total_cap_;
}

double TruncatedMultiPoly::coefficient(const Exponents& e) const {
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? 0.0 : it->second;
}

void TruncatedMultiPoly::add_term(const Exponents& e, double c) {
    if (int(e.size()) != var_count_)
        throw DimensionMismatch("TruncatedMultiPoly::add_term: exponent arity");
    if (!within_caps(e)) return;
    double& slot = coeffs_[e];
    slot += c;
    if (std::abs(slot) < kDropThreshold) coeffs_.erase(e);
}

TruncatedMultiPoly& TruncatedMultiPoly::operator+=(const TruncatedMultiPoly& o) {
    for (const auto& [e, c] : o.coeffs_) add_term(e, c);
    return *this;
}

TruncatedMultiPoly& TruncatedMultiPoly::operator-=(const TruncatedMultiPoly& o) {
    for (const auto& [e, c] : o.coeffs_) add_term(e, -c);
    return *this;
}

TruncatedMultiPoly& TruncatedMultiPoly::operator*=(double s) {
    for (auto& [e, c] : coeffs_) c *= s;
    prune();
    return *this;
}

TruncatedMultiPoly TruncatedMultiPoly::operator*(const TruncatedMultiPoly& o) const {
    if (o.var_count_ != var_count_)
        throw DimensionMismatch("TruncatedMultiPoly: operand arity mismatch");
    TruncatedMultiPoly out(var_count_, total_cap_);
    Exponents e(static_cast<size_t>(var_count_));
    for (const auto& [ea, ca] : coeffs_) {
        for (const auto& [eb, cb] : o.coeffs_) {
            bool ok = true;
            int total = 0;
            for (int v = 0; v < var_count_; ++v) {
                e[size_t(v)] = ea[size_t(v)] + eb[size_t(v)];
                if (e[size_t(v)] > total_cap_) { ok = false; break; }
                total += e[size_t(v)];
            }
            if (!ok || total > total_cap_) continue;
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

void TruncatedMultiPoly::prune() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (std::abs(it->second) < kDropThreshold)
            it = coeffs_.erase(it);
        else
            ++it;
    }
}

} // namespace reflinv
