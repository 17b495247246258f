#pragma once

#include <utility>
#include <vector>

#include "reflinv/invariants.hpp"
#include "reflinv/polypath.hpp"

namespace reflinv {

/// Derivative signature (m_0, m_1, m_2, ...) naming
/// Z_{m_0,m_1,...}(X, X', X'', ...). Trailing zeros are not significant.
struct DerivSignature {
    std::vector<int> indices;

    void trim();
    int order() const { return order_of(indices); }
    bool operator==(const DerivSignature& o) const { return indices == o.indices; }
    bool operator<(const DerivSignature& o) const { return indices < o.indices; }
    std::string str() const;
};

using SignatureCombo = std::vector<std::pair<long, DerivSignature>>;

/// d/dt of a signature: for every position i >= 1 whose left neighbour can be
/// decremented, emit (m_i + 1) times the shifted signature. Terms that would
/// create a negative index are dropped.
SignatureCombo derivative_expand(const DerivSignature& sig);

/// Expand every term of a combination once and aggregate equal signatures.
SignatureCombo derivative_expand(const SignatureCombo& combo);

/// Evaluate a derivative signature along a polynomial path at time t;
/// derivatives beyond the path degree are zero matrices.
double signature_value(const DerivSignature& sig, const PolyPath& path, double t);

/// Evaluate a whole combination (sum of coeff * signature values).
double signature_combo_value(const SignatureCombo& combo, const PolyPath& path, double t);

/// | Z_{n-1,1}(X, X') - det(X) Tr(X^{-1} X') | at time t.
double liouville_residual(const PolyPath& path, double t);

} // namespace reflinv
