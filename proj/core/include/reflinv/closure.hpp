#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "reflinv/matrix.hpp"
#include "reflinv/reflection.hpp"

namespace reflinv {

/// Argument slot after reduction by X'' = X E: derivative order 2q + p is
/// represented by X E^q (parity 0) or X' E^q (parity 1).
struct ArgSymbol {
    int parity;  // 0 -> X E^q, 1 -> X' E^q
    int epower;  // q >= 0

    auto operator<=>(const ArgSymbol&) const = default;
    std::string str() const;
};

/// Derivative order k corresponds to the symbol (k mod 2, k div 2).
ArgSymbol symbol_of_order(int k);

/// Target slot reached by one more time derivative: X E^q -> X' E^q and
/// X' E^q -> X E^{q+1}.
ArgSymbol shift_symbol(const ArgSymbol& s);

/// Invariant symbol over the reduced argument family, e.g. det X as
/// {(0,0): n}. Only positive indices are stored; total order is at most n.
struct CanonicalSignature {
    std::map<ArgSymbol, int> slots;
    int n = 0;

    int order() const;
    bool operator==(const CanonicalSignature& o) const { return n == o.n && slots == o.slots; }
    bool operator<(const CanonicalSignature& o) const {
        return slots != o.slots ? slots < o.slots : n < o.n;
    }
    std::string str() const;
};

/// Time-independent invariant of E powers: Z_{indices}(E^{p_1}, E^{p_2}, ...).
struct EInvariant {
    std::vector<int> indices;
    std::vector<int> epowers;

    auto operator<=>(const EInvariant&) const = default;
    std::string str(int n) const;  // "tr(E)", "det(E)" for order 1 resp. n
    double eval(const Mat& e) const;
};

/// Product of E-monomial invariants with integer exponents; constant along
/// any trajectory because E is constant.
struct ConstantFactor {
    std::map<EInvariant, int> factors;

    bool operator==(const ConstantFactor&) const = default;
    bool operator<(const ConstantFactor& o) const { return factors < o.factors; }
    void multiply_by(const EInvariant& inv, int exponent = 1);
    double eval(const Mat& e) const;
    std::string str(int n) const;  // "1" when empty
};

/// One canonicalized summand: coeff * constant * signature.
struct ClosureTerm {
    long coeff = 0;
    ConstantFactor constant;
    CanonicalSignature signature;
};

/// One derivative step in symbol space. Every emitted signature keeps the
/// total order of the source.
std::vector<std::pair<long, CanonicalSignature>> differentiate_signature(
    const CanonicalSignature& sig);

/// Rewrite a raw term to canonical form:
///  R1 drop zero-index slots; R2 merge equal symbols with binomial collapse
///  coefficients; R3 is implicit in the symbol encoding; R4 factor an
///  order-n single-parity signature into det(X or X') times invariants of E
///  powers. Idempotent.
ClosureTerm canonicalize(long coeff, const std::vector<std::pair<ArgSymbol, int>>& raw_slots,
                         int n);
ClosureTerm canonicalize(const ClosureTerm& term);

/// Linear combination of constant-coefficient contributions per state.
struct CoeffExpr {
    std::map<ConstantFactor, long> terms;

    void add(long coeff, const ConstantFactor& cf);
    double eval(const Mat& e) const;
    std::string str(int n) const;  // "0" when empty
    bool operator==(const CoeffExpr&) const = default;
};

struct ClosureReport {
    int n = 0;
    int max_depth = 0;
    bool closed = false;
    std::vector<CanonicalSignature> states;       // discovery order, det X first
    std::vector<int> new_states_per_depth;        // states added at depth 1, 2, ...
    std::vector<std::vector<CoeffExpr>> transition;  // states x states, only when closed
};

/// Breadth-first second-derivative exploration from det X. Stops at a fixed
/// point (closed) or after max_depth rounds.
ClosureReport explore(int n, int max_depth);

/// Evaluate a signature along the fundamental matrix of a reflection system.
double signature_value_on_system(const CanonicalSignature& sig, const ReflectionOperators& ops,
                                 double t);

/// Check the closed transition system along a concrete reflection system:
/// second central differences of the state values against transition * states.
/// Returns the largest residual over the grid.
double numeric_verify(const ClosureReport& report, const ReflectionSystem& sys,
                      const std::vector<double>& t_grid, double h);

} // namespace reflinv
