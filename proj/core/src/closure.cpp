#include "reflinv/closure.hpp"

#include <algorithm>
#include <cmath>

#include "reflinv/diff.hpp"
#include "reflinv/invariants.hpp"
#include "reflinv/linalg.hpp"

namespace reflinv {

std::string ArgSymbol::str() const {
    std::string base = parity == 0 ? "X" : "X'";
    if (epower == 0) return base;
    if (epower == 1) return base + "*E";
    return base + "*E^" + std::to_string(epower);
}

ArgSymbol symbol_of_order(int k) { return {k % 2, k / 2}; }

ArgSymbol shift_symbol(const ArgSymbol& s) { return {1 - s.parity, s.epower + s.parity}; }

int CanonicalSignature::order() const {
    int total = 0;
    for (const auto& [sym, idx] : slots) total += idx;
    return total;
}

std::string CanonicalSignature::str() const {
    std::string s = "{";
    bool first = true;
    for (const auto& [sym, idx] : slots) {
        if (!first) s += ", ";
        first = false;
        s += sym.str() + ": " + std::to_string(idx);
    }
    return s + "}";
}

std::string EInvariant::str(int n) const {
    if (indices.size() == 1 && epowers[0] == 1) {
        if (indices[0] == 1) return "tr(E)";
        if (indices[0] == n) return "det(E)";
    }
    std::string s = "Z[";
    for (size_t i = 0; i < indices.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(indices[i]);
    }
    s += "](";
    for (size_t i = 0; i < epowers.size(); ++i) {
        if (i) s += ",";
        s += epowers[i] == 1 ? "E" : "E^" + std::to_string(epowers[i]);
    }
    return s + ")";
}

double EInvariant::eval(const Mat& e) const {
    std::vector<Mat> args;
    args.reserve(epowers.size());
    for (int p : epowers) args.push_back(matrix_power(e, p));
    return z_value(indices, args);
}

void ConstantFactor::multiply_by(const EInvariant& inv, int exponent) {
    if (exponent == 0) return;
    int& slot = factors[inv];
    slot += exponent;
    if (slot == 0) factors.erase(inv);
}

double ConstantFactor::eval(const Mat& e) const {
    double acc = 1.0;
    for (const auto& [inv, exp] : factors) acc *= std::pow(inv.eval(e), exp);
    return acc;
}

std::string ConstantFactor::str(int n) const {
    if (factors.empty()) return "1";
    std::string s;
    for (const auto& [inv, exp] : factors) {
        if (!s.empty()) s += "*";
        s += inv.str(n);
        if (exp != 1) s += "^" + std::to_string(exp);
    }
    return s;
}

std::vector<std::pair<long, CanonicalSignature>> differentiate_signature(
    const CanonicalSignature& sig) {
    std::map<CanonicalSignature, long> acc;
    for (const auto& [sym, idx] : sig.slots) {
        const ArgSymbol target = shift_symbol(sym);
        CanonicalSignature term = sig;
        const auto it = term.slots.find(target);
        const long coeff = (it == term.slots.end() ? 0 : it->second) + 1;
        if (--term.slots[sym] == 0) term.slots.erase(sym);
        term.slots[target] += 1;
        acc[term] += coeff;
    }
    std::vector<std::pair<long, CanonicalSignature>> out;
    out.reserve(acc.size());
    for (const auto& [s, c] : acc) out.emplace_back(c, s);
    return out;
}

ClosureTerm canonicalize(long coeff, const std::vector<std::pair<ArgSymbol, int>>& raw_slots,
                         int n) {
    ClosureTerm term;
    term.coeff = coeff;
    term.signature.n = n;
    auto& slots = term.signature.slots;

    // R1 + R2: drop zeros, merge repeats with binomial collapse coefficients
    for (const auto& [sym, idx] : raw_slots) {
        if (idx == 0) continue;
        if (idx < 0) {
            term.coeff = 0;
            slots.clear();
            return term;
        }
        auto it = slots.find(sym);
        if (it == slots.end()) {
            slots[sym] = idx;
        } else {
            term.coeff *= binomial(it->second + idx, idx);
            it->second += idx;
        }
    }
    if (slots.empty()) return term;

    // R4: single-parity order-n signatures factor through det(X or X')
    const int parity = slots.begin()->first.parity;
    const bool single_parity =
        std::all_of(slots.begin(), slots.end(),
                    [&](const auto& kv) { return kv.first.parity == parity; });
    if (single_parity && term.signature.order() == n) {
        const int q0 = slots.begin()->first.epower;  // map order makes this the minimum
        EInvariant rest;
        for (auto it = std::next(slots.begin()); it != slots.end(); ++it) {
            rest.indices.push_back(it->second);
            rest.epowers.push_back(it->first.epower - q0);
        }
        if (q0 > 0)
            term.constant.multiply_by(EInvariant{{n}, {1}}, q0);  // det(E)^q0
        if (!rest.indices.empty()) term.constant.multiply_by(rest);
        slots.clear();
        slots[ArgSymbol{parity, 0}] = n;
    }
    return term;
}

ClosureTerm canonicalize(const ClosureTerm& term) {
    std::vector<std::pair<ArgSymbol, int>> raw(term.signature.slots.begin(),
                                               term.signature.slots.end());
    ClosureTerm out = canonicalize(term.coeff, raw, term.signature.n);
    // preserve constants already factored out
    for (const auto& [inv, exp] : term.constant.factors) out.constant.multiply_by(inv, exp);
    return out;
}

void CoeffExpr::add(long coeff, const ConstantFactor& cf) {
    if (coeff == 0) return;
    long& slot = terms[cf];
    slot += coeff;
    if (slot == 0) terms.erase(cf);
}

double CoeffExpr::eval(const Mat& e) const {
    double acc = 0.0;
    for (const auto& [cf, c] : terms) acc += double(c) * cf.eval(e);
    return acc;
}

std::string CoeffExpr::str(int n) const {
    if (terms.empty()) return "0";
    std::string s;
    for (const auto& [cf, c] : terms) {
        if (!s.empty()) s += " + ";
        if (cf.factors.empty())
            s += std::to_string(c);
        else if (c == 1)
            s += cf.str(n);
        else
            s += std::to_string(c) + "*" + cf.str(n);
    }
    return s;
}

ClosureReport explore(int n, int max_depth) {
    if (n < 2) throw DimensionMismatch("explore requires n >= 2");
    if (max_depth < 2) throw Error("explore requires max_depth >= 2");

    ClosureReport report;
    report.n = n;
    report.max_depth = max_depth;

    CanonicalSignature det_x;
    det_x.n = n;
    det_x.slots[ArgSymbol{0, 0}] = n;
    report.states.push_back(det_x);

    std::map<CanonicalSignature, size_t> index_of{{det_x, 0}};
    std::vector<size_t> frontier{0};
    std::vector<std::map<size_t, CoeffExpr>> rows(1);

    bool closed = false;
    for (int depth = 1; depth <= max_depth && !frontier.empty(); ++depth) {
        std::vector<size_t> next;
        for (size_t si : frontier) {
            // second derivative of the state in signature space
            std::map<CanonicalSignature, long> second;
            for (const auto& [c1, s1] : differentiate_signature(report.states[si]))
                for (const auto& [c2, s2] : differentiate_signature(s1)) second[s2] += c1 * c2;

            std::map<size_t, CoeffExpr> row;
            for (const auto& [sig, c] : second) {
                ClosureTerm t;
                t.coeff = c;
                t.signature = sig;
                t = canonicalize(t);
                if (t.coeff == 0) continue;
                auto it = index_of.find(t.signature);
                size_t target;
                if (it != index_of.end()) {
                    target = it->second;
                } else {
                    target = report.states.size();
                    report.states.push_back(t.signature);
                    rows.emplace_back();
                    index_of.emplace(t.signature, target);
                    next.push_back(target);
                }
                row[target].add(t.coeff, t.constant);
            }
            rows[si] = std::move(row);
        }
        report.new_states_per_depth.push_back(int(next.size()));
        if (next.empty()) {
            closed = true;
            break;
        }
        frontier = std::move(next);
    }

    report.closed = closed;
    if (closed) {
        const size_t count = report.states.size();
        report.transition.assign(count, std::vector<CoeffExpr>(count));
        for (size_t i = 0; i < count; ++i)
            for (const auto& [j, expr] : rows[i]) report.transition[i][j] = expr;
    }
    return report;
}

double signature_value_on_system(const CanonicalSignature& sig, const ReflectionOperators& ops,
                                 double t) {
    const Mat x = fundamental_matrix(ops, t);
    const Mat xp = fundamental_matrix_derivative(ops, t);
    MultiIndex ms;
    std::vector<Mat> args;
    for (const auto& [sym, idx] : sig.slots) {
        ms.push_back(idx);
        const Mat base = sym.parity == 0 ? x : xp;
        args.push_back(sym.epower == 0 ? base : base * matrix_power(ops.E, sym.epower));
    }
    if (ms.empty()) return 1.0;
    return z_value(ms, args);
}

double numeric_verify(const ClosureReport& report, const ReflectionSystem& sys,
                      const std::vector<double>& t_grid, double h) {
    if (!report.closed) throw Error("numeric_verify: report is not closed");
    if (sys.n() != report.n) throw DimensionMismatch("numeric_verify: dimension mismatch");
    const auto ops = derive_operators(sys);
    const size_t count = report.states.size();

    std::vector<std::vector<double>> coeffs(count, std::vector<double>(count));
    for (size_t i = 0; i < count; ++i)
        for (size_t j = 0; j < count; ++j) coeffs[i][j] = report.transition[i][j].eval(ops.E);

    double worst = 0.0;
    for (double t : t_grid) {
        std::vector<double> values(count);
        for (size_t j = 0; j < count; ++j)
            values[j] = signature_value_on_system(report.states[j], ops, t);
        for (size_t i = 0; i < count; ++i) {
            const double second = central_diff2_4th(
                [&](double s) { return signature_value_on_system(report.states[i], ops, s); }, t,
                h);
            double rhs = 0.0;
            for (size_t j = 0; j < count; ++j) rhs += coeffs[i][j] * values[j];
            worst = std::max(worst, std::abs(second - rhs));
        }
    }
    return worst;
}

} // namespace reflinv
