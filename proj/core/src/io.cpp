#include "reflinv/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace reflinv {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": invalid JSON (" + e.what() + ")");
    }
    return j;
}

Complex parse_entry(const json& e, const std::string& where) {
    if (e.is_number()) return Complex(e.get<double>(), 0.0);
    if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
        return Complex(e[0].get<double>(), e[1].get<double>());
    throw ParseError(where + ": entry must be a number or [re, im]");
}

CMat parse_cmatrix(const json& j, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected a matrix object");
    for (const char* field : {"rows", "cols", "data"})
        if (!j.contains(field)) throw ParseError(where + ": field '" + field + "' missing");
    if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
        throw ParseError(where + ": 'rows'/'cols' must be integers");
    const int rows = j["rows"].get<int>();
    const int cols = j["cols"].get<int>();
    if (rows <= 0 || cols <= 0) throw ParseError(where + ": dimensions must be positive");
    const json& data = j["data"];
    if (!data.is_array() || int(data.size()) != rows)
        throw ParseError(where + ": 'data' must have 'rows' rows");
    CMat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = data[size_t(i)];
        if (!row.is_array() || int(row.size()) != cols)
            throw ParseError(where + ": row " + std::to_string(i) + " must have 'cols' entries");
        for (int jcol = 0; jcol < cols; ++jcol)
            m(i, jcol) = parse_entry(row[size_t(jcol)],
                                     where + ": data[" + std::to_string(i) + "][" +
                                         std::to_string(jcol) + "]");
    }
    return m;
}

Mat parse_matrix(const json& j, const std::string& where) {
    const CMat c = parse_cmatrix(j, where);
    if (imag_part(c).max_abs() != 0.0)
        throw ParseError(where + ": complex entries not allowed here");
    return real_part(c);
}

} // namespace

Mat load_matrix_file(const std::string& path) { return parse_matrix(parse_file(path), path); }

std::vector<Mat> load_matrix_list(const std::string& path) {
    const json j = parse_file(path);
    if (j.is_object() && j.contains("matrices")) {
        const json& arr = j["matrices"];
        if (!arr.is_array() || arr.empty())
            throw ParseError(path + ": 'matrices' must be a non-empty array");
        std::vector<Mat> out;
        out.reserve(arr.size());
        for (size_t k = 0; k < arr.size(); ++k)
            out.push_back(parse_matrix(arr[k], path + ": matrices[" + std::to_string(k) + "]"));
        return out;
    }
    return {parse_matrix(j, path)};
}

ReflectionSystem load_reflection_system(const std::string& path) {
    const json j = parse_file(path);
    if (!j.is_object()) throw ParseError(path + ": expected an object with F, G, A, B");
    ReflectionSystem sys{Mat::identity(1), Mat::identity(1), Mat::identity(1), Mat::identity(1)};
    Mat* slots[4] = {&sys.F, &sys.G, &sys.A, &sys.B};
    const char* names[4] = {"F", "G", "A", "B"};
    for (int k = 0; k < 4; ++k) {
        if (!j.contains(names[k]))
            throw ParseError(path + ": field '" + names[k] + "' missing");
        *slots[k] = parse_matrix(j[names[k]], path + ": " + names[k]);
    }
    const int n = sys.F.rows();
    for (int k = 0; k < 4; ++k)
        if (!slots[k]->is_square() || slots[k]->rows() != n)
            throw ParseError(path + ": '" + names[k] + "' must be square of the common size");
    return sys;
}

ComplexSystem load_complex_system(const std::string& path) {
    const json j = parse_file(path);
    if (!j.is_object()) throw ParseError(path + ": expected an object with A, B");
    for (const char* field : {"A", "B"})
        if (!j.contains(field)) throw ParseError(path + ": field '" + field + "' missing");
    ComplexSystem sys{parse_cmatrix(j["A"], path + ": A"), parse_cmatrix(j["B"], path + ": B")};
    if (!sys.a.is_square() || sys.b.rows() != sys.a.rows() || !sys.b.is_square())
        throw ParseError(path + ": 'A' and 'B' must be square of equal size");
    return sys;
}

std::string closure_report_json(const ClosureReport& report) {
    ordered j;
    j["n"] = report.n;
    j["max_depth"] = report.max_depth;
    j["closed"] = report.closed;
    j["states"] = ordered::array();
    for (const auto& s : report.states) {
        ordered st;
        st["label"] = s.str();
        st["slots"] = ordered::array();
        for (const auto& [sym, idx] : s.slots) {
            ordered slot;
            slot["arg"] = sym.str();
            slot["parity"] = sym.parity;
            slot["epower"] = sym.epower;
            slot["index"] = idx;
            st["slots"].push_back(slot);
        }
        j["states"].push_back(st);
    }
    j["new_states_per_depth"] = report.new_states_per_depth;
    j["transition"] = ordered::array();  // row-major entry strings when closed
    for (const auto& row : report.transition)
        for (const auto& e : row) j["transition"].push_back(e.str(report.n));
    return j.dump(2) + "\n";
}

std::string checks_report_json(const std::string& suite, uint64_t seed, int trials,
                               const std::string& mode, const std::vector<Check>& checks) {
    ordered j;
    j["suite"] = suite;
    j["seed"] = seed;
    j["trials"] = trials;
    j["mode"] = mode;
    j["checks"] = ordered::array();
    for (const auto& c : checks) {
        ordered e;
        e["name"] = c.name;
        e["identity"] = c.identity;
        e["residual"] = c.residual;
        e["tolerance"] = c.tolerance;
        e["pass"] = c.pass;
        e["note"] = c.note;
        j["checks"].push_back(e);
    }
    j["all_pass"] = all_pass(checks);
    return j.dump(2) + "\n";
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ParseError(path + ": cannot open for writing");
    out << content;
}

} // namespace reflinv
