// Batch front end: evaluate fundamental matrices, crossed invariants, closure
// reports and complex-system solutions from JSON inputs, and run the seeded
// verification suites. Exit codes: 0 all checks passed, 1 at least one
// residual exceeded its tolerance, 2 input or usage error.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "reflinv/closure.hpp"
#include "reflinv/errors.hpp"
#include "reflinv/graded.hpp"
#include "reflinv/invariants.hpp"
#include "reflinv/io.hpp"
#include "reflinv/reflection.hpp"
#include "reflinv/verify.hpp"

namespace {

using namespace reflinv;

struct GridSpec {
    double start = 0.0;
    double stop = 1.0;
    double step = 0.1;
};

GridSpec parse_grid(const std::string& spec) {
    GridSpec g;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> g.start >> c1 >> g.stop >> c2 >> g.step) || c1 != ':' || c2 != ':')
        throw ParseError("--t-grid expects start:stop:step, got '" + spec + "'");
    if (g.step <= 0.0) throw ParseError("--t-grid step must be positive");
    if (g.stop < g.start) throw ParseError("--t-grid stop must be >= start");
    return g;
}

std::vector<double> grid_points(const GridSpec& g) {
    std::vector<double> ts;
    const int count = int((g.stop - g.start) / g.step + 1e-9) + 1;
    for (int i = 0; i < count; ++i) ts.push_back(g.start + double(i) * g.step);
    return ts;
}

std::vector<int> parse_index(const std::string& spec) {
    std::vector<int> idx;
    std::istringstream in(spec);
    std::string part;
    while (std::getline(in, part, ',')) {
        try {
            idx.push_back(std::stoi(part));
        } catch (const std::exception&) {
            throw ParseError("--index expects comma-separated integers, got '" + spec + "'");
        }
    }
    if (idx.empty()) throw ParseError("--index must not be empty");
    return idx;
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty())
        std::cout << content;
    else
        write_text_file(out_path, content);
}

int cmd_fundamental(const std::string& system_path, const std::string& grid_spec,
                    const std::string& out_path) {
    const ReflectionSystem sys = load_reflection_system(system_path);
    const auto ops = derive_operators(sys);
    const int n = sys.n();
    std::string table = "t";
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            table += ",X" + std::to_string(i) + std::to_string(j);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            table += ",Xp" + std::to_string(i) + std::to_string(j);
    table += "\n";
    for (double t : grid_points(parse_grid(grid_spec))) {
        const Mat x = fundamental_matrix(ops, t);
        const Mat xp = fundamental_matrix_derivative(ops, t);
        table += format_double(t);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) table += "," + format_double(x(i, j));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) table += "," + format_double(xp(i, j));
        table += "\n";
    }
    emit(table, out_path);
    return 0;
}

int cmd_invariant(const std::string& matrices_path, const std::string& index_spec,
                  const std::string& out_path) {
    const std::vector<Mat> xs = load_matrix_list(matrices_path);
    const std::vector<int> ms = parse_index(index_spec);
    if (ms.size() != xs.size())
        throw ParseError("--index names " + std::to_string(ms.size()) + " indices but '" +
                         matrices_path + "' holds " + std::to_string(xs.size()) + " matrices");
    const double value = z_value(ms, xs);
    std::string report = "{\n  \"index\": [";
    for (size_t i = 0; i < ms.size(); ++i)
        report += (i ? "," : "") + std::to_string(ms[i]);
    report += "],\n  \"value\": " + format_double(value) + "\n}\n";
    emit(report, out_path);
    return 0;
}

int cmd_closure(int n, int max_depth, const std::string& out_path) {
    const ClosureReport report = explore(n, max_depth);
    emit(closure_report_json(report), out_path);
    return 0;
}

int cmd_complex_solve(const std::string& system_path, const std::string& grid_spec, double h,
                      const std::string& out_path) {
    const ComplexSystem sys = load_complex_system(system_path);
    const GridSpec g = parse_grid(grid_spec);
    const auto pair = solve_fundamental_pair(sys, g.stop, h);
    const int n = sys.n();

    std::string table = "t";
    for (const char* name : {"X0", "X1"})
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const std::string suffix = std::string(name) + std::to_string(i) + std::to_string(j);
                table += ",re_" + suffix + ",im_" + suffix;
            }
    table += "\n";

    // sample the trajectory at the requested grid times
    size_t cursor = 0;
    for (double t : grid_points(g)) {
        while (cursor + 1 < pair.ts.size() && pair.ts[cursor] < t - 1e-12) ++cursor;
        table += format_double(pair.ts[cursor]);
        for (const auto* comp : {&pair.x0, &pair.x1})
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const Complex v = (*comp)[cursor](i, j);
                    table += "," + format_double(v.real()) + "," + format_double(v.imag());
                }
        table += "\n";
    }
    emit(table, out_path);
    return 0;
}

int cmd_verify(const std::string& suite, uint64_t seed, int trials, const std::string& mode,
               std::optional<double> tol_override, const std::string& out_path) {
    VerifyOptions opt;
    opt.seed = seed;
    opt.trials = trials;
    if (mode == "paper-theorem2")
        opt.ajl_mode = AjlMode::theorem2;
    else if (mode == "section45")
        opt.ajl_mode = AjlMode::section45;
    else
        throw ParseError("--mode must be paper-theorem2 or section45, got '" + mode + "'");

    std::vector<Check> checks = verify_suite(suite, opt);
    if (tol_override) {
        for (auto& c : checks) {
            c.tolerance = *tol_override;
            c.pass = c.residual <= c.tolerance;
        }
    }
    emit(checks_report_json(suite, seed, trials, mode, checks), out_path);
    return all_pass(checks) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"reflection differential systems and generalized matrix invariants"};
    app.set_help_flag("--help", "print help");  // keep -h free for the step option
    app.require_subcommand(1);

    std::string system_path, matrices_path, index_spec, out_path;
    std::string grid_spec = "0:1:0.1";
    std::string suite = "all";
    std::string mode = "section45";
    double h = 1e-3;
    std::optional<double> tol_override;
    int trials = 20;
    uint64_t seed = 42;
    int n = 2;
    int max_depth = 6;

    auto* fundamental = app.add_subcommand("fundamental", "evaluate X(t), X'(t) on a grid");
    fundamental->add_option("--system", system_path, "reflection system JSON file")->required();
    fundamental->add_option("--t-grid", grid_spec, "start:stop:step");
    fundamental->add_option("--out", out_path, "output path (default stdout)");

    auto* invariant = app.add_subcommand("invariant", "compute a crossed invariant");
    invariant->add_option("--matrices", matrices_path, "matrix list JSON file")->required();
    invariant->add_option("--index", index_spec, "comma-separated index vector")->required();
    invariant->add_option("--out", out_path, "output path (default stdout)");

    auto* closure = app.add_subcommand("closure", "run the closure explorer");
    closure->add_option("--n", n, "matrix size (>= 2)");
    closure->add_option("--max-depth", max_depth, "depth cap (>= 2)");
    closure->add_option("--out", out_path, "output path (default stdout)");

    auto* complex_solve = app.add_subcommand("complex-solve", "solve z' + A z + B conj(z) = 0");
    complex_solve->add_option("--system", system_path, "complex system JSON file")->required();
    complex_solve->add_option("--t-grid", grid_spec, "start:stop:step");
    complex_solve->add_option("--h", h, "integration step");
    complex_solve->add_option("--out", out_path, "output path (default stdout)");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", suite,
                       "reflection|ajl|riccati|graded|invariants|derivatives|closure|all");
    verify->add_option("--seed", seed, "RNG seed");
    verify->add_option("--trials", trials, "trials per randomized check")
        ->check(CLI::PositiveNumber);
    verify->add_option("--mode", mode, "paper-theorem2|section45");
    verify->add_option("--tol", tol_override, "override every tolerance");
    verify->add_option("--h", h, "integration step");
    verify->add_option("--out", out_path, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (fundamental->parsed()) return cmd_fundamental(system_path, grid_spec, out_path);
        if (invariant->parsed()) return cmd_invariant(matrices_path, index_spec, out_path);
        if (closure->parsed()) return cmd_closure(n, max_depth, out_path);
        if (complex_solve->parsed())
            return cmd_complex_solve(system_path, grid_spec, h, out_path);
        if (verify->parsed())
            return cmd_verify(suite, seed, trials, mode, tol_override, out_path);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Unsupported& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
