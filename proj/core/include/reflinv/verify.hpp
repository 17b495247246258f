#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reflinv/reflection.hpp"

namespace reflinv {

/// One verification line: the identity checked, the worst residual seen and
/// the tolerance it is held to.
struct Check {
    std::string name;
    std::string identity;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

struct VerifyOptions {
    uint64_t seed = 42;
    int trials = 20;
    AjlMode ajl_mode = AjlMode::section45;
};

std::vector<Check> verify_reflection(const VerifyOptions& opt);
std::vector<Check> verify_ajl(const VerifyOptions& opt);
std::vector<Check> verify_riccati(const VerifyOptions& opt);
std::vector<Check> verify_graded(const VerifyOptions& opt);
std::vector<Check> verify_invariants(const VerifyOptions& opt);
std::vector<Check> verify_derivatives(const VerifyOptions& opt);
std::vector<Check> verify_closure(const VerifyOptions& opt);

/// Suite names: reflection, ajl, riccati, graded, invariants, derivatives,
/// closure, all. Throws Unsupported for anything else.
std::vector<Check> verify_suite(const std::string& name, const VerifyOptions& opt);

bool all_pass(const std::vector<Check>& checks);

} // namespace reflinv
