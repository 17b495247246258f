#pragma once

#include <string>
#include <vector>

#include "reflinv/closure.hpp"
#include "reflinv/graded.hpp"
#include "reflinv/matrix.hpp"
#include "reflinv/reflection.hpp"
#include "reflinv/verify.hpp"

namespace reflinv {

/// Matrix file: {"rows": r, "cols": c, "data": [[...], ...]}. Real entries are
/// plain numbers; complex entries are two-element arrays [re, im].
Mat load_matrix_file(const std::string& path);

/// {"matrices": [matrix, matrix, ...]}; a bare matrix object is accepted as a
/// singleton list.
std::vector<Mat> load_matrix_list(const std::string& path);

/// {"F": matrix, "G": matrix, "A": matrix, "B": matrix}, all real.
ReflectionSystem load_reflection_system(const std::string& path);

/// {"A": matrix, "B": matrix} with complex entries allowed.
ComplexSystem load_complex_system(const std::string& path);

std::string closure_report_json(const ClosureReport& report);

std::string checks_report_json(const std::string& suite, uint64_t seed, int trials,
                               const std::string& mode, const std::vector<Check>& checks);

/// "%.17g" so tables round-trip and reruns are byte-identical.
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);

} // namespace reflinv
