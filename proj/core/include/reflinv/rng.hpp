#pragma once

#include <cstdint>
#include <random>

#include "reflinv/matrix.hpp"

namespace reflinv {

/// Seedable deterministic generator. Stream: mt19937_64(seed); each draw maps
/// the top 53 bits to [0,1), so results are identical on every platform.
/// Matrix entries are uniform in [-1,1], filled row-major.
class Rng {
    std::mt19937_64 gen_;

public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1).
    double unit() { return double(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform in [-1, 1].
    double uniform() { return 2.0 * unit() - 1.0; }

    Mat matrix(int rows, int cols) {
        Mat m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(i, j) = uniform();
        return m;
    }

    /// Complex entries with real and imaginary parts uniform in [-1,1];
    /// real part drawn first per entry.
    CMat cmatrix(int rows, int cols) {
        CMat m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                const double re = uniform();
                const double im = uniform();
                m(i, j) = Complex(re, im);
            }
        return m;
    }
};

} // namespace reflinv
