#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "cgofs/core.hpp"
#include "cgofs/error.hpp"
#include "cgofs/rng.hpp"
#include "doctest.h"

namespace cgofs::test {

/// Code of the cgofs::Error thrown by `f`, or nothing if it returns normally.
template <class F>
std::optional<ErrorCode> error_code(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

#define CHECK_ERROR_CODE(expr, expected) \
    CHECK(::cgofs::test::error_code([&] { (void)(expr); }) == std::optional<::cgofs::ErrorCode>(expected))

/// Matrix of uniform values in [lo, hi).
inline Matrix random_matrix(std::size_t rows, std::size_t cols, RandomSource& rng, double lo = 0.0,
                            double hi = 1.0) {
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = rng.uniform(lo, hi);
        }
    }
    return m;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("cgofs_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace cgofs::test
