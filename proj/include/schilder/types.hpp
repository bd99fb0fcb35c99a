// SPDX-License-Identifier: MIT
//
// Shared value types and error categories.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace schilder {

// Validation / configuration problems (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A requested computation is statistically uninformative in this regime
// (e.g. rare-event MC without importance sampling).
struct FeasibilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Holder exponent in (0,1); LDP-facing code additionally requires < 1/2.
struct HolderExponent {
    double value;

    explicit HolderExponent(double a) : value(a) {
        if (!(a > 0.0 && a < 1.0))
            throw ConfigError("alpha must lie in (0,1), got " + std::to_string(a));
    }

    void require_ldp() const {
        if (!(value < 0.5))
            throw ConfigError("alpha must be < 1/2 for LDP commands");
    }
};

// Dense row-major matrix, the only storage shape this library needs.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    [[nodiscard]] const std::vector<double>& data() const { return data_; }
    [[nodiscard]] std::vector<double>& data() { return data_; }

    const double* row(std::size_t i) const { return data_.data() + i * cols_; }
    double* row(std::size_t i) { return data_.data() + i * cols_; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Coordinates of an H-vector in the eigenbasis of Q.
using HVector = std::vector<double>;

namespace exec {
// Heavy kernels come in two variants: the OpenMP one used in production and
// a serial reference. The counter RNG makes them bitwise identical, which
// the tests assert.
enum class Mode { serial, parallel };
}  // namespace exec

}  // namespace schilder
