#pragma once

#include <cstddef>
#include <vector>

namespace onebit {

/// Dense row-major real matrix. The only linear algebra this project needs
/// is matrix-vector products, so the type stays deliberately small.
struct RealMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;  // rows * cols, row-major

    RealMatrix() = default;
    RealMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    const double* row(std::size_t r) const { return data.data() + r * cols; }
    double* row(std::size_t r) { return data.data() + r * cols; }
};

/// out = A * x  (out resized to A.rows)
void multiply(const RealMatrix& a, const std::vector<double>& x, std::vector<double>& out);

/// out = A^T * y  (out resized to A.cols)
void multiply_transpose(const RealMatrix& a, const std::vector<double>& y, std::vector<double>& out);

/// dot product of column j of A with y (y has A.rows entries)
double column_dot(const RealMatrix& a, std::size_t j, const std::vector<double>& y);

}  // namespace onebit
