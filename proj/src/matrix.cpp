#include "onebit/matrix.hpp"

namespace onebit {

void multiply(const RealMatrix& a, const std::vector<double>& x, std::vector<double>& out) {
    out.assign(a.rows, 0.0);
    for (std::size_t r = 0; r < a.rows; ++r) {
        const double* row = a.row(r);
        double acc = 0.0;
        for (std::size_t c = 0; c < a.cols; ++c) acc += row[c] * x[c];
        out[r] = acc;
    }
}

void multiply_transpose(const RealMatrix& a, const std::vector<double>& y,
                        std::vector<double>& out) {
    out.assign(a.cols, 0.0);
    for (std::size_t r = 0; r < a.rows; ++r) {
        const double* row = a.row(r);
        const double w = y[r];
        if (w == 0.0) continue;
        for (std::size_t c = 0; c < a.cols; ++c) out[c] += w * row[c];
    }
}

double column_dot(const RealMatrix& a, std::size_t j, const std::vector<double>& y) {
    double acc = 0.0;
    for (std::size_t r = 0; r < a.rows; ++r) acc += a(r, j) * y[r];
    return acc;
}

}  // namespace onebit
