#include "onebit/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace onebit {

SimplexVector SimplexVector::uniform(std::size_t m) {
    if (m == 0) throw std::invalid_argument("simplex dimension must be positive");
    SimplexVector y;
    y.v.assign(m, 1.0 / static_cast<double>(m));
    return y;
}

namespace detail {

void project_simplex_into(const std::vector<double>& point, std::vector<double>& out,
                          std::vector<double>& scratch) {
    const std::size_t m = point.size();
    scratch = point;
    std::sort(scratch.begin(), scratch.end(), std::greater<double>());

    // largest k with u_k > (sum_{i<=k} u_i - 1)/k; k = 1 always qualifies
    double cumulative = 0.0;
    double theta = 0.0;
    for (std::size_t k = 1; k <= m; ++k) {
        cumulative += scratch[k - 1];
        const double t = (cumulative - 1.0) / static_cast<double>(k);
        if (scratch[k - 1] - t > 0.0) theta = t;
    }

    out.resize(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = std::max(point[i] - theta, 0.0);
}

}  // namespace detail

SimplexVector project_simplex(const std::vector<double>& point) {
    if (point.empty()) throw std::invalid_argument("project_simplex: empty input");
    for (double x : point)
        if (!std::isfinite(x)) throw std::invalid_argument("project_simplex: nonfinite input");
    SimplexVector y;
    std::vector<double> scratch;
    detail::project_simplex_into(point, y.v, scratch);
    return y;
}

double spectral_norm(const RealMatrix& a) {
    if (a.rows == 0 || a.cols == 0) return 0.0;
    bool all_zero = true;
    for (double x : a.data) {
        if (x != 0.0) {
            all_zero = false;
            break;
        }
    }
    if (all_zero) return 0.0;

    const std::size_t n = a.cols;
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> av, atav;

    // The all-ones start can be orthogonal to the row space for structured
    // matrices; fall back to basis vectors until A v != 0.
    multiply(a, v, av);
    double av_norm2 = 0.0;
    for (double x : av) av_norm2 += x * x;
    for (std::size_t j = 0; j < n && av_norm2 == 0.0; ++j) {
        std::fill(v.begin(), v.end(), 0.0);
        v[j] = 1.0;
        multiply(a, v, av);
        av_norm2 = 0.0;
        for (double x : av) av_norm2 += x * x;
    }

    double sigma = std::sqrt(av_norm2);
    constexpr int kMaxIter = 200;
    for (int it = 0; it < kMaxIter; ++it) {
        multiply_transpose(a, av, atav);
        double z_norm = 0.0;
        for (double x : atav) z_norm += x * x;
        z_norm = std::sqrt(z_norm);
        if (z_norm == 0.0) break;
        for (std::size_t i = 0; i < n; ++i) v[i] = atav[i] / z_norm;

        multiply(a, v, av);
        double norm2 = 0.0;
        for (double x : av) norm2 += x * x;
        const double next = std::sqrt(norm2);
        const double change = std::abs(next - sigma);
        sigma = next;
        if (sigma > 0.0 && change / sigma < 1e-8) break;
    }
    return sigma;
}

double mean_abs(const RealMatrix& a) {
    if (a.data.empty()) throw std::invalid_argument("mean_abs: empty matrix");
    double acc = 0.0;
    for (double x : a.data) acc += std::abs(x);
    return acc / static_cast<double>(a.data.size());
}

namespace {

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

}  // namespace

std::uint64_t RngStream::next_u64() {
    state_ += kGolden;
    return mix64(state_);
}

double RngStream::next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_normal() {
    const double u1 = 1.0 - next_uniform();  // (0, 1]
    const double u2 = next_uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t RngStream::next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("next_below: zero bound");
    return next_u64() % bound;
}

RngStream RngStream::split(std::uint64_t key) const {
    return RngStream(mix64(seed_ + kGolden * (key + 1)));
}

}  // namespace onebit
