#include "onebit/baselines.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace onebit {

namespace {

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

double max_entry(const std::vector<double>& v) {
    double best = -std::numeric_limits<double>::infinity();
    for (double e : v) best = std::max(best, e);
    return best;
}

}  // namespace

BruteForceResult brute_force(const CiModel& model) {
    const std::size_t n = model.n();
    const std::size_t m = model.m();
    if (n > 26)
        throw std::invalid_argument("brute_force: n = " + std::to_string(n) +
                                    " exceeds the enumeration limit of 26");

    std::vector<double> x(n, -1.0);
    std::vector<double> lambda;
    multiply(model.a, x, lambda);

    std::vector<double> best_x = x;
    double best_value = max_entry(lambda);

    // Gray-code walk: candidate s differs from s-1 in bit ctz(s). Lambda is
    // updated incrementally and refreshed periodically to cap drift.
    const std::uint64_t total = 1ULL << n;
    for (std::uint64_t s = 1; s < total; ++s) {
        const unsigned flip = static_cast<unsigned>(std::countr_zero(s));
        x[flip] = -x[flip];
        const double delta = 2.0 * x[flip];
        for (std::size_t r = 0; r < m; ++r) lambda[r] += delta * model.a(r, flip);
        if ((s & 0xFFF) == 0) multiply(model.a, x, lambda);

        const double value = max_entry(lambda);
        if (value < best_value || (value == best_value && lex_less(x, best_x))) {
            best_value = value;
            best_x = x;
        }
    }

    BruteForceResult result;
    result.x.v = std::move(best_x);
    result.value = ci_objective(model, result.x.v);
    return result;
}

PartitionInstance partition_instance(const std::vector<long long>& a) {
    if (a.empty()) throw std::invalid_argument("partition_instance: empty integer vector");
    if (a.size() > 13)
        throw std::invalid_argument("partition_instance: at most 13 integers supported");
    for (long long e : a)
        if (e < 1) throw std::invalid_argument("partition_instance: entries must be positive");

    // Single-user reduction: h = a + j a, boundary directions (1, j), so
    // [alpha^A; alpha^B] = [[a, -a], [a, a]] [Re(x_T); Im(x_T)].
    const std::size_t n_ants = a.size();
    std::vector<cplx> h_row(n_ants);
    for (std::size_t i = 0; i < n_ants; ++i) {
        const double v = static_cast<double>(a[i]);
        h_row[i] = cplx(v, v);
    }
    const RealMatrix v = build_vk_from_boundaries(h_row, cplx(1.0, 0.0), cplx(0.0, 1.0));

    PartitionInstance instance;
    instance.a = a;
    instance.model.users = 1;
    instance.model.antennas = n_ants;
    instance.model.order = 8;
    instance.model.scale = 1.0 / std::sqrt(2.0 * static_cast<double>(n_ants));
    instance.model.a = RealMatrix(2, 2 * n_ants);
    for (std::size_t c = 0; c < v.cols; ++c) {
        instance.model.a(0, c) = -v(0, c);
        instance.model.a(1, c) = -v(1, c);
    }
    return instance;
}

namespace {

// Gaussian elimination with partial pivoting for the K x K system G w = s.
// The pivot-magnitude ratio doubles as a cheap condition estimate.
std::vector<cplx> solve_dense(std::vector<cplx> g, std::vector<cplx> rhs, std::size_t k) {
    double max_pivot = 0.0;
    double min_pivot = std::numeric_limits<double>::infinity();
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        double best = std::abs(g[col * k + col]);
        for (std::size_t r = col + 1; r < k; ++r) {
            const double mag = std::abs(g[r * k + col]);
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (best == 0.0) throw std::runtime_error("zero-forcing: H H^H is singular");
        max_pivot = std::max(max_pivot, best);
        min_pivot = std::min(min_pivot, best);
        if (max_pivot / min_pivot > 1e12)
            throw std::runtime_error("zero-forcing: H H^H condition estimate beyond 1e12");
        if (pivot != col) {
            for (std::size_t c = 0; c < k; ++c) std::swap(g[col * k + c], g[pivot * k + c]);
            std::swap(rhs[col], rhs[pivot]);
        }
        const cplx inv = 1.0 / g[col * k + col];
        for (std::size_t r = col + 1; r < k; ++r) {
            const cplx factor = g[r * k + col] * inv;
            if (factor == cplx(0.0, 0.0)) continue;
            for (std::size_t c = col; c < k; ++c) g[r * k + c] -= factor * g[col * k + c];
            rhs[r] -= factor * rhs[col];
        }
    }
    std::vector<cplx> w(k);
    for (std::size_t r = k; r-- > 0;) {
        cplx acc = rhs[r];
        for (std::size_t c = r + 1; c < k; ++c) acc -= g[r * k + c] * w[c];
        w[r] = acc / g[r * k + r];
    }
    return w;
}

std::vector<cplx> zf_direction(const ChannelMatrix& h, const SymbolVector& s, int order) {
    if (h.users == 0 || h.users > h.antennas)
        throw std::invalid_argument("zero-forcing requires 1 <= K <= Nt");
    if (s.indices.size() != h.users)
        throw std::invalid_argument("zero-forcing: symbol count does not match user count");

    const std::size_t k = h.users;
    std::vector<cplx> gram(k * k);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) {
            cplx acc = 0.0;
            for (std::size_t i = 0; i < h.antennas; ++i)
                acc += h.at(r, i) * std::conj(h.at(c, i));
            gram[r * k + c] = acc;
        }

    std::vector<cplx> rhs(k);
    for (std::size_t r = 0; r < k; ++r) rhs[r] = psk_point(s.indices[r], order);

    const std::vector<cplx> w = solve_dense(std::move(gram), std::move(rhs), k);

    std::vector<cplx> x_t(h.antennas, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < h.antennas; ++i) {
        cplx acc = 0.0;
        for (std::size_t r = 0; r < k; ++r) acc += std::conj(h.at(r, i)) * w[r];
        x_t[i] = acc;
    }
    return x_t;
}

}  // namespace

BitVector zf_quantized(const ChannelMatrix& h, const SymbolVector& s, int order) {
    const std::vector<cplx> x_t = zf_direction(h, s, order);
    std::vector<double> stacked(2 * h.antennas);
    for (std::size_t i = 0; i < h.antennas; ++i) {
        stacked[i] = x_t[i].real();
        stacked[h.antennas + i] = x_t[i].imag();
    }
    return quantize_onebit(stacked);
}

std::vector<cplx> zf_unquantized(const ChannelMatrix& h, const SymbolVector& s, int order) {
    std::vector<cplx> x_t = zf_direction(h, s, order);
    double norm2 = 0.0;
    for (const cplx& e : x_t) norm2 += std::norm(e);
    if (norm2 == 0.0) throw std::runtime_error("zero-forcing: degenerate direction");
    const double inv = 1.0 / std::sqrt(norm2);
    for (cplx& e : x_t) e *= inv;
    return x_t;
}

}  // namespace onebit
