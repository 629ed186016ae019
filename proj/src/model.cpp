#include "onebit/model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace onebit {

namespace {

bool power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

void check_order(int order) {
    if (!power_of_two(order) || order < 4)
        throw std::invalid_argument("PSK order must be a power of two >= 4, got " +
                                    std::to_string(order));
}

}  // namespace

PskConstellation::PskConstellation(int m) : order(m) { check_order(m); }

cplx PskConstellation::point(int index) const { return psk_point(index, order); }

int PskConstellation::bits_per_symbol() const {
    int bits = 0;
    for (int m = order; m > 1; m >>= 1) ++bits;
    return bits;
}

bool is_one_bit(const BitVector& x) {
    for (double e : x.v)
        if (e != 1.0 && e != -1.0) return false;
    return true;
}

cplx psk_point(int index, int order) {
    check_order(order);
    if (index < 0 || index >= order)
        throw std::invalid_argument("constellation index out of range");
    const double angle = 2.0 * std::numbers::pi * index / order;
    return std::polar(1.0, angle);
}

std::pair<cplx, cplx> boundary_vectors(cplx s, int order) {
    check_order(order);
    if (std::abs(std::abs(s) - 1.0) > 1e-12)
        throw std::invalid_argument("boundary_vectors: symbol must have unit modulus");
    const cplx rot = std::polar(1.0, std::numbers::pi / order);
    return {s * std::conj(rot), s * rot};
}

RealMatrix build_vk_from_boundaries(const std::vector<cplx>& h_row, cplx s_a, cplx s_b) {
    const double den = s_a.real() * s_b.imag() - s_a.imag() * s_b.real();
    if (std::abs(den) < 1e-12)
        throw std::runtime_error("degenerate boundary directions: decomposition undefined");

    // [alpha^A; alpha^B] = B * [Re(h^T x_T); Im(h^T x_T)]
    const double b00 = s_b.imag() / den;
    const double b01 = -s_b.real() / den;
    const double b10 = -s_a.imag() / den;
    const double b11 = s_a.real() / den;

    const std::size_t nt = h_row.size();
    RealMatrix v(2, 2 * nt);
    for (std::size_t i = 0; i < nt; ++i) {
        const double hr = h_row[i].real();
        const double hi = h_row[i].imag();
        v(0, i) = b00 * hr + b01 * hi;
        v(1, i) = b10 * hr + b11 * hi;
        v(0, nt + i) = -b00 * hi + b01 * hr;
        v(1, nt + i) = -b10 * hi + b11 * hr;
    }
    return v;
}

RealMatrix build_vk(const std::vector<cplx>& h_row, cplx symbol, int order) {
    const auto [s_a, s_b] = boundary_vectors(symbol, order);
    return build_vk_from_boundaries(h_row, s_a, s_b);
}

CiModel build_model(const ChannelMatrix& h, const SymbolVector& s, int order) {
    check_order(order);
    if (h.users == 0 || h.antennas == 0)
        throw std::invalid_argument("build_model: empty channel");
    if (s.indices.size() != h.users)
        throw std::invalid_argument("build_model: symbol count does not match user count");
    for (const cplx& e : h.h)
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
            throw std::invalid_argument("build_model: nonfinite channel entry");

    CiModel model;
    model.users = h.users;
    model.antennas = h.antennas;
    model.order = order;
    model.scale = 1.0 / std::sqrt(2.0 * static_cast<double>(h.antennas));
    model.a = RealMatrix(2 * h.users, 2 * h.antennas);

    std::vector<cplx> row(h.antennas);
    for (std::size_t k = 0; k < h.users; ++k) {
        for (std::size_t i = 0; i < h.antennas; ++i) row[i] = h.at(k, i);
        const RealMatrix v = build_vk(row, psk_point(s.indices[k], order), order);
        for (std::size_t c = 0; c < v.cols; ++c) {
            model.a(2 * k, c) = -v(0, c);
            model.a(2 * k + 1, c) = -v(1, c);
        }
    }
    return model;
}

double ci_objective(const CiModel& model, const std::vector<double>& x) {
    if (x.size() != model.n())
        throw std::invalid_argument("ci_objective: dimension mismatch");
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < model.m(); ++r) {
        const double* row = model.a.row(r);
        double acc = 0.0;
        for (std::size_t c = 0; c < model.n(); ++c) acc += row[c] * x[c];
        if (acc > best) best = acc;
    }
    return best;
}

BitVector quantize_onebit(const std::vector<double>& x) {
    BitVector out;
    out.v.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i])) throw std::invalid_argument("quantize_onebit: nonfinite input");
        out.v[i] = x[i] >= 0.0 ? 1.0 : -1.0;
    }
    return out;
}

std::vector<cplx> restore_transmit_signal(const BitVector& x, std::size_t antennas) {
    if (x.v.size() != 2 * antennas)
        throw std::invalid_argument("restore_transmit_signal: dimension mismatch");
    if (!is_one_bit(x))
        throw std::invalid_argument("restore_transmit_signal: input is not one-bit");
    const double scale = 1.0 / std::sqrt(2.0 * static_cast<double>(antennas));
    std::vector<cplx> out(antennas);
    for (std::size_t i = 0; i < antennas; ++i)
        out[i] = cplx(scale * x.v[i], scale * x.v[antennas + i]);
    return out;
}

std::vector<cplx> restore_transmit_signal(const BitVector& x, const CiModel& model) {
    return restore_transmit_signal(x, model.antennas);
}

}  // namespace onebit
