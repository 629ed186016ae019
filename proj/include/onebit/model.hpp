#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "onebit/matrix.hpp"

namespace onebit {

using cplx = std::complex<double>;

/// Unit-norm M-PSK constellation, points exp(j 2 pi m / M). M must be a
/// power of two >= 4 (the two-boundary decomposition degenerates for BPSK).
struct PskConstellation {
    int order = 0;

    explicit PskConstellation(int m);
    cplx point(int index) const;
    int bits_per_symbol() const;
};

/// Flat-fading channel, K users x Nt base-station antennas, row-major.
struct ChannelMatrix {
    std::size_t users = 0;
    std::size_t antennas = 0;
    std::vector<cplx> h;  // users * antennas

    ChannelMatrix() = default;
    ChannelMatrix(std::size_t k, std::size_t nt) : users(k), antennas(nt), h(k * nt) {}

    cplx& at(std::size_t k, std::size_t i) { return h[k * antennas + i]; }
    cplx at(std::size_t k, std::size_t i) const { return h[k * antennas + i]; }
};

/// Per-user constellation indices, length K.
struct SymbolVector {
    std::vector<int> indices;
};

/// The symbol-scaling optimization data consumed by every solver:
/// real matrix A of size (2K x 2Nt) acting on the stacked variable
/// x = [Re(x_T); Im(x_T)], plus system metadata. Rows 2k, 2k+1 carry the
/// negated boundary coefficients (-alpha_k^A, -alpha_k^B) of user k.
struct CiModel {
    RealMatrix a;
    std::size_t users = 0;
    std::size_t antennas = 0;
    int order = 0;
    double scale = 0.0;  // 1/sqrt(2 Nt), amplitude restoring factor

    std::size_t m() const { return a.rows; }  // 2K
    std::size_t n() const { return a.cols; }  // 2Nt
};

/// Sign vector in {-1,+1}^n, the discrete variable of the precoding problem.
struct BitVector {
    std::vector<double> v;
};

bool is_one_bit(const BitVector& x);

/// exp(j 2 pi m / M); throws std::invalid_argument for out-of-range index.
cplx psk_point(int index, int order);

/// Unit vectors along the two decision-boundary directions of symbol s:
/// (s e^{-j pi/M}, s e^{+j pi/M}). Requires |s| = 1 within 1e-12.
std::pair<cplx, cplx> boundary_vectors(cplx s, int order);

/// The 2 x 2Nt block mapping x = [Re(x_T); Im(x_T)] to the boundary
/// coefficients [alpha^A; alpha^B] of h^T x_T = alpha^A s^A + alpha^B s^B.
RealMatrix build_vk(const std::vector<cplx>& h_row, cplx symbol, int order);

/// Same block from explicit boundary directions (no constellation involved);
/// throws std::runtime_error when the directions are (anti)parallel.
RealMatrix build_vk_from_boundaries(const std::vector<cplx>& h_row, cplx s_a, cplx s_b);

/// Assembles A = -[V_1; V_2; ...; V_K] from channel and symbols.
CiModel build_model(const ChannelMatrix& h, const SymbolVector& s, int order);

/// max_l a_l^T x; the CI margin is the negation of this value.
double ci_objective(const CiModel& model, const std::vector<double>& x);

/// Entrywise sign with sgn(0) = +1.
BitVector quantize_onebit(const std::vector<double>& x);

/// Complex transmit signal of length Nt with entries in {+-1 +-j}/sqrt(2 Nt);
/// squared norm is 1.
std::vector<cplx> restore_transmit_signal(const BitVector& x, std::size_t antennas);
std::vector<cplx> restore_transmit_signal(const BitVector& x, const CiModel& model);

}  // namespace onebit
