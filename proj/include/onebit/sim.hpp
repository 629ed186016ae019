#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "onebit/model.hpp"
#include "onebit/numerics.hpp"
#include "onebit/solver.hpp"

namespace onebit {

enum class Precoder { Nl1p, Anl1p, ZfQuantized, ZfUnquantized, BruteForce };

std::string precoder_name(Precoder p);
Precoder precoder_from_name(const std::string& name);

/// Inner/outer solver knobs shared by every instance of a sweep; the
/// per-instance AoParams (rho, schedules) are derived from each model.
struct SolverSettings {
    HomotopyParams homotopy;  // lambda0 <= 0 means "default for this M"
    int inner_max_iter = 500;
    double inner_tol = 1e-3;
    StopNorm stop_norm = StopNorm::L2;
};

struct ExperimentConfig {
    std::size_t users = 0;
    std::size_t antennas = 0;
    int order = 8;
    std::vector<double> snr_db;
    int block_len = 10;
    int trials = 1000;
    std::uint64_t seed = 0;
    std::vector<Precoder> precoders;
    SolverSettings solver;
    int workers = 0;  // 0: ONEBIT_WORKERS env var, else hardware concurrency
};

void validate(const ExperimentConfig& config);

struct BerRecord {
    std::string precoder;
    double snr_db = 0.0;
    std::uint64_t bits_sent = 0;
    std::uint64_t bit_errors = 0;
    double ber = 0.0;
    double mean_solve_seconds = 0.0;
};

struct SweepResult {
    std::vector<BerRecord> records;  // precoder-major, SNR in grid order
    std::map<std::string, std::uint64_t> solve_failures;
};

/// i.i.d. Rayleigh channel: per entry, real and imaginary parts drawn
/// independently N(0, 1/2) so each complex gain has unit variance.
ChannelMatrix rayleigh_channel(std::size_t users, std::size_t antennas, RngStream& rng);

/// Binary-reflected Gray code of a constellation index: m XOR (m >> 1).
unsigned gray_bits(unsigned index, int order);

/// y = H x_T + n with complex noise of per-entry variance sigma2, then
/// symbol-wise nearest-neighbor decoding on the unit circle; decision ties
/// resolve toward the smaller constellation index.
SymbolVector transmit_decode(const std::vector<cplx>& x_t, const ChannelMatrix& h, int order,
                             double sigma2, RngStream& rng);

/// Monte Carlo sweep: per trial one channel draw, block_len symbol slots,
/// one precoder solve per slot reused across the whole SNR grid, independent
/// noise per SNR shared across precoders. Deterministic given (config, seed)
/// up to the timing fields; trials run in parallel and merge in trial order.
SweepResult run_sweep(const ExperimentConfig& config);

struct BenchRecord {
    std::string precoder;
    std::size_t users = 0;
    std::size_t antennas = 0;
    double mean_solve_seconds = 0.0;
    double iters_mean = 0.0;  // total inner iterations per solve; 0 for ZF
};

/// Times `reps` independent solves (fresh channel + symbols each) per
/// precoder at one system size.
std::vector<BenchRecord> time_bench(std::size_t users, std::size_t antennas, int order,
                                    const std::vector<Precoder>& precoders, int reps,
                                    std::uint64_t seed, const SolverSettings& solver);

}  // namespace onebit
