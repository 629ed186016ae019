#include "onebit/sim.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "onebit/baselines.hpp"

namespace onebit {

std::string precoder_name(Precoder p) {
    switch (p) {
        case Precoder::Nl1p: return "nl1p";
        case Precoder::Anl1p: return "anl1p";
        case Precoder::ZfQuantized: return "zf_quantized";
        case Precoder::ZfUnquantized: return "zf_unquantized";
        case Precoder::BruteForce: return "brute_force";
    }
    return "unknown";
}

Precoder precoder_from_name(const std::string& name) {
    if (name == "nl1p") return Precoder::Nl1p;
    if (name == "anl1p") return Precoder::Anl1p;
    if (name == "zf_quantized") return Precoder::ZfQuantized;
    if (name == "zf_unquantized") return Precoder::ZfUnquantized;
    if (name == "brute_force") return Precoder::BruteForce;
    throw std::invalid_argument("unknown precoder: " + name);
}

namespace {

int bits_per_symbol(int order) {
    int bits = 0;
    for (int m = order; m > 1; m >>= 1) ++bits;
    return bits;
}

bool needs_model(Precoder p) {
    return p == Precoder::Nl1p || p == Precoder::Anl1p || p == Precoder::BruteForce;
}

}  // namespace

void validate(const ExperimentConfig& config) {
    if (config.users < 1) throw std::invalid_argument("config: users must be >= 1");
    if (config.users > config.antennas)
        throw std::invalid_argument("config: users must not exceed antennas");
    if (config.order < 4 || (config.order & (config.order - 1)) != 0)
        throw std::invalid_argument("config: order must be a power of two >= 4");
    if (config.snr_db.empty()) throw std::invalid_argument("config: SNR grid is empty");
    if (config.block_len < 1) throw std::invalid_argument("config: block_len must be >= 1");
    if (config.trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    if (config.precoders.empty()) throw std::invalid_argument("config: no precoders selected");
    for (Precoder p : config.precoders)
        if (p == Precoder::BruteForce && 2 * config.antennas > 26)
            throw std::invalid_argument("config: brute_force needs 2*antennas <= 26");
    if (config.solver.inner_max_iter < 1)
        throw std::invalid_argument("config: inner_max_iter must be >= 1");
}

ChannelMatrix rayleigh_channel(std::size_t users, std::size_t antennas, RngStream& rng) {
    if (users == 0 || antennas == 0)
        throw std::invalid_argument("rayleigh_channel: dimensions must be positive");
    ChannelMatrix h(users, antennas);
    const double comp_sigma = std::sqrt(0.5);
    for (std::size_t k = 0; k < users; ++k)
        for (std::size_t i = 0; i < antennas; ++i) {
            const double re = comp_sigma * rng.next_normal();
            const double im = comp_sigma * rng.next_normal();
            h.at(k, i) = cplx(re, im);
        }
    return h;
}

unsigned gray_bits(unsigned index, int order) {
    if (order < 4 || (order & (order - 1)) != 0)
        throw std::invalid_argument("gray_bits: order must be a power of two >= 4");
    if (index >= static_cast<unsigned>(order))
        throw std::invalid_argument("gray_bits: index out of range");
    return index ^ (index >> 1);
}

SymbolVector transmit_decode(const std::vector<cplx>& x_t, const ChannelMatrix& h, int order,
                             double sigma2, RngStream& rng) {
    if (x_t.size() != h.antennas)
        throw std::invalid_argument("transmit_decode: signal length does not match channel");
    if (sigma2 < 0.0) throw std::invalid_argument("transmit_decode: sigma2 must be >= 0");

    const double comp_sigma = std::sqrt(sigma2 / 2.0);
    const PskConstellation constellation(order);

    SymbolVector decoded;
    decoded.indices.resize(h.users);
    for (std::size_t k = 0; k < h.users; ++k) {
        cplx received = 0.0;
        for (std::size_t i = 0; i < h.antennas; ++i) received += h.at(k, i) * x_t[i];
        received += cplx(comp_sigma * rng.next_normal(), comp_sigma * rng.next_normal());

        // nearest neighbor on the unit circle == max correlation; strict >
        // keeps the smaller index on ties
        int best = 0;
        double best_corr = -std::numeric_limits<double>::infinity();
        for (int m = 0; m < order; ++m) {
            const cplx p = constellation.point(m);
            const double corr = received.real() * p.real() + received.imag() * p.imag();
            if (corr > best_corr) {
                best_corr = corr;
                best = m;
            }
        }
        decoded.indices[k] = best;
    }
    return decoded;
}

namespace {

struct SolveOutcome {
    bool ok = false;
    std::vector<cplx> x_t;
    double seconds = 0.0;
    int inner_iterations = 0;
};

SolveOutcome solve_precoder(Precoder p, const ChannelMatrix& h, const SymbolVector& s, int order,
                            const SolverSettings& settings, const CiModel* model) {
    SolveOutcome outcome;
    const auto start = std::chrono::steady_clock::now();
    try {
        switch (p) {
            case Precoder::Nl1p:
            case Precoder::Anl1p: {
                HomotopyParams hp = settings.homotopy;
                if (hp.lambda0 <= 0.0) hp.lambda0 = default_homotopy_params(order).lambda0;
                AoParams ap = default_ao_params(*model);
                ap.max_iter = settings.inner_max_iter;
                ap.tol = settings.inner_tol;
                ap.stop_norm = settings.stop_norm;
                const Variant variant =
                    p == Precoder::Nl1p ? Variant::Standard : Variant::Accelerated;
                SolveReport report = nl1p(*model, hp, ap, variant);
                outcome.inner_iterations = report.total_inner_iterations();
                outcome.x_t = restore_transmit_signal(report.x, *model);
                break;
            }
            case Precoder::BruteForce:
                outcome.x_t = restore_transmit_signal(brute_force(*model).x, *model);
                break;
            case Precoder::ZfQuantized:
                outcome.x_t = restore_transmit_signal(zf_quantized(h, s, order), h.antennas);
                break;
            case Precoder::ZfUnquantized:
                outcome.x_t = zf_unquantized(h, s, order);
                break;
        }
        outcome.ok = true;
    } catch (const std::exception&) {
        outcome.ok = false;
    }
    outcome.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return outcome;
}

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("ONEBIT_WORKERS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) return parsed;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

struct TrialTally {
    std::vector<std::uint64_t> errors;  // precoder-major, then SNR
    std::vector<std::uint64_t> bits;    // per precoder (equal across SNRs)
    std::vector<double> solve_seconds;  // per precoder
    std::vector<std::uint64_t> solves;  // per precoder
    std::vector<std::uint64_t> failures;
};

}  // namespace

SweepResult run_sweep(const ExperimentConfig& config) {
    validate(config);

    const std::size_t n_pre = config.precoders.size();
    const std::size_t n_snr = config.snr_db.size();
    const int bps = bits_per_symbol(config.order);
    const bool any_model = std::any_of(config.precoders.begin(), config.precoders.end(),
                                       [](Precoder p) { return needs_model(p); });

    std::vector<double> sigma2(n_snr);
    for (std::size_t i = 0; i < n_snr; ++i) sigma2[i] = std::pow(10.0, -config.snr_db[i] / 10.0);

    const RngStream root(config.seed);
    std::vector<TrialTally> tallies(config.trials);

    auto run_trial = [&](int trial) {
        TrialTally& tally = tallies[trial];
        tally.errors.assign(n_pre * n_snr, 0);
        tally.bits.assign(n_pre, 0);
        tally.solve_seconds.assign(n_pre, 0.0);
        tally.solves.assign(n_pre, 0);
        tally.failures.assign(n_pre, 0);

        RngStream trial_rng = root.split(static_cast<std::uint64_t>(trial));
        RngStream channel_rng = trial_rng.split(0);
        RngStream symbol_rng = trial_rng.split(1);
        const RngStream noise_base = trial_rng.split(2);

        const ChannelMatrix h = rayleigh_channel(config.users, config.antennas, channel_rng);

        for (int slot = 0; slot < config.block_len; ++slot) {
            SymbolVector s;
            s.indices.resize(config.users);
            for (std::size_t k = 0; k < config.users; ++k)
                s.indices[k] = static_cast<int>(
                    symbol_rng.next_below(static_cast<std::uint64_t>(config.order)));

            CiModel model;
            if (any_model) model = build_model(h, s, config.order);

            std::vector<SolveOutcome> outcomes(n_pre);
            for (std::size_t p = 0; p < n_pre; ++p) {
                outcomes[p] = solve_precoder(config.precoders[p], h, s, config.order,
                                             config.solver, any_model ? &model : nullptr);
                if (outcomes[p].ok) {
                    tally.solve_seconds[p] += outcomes[p].seconds;
                    tally.solves[p] += 1;
                    tally.bits[p] += config.users * static_cast<std::uint64_t>(bps);
                } else {
                    tally.failures[p] += 1;
                }
            }

            for (std::size_t si = 0; si < n_snr; ++si) {
                // one noise stream per (slot, SNR), replayed for every
                // precoder so comparisons are paired
                const RngStream noise_rng =
                    noise_base.split(static_cast<std::uint64_t>(slot) * n_snr + si);
                for (std::size_t p = 0; p < n_pre; ++p) {
                    if (!outcomes[p].ok) continue;
                    RngStream rng = noise_rng;
                    const SymbolVector decoded =
                        transmit_decode(outcomes[p].x_t, h, config.order, sigma2[si], rng);
                    std::uint64_t errs = 0;
                    for (std::size_t k = 0; k < config.users; ++k) {
                        const unsigned sent =
                            gray_bits(static_cast<unsigned>(s.indices[k]), config.order);
                        const unsigned got = gray_bits(
                            static_cast<unsigned>(decoded.indices[k]), config.order);
                        errs += static_cast<std::uint64_t>(std::popcount(sent ^ got));
                    }
                    tally.errors[p * n_snr + si] += errs;
                }
            }
        }
    };

    const int workers = std::min(resolve_workers(config.workers), config.trials);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::atomic<int> next_trial{0};
    auto worker_loop = [&] {
        for (;;) {
            const int trial = next_trial.fetch_add(1);
            if (trial >= config.trials) return;
            try {
                run_trial(trial);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    if (workers <= 1) {
        worker_loop();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker_loop);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    // deterministic reduction in trial order
    SweepResult result;
    for (std::size_t p = 0; p < n_pre; ++p) {
        std::uint64_t bits = 0, solves = 0, fails = 0;
        double seconds = 0.0;
        for (const TrialTally& t : tallies) {
            bits += t.bits[p];
            solves += t.solves[p];
            fails += t.failures[p];
            seconds += t.solve_seconds[p];
        }
        const std::string name = precoder_name(config.precoders[p]);
        if (fails > 0) result.solve_failures[name] = fails;
        for (std::size_t si = 0; si < n_snr; ++si) {
            std::uint64_t errors = 0;
            for (const TrialTally& t : tallies) errors += t.errors[p * n_snr + si];
            BerRecord rec;
            rec.precoder = name;
            rec.snr_db = config.snr_db[si];
            rec.bits_sent = bits;
            rec.bit_errors = errors;
            rec.ber = bits > 0 ? static_cast<double>(errors) / static_cast<double>(bits) : 0.0;
            rec.mean_solve_seconds = solves > 0 ? seconds / static_cast<double>(solves) : 0.0;
            result.records.push_back(std::move(rec));
        }
    }
    return result;
}

std::vector<BenchRecord> time_bench(std::size_t users, std::size_t antennas, int order,
                                    const std::vector<Precoder>& precoders, int reps,
                                    std::uint64_t seed, const SolverSettings& solver) {
    if (reps < 1) throw std::invalid_argument("time_bench: reps must be >= 1");
    if (precoders.empty()) throw std::invalid_argument("time_bench: no precoders selected");

    const bool any_model =
        std::any_of(precoders.begin(), precoders.end(), [](Precoder p) { return needs_model(p); });
    const RngStream root(seed);

    std::vector<double> seconds(precoders.size(), 0.0);
    std::vector<double> iters(precoders.size(), 0.0);
    std::vector<std::uint64_t> ok_counts(precoders.size(), 0);

    for (int rep = 0; rep < reps; ++rep) {
        RngStream trial_rng = root.split(static_cast<std::uint64_t>(rep));
        RngStream channel_rng = trial_rng.split(0);
        RngStream symbol_rng = trial_rng.split(1);
        const ChannelMatrix h = rayleigh_channel(users, antennas, channel_rng);
        SymbolVector s;
        s.indices.resize(users);
        for (std::size_t k = 0; k < users; ++k)
            s.indices[k] = static_cast<int>(symbol_rng.next_below(static_cast<std::uint64_t>(order)));

        CiModel model;
        if (any_model) model = build_model(h, s, order);
        for (std::size_t p = 0; p < precoders.size(); ++p) {
            const SolveOutcome outcome =
                solve_precoder(precoders[p], h, s, order, solver, any_model ? &model : nullptr);
            if (!outcome.ok) continue;
            seconds[p] += outcome.seconds;
            iters[p] += outcome.inner_iterations;
            ok_counts[p] += 1;
        }
    }

    std::vector<BenchRecord> records;
    for (std::size_t p = 0; p < precoders.size(); ++p) {
        BenchRecord rec;
        rec.precoder = precoder_name(precoders[p]);
        rec.users = users;
        rec.antennas = antennas;
        const double count = ok_counts[p] > 0 ? static_cast<double>(ok_counts[p]) : 1.0;
        rec.mean_solve_seconds = seconds[p] / count;
        rec.iters_mean = iters[p] / count;
        records.push_back(std::move(rec));
    }
    return records;
}

}  // namespace onebit
