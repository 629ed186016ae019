#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "onebit/baselines.hpp"
#include "onebit/oracles.hpp"
#include "onebit/sim.hpp"
#include "output.hpp"

namespace onebit::cli {

namespace {

std::string now_iso() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

std::vector<Precoder> parse_precoders(const std::string& csv) {
    std::vector<Precoder> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(precoder_from_name(item));
    }
    if (out.empty()) throw CLI::ValidationError("--precoders", "no precoder selected");
    return out;
}

std::string join_names(const std::vector<Precoder>& ps) {
    std::string out;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (i) out += ',';
        out += precoder_name(ps[i]);
    }
    return out;
}

StopNorm parse_stop_norm(const std::string& name) {
    if (name == "l2") return StopNorm::L2;
    if (name == "linf") return StopNorm::Linf;
    throw CLI::ValidationError("--stop-norm", "expected l2 or linf");
}

struct SolverFlags {
    double lambda0 = 0.0;  // 0: default for the modulation order
    double delta = 5.0;
    int max_outer = 20;
    double feas_tol = 1e-6;
    int inner_max_iter = 500;
    double inner_tol = 1e-3;
    std::string stop_norm = "l2";

    void attach(CLI::App* app) {
        app->add_option("--lambda0", lambda0, "initial penalty (0 = 0.001*M/8)");
        app->add_option("--delta", delta, "penalty growth factor (> 1)");
        app->add_option("--max-outer", max_outer, "homotopy iteration cap");
        app->add_option("--feas-tol", feas_tol, "one-bit feasibility tolerance");
        app->add_option("--inner-max-iter", inner_max_iter, "inner iteration cap");
        app->add_option("--inner-tol", inner_tol, "inner successive-iterate tolerance");
        app->add_option("--stop-norm", stop_norm, "inner stopping norm: l2 or linf");
    }

    SolverSettings settings() const {
        SolverSettings s;
        s.homotopy.lambda0 = lambda0;
        s.homotopy.delta = delta;
        s.homotopy.max_outer = max_outer;
        s.homotopy.feas_tol = feas_tol;
        s.inner_max_iter = inner_max_iter;
        s.inner_tol = inner_tol;
        s.stop_norm = parse_stop_norm(stop_norm);
        return s;
    }
};

void append_config_echo(std::vector<std::pair<std::string, std::string>>& kv,
                        const ExperimentConfig& config) {
    kv.emplace_back("k", std::to_string(config.users));
    kv.emplace_back("nt", std::to_string(config.antennas));
    kv.emplace_back("m", std::to_string(config.order));
    std::string grid;
    for (std::size_t i = 0; i < config.snr_db.size(); ++i) {
        if (i) grid += ',';
        grid += format_double(config.snr_db[i]);
    }
    kv.emplace_back("snr_db", grid);
    kv.emplace_back("block_len", std::to_string(config.block_len));
    kv.emplace_back("trials", std::to_string(config.trials));
    kv.emplace_back("seed", std::to_string(config.seed));
    kv.emplace_back("precoders", join_names(config.precoders));
    kv.emplace_back("lambda0",
                    format_double(config.solver.homotopy.lambda0 > 0
                                      ? config.solver.homotopy.lambda0
                                      : default_homotopy_params(config.order).lambda0));
    kv.emplace_back("delta", format_double(config.solver.homotopy.delta));
    kv.emplace_back("max_outer", std::to_string(config.solver.homotopy.max_outer));
    kv.emplace_back("feas_tol", format_double(config.solver.homotopy.feas_tol));
    kv.emplace_back("inner_max_iter", std::to_string(config.solver.inner_max_iter));
    kv.emplace_back("inner_tol", format_double(config.solver.inner_tol));
    kv.emplace_back("stop_norm", config.solver.stop_norm == StopNorm::L2 ? "l2" : "linf");
    kv.emplace_back("gray_mapping", "binary_reflected");
    kv.emplace_back("csv_schema_version", kCsvSchemaVersion);
}

int cmd_solve_one(std::size_t users, std::size_t antennas, int order, std::uint64_t seed,
                  const std::string& variant_name, bool with_oracle, const SolverFlags& flags) {
    const RngStream root(seed);
    RngStream channel_rng = root.split(0);
    RngStream symbol_rng = root.split(1);
    const ChannelMatrix h = rayleigh_channel(users, antennas, channel_rng);
    SymbolVector s;
    s.indices.resize(users);
    for (std::size_t k = 0; k < users; ++k)
        s.indices[k] = static_cast<int>(symbol_rng.next_below(static_cast<std::uint64_t>(order)));

    const CiModel model = build_model(h, s, order);
    const SolverSettings settings = flags.settings();

    HomotopyParams hp = settings.homotopy;
    if (hp.lambda0 <= 0.0) hp.lambda0 = default_homotopy_params(order).lambda0;
    AoParams ap = default_ao_params(model);
    ap.max_iter = settings.inner_max_iter;
    ap.tol = settings.inner_tol;
    ap.stop_norm = settings.stop_norm;

    const Variant variant = variant_name == "anl1p" ? Variant::Accelerated : Variant::Standard;
    const SolveReport report = nl1p(model, hp, ap, variant);

    std::printf("solver          : %s\n", variant_name.c_str());
    std::printf("system          : K=%zu Nt=%zu M=%d (n=%zu, m=%zu)\n", users, antennas, order,
                model.n(), model.m());
    std::printf("seed            : %llu\n", static_cast<unsigned long long>(seed));
    std::printf("objective       : %.9g\n", report.objective);
    std::printf("ci margin       : %.9g\n", -report.objective);
    std::printf("feasible exit   : %s\n", report.feasible_at_exit ? "yes" : "no (outer cap hit)");
    std::printf("outer iters     : %zu (final lambda %.9g)\n", report.outer_trace.size(),
                report.outer_trace.empty() ? 0.0 : report.outer_trace.back().lambda);
    std::printf("inner iters     : %d total\n", report.total_inner_iterations());
    std::printf("elapsed         : %.6f s\n", report.elapsed_seconds);
    std::printf("one-bit check   : %s (%zu entries)\n", is_one_bit(report.x) ? "ok" : "VIOLATED",
                report.x.v.size());

    if (with_oracle) {
        const BruteForceResult oracle = brute_force(model);
        const double gap =
            oracle.value != 0.0 ? (report.objective - oracle.value) / std::abs(oracle.value) : 0.0;
        std::printf("oracle value    : %.9g\n", oracle.value);
        std::printf("solver vs oracle: gap %.4g%%%s\n", 100.0 * gap,
                    report.objective <= oracle.value + 1e-9 ? " (optimal)" : "");
        if (report.objective < oracle.value - 1e-9) {
            std::printf("error: solver value beats the exhaustive bound; inconsistent model\n");
            return 1;
        }
    }
    return is_one_bit(report.x) ? 0 : 1;
}

int cmd_ber_sweep(ExperimentConfig config, const std::string& out_path,
                  const std::string& plot_path) {
    const std::string started = now_iso();
    const SweepResult result = run_sweep(config);
    write_ber_csv(out_path, result.records);
    if (!plot_path.empty()) write_ber_svg(plot_path, result.records);

    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("artifact_version", kArtifactVersion);
    kv.emplace_back("command", "ber-sweep");
    kv.emplace_back("started_at", started);
    kv.emplace_back("finished_at", now_iso());
    append_config_echo(kv, config);
    kv.emplace_back("records", std::to_string(result.records.size()));
    kv.emplace_back("output_csv", out_path);
    if (!plot_path.empty()) kv.emplace_back("output_plot", plot_path);
    for (const auto& [name, count] : result.solve_failures)
        kv.emplace_back("solve_failures." + name, std::to_string(count));
    write_manifest(out_path + ".manifest", kv);

    for (const BerRecord& r : result.records)
        std::printf("%-14s snr=%5.1f  ber=%.6g  (%llu/%llu bits)  solve=%.4gs\n",
                    r.precoder.c_str(), r.snr_db, r.ber,
                    static_cast<unsigned long long>(r.bit_errors),
                    static_cast<unsigned long long>(r.bits_sent), r.mean_solve_seconds);
    for (const auto& [name, count] : result.solve_failures)
        std::fprintf(stderr, "warning: %llu %s solve(s) failed and were excluded\n",
                     static_cast<unsigned long long>(count), name.c_str());
    std::printf("wrote %s (+ manifest)\n", out_path.c_str());
    return 0;
}

int cmd_user_sweep(ExperimentConfig base, const std::vector<std::size_t>& k_grid,
                   const std::string& out_path) {
    const std::string started = now_iso();
    std::vector<std::pair<std::size_t, BerRecord>> rows;
    std::map<std::string, std::uint64_t> failures;
    for (std::size_t users : k_grid) {
        ExperimentConfig config = base;
        config.users = users;
        const SweepResult result = run_sweep(config);
        for (const BerRecord& r : result.records) rows.emplace_back(users, r);
        for (const auto& [name, count] : result.solve_failures) failures[name] += count;
    }
    write_user_csv(out_path, rows);

    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("artifact_version", kArtifactVersion);
    kv.emplace_back("command", "user-sweep");
    kv.emplace_back("started_at", started);
    kv.emplace_back("finished_at", now_iso());
    std::string grid;
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        if (i) grid += ',';
        grid += std::to_string(k_grid[i]);
    }
    kv.emplace_back("k_grid", grid);
    append_config_echo(kv, base);
    kv.emplace_back("records", std::to_string(rows.size()));
    kv.emplace_back("output_csv", out_path);
    for (const auto& [name, count] : failures)
        kv.emplace_back("solve_failures." + name, std::to_string(count));
    write_manifest(out_path + ".manifest", kv);

    for (const auto& [users, r] : rows)
        std::printf("%-14s k=%-3zu ber=%.6g  solve=%.4gs\n", r.precoder.c_str(), users, r.ber,
                    r.mean_solve_seconds);
    std::printf("wrote %s (+ manifest)\n", out_path.c_str());
    return 0;
}

int cmd_time_bench(std::size_t users, std::size_t antennas, const std::vector<std::size_t>& k_grid,
                   const std::vector<std::size_t>& nt_grid, int order,
                   const std::vector<Precoder>& precoders, int reps, std::uint64_t seed,
                   const SolverFlags& flags, const std::string& out_path) {
    const std::string started = now_iso();
    const SolverSettings settings = flags.settings();

    std::vector<BenchRecord> records;
    if (!nt_grid.empty()) {
        for (std::size_t nt : nt_grid) {
            auto batch = time_bench(users, nt, order, precoders, reps, seed, settings);
            records.insert(records.end(), batch.begin(), batch.end());
        }
    } else {
        for (std::size_t k : k_grid) {
            auto batch = time_bench(k, antennas, order, precoders, reps, seed, settings);
            records.insert(records.end(), batch.begin(), batch.end());
        }
    }
    write_time_csv(out_path, records);

    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("artifact_version", kArtifactVersion);
    kv.emplace_back("command", "time-bench");
    kv.emplace_back("started_at", started);
    kv.emplace_back("finished_at", now_iso());
    kv.emplace_back("m", std::to_string(order));
    kv.emplace_back("reps", std::to_string(reps));
    kv.emplace_back("seed", std::to_string(seed));
    kv.emplace_back("precoders", join_names(precoders));
    kv.emplace_back("records", std::to_string(records.size()));
    kv.emplace_back("output_csv", out_path);
    write_manifest(out_path + ".manifest", kv);

    for (const BenchRecord& r : records)
        std::printf("%-14s k=%-3zu nt=%-4zu mean=%.5gs iters=%.1f\n", r.precoder.c_str(), r.users,
                    r.antennas, r.mean_solve_seconds, r.iters_mean);
    std::printf("wrote %s (+ manifest)\n", out_path.c_str());
    return 0;
}

}  // namespace

std::vector<SuiteResult> validation_suites(std::uint64_t seed) {
    std::vector<SuiteResult> suites;
    RngStream root(seed);

    {  // simplex projection against KKT support enumeration
        SuiteResult suite;
        suite.name = "simplex-projection-vs-kkt-oracle";
        RngStream rng = root.split(1);
        for (int trial = 0; trial < 2000; ++trial) {
            const std::size_t m = 1 + rng.next_below(6);
            std::vector<double> v(m);
            for (double& e : v) e = 4.0 * rng.next_uniform() - 2.0;
            const SimplexVector fast = project_simplex(v);
            const std::vector<double> slow = oracles::kkt_project_simplex(v);
            double diff = 0.0;
            for (std::size_t i = 0; i < m; ++i) diff = std::max(diff, std::abs(fast.v[i] - slow[i]));
            ++suite.checked;
            if (diff > 1e-9 && suite.failed++ == 0)
                suite.detail = "trial " + std::to_string(trial) + " diff " + format_double(diff) +
                               " (seed " + std::to_string(seed) + ")";
        }
        suites.push_back(std::move(suite));
    }

    {  // closed-form x-update against the 1-D grid minimizer
        SuiteResult suite;
        suite.name = "x-update-vs-grid-oracle";
        RngStream rng = root.split(2);
        for (int trial = 0; trial < 2000; ++trial) {
            const double a = 6.0 * rng.next_uniform() - 3.0;
            const double lambda = 2.0 * rng.next_uniform();
            const double tau = 0.1 + 4.9 * rng.next_uniform();
            const double closed =
                (a >= 0.0 ? 1.0 : -1.0) * std::min(std::abs(a) + lambda / tau, 1.0);
            const double grid = oracles::grid_min_scalar(a, -2.0 * lambda / tau, 1e-4);
            ++suite.checked;
            if (std::abs(closed - grid) > 2e-4 && suite.failed++ == 0)
                suite.detail = "trial " + std::to_string(trial) + " closed " +
                               format_double(closed) + " grid " + format_double(grid) + " (seed " +
                               std::to_string(seed) + ")";
        }
        suites.push_back(std::move(suite));
    }

    {  // penalty equivalence: vertex optima shift by exactly lambda*n and no
       // box face point beats the best vertex
        SuiteResult suite;
        suite.name = "penalty-equivalence";
        RngStream rng = root.split(3);
        for (int trial = 0; trial < 20; ++trial) {
            const std::size_t users = 1 + rng.next_below(3);
            const std::size_t antennas = users + rng.next_below(8 - users + 1);
            RngStream ch = rng.split(trial);
            ChannelMatrix h = rayleigh_channel(users, antennas, ch);
            SymbolVector s;
            s.indices.resize(users);
            for (std::size_t k = 0; k < users; ++k)
                s.indices[k] = static_cast<int>(rng.next_below(8));
            const CiModel model = build_model(h, s, 8);
            const std::size_t n = model.n();

            double max_inf = 0.0;
            for (std::size_t r = 0; r < model.m(); ++r)
                for (std::size_t c = 0; c < n; ++c)
                    max_inf = std::max(max_inf, std::abs(model.a(r, c)));
            const double lambda = 1.01 * max_inf;

            const BruteForceResult opt = brute_force(model);
            double best_vertex_penalized = std::numeric_limits<double>::infinity();
            {  // enumerate vertices of the box, objective shifted by -lambda*n
                std::vector<double> x(n, -1.0);
                for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
                    for (std::size_t i = 0; i < n; ++i)
                        x[i] = (mask & (1ULL << i)) ? 1.0 : -1.0;
                    best_vertex_penalized = std::min(
                        best_vertex_penalized,
                        ci_objective(model, x) - lambda * static_cast<double>(n));
                }
            }
            const double expected = opt.value - lambda * static_cast<double>(n);
            bool ok = std::abs(best_vertex_penalized - expected) <=
                      1e-9 * std::max(1.0, std::abs(expected));

            // fine grid over a random 2-D face
            std::vector<double> x(opt.x.v);
            const std::size_t i1 = rng.next_below(n);
            std::size_t i2 = rng.next_below(n);
            if (i2 == i1) i2 = (i1 + 1) % n;
            for (int gi = 0; gi <= 40 && ok; ++gi)
                for (int gj = 0; gj <= 40; ++gj) {
                    x[i1] = -1.0 + gi * 0.05;
                    x[i2] = -1.0 + gj * 0.05;
                    double l1 = 0.0;
                    for (double e : x) l1 += std::abs(e);
                    const double value = ci_objective(model, x) - lambda * l1;
                    if (value < best_vertex_penalized - 1e-9) {
                        ok = false;
                        break;
                    }
                }
            ++suite.checked;
            if (!ok && suite.failed++ == 0)
                suite.detail = "trial " + std::to_string(trial) + " (seed " +
                               std::to_string(seed) + ")";
        }
        suites.push_back(std::move(suite));
    }

    {  // stationary structure and magnitude monotonicity at large lambda
        SuiteResult suite;
        suite.name = "stationary-structure-and-monotonicity";
        RngStream rng = root.split(4);
        for (int trial = 0; trial < 50; ++trial) {
            const std::size_t users = 1 + rng.next_below(3);
            const std::size_t antennas = 4 + rng.next_below(5);
            RngStream ch = rng.split(trial);
            ChannelMatrix h = rayleigh_channel(users, antennas, ch);
            SymbolVector s;
            s.indices.resize(users);
            for (std::size_t k = 0; k < users; ++k)
                s.indices[k] = static_cast<int>(rng.next_below(8));
            const CiModel model = build_model(h, s, 8);

            double max_inf = 0.0;
            for (double e : model.a.data) max_inf = std::max(max_inf, std::abs(e));
            const double lambda = 1.05 * max_inf;

            AoParams ap = default_ao_params(model);
            ap.max_iter = 3000;
            ap.tol = 1e-8;

            std::vector<double> prev(model.n(), 0.0);
            bool monotone = true;
            AoObserver observer = [&](int, const std::vector<double>& x,
                                      const std::vector<double>&) {
                for (std::size_t i = 0; i < x.size(); ++i)
                    if (std::abs(x[i]) < std::min(std::abs(prev[i]), 1.0) - 1e-12)
                        monotone = false;
                prev = x;
            };
            const AoResult res = ao_solve(model, lambda, std::vector<double>(model.n(), 0.0),
                                          SimplexVector::uniform(model.m()), ap, observer);
            bool structure = true;
            for (double e : res.x)
                if (std::abs(std::abs(e) - 1.0) > 1e-6) structure = false;  // zero-start: {-1,+1}
            ++suite.checked;
            if ((!monotone || !structure) && suite.failed++ == 0)
                suite.detail = "trial " + std::to_string(trial) + (monotone ? "" : " monotone") +
                               (structure ? "" : " structure") + " (seed " + std::to_string(seed) +
                               ")";
        }
        suites.push_back(std::move(suite));
    }

    {  // partition reduction: oracle value iff perfect partition, Re(x_T)=1
        SuiteResult suite;
        suite.name = "partition-instances";
        RngStream rng = root.split(5);
        for (int trial = 0; trial < 25; ++trial) {
            const std::size_t count = 3 + rng.next_below(8);
            std::vector<long long> a(count);
            long long total = 0;
            for (long long& e : a) {
                e = 1 + static_cast<long long>(rng.next_below(12));
                total += e;
            }
            const PartitionInstance instance = partition_instance(a);
            const BruteForceResult opt = brute_force(instance.model);
            const bool partitionable = oracles::has_perfect_partition(a);
            const bool value_matches =
                std::abs(opt.value - (-static_cast<double>(total))) < 1e-9;
            bool real_part_ones = true;
            for (std::size_t i = 0; i < count; ++i)
                if (opt.x.v[i] != 1.0) real_part_ones = false;
            ++suite.checked;
            if ((value_matches != partitionable || !real_part_ones) && suite.failed++ == 0)
                suite.detail = "trial " + std::to_string(trial) + " (seed " +
                               std::to_string(seed) + ")";
        }
        suites.push_back(std::move(suite));
    }

    return suites;
}

namespace {

int cmd_validate(std::uint64_t seed) {
    const std::vector<SuiteResult> suites = validation_suites(seed);
    int failures = 0;
    for (const SuiteResult& s : suites) {
        std::printf("%-44s %4d checks  %s\n", s.name.c_str(), s.checked,
                    s.failed == 0 ? "PASS" : "FAIL");
        if (s.failed > 0) {
            std::printf("    first failure: %s\n", s.detail.c_str());
            failures += s.failed;
        }
    }
    std::printf("%s\n", failures == 0 ? "all validation suites passed" : "validation FAILED");
    return failures == 0 ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"constructive-interference one-bit precoding toolbox"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "key=value file with a [ber-sweep]/[user-sweep]/... section per subcommand");

    // solve-one
    std::size_t so_k = 0, so_nt = 0;
    int so_m = 8;
    std::uint64_t so_seed = 1;
    std::string so_variant = "nl1p";
    bool so_oracle = false;
    SolverFlags so_flags;
    CLI::App* solve_one = app.add_subcommand("solve-one", "solve a single random instance");
    solve_one->add_option("--k", so_k, "number of users")->required();
    solve_one->add_option("--nt", so_nt, "number of BS antennas")->required();
    solve_one->add_option("--m", so_m, "PSK order (power of two >= 4)");
    solve_one->add_option("--seed", so_seed, "RNG seed");
    solve_one->add_option("--variant", so_variant, "nl1p or anl1p")
        ->check(CLI::IsMember({"nl1p", "anl1p"}));
    solve_one->add_flag("--oracle", so_oracle, "also run the exhaustive oracle (n <= 26)");
    so_flags.attach(solve_one);

    // ber-sweep
    std::size_t bs_k = 16, bs_nt = 128;
    int bs_m = 8, bs_trials = 1000, bs_block = 10, bs_workers = 0;
    std::uint64_t bs_seed = 1;
    std::vector<double> bs_snr{0, 5, 10, 15, 20, 25};
    std::string bs_precoders = "nl1p,anl1p,zf_quantized,zf_unquantized";
    std::string bs_out = "ber_sweep.csv", bs_plot;
    SolverFlags bs_flags;
    CLI::App* ber_sweep = app.add_subcommand("ber-sweep", "Monte Carlo BER versus SNR");
    ber_sweep->add_option("--k", bs_k, "number of users");
    ber_sweep->add_option("--nt", bs_nt, "number of BS antennas");
    ber_sweep->add_option("--m", bs_m, "PSK order");
    ber_sweep->add_option("--snr", bs_snr, "SNR grid in dB")->delimiter(',');
    ber_sweep->add_option("--trials", bs_trials, "channel realizations");
    ber_sweep->add_option("--block-len", bs_block, "symbol slots per realization");
    ber_sweep->add_option("--seed", bs_seed, "RNG seed");
    ber_sweep->add_option("--precoders", bs_precoders, "comma-separated precoder list");
    ber_sweep->add_option("--out", bs_out, "output CSV path");
    ber_sweep->add_option("--plot", bs_plot, "optional SVG plot path");
    ber_sweep->add_option("--workers", bs_workers, "worker threads (0 = ONEBIT_WORKERS/auto)");
    bs_flags.attach(ber_sweep);

    // user-sweep
    std::vector<std::size_t> us_kgrid;
    std::size_t us_nt = 128;
    int us_m = 8, us_trials = 1000, us_block = 10, us_workers = 0;
    double us_snr = 20.0;
    std::uint64_t us_seed = 1;
    std::string us_precoders = "nl1p,anl1p,zf_quantized";
    std::string us_out = "user_sweep.csv";
    SolverFlags us_flags;
    CLI::App* user_sweep = app.add_subcommand("user-sweep", "BER versus number of users");
    user_sweep->add_option("--k-grid", us_kgrid, "user counts")->delimiter(',')->required();
    user_sweep->add_option("--nt", us_nt, "number of BS antennas");
    user_sweep->add_option("--m", us_m, "PSK order");
    user_sweep->add_option("--snr", us_snr, "SNR in dB");
    user_sweep->add_option("--trials", us_trials, "channel realizations");
    user_sweep->add_option("--block-len", us_block, "symbol slots per realization");
    user_sweep->add_option("--seed", us_seed, "RNG seed");
    user_sweep->add_option("--precoders", us_precoders, "comma-separated precoder list");
    user_sweep->add_option("--out", us_out, "output CSV path");
    user_sweep->add_option("--workers", us_workers, "worker threads (0 = ONEBIT_WORKERS/auto)");
    us_flags.attach(user_sweep);

    // time-bench
    std::vector<std::size_t> tb_kgrid, tb_ntgrid;
    std::size_t tb_k = 16, tb_nt = 128;
    int tb_m = 8, tb_reps = 10;
    std::uint64_t tb_seed = 1;
    std::string tb_precoders = "nl1p,anl1p";
    std::string tb_out = "time_bench.csv";
    SolverFlags tb_flags;
    CLI::App* time_bench_cmd = app.add_subcommand("time-bench", "solve-time scaling benchmark");
    time_bench_cmd->add_option("--k-grid", tb_kgrid, "user-count grid")->delimiter(',');
    time_bench_cmd->add_option("--nt-grid", tb_ntgrid, "antenna-count grid")->delimiter(',');
    time_bench_cmd->add_option("--k", tb_k, "fixed user count (with --nt-grid)");
    time_bench_cmd->add_option("--nt", tb_nt, "fixed antenna count (with --k-grid)");
    time_bench_cmd->add_option("--m", tb_m, "PSK order");
    time_bench_cmd->add_option("--reps", tb_reps, "instances per grid point");
    time_bench_cmd->add_option("--seed", tb_seed, "RNG seed");
    time_bench_cmd->add_option("--precoders", tb_precoders, "comma-separated precoder list");
    time_bench_cmd->add_option("--out", tb_out, "output CSV path");
    tb_flags.attach(time_bench_cmd);

    // validate
    std::uint64_t va_seed = 20260801;
    CLI::App* validate_cmd =
        app.add_subcommand("validate", "run the built-in oracle and property suites");
    validate_cmd->add_option("--seed", va_seed, "RNG seed for the suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage problems exit 2, --help exits 0
    }

    try {
        if (solve_one->parsed())
            return cmd_solve_one(so_k, so_nt, so_m, so_seed, so_variant, so_oracle, so_flags);
        if (ber_sweep->parsed()) {
            ExperimentConfig config;
            config.users = bs_k;
            config.antennas = bs_nt;
            config.order = bs_m;
            config.snr_db = bs_snr;
            config.block_len = bs_block;
            config.trials = bs_trials;
            config.seed = bs_seed;
            config.precoders = parse_precoders(bs_precoders);
            config.solver = bs_flags.settings();
            config.workers = bs_workers;
            return cmd_ber_sweep(std::move(config), bs_out, bs_plot);
        }
        if (user_sweep->parsed()) {
            if (us_kgrid.empty()) throw std::invalid_argument("user-sweep: empty K grid");
            ExperimentConfig config;
            config.antennas = us_nt;
            config.order = us_m;
            config.snr_db = {us_snr};
            config.block_len = us_block;
            config.trials = us_trials;
            config.seed = us_seed;
            config.precoders = parse_precoders(us_precoders);
            config.solver = us_flags.settings();
            config.workers = us_workers;
            return cmd_user_sweep(std::move(config), us_kgrid, us_out);
        }
        if (time_bench_cmd->parsed()) {
            if (tb_kgrid.empty() == tb_ntgrid.empty())
                throw std::invalid_argument("time-bench: provide exactly one of --k-grid/--nt-grid");
            return cmd_time_bench(tb_k, tb_nt, tb_kgrid, tb_ntgrid, tb_m,
                                  parse_precoders(tb_precoders), tb_reps, tb_seed, tb_flags,
                                  tb_out);
        }
        if (validate_cmd->parsed()) return cmd_validate(va_seed);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}

}  // namespace onebit::cli
