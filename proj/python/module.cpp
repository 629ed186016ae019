#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "onebit/baselines.hpp"
#include "onebit/model.hpp"
#include "onebit/numerics.hpp"
#include "onebit/sim.hpp"
#include "onebit/solver.hpp"

namespace py = pybind11;
using namespace onebit;

namespace {

ChannelMatrix channel_from_rows(const std::vector<std::vector<cplx>>& rows) {
    if (rows.empty() || rows[0].empty())
        throw std::invalid_argument("channel matrix must be nonempty");
    ChannelMatrix h(rows.size(), rows[0].size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (rows[k].size() != h.antennas)
            throw std::invalid_argument("channel rows must have equal length");
        for (std::size_t i = 0; i < h.antennas; ++i) h.at(k, i) = rows[k][i];
    }
    return h;
}

std::vector<std::vector<cplx>> channel_to_rows(const ChannelMatrix& h) {
    std::vector<std::vector<cplx>> rows(h.users, std::vector<cplx>(h.antennas));
    for (std::size_t k = 0; k < h.users; ++k)
        for (std::size_t i = 0; i < h.antennas; ++i) rows[k][i] = h.at(k, i);
    return rows;
}

RealMatrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty() || rows[0].empty()) throw std::invalid_argument("matrix must be nonempty");
    RealMatrix a(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != a.cols)
            throw std::invalid_argument("matrix rows must have equal length");
        for (std::size_t c = 0; c < a.cols; ++c) a(r, c) = rows[r][c];
    }
    return a;
}

StopNorm stop_norm_from_name(const std::string& name) {
    if (name == "l2") return StopNorm::L2;
    if (name == "linf") return StopNorm::Linf;
    throw std::invalid_argument("stop_norm must be 'l2' or 'linf'");
}

SolveReport solve_impl(const CiModel& model, const std::string& variant, double lambda0,
                       double delta, int max_outer, double feas_tol, int inner_max_iter,
                       double inner_tol, const std::string& stop_norm,
                       const std::vector<double>& x0) {
    HomotopyParams hp = default_homotopy_params(model.order);
    if (lambda0 > 0.0) hp.lambda0 = lambda0;
    hp.delta = delta;
    hp.max_outer = max_outer;
    hp.feas_tol = feas_tol;
    AoParams ap = default_ao_params(model);
    ap.max_iter = inner_max_iter;
    ap.tol = inner_tol;
    ap.stop_norm = stop_norm_from_name(stop_norm);
    Variant v;
    if (variant == "nl1p")
        v = Variant::Standard;
    else if (variant == "anl1p")
        v = Variant::Accelerated;
    else
        throw std::invalid_argument("variant must be 'nl1p' or 'anl1p'");
    return nl1p(model, hp, ap, v, x0);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "constructive-interference one-bit precoding: models, solvers, baselines and "
              "Monte Carlo harness";

    py::class_<CiModel>(m, "CiModel")
        .def_readonly("users", &CiModel::users)
        .def_readonly("antennas", &CiModel::antennas)
        .def_readonly("order", &CiModel::order)
        .def_readonly("scale", &CiModel::scale)
        .def_property_readonly("m", &CiModel::m)
        .def_property_readonly("n", &CiModel::n)
        .def("matrix",
             [](const CiModel& model) {
                 std::vector<std::vector<double>> rows(model.m(),
                                                       std::vector<double>(model.n()));
                 for (std::size_t r = 0; r < model.m(); ++r)
                     for (std::size_t c = 0; c < model.n(); ++c) rows[r][c] = model.a(r, c);
                 return rows;
             })
        .def("__repr__", [](const CiModel& model) {
            return "CiModel(K=" + std::to_string(model.users) +
                   ", Nt=" + std::to_string(model.antennas) +
                   ", M=" + std::to_string(model.order) + ")";
        });

    py::class_<OuterRecord>(m, "OuterRecord")
        .def_readonly("lam", &OuterRecord::lambda)
        .def_readonly("inner_iterations", &OuterRecord::inner_iterations)
        .def_readonly("quantized_objective", &OuterRecord::quantized_objective);

    py::class_<SolveReport>(m, "SolveReport")
        .def_property_readonly("x", [](const SolveReport& r) { return r.x.v; })
        .def_readonly("objective", &SolveReport::objective)
        .def_readonly("outer_trace", &SolveReport::outer_trace)
        .def_readonly("elapsed_seconds", &SolveReport::elapsed_seconds)
        .def_readonly("feasible_at_exit", &SolveReport::feasible_at_exit)
        .def_property_readonly("ci_margin", [](const SolveReport& r) { return -r.objective; })
        .def("__repr__", [](const SolveReport& r) {
            return "SolveReport(objective=" + std::to_string(r.objective) +
                   ", feasible_at_exit=" + (r.feasible_at_exit ? "True" : "False") + ")";
        });

    py::class_<BerRecord>(m, "BerRecord")
        .def_readonly("precoder", &BerRecord::precoder)
        .def_readonly("snr_db", &BerRecord::snr_db)
        .def_readonly("bits_sent", &BerRecord::bits_sent)
        .def_readonly("bit_errors", &BerRecord::bit_errors)
        .def_readonly("ber", &BerRecord::ber)
        .def_readonly("mean_solve_seconds", &BerRecord::mean_solve_seconds)
        .def("__repr__", [](const BerRecord& r) {
            return "BerRecord(" + r.precoder + ", snr_db=" + std::to_string(r.snr_db) +
                   ", ber=" + std::to_string(r.ber) + ")";
        });

    m.def("psk_point", &psk_point, py::arg("index"), py::arg("order"),
          "exp(j 2 pi index / order)");
    m.def("boundary_vectors", &boundary_vectors, py::arg("symbol"), py::arg("order"),
          "unit vectors along the decision boundaries of a PSK symbol");

    m.def(
        "build_model",
        [](const std::vector<std::vector<cplx>>& h, const std::vector<int>& s, int order) {
            return build_model(channel_from_rows(h), SymbolVector{s}, order);
        },
        py::arg("channel"), py::arg("symbols"), py::arg("order"),
        "assemble the symbol-scaling matrix A from channel rows and symbol indices");

    m.def(
        "ci_objective",
        [](const CiModel& model, const std::vector<double>& x) { return ci_objective(model, x); },
        py::arg("model"), py::arg("x"), "max_l a_l^T x; negate to get the CI margin");

    m.def(
        "quantize_onebit",
        [](const std::vector<double>& x) { return quantize_onebit(x).v; }, py::arg("x"),
        "entrywise sign with sgn(0) = +1");

    m.def(
        "restore_transmit_signal",
        [](const std::vector<double>& x, const CiModel& model) {
            return restore_transmit_signal(BitVector{x}, model);
        },
        py::arg("x"), py::arg("model"),
        "complex unit-power transmit signal from a one-bit vector");

    m.def(
        "project_simplex",
        [](const std::vector<double>& v) { return project_simplex(v).v; }, py::arg("v"),
        "Euclidean projection onto the probability simplex");

    m.def(
        "spectral_norm",
        [](const std::vector<std::vector<double>>& rows) {
            return spectral_norm(matrix_from_rows(rows));
        },
        py::arg("matrix"), "largest singular value by power iteration");

    m.def(
        "mean_abs",
        [](const std::vector<std::vector<double>>& rows) { return mean_abs(matrix_from_rows(rows)); },
        py::arg("matrix"));

    m.def("solve", &solve_impl, py::arg("model"), py::arg("variant") = "nl1p",
          py::arg("lambda0") = 0.0, py::arg("delta") = 5.0, py::arg("max_outer") = 20,
          py::arg("feas_tol") = 1e-6, py::arg("inner_max_iter") = 500,
          py::arg("inner_tol") = 1e-3, py::arg("stop_norm") = "l2",
          py::arg("x0") = std::vector<double>{},
          "negative-l1 penalty homotopy solve; variant 'nl1p' or 'anl1p'");

    m.def(
        "brute_force",
        [](const CiModel& model) {
            const BruteForceResult r = brute_force(model);
            return py::make_tuple(r.x.v, r.value);
        },
        py::arg("model"), "exhaustive minimizer over sign vectors (n <= 26)");

    m.def(
        "partition_instance",
        [](const std::vector<long long>& a) { return partition_instance(a).model; }, py::arg("a"),
        "single-user model whose optimum is -sum(a) iff a perfect partition exists");

    m.def(
        "zf_quantized",
        [](const std::vector<std::vector<cplx>>& h, const std::vector<int>& s, int order) {
            return zf_quantized(channel_from_rows(h), SymbolVector{s}, order).v;
        },
        py::arg("channel"), py::arg("symbols"), py::arg("order"));

    m.def(
        "zf_unquantized",
        [](const std::vector<std::vector<cplx>>& h, const std::vector<int>& s, int order) {
            return zf_unquantized(channel_from_rows(h), SymbolVector{s}, order);
        },
        py::arg("channel"), py::arg("symbols"), py::arg("order"));

    m.def(
        "rayleigh_channel",
        [](std::size_t users, std::size_t antennas, std::uint64_t seed) {
            RngStream rng(seed);
            return channel_to_rows(rayleigh_channel(users, antennas, rng));
        },
        py::arg("users"), py::arg("antennas"), py::arg("seed"),
        "i.i.d. unit-variance complex Gaussian channel, reproducible from the seed");

    m.def("gray_bits", &gray_bits, py::arg("index"), py::arg("order"));

    m.def(
        "transmit_decode",
        [](const std::vector<cplx>& x_t, const std::vector<std::vector<cplx>>& h, int order,
           double sigma2, std::uint64_t seed) {
            RngStream rng(seed);
            return transmit_decode(x_t, channel_from_rows(h), order, sigma2, rng).indices;
        },
        py::arg("x_t"), py::arg("channel"), py::arg("order"), py::arg("sigma2"), py::arg("seed"),
        "AWGN transmission followed by nearest-neighbor decoding");

    m.def(
        "run_sweep",
        [](std::size_t users, std::size_t antennas, int order, const std::vector<double>& snr_db,
           int block_len, int trials, std::uint64_t seed,
           const std::vector<std::string>& precoders, int workers) {
            ExperimentConfig config;
            config.users = users;
            config.antennas = antennas;
            config.order = order;
            config.snr_db = snr_db;
            config.block_len = block_len;
            config.trials = trials;
            config.seed = seed;
            for (const std::string& name : precoders)
                config.precoders.push_back(precoder_from_name(name));
            config.workers = workers;
            return run_sweep(config).records;
        },
        py::arg("users"), py::arg("antennas"), py::arg("order"), py::arg("snr_db"),
        py::arg("block_len") = 10, py::arg("trials") = 1000, py::arg("seed") = 0,
        py::arg("precoders") = std::vector<std::string>{"nl1p", "zf_quantized"},
        py::arg("workers") = 0, "Monte Carlo BER sweep; deterministic given the seed");

#ifdef VERSION_INFO
#define ONEBIT_STR2(x) #x
#define ONEBIT_STR(x) ONEBIT_STR2(x)
    m.attr("__version__") = ONEBIT_STR(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
