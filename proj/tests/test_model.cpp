#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "onebit/baselines.hpp"
#include "onebit/model.hpp"

using namespace onebit;
using test_helpers::decompose_on_boundaries;
using test_helpers::make_instance;
using test_helpers::row_times_stacked;
using std::numbers::pi;

namespace {
double angle_diff(double a, double b) {
    double d = a - b;
    while (d > pi) d -= 2 * pi;
    while (d < -pi) d += 2 * pi;
    return d;
}
}  // namespace

TEST_CASE("psk_point basic values") {
    CHECK(psk_point(0, 8) == cplx(1.0, 0.0));
    CHECK(std::abs(psk_point(2, 8) - cplx(0.0, 1.0)) < 1e-15);
    const double r = std::sqrt(2.0) / 2.0;
    CHECK(std::abs(psk_point(1, 8) - cplx(r, r)) < 1e-15);
    CHECK_THROWS_AS(psk_point(8, 8), std::invalid_argument);
    CHECK_THROWS_AS(psk_point(-1, 8), std::invalid_argument);
    CHECK_THROWS_AS(psk_point(0, 2), std::invalid_argument);  // BPSK excluded
    CHECK_THROWS_AS(psk_point(0, 6), std::invalid_argument);  // not a power of two
}

TEST_CASE("psk constellation points are unit modulus") {
    for (int order : {4, 8, 16, 32}) {
        PskConstellation c(order);
        for (int m = 0; m < order; ++m) CHECK(std::abs(std::abs(c.point(m)) - 1.0) < 1e-12);
    }
    CHECK(PskConstellation(8).bits_per_symbol() == 3);
    CHECK(PskConstellation(16).bits_per_symbol() == 4);
}

TEST_CASE("boundary_vectors examples") {
    {
        const auto [sa, sb] = boundary_vectors(psk_point(1, 8), 8);
        CHECK(std::abs(sa - std::polar(1.0, pi / 8)) < 1e-12);
        CHECK(std::abs(sb - std::polar(1.0, 3 * pi / 8)) < 1e-12);
    }
    {
        const auto [sa, sb] = boundary_vectors(cplx(1.0, 0.0), 4);
        CHECK(std::abs(sa - std::polar(1.0, -pi / 4)) < 1e-12);
        CHECK(std::abs(sb - std::polar(1.0, pi / 4)) < 1e-12);
    }
    {
        const auto [sa, sb] = boundary_vectors(cplx(0.0, 1.0), 8);
        CHECK(std::abs(sa - std::polar(1.0, 3 * pi / 8)) < 1e-12);
        CHECK(std::abs(sb - std::polar(1.0, 5 * pi / 8)) < 1e-12);
    }
    CHECK_THROWS_AS(boundary_vectors(cplx(1.1, 0.0), 8), std::invalid_argument);
}

TEST_CASE("boundary_vectors angle offsets across constellations") {
    for (int order : {4, 8, 16}) {
        for (int m = 0; m < order; ++m) {
            const cplx s = psk_point(m, order);
            const auto [sa, sb] = boundary_vectors(s, order);
            CHECK(std::abs(std::abs(sa) - 1.0) < 1e-12);
            CHECK(std::abs(std::abs(sb) - 1.0) < 1e-12);
            CHECK(std::abs(angle_diff(std::arg(s), std::arg(sa)) - pi / order) < 1e-12);
            CHECK(std::abs(angle_diff(std::arg(sb), std::arg(sa)) - 2 * pi / order) < 1e-12);
        }
    }
}

TEST_CASE("build_vk reproduces the two-boundary decomposition") {
    const cplx s = psk_point(1, 8);
    const auto [sa, sb] = boundary_vectors(s, 8);
    const RealMatrix v = build_vk({cplx(1.0, 0.0)}, s, 8);
    // x = [1, 1] represents x_T = 1 + j
    const std::vector<double> x{1.0, 1.0};
    const double alpha_a = v(0, 0) * x[0] + v(0, 1) * x[1];
    const double alpha_b = v(1, 0) * x[0] + v(1, 1) * x[1];
    const auto [oracle_a, oracle_b] = decompose_on_boundaries(cplx(1.0, 1.0), sa, sb);
    CHECK(alpha_a == doctest::Approx(oracle_a).epsilon(1e-12));
    CHECK(alpha_b == doctest::Approx(oracle_b).epsilon(1e-12));
}

TEST_CASE("build_vk rejects parallel boundary directions") {
    const std::vector<cplx> h{cplx(1.0, 0.0)};
    CHECK_THROWS_AS(build_vk_from_boundaries(h, cplx(1.0, 0.0), cplx(1.0, 0.0)),
                    std::runtime_error);
    CHECK_THROWS_AS(build_vk_from_boundaries(h, cplx(1.0, 0.0), cplx(-1.0, 0.0)),
                    std::runtime_error);
}

TEST_CASE("build_vk maps boundary directions to unit coefficients") {
    RngStream rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t nt = 1 + rng.next_below(4);
        std::vector<cplx> h(nt);
        for (auto& e : h) e = cplx(rng.next_normal(), rng.next_normal());
        const cplx s = psk_point(static_cast<int>(rng.next_below(8)), 8);
        const auto [sa, sb] = boundary_vectors(s, 8);
        const RealMatrix v = build_vk(h, s, 8);

        double h2 = 0.0;
        for (const auto& e : h) h2 += std::norm(e);
        for (int which = 0; which < 2; ++which) {
            const cplx target = which == 0 ? sa : sb;
            // x_T = conj(h) * target / |h|^2 gives h^T x_T = target
            std::vector<double> x(2 * nt);
            for (std::size_t i = 0; i < nt; ++i) {
                const cplx xi = std::conj(h[i]) * target / h2;
                x[i] = xi.real();
                x[nt + i] = xi.imag();
            }
            double alpha_a = 0.0, alpha_b = 0.0;
            for (std::size_t c = 0; c < 2 * nt; ++c) {
                alpha_a += v(0, c) * x[c];
                alpha_b += v(1, c) * x[c];
            }
            CHECK(alpha_a == doctest::Approx(which == 0 ? 1.0 : 0.0).epsilon(1e-9));
            CHECK(alpha_b == doctest::Approx(which == 0 ? 0.0 : 1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("build_model stacks negated per-user blocks") {
    const auto inst = make_instance(7, 2, 3, 8);
    for (std::size_t k = 0; k < 2; ++k) {
        std::vector<cplx> row(3);
        for (std::size_t i = 0; i < 3; ++i) row[i] = inst.h.at(k, i);
        const RealMatrix v = build_vk(row, psk_point(inst.s.indices[k], 8), 8);
        for (std::size_t c = 0; c < 6; ++c) {
            CHECK(inst.model.a(2 * k, c) == doctest::Approx(-v(0, c)).epsilon(1e-15));
            CHECK(inst.model.a(2 * k + 1, c) == doctest::Approx(-v(1, c)).epsilon(1e-15));
        }
    }
    CHECK(inst.model.m() == 4);
    CHECK(inst.model.n() == 6);
    CHECK(inst.model.scale == doctest::Approx(1.0 / std::sqrt(6.0)));

    ChannelMatrix bad(2, 3);
    SymbolVector s_short;
    s_short.indices = {0};
    CHECK_THROWS_AS(build_model(bad, s_short, 8), std::invalid_argument);
}

TEST_CASE("partition reduction has the documented block structure") {
    const std::vector<long long> a{3, 1, 4};
    const PartitionInstance inst = partition_instance(a);
    // A = -[[a, -a], [a, a]]
    for (std::size_t i = 0; i < 3; ++i) {
        const double ai = static_cast<double>(a[i]);
        CHECK(inst.model.a(0, i) == doctest::Approx(-ai).epsilon(1e-15));
        CHECK(inst.model.a(0, 3 + i) == doctest::Approx(ai).epsilon(1e-15));
        CHECK(inst.model.a(1, i) == doctest::Approx(-ai).epsilon(1e-15));
        CHECK(inst.model.a(1, 3 + i) == doctest::Approx(-ai).epsilon(1e-15));
    }
    CHECK(inst.model.users == 1);
    CHECK(inst.model.antennas == 3);
    CHECK(inst.model.order == 8);
}

TEST_CASE("decomposition consistency on random instances") {
    RngStream rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t users = 1 + rng.next_below(4);
        const std::size_t antennas = users + rng.next_below(6);
        const auto inst = make_instance(100 + trial, users, antennas, 8);

        std::vector<double> x(inst.model.n());
        for (auto& e : x) e = 2.0 * rng.next_uniform() - 1.0;

        std::vector<double> lambda;
        multiply(inst.model.a, x, lambda);

        for (std::size_t k = 0; k < users; ++k) {
            const double alpha_a = -lambda[2 * k];
            const double alpha_b = -lambda[2 * k + 1];
            const auto [sa, sb] = boundary_vectors(psk_point(inst.s.indices[k], 8), 8);
            const cplx reconstructed = alpha_a * sa + alpha_b * sb;
            const cplx direct = row_times_stacked(inst.h, k, x);
            CHECK(std::abs(reconstructed - direct) <= 1e-9 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST_CASE("objective equals negated minimum boundary coefficient") {
    RngStream rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const auto inst = make_instance(200 + trial, 3, 5, 8);
        std::vector<double> x(inst.model.n());
        for (auto& e : x) e = 2.0 * rng.next_uniform() - 1.0;

        double min_alpha = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < 3; ++k) {
            const auto [sa, sb] = boundary_vectors(psk_point(inst.s.indices[k], 8), 8);
            const auto [alpha_a, alpha_b] =
                decompose_on_boundaries(row_times_stacked(inst.h, k, x), sa, sb);
            min_alpha = std::min({min_alpha, alpha_a, alpha_b});
        }
        CHECK(ci_objective(inst.model, x) == doctest::Approx(-min_alpha).epsilon(1e-9));
    }
}

TEST_CASE("ci_objective trivial cases") {
    CiModel zero;
    zero.users = 1;
    zero.antennas = 2;
    zero.order = 8;
    zero.scale = 0.5;
    zero.a = RealMatrix(2, 4);
    CHECK(ci_objective(zero, {1, -1, 1, -1}) == 0.0);

    const auto inst = make_instance(42, 2, 4, 8);
    CHECK(ci_objective(inst.model, std::vector<double>(8, 0.0)) == 0.0);

    // perfect partition: x = [1,1, +1,-1] for a = {1,1}
    const PartitionInstance p = partition_instance({1, 1});
    CHECK(ci_objective(p.model, {1, 1, 1, -1}) == doctest::Approx(-2.0));
}

TEST_CASE("quantize_onebit sign rule and idempotence") {
    const BitVector q = quantize_onebit({0.3, -0.7});
    CHECK(q.v == std::vector<double>{1.0, -1.0});
    const BitVector z = quantize_onebit({0.0, -0.0});
    CHECK(z.v == std::vector<double>{1.0, 1.0});

    RngStream rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> x(8);
        for (auto& e : x) e = 3.0 * rng.next_normal();
        const BitVector once = quantize_onebit(x);
        CHECK(is_one_bit(once));
        const BitVector twice = quantize_onebit(once.v);
        CHECK(once.v == twice.v);
    }
}

TEST_CASE("restore_transmit_signal examples and normalization") {
    {
        const auto out = restore_transmit_signal(BitVector{{1.0, 1.0}}, 1);
        CHECK(std::abs(out[0] - cplx(1.0, 1.0) / std::sqrt(2.0)) < 1e-15);
    }
    {
        const auto out = restore_transmit_signal(BitVector{{1.0, -1.0, 1.0, -1.0}}, 2);
        CHECK(std::abs(out[0] - cplx(0.5, 0.5)) < 1e-15);
        CHECK(std::abs(out[1] - cplx(-0.5, -0.5)) < 1e-15);
    }
    RngStream rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t nt = 1 + rng.next_below(16);
        std::vector<double> raw(2 * nt);
        for (auto& e : raw) e = rng.next_normal();
        const auto out = restore_transmit_signal(quantize_onebit(raw), nt);
        double norm2 = 0.0;
        for (const auto& e : out) norm2 += std::norm(e);
        CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-9));
        const double mag = 1.0 / std::sqrt(2.0 * static_cast<double>(nt));
        for (const auto& e : out) {
            CHECK(std::abs(std::abs(e.real()) - mag) < 1e-12);
            CHECK(std::abs(std::abs(e.imag()) - mag) < 1e-12);
        }
    }
}
