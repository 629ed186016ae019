#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "onebit/baselines.hpp"
#include "onebit/oracles.hpp"

using namespace onebit;
using test_helpers::make_instance;

namespace {

CiModel bare_model(RealMatrix a) {
    CiModel m;
    m.a = std::move(a);
    m.users = m.a.rows / 2;
    m.antennas = m.a.cols / 2;
    m.order = 8;
    m.scale = 1.0 / std::sqrt(static_cast<double>(m.a.cols));
    return m;
}

}  // namespace

TEST_CASE("brute_force trivial cases and tie-breaking") {
    {
        const BruteForceResult r = brute_force(bare_model(RealMatrix(2, 4)));
        CHECK(r.value == 0.0);
        CHECK(r.x.v == std::vector<double>{-1, -1, -1, -1});  // lexicographic tie-break
    }
    {
        RealMatrix a(1, 2);
        a(0, 0) = 1.0;
        a(0, 1) = 1.0;
        const BruteForceResult r = brute_force(bare_model(std::move(a)));
        CHECK(r.value == doctest::Approx(-2.0));
        CHECK(r.x.v == std::vector<double>{-1, -1});
    }
    CHECK_THROWS_AS(brute_force(bare_model(RealMatrix(2, 28))), std::invalid_argument);
}

TEST_CASE("brute_force lower-bounds every candidate on random instances") {
    RngStream rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const auto inst = make_instance(300 + trial, 2, 5, 8);
        const BruteForceResult r = brute_force(inst.model);
        CHECK(is_one_bit(r.x));
        CHECK(ci_objective(inst.model, r.x.v) == doctest::Approx(r.value).epsilon(1e-12));
        for (int probe = 0; probe < 30; ++probe) {
            std::vector<double> raw(inst.model.n());
            for (auto& e : raw) e = rng.next_normal();
            CHECK(ci_objective(inst.model, quantize_onebit(raw).v) >= r.value - 1e-12);
        }
    }
}

TEST_CASE("partition_instance examples") {
    CHECK(brute_force(partition_instance({1, 1}).model).value == doctest::Approx(-2.0));
    CHECK(brute_force(partition_instance({1, 2}).model).value > -3.0 + 1e-12);
    CHECK(brute_force(partition_instance({2, 3, 5}).model).value == doctest::Approx(-10.0));
    CHECK(brute_force(partition_instance({1, 2, 3}).model).value == doctest::Approx(-6.0));

    CHECK_THROWS_AS(partition_instance({1, 0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(partition_instance({}), std::invalid_argument);
    CHECK_THROWS_AS(partition_instance(std::vector<long long>(14, 1)), std::invalid_argument);
}

TEST_CASE("partition optimum is -sum(a) iff a perfect partition exists") {
    RngStream rng(29);
    int feasible_seen = 0, infeasible_seen = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng.next_below(9);
        std::vector<long long> a(n);
        long long total = 0;
        for (auto& e : a) {
            e = 1 + static_cast<long long>(rng.next_below(12));
            total += e;
        }
        const PartitionInstance inst = partition_instance(a);
        const BruteForceResult r = brute_force(inst.model);
        const bool partitionable = oracles::has_perfect_partition(a);
        (partitionable ? feasible_seen : infeasible_seen) += 1;

        if (partitionable)
            CHECK(r.value == doctest::Approx(-static_cast<double>(total)).epsilon(1e-12));
        else
            CHECK(r.value > -static_cast<double>(total) + 1e-9);

        // positive coefficients force the real half of the optimizer to all ones
        for (std::size_t i = 0; i < n; ++i) CHECK(r.x.v[i] == 1.0);
    }
    CHECK(feasible_seen > 0);
    CHECK(infeasible_seen > 0);
}

TEST_CASE("zf_quantized trivial cases") {
    {
        ChannelMatrix h(1, 1);
        h.at(0, 0) = cplx(1.0, 0.0);
        SymbolVector s;
        s.indices = {0};  // symbol 1 + 0j
        const BitVector x = zf_quantized(h, s, 8);
        CHECK(x.v == std::vector<double>{1.0, 1.0});  // sgn(0) = +1 on the imaginary half
    }
    {
        // identity-embedded channel: ZF returns the symbols themselves
        ChannelMatrix h(2, 4);
        h.at(0, 0) = cplx(1.0, 0.0);
        h.at(1, 1) = cplx(1.0, 0.0);
        SymbolVector s;
        s.indices = {1, 5};
        const BitVector x = zf_quantized(h, s, 8);
        const cplx s0 = psk_point(1, 8), s1 = psk_point(5, 8);
        CHECK(x.v[0] == (s0.real() >= 0 ? 1.0 : -1.0));
        CHECK(x.v[1] == (s1.real() >= 0 ? 1.0 : -1.0));
        CHECK(x.v[4] == (s0.imag() >= 0 ? 1.0 : -1.0));
        CHECK(x.v[5] == (s1.imag() >= 0 ? 1.0 : -1.0));
    }
}

TEST_CASE("zf direction solves the normal equations") {
    RngStream rng(31);
    for (int trial = 0; trial < 15; ++trial) {
        const auto inst = make_instance(400 + trial, 2, 8, 8);
        const std::vector<cplx> x_t = zf_unquantized(inst.h, inst.s, 8);

        double norm2 = 0.0;
        for (const auto& e : x_t) norm2 += std::norm(e);
        CHECK(std::abs(norm2 - 1.0) < 1e-12);

        // H x_t = c s for a single positive real c
        std::vector<cplx> received(2, 0.0);
        for (std::size_t k = 0; k < 2; ++k)
            for (std::size_t i = 0; i < 8; ++i) received[k] += inst.h.at(k, i) * x_t[i];
        const cplx c0 = received[0] / psk_point(inst.s.indices[0], 8);
        CHECK(c0.real() > 0.0);
        CHECK(std::abs(c0.imag()) < 1e-9);
        for (std::size_t k = 0; k < 2; ++k)
            CHECK(std::abs(received[k] - c0 * psk_point(inst.s.indices[k], 8)) < 1e-9);

        CHECK(is_one_bit(zf_quantized(inst.h, inst.s, 8)));
    }
}

TEST_CASE("zf single-user direction is the matched filter") {
    const auto inst = make_instance(77, 1, 6, 8);
    const std::vector<cplx> x_t = zf_unquantized(inst.h, inst.s, 8);
    double h2 = 0.0;
    for (std::size_t i = 0; i < 6; ++i) h2 += std::norm(inst.h.at(0, i));
    const cplx s = psk_point(inst.s.indices[0], 8);
    for (std::size_t i = 0; i < 6; ++i) {
        const cplx expected = std::conj(inst.h.at(0, i)) * s / std::sqrt(h2);
        CHECK(std::abs(x_t[i] - expected) < 1e-12);
    }
}

TEST_CASE("zf rejects a rank-deficient channel") {
    ChannelMatrix h(2, 4);
    for (std::size_t i = 0; i < 4; ++i) {
        h.at(0, i) = cplx(1.0 + static_cast<double>(i), -0.5);
        h.at(1, i) = h.at(0, i);  // duplicated row
    }
    SymbolVector s;
    s.indices = {0, 1};
    CHECK_THROWS_AS(zf_quantized(h, s, 8), std::runtime_error);
    CHECK_THROWS_AS(zf_quantized(ChannelMatrix(3, 2), SymbolVector{{0, 0, 0}}, 8),
                    std::invalid_argument);
}

TEST_CASE("grid_min_scalar sensitivity: a corrupted update is detected") {
    // sanity check that the 1-D oracle flags a sign-flipped closed form
    const double a = 0.4, lambda = 0.3, tau = 1.0;
    const double wrong = -(std::min(std::abs(a) + lambda / tau, 1.0));  // flipped sign
    const double grid = oracles::grid_min_scalar(a, -2.0 * lambda / tau, 1e-4);
    CHECK(std::abs(wrong - grid) > 2e-4);
}
