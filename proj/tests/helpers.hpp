#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "onebit/model.hpp"
#include "onebit/numerics.hpp"
#include "onebit/sim.hpp"

namespace test_helpers {

struct Instance {
    onebit::ChannelMatrix h;
    onebit::SymbolVector s;
    onebit::CiModel model;
};

inline Instance make_instance(std::uint64_t seed, std::size_t users, std::size_t antennas,
                              int order) {
    onebit::RngStream root(seed);
    onebit::RngStream ch = root.split(0);
    onebit::RngStream sy = root.split(1);
    Instance inst;
    inst.h = onebit::rayleigh_channel(users, antennas, ch);
    inst.s.indices.resize(users);
    for (auto& idx : inst.s.indices)
        idx = static_cast<int>(sy.next_below(static_cast<std::uint64_t>(order)));
    inst.model = onebit::build_model(inst.h, inst.s, order);
    return inst;
}

inline double max_inf_norm(const onebit::CiModel& model) {
    double best = 0.0;
    for (double e : model.a.data) best = std::max(best, std::abs(e));
    return best;
}

// Independent 2x2 solve of y = alpha_a s_a + alpha_b s_b over the reals.
inline std::pair<double, double> decompose_on_boundaries(onebit::cplx y, onebit::cplx s_a,
                                                         onebit::cplx s_b) {
    const double det = s_a.real() * s_b.imag() - s_b.real() * s_a.imag();
    const double alpha_a = (y.real() * s_b.imag() - s_b.real() * y.imag()) / det;
    const double alpha_b = (s_a.real() * y.imag() - y.real() * s_a.imag()) / det;
    return {alpha_a, alpha_b};
}

// h^T x_T for the stacked real vector x = [Re(x_T); Im(x_T)] (unscaled).
inline onebit::cplx row_times_stacked(const onebit::ChannelMatrix& h, std::size_t user,
                                      const std::vector<double>& x) {
    onebit::cplx acc = 0.0;
    for (std::size_t i = 0; i < h.antennas; ++i)
        acc += h.at(user, i) * onebit::cplx(x[i], x[h.antennas + i]);
    return acc;
}

}  // namespace test_helpers
