#include "onebit/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace onebit::oracles {

std::vector<double> kkt_project_simplex(const std::vector<double>& point) {
    const std::size_t m = point.size();
    if (m == 0) throw std::invalid_argument("kkt_project_simplex: empty input");
    if (m > 20) throw std::invalid_argument("kkt_project_simplex: support enumeration too large");

    std::vector<double> best;
    double best_dist = std::numeric_limits<double>::infinity();

    for (std::uint64_t mask = 1; mask < (1ULL << m); ++mask) {
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (mask & (1ULL << i)) {
                sum += point[i];
                ++count;
            }
        const double theta = (sum - 1.0) / static_cast<double>(count);

        // Stationarity: y_i = v_i - theta >= 0 on the support,
        // v_i - theta <= 0 off it.
        bool feasible = true;
        for (std::size_t i = 0; i < m && feasible; ++i) {
            const double slack = point[i] - theta;
            if (mask & (1ULL << i))
                feasible = slack >= -1e-12;
            else
                feasible = slack <= 1e-12;
        }
        if (!feasible) continue;

        std::vector<double> candidate(m, 0.0);
        double dist = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (mask & (1ULL << i)) candidate[i] = std::max(point[i] - theta, 0.0);
            const double d = candidate[i] - point[i];
            dist += d * d;
        }
        if (dist < best_dist) {
            best_dist = dist;
            best = std::move(candidate);
        }
    }
    if (best.empty()) throw std::runtime_error("kkt_project_simplex: no stationary support found");
    return best;
}

double grid_min_scalar(double a, double b, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("grid_min_scalar: step must be positive");
    double best_x = -1.0;
    double best_f = std::numeric_limits<double>::infinity();
    const long long count = static_cast<long long>(std::llround(2.0 / step));
    for (long long i = 0; i <= count; ++i) {
        const double x = std::min(-1.0 + static_cast<double>(i) * step, 1.0);
        const double f = (x - a) * (x - a) + b * std::abs(x);
        if (f < best_f) {
            best_f = f;
            best_x = x;
        }
    }
    return best_x;
}

double max_eigenvalue_jacobi(const RealMatrix& sym) {
    if (sym.rows != sym.cols || sym.rows == 0)
        throw std::invalid_argument("max_eigenvalue_jacobi: square matrix required");
    const std::size_t n = sym.rows;
    RealMatrix a = sym;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off < 1e-26) break;

        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t i = 0; i < n; ++i) {
                    const double aip = a(i, p);
                    const double aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double api = a(p, i);
                    const double aqi = a(q, i);
                    a(p, i) = c * api - s * aqi;
                    a(q, i) = s * api + c * aqi;
                }
            }
    }

    double best = a(0, 0);
    for (std::size_t i = 1; i < n; ++i) best = std::max(best, a(i, i));
    return best;
}

bool has_perfect_partition(const std::vector<long long>& a) {
    long long total = 0;
    for (long long e : a) {
        if (e < 1) throw std::invalid_argument("has_perfect_partition: entries must be positive");
        total += e;
    }
    if (total % 2 != 0) return false;
    const long long target = total / 2;
    if (target > 10'000'000)
        throw std::invalid_argument("has_perfect_partition: sum too large for DP table");

    std::vector<char> reachable(static_cast<std::size_t>(target) + 1, 0);
    reachable[0] = 1;
    for (long long e : a)
        for (long long sum = target; sum >= e; --sum)
            if (reachable[static_cast<std::size_t>(sum - e)])
                reachable[static_cast<std::size_t>(sum)] = 1;
    return reachable[static_cast<std::size_t>(target)] != 0;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

}  // namespace onebit::oracles
