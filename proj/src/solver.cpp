#include "onebit/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace onebit {

double CSchedule::at(int k) const { return scale / std::pow(static_cast<double>(k), exponent); }

double TauSchedule::at(int k, double rho, double c_k) const {
    if (kind == Kind::Practical) return scale * std::pow(static_cast<double>(k), exponent);
    return 16.0 * beta2 * l12 * l12 / (rho * c_k * c_k) + beta3;
}

void validate(const AoParams& params) {
    if (!(params.rho > 0.0)) throw std::invalid_argument("AoParams: rho must be positive");
    if (!(params.c.scale > 0.0))
        throw std::invalid_argument("AoParams: c-schedule scale must be positive");
    if (params.max_iter < 1) throw std::invalid_argument("AoParams: max_iter must be >= 1");
    if (!(params.tol >= 0.0)) throw std::invalid_argument("AoParams: tol must be nonnegative");
    if (params.tau.kind == TauSchedule::Kind::Practical) {
        if (!(params.tau.scale > 0.0))
            throw std::invalid_argument("AoParams: tau scale must be positive");
    } else {
        if (!(params.c.exponent > 0.0) || params.c.exponent > 0.5)
            throw std::invalid_argument(
                "AoParams: theoretical schedule requires 0 < gamma <= 0.5");
        if (!(params.tau.beta2 > 1.0))
            throw std::invalid_argument("AoParams: theoretical schedule requires beta2 > 1");
        if (!(params.tau.beta3 >= 0.0) || !(params.tau.l12 >= 0.0))
            throw std::invalid_argument("AoParams: theoretical schedule misconfigured");
    }
    // tau_1 > 0 implies tau_k > 0 for both schedule kinds
    if (!(params.tau.at(1, params.rho, params.c.at(1)) > 0.0))
        throw std::invalid_argument("AoParams: tau schedule must be positive");
}

void validate(const HomotopyParams& params) {
    if (!(params.lambda0 > 0.0))
        throw std::invalid_argument("HomotopyParams: lambda0 must be positive");
    if (!(params.delta > 1.0)) throw std::invalid_argument("HomotopyParams: delta must be > 1");
    if (params.max_outer < 1)
        throw std::invalid_argument("HomotopyParams: max_outer must be >= 1");
    if (!(params.feas_tol >= 0.0))
        throw std::invalid_argument("HomotopyParams: feas_tol must be nonnegative");
}

int SolveReport::total_inner_iterations() const {
    int total = 0;
    for (const auto& rec : outer_trace) total += rec.inner_iterations;
    return total;
}

namespace {

// Closed-form minimizer of (x - a)^2 - (2 lambda / tau)|x| over [-1, 1]:
// sgn(a) min(|a| + lambda/tau, 1), with the positive root chosen at a = 0.
inline double shrink_expand(double a, double boost) {
    const double sign = a >= 0.0 ? 1.0 : -1.0;
    return sign * std::min(std::abs(a) + boost, 1.0);
}

void x_update_into(const std::vector<double>& x, const std::vector<double>& aty, double lambda,
                   double tau, std::vector<double>& out) {
    const double boost = lambda / tau;
    out.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = shrink_expand(x[i] - aty[i] / tau, boost);
}

void check_box(const std::vector<double>& x) {
    for (double e : x)
        if (!(std::abs(e) <= 1.0))
            throw std::invalid_argument("x iterate must lie in [-1, 1]^n");
}

void check_start(const CiModel& model, const std::vector<double>& x0, const SimplexVector& y0,
                 double lambda) {
    if (x0.size() != model.n())
        throw std::invalid_argument("x0 dimension does not match the model");
    if (y0.size() != model.m())
        throw std::invalid_argument("y0 dimension does not match the model");
    if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be nonnegative");
    check_box(x0);
}

double iterate_distance(const std::vector<double>& a, const std::vector<double>& b,
                        StopNorm norm) {
    double acc = 0.0;
    if (norm == StopNorm::L2) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double d = a[i] - b[i];
            acc += d * d;
        }
        return std::sqrt(acc);
    }
    for (std::size_t i = 0; i < a.size(); ++i) acc = std::max(acc, std::abs(a[i] - b[i]));
    return acc;
}

}  // namespace

namespace detail {
void project_simplex_into(const std::vector<double>& point, std::vector<double>& out,
                          std::vector<double>& scratch);
}

std::vector<double> x_update(const std::vector<double>& x, const SimplexVector& y,
                             const CiModel& model, double lambda, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("x_update: tau must be positive");
    check_start(model, x, y, lambda);
    std::vector<double> aty, out;
    multiply_transpose(model.a, y.v, aty);
    x_update_into(x, aty, lambda, tau, out);
    return out;
}

SimplexVector y_update(const SimplexVector& y, const std::vector<double>& x_next,
                       const CiModel& model, double rho, double c) {
    if (!(rho > 0.0)) throw std::invalid_argument("y_update: rho must be positive");
    if (!(c >= 0.0)) throw std::invalid_argument("y_update: c must be nonnegative");
    std::vector<double> ax, moved, scratch;
    multiply(model.a, x_next, ax);
    moved.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        moved[i] = y.v[i] + rho * ax[i] - rho * c * y.v[i];
    SimplexVector out;
    detail::project_simplex_into(moved, out.v, scratch);
    return out;
}

AoResult ao_solve(const CiModel& model, double lambda, std::vector<double> x0, SimplexVector y0,
                  const AoParams& params, const AoObserver& observer) {
    validate(params);
    check_start(model, x0, y0, lambda);

    std::vector<double> x = std::move(x0);
    std::vector<double> y = std::move(y0.v);
    std::vector<double> aty, x_next, ax, moved, scratch;

    int iterations = params.max_iter;
    for (int k = 1; k <= params.max_iter; ++k) {
        const double c_k = params.c.at(k);
        const double tau_k = params.tau.at(k, params.rho, c_k);

        multiply_transpose(model.a, y, aty);
        x_update_into(x, aty, lambda, tau_k, x_next);

        multiply(model.a, x_next, ax);
        moved.resize(y.size());
        for (std::size_t i = 0; i < y.size(); ++i)
            moved[i] = y[i] + params.rho * ax[i] - params.rho * c_k * y[i];
        detail::project_simplex_into(moved, y, scratch);

        const double change = iterate_distance(x_next, x, params.stop_norm);
        x.swap(x_next);
        if (observer) observer(k, x, y);
        if (change < params.tol) {
            iterations = k;
            break;
        }
    }

    AoResult result;
    result.x = std::move(x);
    result.y.v = std::move(y);
    result.iterations = iterations;
    return result;
}

AoResult ao_solve_fixed(const CiModel& model, double lambda, std::vector<double> x0,
                        SimplexVector y0, const AoParams& params, const AoObserver& observer) {
    validate(params);
    check_start(model, x0, y0, lambda);

    const std::size_t n = model.n();
    std::vector<double> x = std::move(x0);
    std::vector<double> y = std::move(y0.v);

    std::vector<std::size_t> active;
    active.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(x[i]) < 1.0) active.push_back(i);

    // A x is maintained incrementally: only active coordinates ever move.
    std::vector<double> ax, moved, scratch;
    multiply(model.a, x, ax);

    int iterations = params.max_iter;
    for (int k = 1; k <= params.max_iter; ++k) {
        const double c_k = params.c.at(k);
        const double tau_k = params.tau.at(k, params.rho, c_k);
        const double boost = lambda / tau_k;

        double change_l2 = 0.0;
        double change_inf = 0.0;
        std::size_t kept = 0;
        for (std::size_t idx = 0; idx < active.size(); ++idx) {
            const std::size_t i = active[idx];
            const double next = shrink_expand(x[i] - column_dot(model.a, i, y) / tau_k, boost);
            const double delta = next - x[i];
            if (delta != 0.0) {
                for (std::size_t r = 0; r < model.m(); ++r) ax[r] += model.a(r, i) * delta;
                change_l2 += delta * delta;
                change_inf = std::max(change_inf, std::abs(delta));
                x[i] = next;
            }
            if (std::abs(next) < 1.0) active[kept++] = i;
        }
        active.resize(kept);

        moved.resize(y.size());
        for (std::size_t i = 0; i < y.size(); ++i)
            moved[i] = y[i] + params.rho * ax[i] - params.rho * c_k * y[i];
        detail::project_simplex_into(moved, y, scratch);

        if (observer) observer(k, x, y);
        const double change =
            params.stop_norm == StopNorm::L2 ? std::sqrt(change_l2) : change_inf;
        if (change < params.tol) {
            iterations = k;
            break;
        }
    }

    AoResult result;
    result.x = std::move(x);
    result.y.v = std::move(y);
    result.iterations = iterations;
    return result;
}

SolveReport nl1p(const CiModel& model, const HomotopyParams& hp, const AoParams& ap,
                 Variant variant, std::vector<double> x0) {
    validate(hp);
    validate(ap);
    const auto start = std::chrono::steady_clock::now();

    const std::size_t n = model.n();
    if (x0.empty()) x0.assign(n, 0.0);
    if (x0.size() != n) throw std::invalid_argument("nl1p: x0 dimension mismatch");
    check_box(x0);

    SolveReport report;

    bool all_zero = true;
    for (double e : model.a.data)
        if (e != 0.0) all_zero = false;
    if (all_zero) {
        // Degenerate model: every sign vector is optimal with objective 0.
        report.x = quantize_onebit(x0);
        report.objective = ci_objective(model, report.x.v);
        report.outer_trace.push_back({hp.lambda0, 0, report.objective});
        report.feasible_at_exit = true;
        report.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return report;
    }

    std::vector<double> x = std::move(x0);
    SimplexVector y = SimplexVector::uniform(model.m());
    double lambda = hp.lambda0;
    double best_objective = std::numeric_limits<double>::infinity();
    BitVector best_x;

    for (int t = 1; t <= hp.max_outer; ++t) {
        AoResult inner = variant == Variant::Standard
                             ? ao_solve(model, lambda, std::move(x), std::move(y), ap)
                             : ao_solve_fixed(model, lambda, std::move(x), std::move(y), ap);
        x = std::move(inner.x);
        y = std::move(inner.y);

        BitVector quantized = quantize_onebit(x);
        const double objective = ci_objective(model, quantized.v);
        report.outer_trace.push_back({lambda, inner.iterations, objective});
        if (objective < best_objective) {  // ties keep the earliest outer iterate
            best_objective = objective;
            best_x = std::move(quantized);
        }

        double min_abs = 1.0;
        for (double e : x) min_abs = std::min(min_abs, std::abs(e));
        if (min_abs >= 1.0 - hp.feas_tol) {
            report.feasible_at_exit = true;
            break;
        }
        lambda *= hp.delta;
    }

    report.x = std::move(best_x);
    report.objective = ci_objective(model, report.x.v);
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

AoParams theoretical_schedule(const CiModel& model, double rho, double beta1, double beta2,
                              double beta3, double gamma) {
    const double norm_a = spectral_norm(model.a);
    if (!(beta1 > 0.0)) throw std::invalid_argument("theoretical_schedule: requires beta1 > 0");
    if (!(rho > 0.0) || rho > 1.0 / beta1)
        throw std::invalid_argument("theoretical_schedule: requires 0 < rho <= 1/beta1");
    if (!(gamma > 0.0) || gamma > 0.5)
        throw std::invalid_argument("theoretical_schedule: requires 0 < gamma <= 0.5");
    if (!(beta2 > 1.0)) throw std::invalid_argument("theoretical_schedule: requires beta2 > 1");
    if (beta3 < rho * norm_a * norm_a)
        throw std::invalid_argument("theoretical_schedule: requires beta3 >= rho |A|_2^2");

    AoParams params;
    params.rho = rho;
    params.c = {beta1, gamma};
    params.tau.kind = TauSchedule::Kind::Theoretical;
    params.tau.beta2 = beta2;
    params.tau.beta3 = beta3;
    params.tau.l12 = norm_a;
    return params;
}

AoParams default_ao_params(const CiModel& model) {
    const double norm_a = std::max(spectral_norm(model.a), 1e-8);
    const double mean_a = std::max(mean_abs(model.a), 1e-8);
    const double log2_nt = std::log2(static_cast<double>(model.antennas));

    AoParams params;
    params.rho = 0.2 / norm_a;
    params.c = {0.01 / params.rho, 0.05};
    params.tau.kind = TauSchedule::Kind::Practical;
    params.tau.scale = (2.0 * log2_nt + 1.0) / 10.0 * mean_a;
    params.tau.exponent = 0.1;
    params.max_iter = 500;
    params.tol = 1e-3;
    return params;
}

HomotopyParams default_homotopy_params(int order) {
    HomotopyParams hp;
    hp.lambda0 = 0.001 * static_cast<double>(order) / 8.0;
    hp.delta = 5.0;
    return hp;
}

GenericAo::GenericAo(Gradient grad_x, Gradient grad_y, ProxSolver prox_x, Projector project_y,
                     std::vector<double> x0, std::vector<double> y0, double rho, CSchedule c,
                     TauFn tau)
    : grad_x_(std::move(grad_x)),
      grad_y_(std::move(grad_y)),
      prox_x_(std::move(prox_x)),
      project_y_(std::move(project_y)),
      x_(std::move(x0)),
      y_(std::move(y0)),
      rho_(rho),
      c_(c),
      tau_(std::move(tau)) {
    if (!grad_x_ || !grad_y_ || !prox_x_ || !project_y_)
        throw std::invalid_argument("GenericAo: all problem callbacks must be set");
    if (!(rho_ > 0.0)) throw std::invalid_argument("GenericAo: rho must be positive");
}

int GenericAo::step() {
    const int k = ++k_;
    const double c_k = c_.at(k);
    const double tau_k = tau_(k, c_k);
    if (!(tau_k > 0.0)) throw std::invalid_argument("GenericAo: tau_k must be positive");

    std::vector<double> x_next = prox_x_(x_, grad_x_(x_, y_), tau_k);

    const std::vector<double> gy = grad_y_(x_next, y_);
    std::vector<double> moved(y_.size());
    for (std::size_t i = 0; i < y_.size(); ++i)
        moved[i] = y_[i] + rho_ * gy[i] - rho_ * c_k * y_[i];
    y_ = project_y_(moved);

    double l2 = 0.0, linf = 0.0;
    for (std::size_t i = 0; i < x_.size(); ++i) {
        const double d = x_next[i] - x_[i];
        l2 += d * d;
        linf = std::max(linf, std::abs(d));
    }
    last_change_ = std::sqrt(l2);
    last_linf_change_ = linf;
    x_ = std::move(x_next);
    return k;
}

int GenericAo::run(int max_iter, double tol, StopNorm norm) {
    for (int k = 1; k <= max_iter; ++k) {
        step();
        const double change = norm == StopNorm::L2 ? last_change_ : last_linf_change_;
        if (change < tol) return k;
    }
    return max_iter;
}

}  // namespace onebit
