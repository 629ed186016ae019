#pragma once

#include <functional>
#include <vector>

#include "onebit/model.hpp"
#include "onebit/numerics.hpp"

namespace onebit {

enum class StopNorm { L2, Linf };

/// Perturbation schedule c_k = scale / k^exponent.
struct CSchedule {
    double scale = 0.0;
    double exponent = 0.0;

    double at(int k) const;
};

/// Proximal weight schedule tau_k. Practical form is scale * k^exponent;
/// the theoretical form backs the convergence guarantee and is opt-in.
struct TauSchedule {
    enum class Kind { Practical, Theoretical };

    Kind kind = Kind::Practical;
    double scale = 0.0;     // Practical
    double exponent = 0.0;  // Practical
    double beta2 = 0.0;     // Theoretical: 16 beta2 L12^2 / (rho c_k^2) + beta3
    double beta3 = 0.0;
    double l12 = 0.0;  // spectral norm of A

    double at(int k, double rho, double c_k) const;
};

struct AoParams {
    double rho = 0.0;
    CSchedule c;
    TauSchedule tau;
    int max_iter = 500;
    double tol = 1e-3;
    StopNorm stop_norm = StopNorm::L2;
};

/// Throws std::invalid_argument on parameter-invariant violations.
void validate(const AoParams& params);

struct HomotopyParams {
    double lambda0 = 0.0;
    double delta = 5.0;
    int max_outer = 20;
    double feas_tol = 1e-6;
};

void validate(const HomotopyParams& params);

struct OuterRecord {
    double lambda = 0.0;
    int inner_iterations = 0;
    double quantized_objective = 0.0;
};

struct SolveReport {
    BitVector x;
    double objective = 0.0;
    std::vector<OuterRecord> outer_trace;
    double elapsed_seconds = 0.0;
    bool feasible_at_exit = false;

    int total_inner_iterations() const;
};

enum class Variant { Standard, Accelerated };

/// Closed-form solution of the box-constrained x-subproblem: per coordinate,
/// with a_i = x_i - (A^T y)_i / tau,
///   out_i = sgn(a_i) * min(|a_i| + lambda/tau, 1),   sgn(0) = +1.
std::vector<double> x_update(const std::vector<double>& x, const SimplexVector& y,
                             const CiModel& model, double lambda, double tau);

/// Projected perturbed ascent step y <- Proj_simplex(y + rho A x - rho c y).
SimplexVector y_update(const SimplexVector& y, const std::vector<double>& x_next,
                       const CiModel& model, double rho, double c);

/// Called after each inner iteration with the new iterates (k = 1, 2, ...).
using AoObserver = std::function<void(int k, const std::vector<double>& x,
                                      const std::vector<double>& y)>;

struct AoResult {
    std::vector<double> x;
    SimplexVector y;
    int iterations = 0;
};

/// Alternating optimization on the penalized min-max problem at fixed lambda:
/// closed-form x step, projected gradient y step, stop on iterate distance
/// below tol or max_iter.
AoResult ao_solve(const CiModel& model, double lambda, std::vector<double> x0,
                  SimplexVector y0, const AoParams& params, const AoObserver& observer = {});

/// Same dynamics, but coordinates are frozen once they reach magnitude 1;
/// the active set shrinks monotonically within a call.
AoResult ao_solve_fixed(const CiModel& model, double lambda, std::vector<double> x0,
                        SimplexVector y0, const AoParams& params,
                        const AoObserver& observer = {});

/// Negative-l1 penalty homotopy: solve the penalized problem at geometrically
/// increasing lambda with warm starts, quantize every intermediate solution,
/// and return the quantized point with the best objective. The returned x is
/// always exactly one-bit.
SolveReport nl1p(const CiModel& model, const HomotopyParams& hp, const AoParams& ap,
                 Variant variant, std::vector<double> x0 = {});

/// Parameter schedule carrying the convergence guarantee:
///   c_k = beta1 / k^gamma,  tau_k = 16 beta2 |A|_2^2 / (rho c_k^2) + beta3,
/// subject to 0 < rho <= 1/beta1, 0 < gamma <= 0.5, beta2 > 1,
/// beta3 >= rho |A|_2^2. Violations throw with the violated bound named.
AoParams theoretical_schedule(const CiModel& model, double rho, double beta1, double beta2,
                              double beta3, double gamma);

/// Practical defaults: rho = 0.2/|A|_2, c_k = 0.01/(rho k^0.05),
/// tau_k = ((2 log2 Nt + 1)/10) mean(|A|) k^0.1, cap 500, tol 1e-3.
AoParams default_ao_params(const CiModel& model);

/// lambda0 = 0.001 M / 8, delta = 5.
HomotopyParams default_homotopy_params(int order);

/// Generic alternating scheme for min_{x in X} max_{y in Y} f(x,y) - g(x):
/// caller supplies the gradients of f, an exact solver for the regularized
/// x-subproblem and the projector onto Y. Stepping is exposed so callers can
/// trace iterates.
class GenericAo {
  public:
    using Gradient = std::function<std::vector<double>(const std::vector<double>& x,
                                                       const std::vector<double>& y)>;
    // exact argmin_{x in X} <grad, x - xk> - g(x) + (tau/2) |x - xk|^2
    using ProxSolver = std::function<std::vector<double>(const std::vector<double>& xk,
                                                         const std::vector<double>& grad,
                                                         double tau)>;
    using Projector = std::function<std::vector<double>(const std::vector<double>&)>;
    using TauFn = std::function<double(int k, double c_k)>;

    GenericAo(Gradient grad_x, Gradient grad_y, ProxSolver prox_x, Projector project_y,
              std::vector<double> x0, std::vector<double> y0, double rho, CSchedule c,
              TauFn tau);

    /// One alternating iteration; returns the iteration index just completed.
    int step();

    /// Runs until the x-iterate distance drops below tol or max_iter.
    int run(int max_iter, double tol, StopNorm norm = StopNorm::L2);

    const std::vector<double>& x() const { return x_; }
    const std::vector<double>& y() const { return y_; }
    int iteration() const { return k_; }
    double last_x_change() const { return last_change_; }

  private:
    Gradient grad_x_;
    Gradient grad_y_;
    ProxSolver prox_x_;
    Projector project_y_;
    std::vector<double> x_;
    std::vector<double> y_;
    double rho_;
    CSchedule c_;
    TauFn tau_;
    int k_ = 0;
    double last_change_ = 0.0;
    double last_linf_change_ = 0.0;
};

}  // namespace onebit
