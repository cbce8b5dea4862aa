// Numerical evaluation of the truncated large-deviation rate function
//   I(x) = inf { KL(mu || nu) : F(mu) = x }
// over truncated prime-digit measures, through a Lagrange fixed point
//   mu(a) ~ nu(a) exp(2 lambda G(a))
// with a lambda sweep, bracketing and bisection on the level, damping and
// multi-restart. The output is an upper bound on the infimum; diagnostics
// report bracketing quality. The closed form for the square-free density is
// evaluated directly.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "gcdlab/measure.hpp"

namespace gcdlab {

struct SolverOptions {
    double damping = 0.5;        ///< blend factor toward the Gibbs update
    double tol = 1e-10;          ///< fixed-point stationarity tolerance
    int max_iter = 5000;         ///< per fixed-point solve
    double lambda_min = -50.0;
    double lambda_max = 50.0;
    int restarts = 8;            ///< perturbed initial measures, best-of
    double level_tol = 1e-9;     ///< |F(mu) - x| acceptance for convergence
    KernelVariant kernel = KernelVariant::Divisibility;
    int threads = 1;             ///< grid-level parallelism in rate_curve
};

struct RatePoint {
    double x = 0.0;
    double rate = 0.0;
    double lambda = 0.0;
    int iterations = 0;       ///< total fixed-point iterations spent
    bool converged = false;   ///< stationary and |F - x| <= level_tol
    double level_residual = 0.0;  ///< |F(argmin) - x|
    Eigen::ArrayXd argmin;
};

/// Best found KL at the level x in [0, 1]. x = 1 is handled analytically:
/// the unique feasible measure is the point mass on the only self-compatible
/// state. Throws on x outside [0, 1].
RatePoint rate_function_point(double x, const StateShape& shape, const SolverOptions& opts = {});

struct RateCurveEntry {
    double x = 0.0;
    double rate = 0.0;
    double lambda = 0.0;
    int iterations = 0;
    bool converged = false;
    std::uint64_t measure_checksum = 0;
};

struct RateCurve {
    StateShape shape;
    std::vector<RateCurveEntry> points;
};

/// Solves every level of a strictly increasing grid. Levels are independent
/// and may run in parallel; output order follows the grid.
RateCurve rate_curve(const StateShape& shape, std::span<const double> levels,
                     const SolverOptions& opts = {});

/// Closed-form rate for the square-free frequency:
///   I(x) = x log(x / c) + (1 - x) log((1 - x) / (1 - c)),  c = 6/pi^2,
/// endpoints by continuity. Throws outside [0, 1].
double squarefree_rate(double x);

}  // namespace gcdlab
