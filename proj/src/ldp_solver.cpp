#include "gcdlab/ldp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gcdlab/exact_oracle.hpp"
#include "gcdlab/parallel.hpp"
#include "gcdlab/rng.hpp"
#include "gcdlab/special.hpp"

namespace gcdlab {

namespace {

struct FixedPointState {
    Eigen::ArrayXd mu;
    double functional = 0.0;
    double kl = 0.0;
    int iterations = 0;
    bool stationary = false;
};

double kl_against(const Eigen::ArrayXd& mu, const Eigen::ArrayXd& ref) {
    double kl = 0.0;
    for (Eigen::Index i = 0; i < mu.size(); ++i)
        if (mu[i] > 0.0) kl += mu[i] * std::log(mu[i] / ref[i]);
    return kl;
}

/// Damped iteration toward the stationary form mu ~ ref * exp(2 lambda G).
FixedPointState solve_fixed_point(const StateShape& shape, const Eigen::ArrayXd& ref,
                                  double lambda, Eigen::ArrayXd mu, const SolverOptions& opts) {
    FixedPointState s;
    Eigen::ArrayXd field;
    Eigen::ArrayXd gibbs;
    for (int it = 1; it <= opts.max_iter; ++it) {
        field = interaction_field(shape, mu, opts.kernel);
        const Eigen::ArrayXd expo = 2.0 * lambda * field;
        gibbs = ref * (expo - expo.maxCoeff()).exp();
        gibbs /= gibbs.sum();
        const double residual = (mu - gibbs).abs().maxCoeff();
        s.iterations = it;
        if (residual < opts.tol) {
            s.stationary = true;
            break;
        }
        mu = (1.0 - opts.damping) * mu + opts.damping * gibbs;
    }
    s.mu = std::move(mu);
    field = interaction_field(shape, s.mu, opts.kernel);
    s.functional = (s.mu * field).sum();
    s.kl = kl_against(s.mu, ref);
    return s;
}

struct Candidate {
    double functional = 0.0;
    double kl = 0.0;
    double lambda = 0.0;
    Eigen::ArrayXd mu;
    bool stationary = false;
};

Eigen::ArrayXd perturbed_start(const Eigen::ArrayXd& ref, int restart) {
    if (restart == 0) return ref;
    CounterRng rng(0x5eedbeefcafef00dULL, static_cast<std::uint64_t>(restart));
    const double amplitude = restart < 4 ? 0.4 : 1.2;
    Eigen::ArrayXd mu = ref;
    for (Eigen::Index i = 0; i < mu.size(); ++i)
        mu[i] *= std::exp(amplitude * (2.0 * rng.next_double() - 1.0));
    mu /= mu.sum();
    return mu;
}

std::vector<double> lambda_ladder(const SolverOptions& opts) {
    std::vector<double> lams{0.0};
    for (double side : {opts.lambda_min, opts.lambda_max}) {
        double mag = std::fabs(side);
        const double sign = side < 0 ? -1.0 : 1.0;
        while (mag > 0.01) {
            lams.push_back(sign * mag);
            mag *= 0.5;
        }
    }
    std::sort(lams.begin(), lams.end());
    lams.erase(std::unique(lams.begin(), lams.end()), lams.end());
    return lams;
}

/// Index of the state compatible with itself, or -1 if none (the strict
/// kernel admits none on mixed shapes).
Eigen::Index self_compatible_state(const StateShape& shape, KernelVariant variant) {
    const int m = shape.ternary_count();
    if (m == 0) return 0;
    std::uint32_t all_ones = 0;
    for (int i = m - 1; i >= 0; --i) all_ones = all_ones * 3 + 1;
    MixedState s{all_ones, 0, m, shape.binary_count()};
    if (kernel_f_ell(s, s, variant) == 0) return -1;
    std::size_t t = 0;
    for (int i = m - 1; i >= 0; --i) t = t * 3 + 1;
    return static_cast<Eigen::Index>(shape.index(t, 0));
}

}  // namespace

RatePoint rate_function_point(double x, const StateShape& shape, const SolverOptions& opts) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error("rate_function_point: level outside attainable range [0, 1]");

    const TruncatedMeasure nu = reference_measure(shape);
    RatePoint out;
    out.x = x;

    if (x >= 1.0 - 1e-12) {
        const Eigen::Index star = self_compatible_state(shape, opts.kernel);
        if (star >= 0) {
            out.rate = -std::log(nu.reference[star]);
            out.lambda = std::numeric_limits<double>::infinity();
            out.converged = true;
            out.argmin = Eigen::ArrayXd::Zero(nu.reference.size());
            out.argmin[star] = 1.0;
            out.level_residual = 0.0;
            return out;
        }
    }

    int total_iterations = 0;
    Candidate best_close;      // min KL among |F - x| <= level_tol, stationary
    bool have_close = false;
    Candidate best_any;        // min |F - x| fallback
    bool have_any = false;

    auto consider = [&](const FixedPointState& s, double lambda) {
        const double gap = std::fabs(s.functional - x);
        if (!have_any || gap < std::fabs(best_any.functional - x)) {
            best_any = {s.functional, s.kl, lambda, s.mu, s.stationary};
            have_any = true;
        }
        if (s.stationary && gap <= opts.level_tol) {
            if (!have_close || s.kl < best_close.kl) {
                best_close = {s.functional, s.kl, lambda, s.mu, s.stationary};
                have_close = true;
            }
        }
    };

    const std::vector<double> ladder = lambda_ladder(opts);

    for (int restart = 0; restart < std::max(1, opts.restarts); ++restart) {
        Eigen::ArrayXd warm = perturbed_start(nu.reference, restart);

        // Sweep the ladder with continuation, recording (lambda, F) knots.
        std::vector<double> lam_knots, f_knots;
        std::vector<Eigen::ArrayXd> mu_knots;
        for (double lam : ladder) {
            FixedPointState s = solve_fixed_point(shape, nu.reference, lam, warm, opts);
            total_iterations += s.iterations;
            warm = s.mu;
            consider(s, lam);
            lam_knots.push_back(lam);
            f_knots.push_back(s.functional);
            mu_knots.push_back(s.mu);
        }

        // Bisect every sign-change bracket on F(lambda) - x.
        for (std::size_t i = 0; i + 1 < lam_knots.size(); ++i) {
            if ((f_knots[i] - x) * (f_knots[i + 1] - x) > 0.0) continue;
            double lo = lam_knots[i], hi = lam_knots[i + 1];
            double flo = f_knots[i];
            Eigen::ArrayXd mu_bisect = mu_knots[i];
            for (int step = 0; step < 100; ++step) {
                const double mid = 0.5 * (lo + hi);
                FixedPointState s = solve_fixed_point(shape, nu.reference, mid, mu_bisect, opts);
                total_iterations += s.iterations;
                mu_bisect = s.mu;
                consider(s, mid);
                if (std::fabs(s.functional - x) <= opts.level_tol) break;
                if ((s.functional - x) * (flo - x) > 0.0) {
                    lo = mid;
                    flo = s.functional;
                } else {
                    hi = mid;
                }
                if (hi - lo < 1e-13 * (1.0 + std::fabs(mid))) break;
            }
        }

        if (have_close && restart + 1 >= std::max(1, opts.restarts)) break;
    }

    const Candidate& pick = have_close ? best_close : best_any;
    if (!have_close && !have_any)
        throw std::runtime_error("rate_function_point: solver produced no candidates");
    out.rate = std::max(0.0, pick.kl);
    out.lambda = pick.lambda;
    out.iterations = total_iterations;
    out.converged = have_close;
    out.level_residual = std::fabs(pick.functional - x);
    out.argmin = pick.mu;
    return out;
}

RateCurve rate_curve(const StateShape& shape, std::span<const double> levels,
                     const SolverOptions& opts) {
    for (std::size_t i = 0; i + 1 < levels.size(); ++i)
        if (!(levels[i] < levels[i + 1]))
            throw std::domain_error("rate_curve: grid levels must be strictly increasing");

    RateCurve curve;
    curve.shape = shape;
    curve.points.resize(levels.size());

    parallel_for(levels.size(), opts.threads, [&](std::size_t i) {
        const RatePoint p = rate_function_point(levels[i], shape, opts);
        std::vector<std::int64_t> quantized(static_cast<std::size_t>(p.argmin.size()));
        for (Eigen::Index j = 0; j < p.argmin.size(); ++j)
            quantized[static_cast<std::size_t>(j)] = std::llround(p.argmin[j] * 1e12);
        curve.points[i] = {p.x,
                           p.rate,
                           p.lambda,
                           p.iterations,
                           p.converged,
                           fnv1a64(quantized.data(), quantized.size() * sizeof(std::int64_t))};
    });
    return curve;
}

double squarefree_rate(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("squarefree_rate: x outside [0, 1]");
    const double c = squarefree_density();
    double rate = 0.0;
    if (x > 0.0) rate += x * std::log(x / c);
    if (x < 1.0) rate += (1.0 - x) * std::log((1.0 - x) / (1.0 - c));
    return rate;
}

}  // namespace gcdlab
