// Analytic evaluators for the moment-generating-function, prime-window and
// coupling tail estimates, plus desk-scale Monte Carlo experiments with
// one-sided Clopper-Pearson evidence. Superexponentially small events are
// not estimated by naive sampling; where an exact computation exists the
// bound is checked against it exactly, elsewhere the experiment reports an
// upper confidence bound at observable thresholds.
#pragma once

#include <cstdint>

#include "gcdlab/prime_table.hpp"
#include "gcdlab/sampler.hpp"

namespace gcdlab {

/// Binary entropy H(x) = -x log x - (1-x) log(1-x), endpoints 0.
double entropy_h(double x);

/// Bound on (1/n) log E[exp(lambda Y^2 / n)] for Y ~ Binomial(n, alpha):
///   4 lambda alpha^2 e^(4 lambda) + log(4(n+1))/n,
/// valid under 2 alpha e^(2 lambda) < 1 and alpha < 1/2. Throws a
/// domain_error naming the violated hypothesis.
double binomial_mgf_bound(double alpha, double lambda, int n);

/// -(epsilon/8) log(k) + 4, the product-measure window tail exponent.
double super_i_bound(double k, double epsilon);

/// 4 log log k2 + 4 - (log(k1)/8) epsilon, the uniform-measure window tail
/// exponent after the measure change. Requires k2 > k1 >= 2 and k2 >= 16.
double k1k2_bound(double k1, double k2, double epsilon);

/// Per-n log of the coupling failure bound 2^n (1/m)^(n epsilon / (2 k2)):
///   log 2 - (epsilon / (2 k2)) log m.
double coupling_bound(std::uint64_t n, std::uint64_t m, double epsilon, double k2);

/// 99% (by default) Clopper-Pearson upper confidence bound on a binomial
/// probability after observing `successes` out of `trials`.
double clopper_pearson_upper(std::int64_t successes, std::int64_t trials,
                             double confidence = 0.99);

enum class MeasureKind {
    Uniform,  ///< i.i.d. uniform integers on {1..n}
    Product,  ///< independent prime divisibility digits
};

struct TailExperiment {
    PrimeWindow window;
    std::uint64_t n = 0;
    double epsilon = 0.0;
    MeasureKind measure = MeasureKind::Uniform;
    int replicas = 0;
    std::int64_t exceedances = 0;
    double empirical_log_prob_point = 0.0;  ///< (1/n) log(k/R); -inf when k = 0
    double empirical_log_prob_ucb = 0.0;    ///< (1/n) log of the Clopper-Pearson UCB
    double analytic_bound = 0.0;            ///< matching window bound
    std::uint64_t seed = 0;
};

/// Replicates the window statistic sum_p Y_p^2 over batches of size n and
/// counts exceedances of n^2 epsilon. The matching analytic bound is
/// super_i_bound for the product measure and k1k2_bound for the uniform one.
TailExperiment mc_tail_estimate(PrimeWindow window, std::uint64_t n, double epsilon,
                                MeasureKind measure, int replicas, std::uint64_t seed,
                                const PrimeTable& table);

}  // namespace gcdlab
