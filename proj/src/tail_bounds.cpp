#include "gcdlab/tail_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "gcdlab/special.hpp"

namespace gcdlab {

double entropy_h(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("entropy_h: x outside [0, 1]");
    double h = 0.0;
    if (x > 0.0) h -= x * std::log(x);
    if (x < 1.0) h -= (1.0 - x) * std::log(1.0 - x);
    return h;
}

double binomial_mgf_bound(double alpha, double lambda, int n) {
    if (!(alpha > 0.0 && alpha < 0.5))
        throw std::domain_error("binomial_mgf_bound: hypothesis alpha < 1/2 violated");
    const double lambda1 = std::exp(lambda);
    if (!(2.0 * alpha * lambda1 * lambda1 < 1.0))
        throw std::domain_error("binomial_mgf_bound: hypothesis 2 alpha e^(2 lambda) < 1 violated");
    if (n < 1) throw std::domain_error("binomial_mgf_bound: n must be >= 1");
    return 4.0 * lambda * alpha * alpha * std::pow(lambda1, 4.0) +
           std::log(4.0 * (n + 1.0)) / n;
}

double super_i_bound(double k, double epsilon) {
    if (!(k >= 2.0)) throw std::domain_error("super_i_bound: k must be >= 2");
    if (!(epsilon > 0.0)) throw std::domain_error("super_i_bound: epsilon must be positive");
    return -(epsilon / 8.0) * std::log(k) + 4.0;
}

double k1k2_bound(double k1, double k2, double epsilon) {
    if (!(k1 >= 2.0)) throw std::domain_error("k1k2_bound: k1 must be >= 2");
    if (!(k2 > k1)) throw std::domain_error("k1k2_bound: require k2 > k1");
    if (!(k2 >= 16.0)) throw std::domain_error("k1k2_bound: k2 must be >= 16");
    return 4.0 * std::log(std::log(k2)) + 4.0 - (std::log(k1) / 8.0) * epsilon;
}

double coupling_bound([[maybe_unused]] std::uint64_t n, std::uint64_t m, double epsilon,
                      double k2) {
    if (m == 0) throw std::domain_error("coupling_bound: m must be >= 1");
    if (!(k2 > 0.0)) throw std::domain_error("coupling_bound: k2 must be positive");
    return std::log(2.0) - (epsilon / (2.0 * k2)) * std::log(static_cast<double>(m));
}

double clopper_pearson_upper(std::int64_t successes, std::int64_t trials, double confidence) {
    if (trials < 1) throw std::domain_error("clopper_pearson_upper: trials must be >= 1");
    if (successes < 0 || successes > trials)
        throw std::domain_error("clopper_pearson_upper: successes outside [0, trials]");
    if (successes == trials) return 1.0;

    const double alpha = 1.0 - confidence;

    // Binomial lower-tail probability P(Bin(trials, p) <= successes) is
    // decreasing in p; bisect it against alpha.
    auto lower_tail = [&](double p) {
        const double lp = std::log(p);
        const double lq = std::log1p(-p);
        double max_term = -std::numeric_limits<double>::infinity();
        std::vector<double> terms(static_cast<std::size_t>(successes) + 1);
        for (std::int64_t i = 0; i <= successes; ++i) {
            const double t = log_binomial(trials, i) + i * lp + (trials - i) * lq;
            terms[static_cast<std::size_t>(i)] = t;
            max_term = std::max(max_term, t);
        }
        double sum = 0.0;
        for (double t : terms) sum += std::exp(t - max_term);
        return std::exp(max_term) * sum;
    };

    double lo = static_cast<double>(successes) / static_cast<double>(trials);
    double hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (lower_tail(mid) > alpha)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-15) break;
    }
    return hi;
}

TailExperiment mc_tail_estimate(PrimeWindow window, std::uint64_t n, double epsilon,
                                MeasureKind measure, int replicas, std::uint64_t seed,
                                const PrimeTable& table) {
    if (replicas < 1) throw std::domain_error("mc_tail_estimate: replicas must be >= 1");
    if (window.hi > table.limit)
        throw std::domain_error("mc_tail_estimate: window beyond table limit");

    TailExperiment ex;
    ex.window = window;
    ex.n = n;
    ex.epsilon = epsilon;
    ex.measure = measure;
    ex.replicas = replicas;
    ex.seed = seed;

    const auto primes = table.window_primes(window.lo, window.hi);
    const double nd = static_cast<double>(n);
    const double threshold = nd * nd * epsilon;
    const double deterministic_max = nd * nd * static_cast<double>(primes.size());

    for (int r = 0; r < replicas; ++r) {
        double stat = 0.0;
        if (measure == MeasureKind::Uniform) {
            const SampleBatch batch = sample_uniform(n, static_cast<std::size_t>(n), seed,
                                                     static_cast<std::uint64_t>(r));
            const DivisorCountProfile profile = divisor_counts(batch, window, table);
            for (std::uint64_t y : profile.counts)
                stat += static_cast<double>(y) * static_cast<double>(y);
        } else {
            const PatternBatch batch = sample_tilde(window, static_cast<std::size_t>(n), seed,
                                                    static_cast<std::uint64_t>(r), table);
            std::vector<std::uint64_t> counts(primes.size(), 0);
            for (std::uint64_t mask : batch.masks)
                for (std::size_t j = 0; j < primes.size(); ++j)
                    if (mask & (1ULL << j)) ++counts[j];
            for (std::uint64_t y : counts)
                stat += static_cast<double>(y) * static_cast<double>(y);
        }
        if (stat > deterministic_max)
            throw std::logic_error("mc_tail_estimate: statistic exceeds deterministic maximum");
        if (stat > threshold) ++ex.exceedances;
    }

    const double rr = static_cast<double>(replicas);
    ex.empirical_log_prob_point =
        ex.exceedances > 0 ? std::log(static_cast<double>(ex.exceedances) / rr) / nd
                           : -std::numeric_limits<double>::infinity();
    ex.empirical_log_prob_ucb =
        std::log(clopper_pearson_upper(ex.exceedances, replicas, 0.99)) / nd;
    ex.analytic_bound =
        measure == MeasureKind::Product
            ? super_i_bound(static_cast<double>(window.lo), epsilon)
            : k1k2_bound(static_cast<double>(window.lo), static_cast<double>(window.hi), epsilon);
    return ex;
}

}  // namespace gcdlab
