// Acceptance suite: one pass/fail line per criterion, every tolerance pinned
// in code. Exit status is the number of failed criteria.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "gcdlab/clt_stats.hpp"
#include "gcdlab/euler.hpp"
#include "gcdlab/exact_oracle.hpp"
#include "gcdlab/ldp_solver.hpp"
#include "gcdlab/measure.hpp"
#include "gcdlab/rng.hpp"
#include "gcdlab/sampler.hpp"
#include "gcdlab/special.hpp"
#include "gcdlab/tail_bounds.hpp"
#include "oracles.hpp"

using namespace gcdlab;

namespace {

int g_failures = 0;

struct Criterion {
    int id;
    std::string name;
    std::function<bool(std::string&)> body;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void run_criterion(const Criterion& c) {
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
        ok = c.body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double elapsed = seconds_since(start);
    std::printf("[%s] criterion %02d %-28s (%.1fs) %s\n", ok ? "PASS" : "FAIL", c.id,
                c.name.c_str(), elapsed, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

const PrimeTable& table_1e6() {
    static const PrimeTable t = build_prime_table(1000000);
    return t;
}

// 1. exact pair probability at 1e6 against the truncated product reference
bool criterion_lln_exact(std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    const auto ref = euler_product(ProductFamily::CoprimePair, 2, 1000000, table_1e6());
    const double alpha = exact_pair_prob(1000000, 1, table_1e6()).value();
    const double elapsed = seconds_since(start);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "alpha=%.7f ref=%.7f tail=%.2e", alpha, ref.value,
                  ref.tail_bound);
    detail = buf;
    return ref.tail_bound < 1e-6 && std::fabs(alpha - ref.value) < 1e-3 &&
           std::fabs(alpha - 0.6079271) < 1e-3 && elapsed < 5.0;
}

// 2. single-batch Monte Carlo densities for ell = 1, 2, 3
bool criterion_lln_monte_carlo(std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    const SampleBatch batch = sample_uniform(100000, 100000, 20240515, 0);
    const double pi2 = std::numbers::pi * std::numbers::pi;
    bool ok = true;
    std::string parts;
    for (std::uint64_t ell = 1; ell <= 3; ++ell) {
        const double emp = empirical_gcd_density(batch, ell, table_1e6());
        const double ref = 6.0 / (pi2 * static_cast<double>(ell * ell));
        ok = ok && std::fabs(emp - ref) < 0.01;
        parts += (parts.empty() ? "" : " ") + std::to_string(std::fabs(emp - ref));
    }
    detail = "abs diffs " + parts;
    return ok && seconds_since(start) < 5.0;
}

// 3. Mobius paths equal brute force, zero tolerance
bool criterion_oracle_equivalence(std::string& detail) {
    CounterRng rng(777, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint64_t n = 2 + rng.next_below(400);
        const std::size_t count = 1 + rng.next_below(500);
        const std::uint64_t ell = 1 + rng.next_below(4);
        const SampleBatch b = sample_uniform(n, count, 1234, static_cast<std::uint64_t>(trial));
        if (static_cast<std::uint64_t>(gcd_pair_count(b, ell, table_1e6())) !=
            oracles::naive_pair_gcd_count(b.values, ell)) {
            detail = "density mismatch at trial " + std::to_string(trial);
            return false;
        }
    }
    for (std::uint32_t n = 1; n <= 300; ++n) {
        const auto counts = oracles::enumerate_pair_counts(n);
        for (std::uint64_t ell = 1; ell <= n; ++ell)
            if (exact_pair_prob(n, ell, table_1e6()).count !=
                static_cast<std::int64_t>(counts[ell])) {
                detail = "pair mismatch at n=" + std::to_string(n);
                return false;
            }
    }
    for (std::uint32_t n = 1; n <= 60; ++n) {
        const auto counts = oracles::enumerate_shared_triple_counts(n);
        for (std::uint64_t ell = 1; ell <= n; ++ell)
            if (exact_triple_prob(n, ell, table_1e6()).count !=
                static_cast<std::int64_t>(counts[ell])) {
                detail = "triple mismatch at n=" + std::to_string(n);
                return false;
            }
    }
    detail = "200 batches, pair n<=300, triple n<=60, all exact";
    return true;
}

// 4. finite-n variance vs the limit, exactly and by Monte Carlo
bool criterion_variance(std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    const ExactStats stats = exact_variance(10000, 1, table_1e6());
    const LimitVariance lv = limit_variance(1, 2, table_1e6());
    const double exact_ratio = stats.sigma_n_sq / 1e12 / lv.value;

    ReplicateOptions opts;
    opts.threads = 2;
    const ReplicaEnsemble e = replicate_statistic(10000, 1, 2, 2000, 99, table_1e6(), opts);
    const double mean = e.values.mean();
    const double variance = (e.values - mean).square().sum() / (e.values.size() - 1);

    char buf[128];
    std::snprintf(buf, sizeof(buf), "exact ratio %.4f, ensemble variance %.4f", exact_ratio,
                  variance);
    detail = buf;
    return std::fabs(exact_ratio - 1.0) < 0.02 && std::fabs(variance - 1.0) < 0.15 &&
           seconds_since(start) < 600.0;
}

struct CltOutput {
    std::vector<std::pair<double, double>> points;  // (n, d_ks)
    double dks_large = 0.0;
    bool domination = true;
    std::string domination_detail;
};

const CltOutput& clt_output() {
    static const CltOutput out = [] {
        CltOutput o;
        ReplicateOptions opts;
        opts.threads = 2;
        for (std::uint64_t n : {250ULL, 1000ULL, 4000ULL}) {
            const ReplicaEnsemble e = replicate_statistic(n, 1, 2, 4000, 31337, table_1e6(), opts);
            const double dks = ks_distance(e.values);
            o.points.emplace_back(static_cast<double>(n), dks);
        }
        const ReplicaEnsemble big = replicate_statistic(10000, 1, 2, 2000, 31337, table_1e6(), opts);
        o.dks_large = ks_distance(big.values);

        // bound domination over every tested n
        auto all_points = o.points;
        all_points.emplace_back(10000.0, o.dks_large);
        for (const auto& [n, dks] : all_points) {
            const ExactStats stats =
                exact_variance(static_cast<std::uint64_t>(n), 1, table_1e6());
            const double bound =
                baldi_bound(static_cast<std::uint64_t>(n), std::sqrt(stats.sigma_n_sq));
            o.domination = o.domination && dks <= bound;
            char buf[64];
            std::snprintf(buf, sizeof(buf), " n=%g bound=%.3g%s", n, bound,
                          bound > 1.0 ? "(vacuous)" : "");
            o.domination_detail += buf;
        }
        return o;
    }();
    return out;
}

// 5. KS distance level and convergence rate
bool criterion_clt_rate(std::string& detail) {
    const CltOutput& o = clt_output();
    const FitResult fit = convergence_fit(o.points);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "d_ks(1e4)=%.4f slope=%.3f", o.dks_large, fit.slope);
    detail = buf;
    return o.dks_large < 0.05 && fit.slope >= -0.9 && fit.slope <= -0.2;
}

// 6. dependency bound dominates every observed distance
bool criterion_baldi_domination(std::string& detail) {
    const CltOutput& o = clt_output();
    detail = o.domination_detail;
    return o.domination;
}

// 7. rate-function closed forms and endpoint identities
bool criterion_ldp(std::string& detail) {
    const PrimeTable t = build_prime_table(1000);

    // one-digit curve on a 21-point grid
    const StateShape k1 = binary_shape(1, t);
    std::vector<double> levels;
    for (int i = 0; i <= 20; ++i) levels.push_back(i / 20.0);
    const RateCurve curve = rate_curve(k1, levels);
    double max_err = 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i)
        max_err = std::max(max_err,
                           std::fabs(curve.points[i].rate - oracles::rate_k1_closed_form(levels[i])));
    if (max_err >= 1e-6) {
        detail = "k=1 max error " + std::to_string(max_err);
        return false;
    }

    // two-digit solver against the simplex grid search
    const StateShape k2 = binary_shape(2, t);
    for (double x : {0.45, 0.6, 0.75, 0.9}) {
        const RatePoint p = rate_function_point(x, k2);
        const double oracle = oracles::rate_k2_simplex_search(x);
        if (std::fabs(p.rate - oracle) >= 1e-4) {
            detail = "k=2 deviation " + std::to_string(p.rate - oracle) + " at x=" +
                     std::to_string(x);
            return false;
        }
    }

    // reference level and level-one identities through k = 6
    for (int k = 1; k <= 6; ++k) {
        const StateShape shape = binary_shape(k, t);
        const double ref_level = quadratic_functional(reference_measure(shape));
        if (rate_function_point(ref_level, shape).rate >= 1e-8) {
            detail = "nonzero rate at the reference level, k=" + std::to_string(k);
            return false;
        }
        double expected = 0.0;
        for (int i = 0; i < k; ++i) {
            const double p = t.primes[static_cast<std::size_t>(i)];
            expected += std::log(p / (p - 1.0));
        }
        if (std::fabs(rate_function_point(1.0, shape).rate - expected) >= 1e-6) {
            detail = "level-one rate off at k=" + std::to_string(k);
            return false;
        }
    }

    // runtime ceiling at k = 8 on an 11-point grid
    const auto start = std::chrono::steady_clock::now();
    const StateShape k8 = binary_shape(8, t);
    SolverOptions opts;
    opts.threads = 2;
    const std::vector<double> grid8{0.3, 0.4, 0.5, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.95};
    const RateCurve c8 = rate_curve(k8, grid8, opts);
    const double elapsed = seconds_since(start);
    for (const auto& p : c8.points)
        if (p.rate < 0.0) {
            detail = "negative rate at k=8";
            return false;
        }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "k1 max err %.1e, k=8 grid %.1fs", max_err, elapsed);
    detail = buf;
    return elapsed < 60.0;
}

// 8. square-free counts, closed-form rate, Monte Carlo frequency
bool criterion_squarefree(std::string& detail) {
    std::uint64_t brute4 = 0;
    for (std::uint64_t v = 1; v <= 10000; ++v)
        if (oracles::trial_division_squarefree(v)) ++brute4;
    if (squarefree_count(10000, table_1e6()) != brute4) {
        detail = "count(1e4) differs from trial division";
        return false;
    }
    if (squarefree_count(1000000, table_1e6()) !=
        oracles::squared_sieve_squarefree_count(1000000)) {
        detail = "count(1e6) differs from the square-marking sieve";
        return false;
    }
    if (squarefree_rate(squarefree_density()) != 0.0) {
        detail = "rate not exactly zero at the density";
        return false;
    }
    const SampleBatch batch = sample_uniform(1000000, 1000000, 5150, 0);
    std::uint64_t sf = 0;
    for (std::uint32_t v : batch.values)
        if (table_1e6().mobius_table[v] != 0) ++sf;
    const double freq = static_cast<double>(sf) / 1e6;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "count(1e6)=%llu mc freq %.5f",
                  static_cast<unsigned long long>(squarefree_count(1000000, table_1e6())), freq);
    detail = buf;
    return std::fabs(freq - squarefree_density()) < 0.005;
}

// 9. d-tuple density and ensemble variance at d = 3
bool criterion_dgcd(std::string& detail) {
    const SampleBatch batch = sample_uniform(100000, 100000, 62832, 0);
    const double emp = empirical_dgcd_density(batch, 3, table_1e6());
    const double ref = euler_product(ProductFamily::CoprimePair, 3, 1000000, table_1e6()).value;
    if (std::fabs(emp - ref) >= 0.01) {
        detail = "density gap " + std::to_string(std::fabs(emp - ref));
        return false;
    }
    ReplicateOptions opts;
    opts.threads = 2;
    const ReplicaEnsemble e = replicate_statistic(10000, 1, 3, 800, 8128, table_1e6(), opts);
    const double mean = e.values.mean();
    const double variance = (e.values - mean).square().sum() / (e.values.size() - 1);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "density gap %.4f, d=3 variance %.3f",
                  std::fabs(emp - ref), variance);
    detail = buf;
    return std::fabs(variance - 1.0) < 0.2;
}

// 10. coupling mismatch rate and pattern law
bool criterion_coupling(std::string& detail) {
    const std::size_t count = 100000;
    const CoupledBatch cb = crt_coupling(1000000, {1, 11}, count, 271828, 0, table_1e6());
    if (cb.m != 432) {
        detail = "unexpected multiplier";
        return false;
    }
    std::uint64_t mism = 0;
    for (std::uint8_t mm : cb.mismatch) mism += mm;
    const double rate = static_cast<double>(mism) / static_cast<double>(count);
    const double p = 1.0 / 432.0;
    const double cap = p + 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(count));

    const std::size_t cells = std::size_t{1} << cb.primes.size();
    std::vector<std::uint64_t> observed(cells, 0);
    for (std::uint64_t pattern : cb.tilde_pattern) ++observed[pattern];
    double chi2 = 0.0;
    for (std::size_t pattern = 0; pattern < cells; ++pattern) {
        double prob = 1.0;
        for (std::size_t j = 0; j < cb.primes.size(); ++j) {
            const double pj = cb.primes[j];
            prob *= (pattern >> j) & 1 ? 1.0 / pj : 1.0 - 1.0 / pj;
        }
        const double expected = prob * static_cast<double>(count);
        const double diff = static_cast<double>(observed[pattern]) - expected;
        chi2 += diff * diff / expected;
    }
    const double pvalue = chi_square_sf(chi2, static_cast<int>(cells) - 1);
    char buf[128];
    std::snprintf(buf, sizeof(buf), "mismatch %.5f <= %.5f, chi2 p=%.4f", rate, cap, pvalue);
    detail = buf;
    return rate <= cap && pvalue > 1e-3;
}

// 11. exact-MGF domination grid and the combinatorial envelopes
bool criterion_tail_bounds(std::string& detail) {
    int checked = 0;
    for (int n : {100, 500, 2000})
        for (double alpha = 0.02; alpha <= 0.45 + 1e-9; alpha += 0.01)
            for (double lambda = 0.05; lambda <= 1.0 + 1e-9; lambda += 0.05) {
                const double lambda1 = std::exp(lambda);
                if (!(2.0 * alpha * lambda1 * lambda1 < 1.0) || !(alpha < 0.5)) continue;
                ++checked;
                if (binomial_mgf_bound(alpha, lambda, n) <
                    oracles::binomial_mgf_exact(alpha, lambda, n)) {
                    detail = "violation at alpha=" + std::to_string(alpha) +
                             " lambda=" + std::to_string(lambda) + " n=" + std::to_string(n);
                    return false;
                }
            }

    long double factorial = 1.0L;
    for (int n = 1; n <= 170; ++n) {
        factorial *= n;
        const long double stirling = std::sqrt(2.0L * std::numbers::pi_v<long double> * n) *
                                     std::pow(static_cast<long double>(n) /
                                                  std::numbers::e_v<long double>,
                                              static_cast<long double>(n));
        const long double ratio = factorial / stirling;
        // the upper end is an exact equality at n = 1; allow representation error
        const long double cap = std::numbers::e_v<long double> /
                                std::sqrt(2.0L * std::numbers::pi_v<long double>);
        if (!(ratio >= 1.0L && ratio <= cap * (1.0L + 1e-15L))) {
            detail = "Stirling sandwich broken at n=" + std::to_string(n);
            return false;
        }
    }

    for (std::int64_t n = 1; n <= 300; ++n)
        for (std::int64_t i = 0; i <= n; ++i)
            if (log_binomial(n, i) >
                std::log(4.0) + static_cast<double>(n) * entropy_h(static_cast<double>(i) / n) +
                    1e-9) {
                detail = "entropy envelope broken at n=" + std::to_string(n);
                return false;
            }

    // observable-threshold experiment under the product measure
    std::vector<double> pilot;
    for (int r = 0; r < 100; ++r) {
        const PatternBatch b =
            sample_tilde({3, 50}, 200, 14142, 900000 + static_cast<std::uint64_t>(r), table_1e6());
        std::vector<std::uint64_t> counts(b.primes.size(), 0);
        for (std::uint64_t mask : b.masks)
            for (std::size_t j = 0; j < b.primes.size(); ++j)
                if (mask & (1ULL << j)) ++counts[j];
        double stat = 0.0;
        for (std::uint64_t y : counts) stat += static_cast<double>(y) * static_cast<double>(y);
        pilot.push_back(stat);
    }
    std::sort(pilot.begin(), pilot.end());
    const double epsilon = pilot[90] / (200.0 * 200.0);
    const TailExperiment ex =
        mc_tail_estimate({3, 50}, 200, epsilon, MeasureKind::Product, 1000, 14142, table_1e6());
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%d grid points, exceedances %lld, analytic %.3f", checked,
                  static_cast<long long>(ex.exceedances), ex.analytic_bound);
    detail = buf;
    return ex.analytic_bound >= ex.empirical_log_prob_point &&
           ex.empirical_log_prob_ucb >= ex.empirical_log_prob_point;
}

}  // namespace

int main() {
    std::printf("gcdlab acceptance suite\n");
    const std::vector<Criterion> criteria{
        {1, "lln exact", criterion_lln_exact},
        {2, "lln monte carlo", criterion_lln_monte_carlo},
        {3, "oracle equivalence", criterion_oracle_equivalence},
        {4, "variance", criterion_variance},
        {5, "clt rate", criterion_clt_rate},
        {6, "baldi domination", criterion_baldi_domination},
        {7, "ldp closed forms", criterion_ldp},
        {8, "square-free suite", criterion_squarefree},
        {9, "d-tuple", criterion_dgcd},
        {10, "crt coupling", criterion_coupling},
        {11, "tail bounds", criterion_tail_bounds},
    };
    for (const Criterion& c : criteria) run_criterion(c);
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - g_failures,
                criteria.size());
    return g_failures;
}
