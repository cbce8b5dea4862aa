#include "gcdlab/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <numeric>
#include <sstream>

#include "gcdlab/clt_stats.hpp"
#include "gcdlab/euler.hpp"
#include "gcdlab/exact_oracle.hpp"
#include "gcdlab/ldp_solver.hpp"
#include "gcdlab/measure.hpp"
#include "gcdlab/report.hpp"
#include "gcdlab/sampler.hpp"
#include "gcdlab/special.hpp"
#include "gcdlab/tail_bounds.hpp"
#include "gcdlab/version.hpp"

namespace gcdlab {

namespace {

std::string join_list(const std::vector<std::uint64_t>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(xs[i]);
    }
    return s;
}

std::string resolve_output(const std::string& path) {
    if (path.empty()) return path;
    if (path.front() == '/') return path;
    if (const char* dir = std::getenv("GCDLAB_OUT_DIR"); dir && *dir)
        return std::string(dir) + "/" + path;
    return path;
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
    if (path.empty()) return path;
    const auto dot = path.rfind('.');
    if (dot == std::string::npos || path.find('/', dot) != std::string::npos)
        return path + suffix;
    return path.substr(0, dot) + suffix + path.substr(dot);
}

void check_failed(const std::string& what) {
    throw std::runtime_error("--check failed: " + what);
}

std::uint64_t naive_pair_count(const std::vector<std::uint32_t>& values, std::uint64_t ell) {
    std::uint64_t count = 0;
    for (std::uint32_t a : values)
        for (std::uint32_t b : values)
            if (std::gcd(a, b) == ell) ++count;
    return count;
}

struct CommonConfig {
    std::vector<std::pair<std::string, std::string>> entries;
    void add(const std::string& key, const std::string& value) { entries.emplace_back(key, value); }
    void add(const std::string& key, std::uint64_t value) { add(key, std::to_string(value)); }
    void add(const std::string& key, double value) { add(key, format_cell(value)); }
};

// ---------------------------------------------------------------- lln -----

int run_lln(const RunConfig& cfg) {
    const std::uint64_t n = cfg.n_list.empty() ? 100000 : cfg.n_list.front();
    const std::size_t count = cfg.count ? static_cast<std::size_t>(cfg.count)
                                        : static_cast<std::size_t>(n);
    const PrimeTable table = build_prime_table(std::max<std::uint64_t>(n, 300));

    if (cfg.check) {
        const SampleBatch small = sample_uniform(200, 300, cfg.seed, 9999);
        const auto fast = gcd_pair_count(small, 1, table);
        const auto naive = naive_pair_count(small.values, 1);
        if (static_cast<std::uint64_t>(fast) != naive)
            check_failed("gcd pair count disagrees with the naive double loop");
    }

    const SampleBatch batch = sample_uniform(n, count, cfg.seed, 0);
    const double pi2 = std::numbers::pi * std::numbers::pi;

    Report report;
    report.command = "lln";
    report.config = {{"n", std::to_string(n)},
                     {"count", std::to_string(count)},
                     {"ell", join_list(cfg.ell_list)},
                     {"seed", std::to_string(cfg.seed)}};
    report.columns = {"ell", "n", "count", "empirical", "exact", "reference", "abs_diff"};
    for (std::uint64_t ell : cfg.ell_list) {
        const double empirical = empirical_gcd_density(batch, ell, table);
        const double exact = exact_pair_prob(n, ell, table).value();
        const double reference = 6.0 / (pi2 * static_cast<double>(ell) * static_cast<double>(ell));
        report.rows.push_back({format_cell(ell), format_cell(n),
                               format_cell(static_cast<std::uint64_t>(count)),
                               format_cell(empirical), format_cell(exact), format_cell(reference),
                               format_cell(std::fabs(empirical - reference))});
    }
    write_report(report, resolve_output(cfg.output), cfg.format);
    return 0;
}

// -------------------------------------------------------------- exact -----

int run_exact(const RunConfig& cfg) {
    const std::uint64_t n = cfg.n_list.empty() ? 10000 : cfg.n_list.front();
    const std::uint64_t ell = cfg.ell_list.empty() ? 1 : cfg.ell_list.front();
    const PrimeTable table = build_prime_table(std::max<std::uint64_t>(n, 100));

    if (cfg.check) {
        const auto prob = exact_pair_prob(40, 1, table);
        std::uint64_t brute = 0;
        for (std::uint32_t a = 1; a <= 40; ++a)
            for (std::uint32_t b = 1; b <= 40; ++b)
                if (std::gcd(a, b) == 1) ++brute;
        if (static_cast<std::uint64_t>(prob.count) != brute)
            check_failed("pair probability disagrees with enumeration at n=40");
    }

    const ExactStats stats = exact_variance(n, ell, table);
    const LimitVariance lv = limit_variance(ell, 2, table);
    const double n3 = std::pow(static_cast<double>(n), 3.0);

    Report report;
    report.command = "exact";
    report.config = {{"n", std::to_string(n)}, {"ell", std::to_string(ell)}};
    report.columns = {"n",           "ell",
                      "alpha",       "beta",
                      "sigma_n_sq",  "sigma_n_sq_over_n3",
                      "limit_variance", "ratio"};
    report.rows.push_back({format_cell(n), format_cell(ell), format_cell(stats.alpha.value()),
                           format_cell(stats.beta.value()), format_cell(stats.sigma_n_sq),
                           format_cell(stats.sigma_n_sq / n3), format_cell(lv.value),
                           format_cell(stats.sigma_n_sq / n3 / lv.value)});
    write_report(report, resolve_output(cfg.output), cfg.format);
    return 0;
}

// ---------------------------------------------------------------- clt -----

int run_clt(const RunConfig& cfg) {
    std::vector<std::uint64_t> ns = cfg.n_list.empty()
                                        ? std::vector<std::uint64_t>{250, 1000, 4000}
                                        : cfg.n_list;
    const std::uint64_t ell = cfg.ell_list.empty() ? 1 : cfg.ell_list.front();
    const int replicas = cfg.replicas > 0 ? cfg.replicas : 2000;
    const DependencyMode mode =
        cfg.d_mode == "paper" ? DependencyMode::Paper : DependencyMode::Recount;
    const std::uint64_t max_n = *std::max_element(ns.begin(), ns.end());
    const PrimeTable table = build_prime_table(std::max<std::uint64_t>(max_n, 100));

    if (cfg.check) {
        Eigen::ArrayXd grid(100);
        for (int i = 0; i < 100; ++i) {
            double lo = -10, hi = 10;
            const double target = (i + 0.5) / 100.0;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                (normal_cdf(mid) < target ? lo : hi) = mid;
            }
            grid[i] = 0.5 * (lo + hi);
        }
        if (std::fabs(ks_distance(grid) - 0.005) > 1e-9)
            check_failed("ks_distance off on exact normal quantiles");
    }

    Report report;
    report.command = "clt";
    report.config = {{"n", join_list(ns)},
                     {"ell", std::to_string(ell)},
                     {"d", std::to_string(cfg.d)},
                     {"replicas", std::to_string(replicas)},
                     {"seed", std::to_string(cfg.seed)},
                     {"D_mode", cfg.d_mode},
                     {"scale_literal_paper", cfg.scale_literal_paper ? "1" : "0"},
                     {"threads", std::to_string(cfg.threads)}};
    report.columns = {"n",  "replicas", "ell",        "d",      "d_ks",
                      "baldi_bound", "D_mode", "dependency", "vacuous"};

    ReplicateOptions ropts;
    ropts.scale_literal_paper = cfg.scale_literal_paper;
    ropts.threads = cfg.threads;

    std::vector<std::pair<double, double>> fit_points;
    for (std::uint64_t n : ns) {
        const ReplicaEnsemble ensemble =
            replicate_statistic(n, ell, cfg.d, replicas, cfg.seed, table, ropts);
        const double dks = ks_distance(ensemble.values);
        double bound = std::numeric_limits<double>::quiet_NaN();
        std::uint64_t dependency = 0;
        if (cfg.d == 2) {
            const ExactStats stats = exact_variance(n, ell, table);
            bound = baldi_bound(n, std::sqrt(stats.sigma_n_sq), mode);
            dependency = dependency_degree(n, mode);
        }
        fit_points.emplace_back(static_cast<double>(n), dks);
        report.rows.push_back({format_cell(n), format_cell(static_cast<std::int64_t>(replicas)),
                               format_cell(ell), format_cell(static_cast<std::int64_t>(cfg.d)),
                               format_cell(dks), format_cell(bound), cfg.d_mode,
                               format_cell(dependency),
                               format_cell(!std::isnan(bound) && bound > 1.0)});
    }
    if (fit_points.size() >= 3) {
        const FitResult fit = convergence_fit(fit_points);
        report.footer = {{"convergence_slope", format_cell(fit.slope)},
                         {"convergence_intercept", format_cell(fit.intercept)}};
    }
    write_report(report, resolve_output(cfg.output), cfg.format);
    return 0;
}

// ---------------------------------------------------------------- ldp -----

std::vector<int> parse_k_spec(const std::string& spec, std::uint64_t ell) {
    if (spec.empty()) {
        std::vector<int> ladder;
        if (ell == 1)
            for (int k = 2; k <= 12; ++k) ladder.push_back(k);
        else
            for (int k = 1; k <= 8; ++k) ladder.push_back(k);
        return ladder;
    }
    const auto colon = spec.find(':');
    if (colon == std::string::npos) return {std::stoi(spec)};
    const int lo = std::stoi(spec.substr(0, colon));
    const int hi = std::stoi(spec.substr(colon + 1));
    if (lo > hi) throw std::domain_error("ldp: empty k ladder");
    std::vector<int> ladder;
    for (int k = lo; k <= hi; ++k) ladder.push_back(k);
    return ladder;
}

int run_ldp(const RunConfig& cfg) {
    const std::uint64_t ell = cfg.ell_list.empty() ? 1 : cfg.ell_list.front();
    const std::vector<int> ks = parse_k_spec(cfg.k_spec, ell);
    const std::vector<double> levels = parse_grid(cfg.grid.empty() ? "0.05:0.95:19" : cfg.grid);
    const PrimeTable table = build_prime_table(std::max<std::uint64_t>(1000, ell));

    SolverOptions opts;
    opts.damping = cfg.damping;
    opts.tol = cfg.tol;
    opts.max_iter = cfg.max_iter;
    opts.lambda_min = -std::fabs(cfg.lambda_window);
    opts.lambda_max = std::fabs(cfg.lambda_window);
    opts.restarts = cfg.restarts;
    opts.threads = cfg.threads;
    opts.kernel = cfg.strict_phrase_kernel ? KernelVariant::StrictPhrase
                                           : KernelVariant::Divisibility;
    const std::string kernel_label =
        ell == 1 ? "f" : (cfg.strict_phrase_kernel ? "f_ell_strict_phrase" : "f_ell_divisibility");

    if (cfg.check) {
        const RatePoint p = rate_function_point(0.75, binary_shape(1, table), opts);
        const double t = std::sqrt(1.0 - 0.75);
        const double closed = t * std::log(2.0 * t) + (1.0 - t) * std::log(2.0 * (1.0 - t));
        if (std::fabs(p.rate - closed) > 1e-6)
            check_failed("k=1 solver deviates from the closed form at x=0.75");
    }

    for (int k : ks) {
        const StateShape shape = ell == 1 ? binary_shape(k, table) : mixed_shape(ell, k, table);
        const RateCurve curve = rate_curve(shape, levels, opts);

        Report report;
        report.command = "ldp";
        report.config = {{"ell", std::to_string(ell)},
                         {"k", std::to_string(k)},
                         {"kernel", kernel_label},
                         {"grid", cfg.grid.empty() ? "0.05:0.95:19" : cfg.grid},
                         {"damping", format_cell(cfg.damping)},
                         {"tol", format_cell(cfg.tol)},
                         {"max_iter", std::to_string(cfg.max_iter)},
                         {"lambda_window", format_cell(cfg.lambda_window)},
                         {"restarts", std::to_string(cfg.restarts)},
                         {"threads", std::to_string(cfg.threads)}};
        report.columns = {"x", "rate", "lambda", "iterations", "converged"};
        std::string checksums;
        for (const RateCurveEntry& e : curve.points) {
            report.rows.push_back({format_cell(e.x), format_cell(e.rate),
                                   std::isinf(e.lambda) ? "inf" : format_cell(e.lambda),
                                   format_cell(static_cast<std::int64_t>(e.iterations)),
                                   format_cell(e.converged)});
            char hex[24];
            std::snprintf(hex, sizeof(hex), "%016llx",
                          static_cast<unsigned long long>(e.measure_checksum));
            checksums += (checksums.empty() ? "" : ",") + std::string(hex);
        }
        report.footer = {{"states", std::to_string(shape.state_count())},
                         {"measure_checksums", checksums}};

        const std::string path = ks.size() == 1
                                     ? resolve_output(cfg.output)
                                     : with_suffix(resolve_output(cfg.output),
                                                   ".k" + std::to_string(k));
        write_report(report, path, cfg.format);
    }
    return 0;
}

// --------------------------------------------------------- squarefree -----

int run_squarefree(const RunConfig& cfg) {
    const std::uint64_t n = cfg.n_list.empty() ? 1000000 : cfg.n_list.front();
    const std::size_t count = cfg.count ? static_cast<std::size_t>(cfg.count)
                                        : static_cast<std::size_t>(100000);
    const PrimeTable table = build_prime_table(std::max<std::uint64_t>(n, 100));

    if (cfg.check) {
        std::uint64_t brute = 0;
        for (std::uint64_t v = 1; v <= 10000; ++v) {
            bool squarefree = true;
            for (std::uint64_t d = 2; d * d <= v; ++d)
                if (v % (d * d) == 0) {
                    squarefree = false;
                    break;
                }
            if (squarefree) ++brute;
        }
        if (squarefree_count(10000, table) != brute)
            check_failed("squarefree_count disagrees with trial division at n=10^4");
    }

    const std::uint64_t exact_count = squarefree_count(n, table);
    const SampleBatch batch = sample_uniform(n, count, cfg.seed, 0);
    std::uint64_t mc_count = 0;
    for (std::uint32_t v : batch.values)
        if (table.mobius_table[v] != 0) ++mc_count;
    const double reference = squarefree_density();
    const double mc_density = static_cast<double>(mc_count) / static_cast<double>(count);

    Report report;
    report.command = "squarefree";
    report.config = {{"n", std::to_string(n)},
                     {"count", std::to_string(count)},
                     {"seed", std::to_string(cfg.seed)}};
    report.columns = {"n",          "exact_count", "exact_density", "mc_count",
                      "mc_density", "reference",   "abs_diff"};
    report.rows.push_back({format_cell(n), format_cell(exact_count),
                           format_cell(static_cast<double>(exact_count) / static_cast<double>(n)),
                           format_cell(mc_count), format_cell(mc_density), format_cell(reference),
                           format_cell(std::fabs(mc_density - reference))});
    write_report(report, resolve_output(cfg.output), cfg.format);

    if (!cfg.grid.empty()) {
        Report rate_report;
        rate_report.command = "squarefree-rate";
        rate_report.config = {{"grid", cfg.grid}};
        rate_report.columns = {"x", "rate"};
        for (double x : parse_grid(cfg.grid))
            rate_report.rows.push_back({format_cell(x), format_cell(squarefree_rate(x))});
        write_report(rate_report, with_suffix(resolve_output(cfg.output), ".rate"), cfg.format);
    }
    return 0;
}

// --------------------------------------------------------------- dgcd -----

int run_dgcd(const RunConfig& cfg) {
    const std::uint64_t n = cfg.n_list.empty() ? 100000 : cfg.n_list.front();
    const std::size_t count = cfg.count ? static_cast<std::size_t>(cfg.count)
                                        : static_cast<std::size_t>(n);
    const PrimeTable table = build_prime_table(std::max<std::uint64_t>(n, 100));

    if (cfg.check) {
        const SampleBatch small = sample_uniform(50, 60, cfg.seed, 9999);
        std::uint64_t naive = 0;
        for (std::uint32_t a : small.values)
            for (std::uint32_t b : small.values)
                for (std::uint32_t c : small.values)
                    if (std::gcd(std::gcd(a, b), c) == 1) ++naive;
        if (std::fabs(static_cast<double>(gcd_tuple_count(small, 3, table)) -
                      static_cast<double>(naive)) > 0.5)
            check_failed("tuple count disagrees with the naive triple loop");
    }

    const SampleBatch batch = sample_uniform(n, count, cfg.seed, 0);
    const double empirical = empirical_dgcd_density(batch, cfg.d, table);
    const double reference = euler_product(ProductFamily::CoprimePair, cfg.d, table.limit, table).value;

    double ensemble_variance = std::numeric_limits<double>::quiet_NaN();
    double variance_ratio = std::numeric_limits<double>::quiet_NaN();
    if (cfg.replicas > 0) {
        ReplicateOptions ropts;
        ropts.threads = cfg.threads;
        const ReplicaEnsemble e =
            replicate_statistic(n, 1, cfg.d, cfg.replicas, cfg.seed, table, ropts);
        const double mean = e.values.mean();
        ensemble_variance = (e.values - mean).square().sum() / (e.values.size() - 1);
        variance_ratio = ensemble_variance;  // scale already folds in limit_variance
    }

    Report report;
    report.command = "dgcd";
    report.config = {{"d", std::to_string(cfg.d)},
                     {"n", std::to_string(n)},
                     {"count", std::to_string(count)},
                     {"replicas", std::to_string(cfg.replicas)},
                     {"seed", std::to_string(cfg.seed)}};
    report.columns = {"d",        "n",        "count",    "empirical", "reference",
                      "abs_diff", "replicas", "ensemble_variance", "variance_ratio"};
    report.rows.push_back({format_cell(static_cast<std::int64_t>(cfg.d)), format_cell(n),
                           format_cell(static_cast<std::uint64_t>(count)), format_cell(empirical),
                           format_cell(reference), format_cell(std::fabs(empirical - reference)),
                           format_cell(static_cast<std::int64_t>(cfg.replicas)),
                           format_cell(ensemble_variance), format_cell(variance_ratio)});
    write_report(report, resolve_output(cfg.output), cfg.format);
    return 0;
}

// ----------------------------------------------------------- coupling -----

int run_coupling(const RunConfig& cfg) {
    const std::uint64_t n = cfg.n_list.empty() ? 1000000 : cfg.n_list.front();
    const std::size_t count = cfg.count ? static_cast<std::size_t>(cfg.count)
                                        : static_cast<std::size_t>(100000);
    const std::uint64_t lo = cfg.window_lo ? cfg.window_lo : 1;
    const std::uint64_t hi = cfg.window_hi ? cfg.window_hi : 11;
    const PrimeTable table = build_prime_table(std::max<std::uint64_t>(n, 100));

    if (cfg.check) {
        // exact threshold: n a multiple of the window primorial leaves no slack
        const CoupledBatch exact_cb = crt_coupling(2310 * 10, {1, 11}, 2000, cfg.seed, 77, table);
        for (std::uint8_t mm : exact_cb.mismatch)
            if (mm) check_failed("mismatch observed although the threshold equals n");
    }

    const CoupledBatch cb = crt_coupling(n, {lo, hi}, count, cfg.seed, 0, table);
    std::uint64_t mismatches = 0;
    for (std::uint8_t mm : cb.mismatch) mismatches += mm;
    const double rate = static_cast<double>(mismatches) / static_cast<double>(count);

    // chi-square of the observed tilde patterns against the product law
    const std::size_t cells = std::size_t{1} << cb.primes.size();
    std::vector<std::uint64_t> observed(cells, 0);
    for (std::uint64_t pattern : cb.tilde_pattern) ++observed[pattern];
    double chi2 = 0.0;
    for (std::size_t pattern = 0; pattern < cells; ++pattern) {
        double prob = 1.0;
        for (std::size_t j = 0; j < cb.primes.size(); ++j) {
            const double p = cb.primes[j];
            prob *= (pattern >> j) & 1 ? 1.0 / p : 1.0 - 1.0 / p;
        }
        const double expected = prob * static_cast<double>(count);
        const double diff = static_cast<double>(observed[pattern]) - expected;
        chi2 += diff * diff / expected;
    }
    const int dof = static_cast<int>(cells) - 1;
    const double pvalue = chi_square_sf(chi2, dof);

    Report report;
    report.command = "coupling";
    report.config = {{"k1", std::to_string(lo)},
                     {"k2", std::to_string(hi)},
                     {"n", std::to_string(n)},
                     {"count", std::to_string(count)},
                     {"seed", std::to_string(cfg.seed)}};
    report.columns = {"k1",        "k2",        "n",          "m",
                      "count",     "mismatches", "mismatch_rate", "rate_bound",
                      "chi2_stat", "chi2_dof",  "chi2_pvalue"};
    report.rows.push_back({format_cell(lo), format_cell(hi), format_cell(n), format_cell(cb.m),
                           format_cell(static_cast<std::uint64_t>(count)), format_cell(mismatches),
                           format_cell(rate), format_cell(1.0 / static_cast<double>(cb.m)),
                           format_cell(chi2), format_cell(static_cast<std::int64_t>(dof)),
                           format_cell(pvalue)});
    write_report(report, resolve_output(cfg.output), cfg.format);
    return 0;
}

// -------------------------------------------------------------- tails -----

int run_tails(const RunConfig& cfg) {
    const std::uint64_t n = cfg.n_list.empty() ? 200 : cfg.n_list.front();
    const int replicas = cfg.replicas > 0 ? cfg.replicas : 2000;
    const MeasureKind kind =
        cfg.measure == "uniform" ? MeasureKind::Uniform : MeasureKind::Product;
    const std::uint64_t lo = cfg.window_lo ? cfg.window_lo : 3;
    const std::uint64_t hi = cfg.window_hi ? cfg.window_hi : 50;
    const PrimeTable table = build_prime_table(std::max<std::uint64_t>({n, hi, 100}));

    if (cfg.check) {
        const double ucb = clopper_pearson_upper(0, 100, 0.99);
        if (std::fabs(ucb - (1.0 - std::pow(0.01, 1.0 / 100.0))) > 1e-9)
            check_failed("Clopper-Pearson zero-count upper bound off");
    }

    double epsilon = cfg.epsilon;
    if (cfg.pilot_quantile > 0.0) {
        const int pilot = std::max(50, replicas / 10);
        std::vector<double> stats;
        stats.reserve(static_cast<std::size_t>(pilot));
        for (int r = 0; r < pilot; ++r) {
            double stat = 0.0;
            if (kind == MeasureKind::Uniform) {
                const SampleBatch batch = sample_uniform(n, static_cast<std::size_t>(n), cfg.seed,
                                                         1000000 + static_cast<std::uint64_t>(r));
                for (std::uint64_t y : divisor_counts(batch, {lo, hi}, table).counts)
                    stat += static_cast<double>(y) * static_cast<double>(y);
            } else {
                const PatternBatch batch = sample_tilde({lo, hi}, static_cast<std::size_t>(n),
                                                        cfg.seed,
                                                        1000000 + static_cast<std::uint64_t>(r),
                                                        table);
                std::vector<std::uint64_t> counts(batch.primes.size(), 0);
                for (std::uint64_t mask : batch.masks)
                    for (std::size_t j = 0; j < batch.primes.size(); ++j)
                        if (mask & (1ULL << j)) ++counts[j];
                for (std::uint64_t y : counts)
                    stat += static_cast<double>(y) * static_cast<double>(y);
            }
            stats.push_back(stat);
        }
        std::sort(stats.begin(), stats.end());
        const auto idx = static_cast<std::size_t>(cfg.pilot_quantile * (stats.size() - 1));
        epsilon = stats[idx] / (static_cast<double>(n) * static_cast<double>(n));
    }
    if (!(epsilon > 0.0))
        throw std::domain_error("tails: provide --epsilon > 0 or --pilot-quantile");

    const TailExperiment ex = mc_tail_estimate({lo, hi}, n, epsilon, kind, replicas, cfg.seed, table);

    Report report;
    report.command = "tails";
    report.config = {{"measure", cfg.measure},
                     {"k1", std::to_string(lo)},
                     {"k2", std::to_string(hi)},
                     {"n", std::to_string(n)},
                     {"epsilon", format_cell(epsilon)},
                     {"replicas", std::to_string(replicas)},
                     {"seed", std::to_string(cfg.seed)}};
    report.columns = {"measure",     "k1",          "k2",         "n",
                      "epsilon",     "replicas",    "exceedances", "point_log_prob",
                      "ucb_log_prob", "analytic_bound"};
    report.rows.push_back(
        {cfg.measure, format_cell(lo), format_cell(hi), format_cell(n), format_cell(epsilon),
         format_cell(static_cast<std::int64_t>(replicas)), format_cell(ex.exceedances),
         std::isinf(ex.empirical_log_prob_point) ? "-inf" : format_cell(ex.empirical_log_prob_point),
         format_cell(ex.empirical_log_prob_ucb), format_cell(ex.analytic_bound)});
    write_report(report, resolve_output(cfg.output), cfg.format);
    return 0;
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
    const auto first = spec.find(':');
    const auto second = spec.find(':', first + 1);
    if (first == std::string::npos || second == std::string::npos)
        throw std::domain_error("grid spec must be start:end:points");
    const double start = std::stod(spec.substr(0, first));
    const double end = std::stod(spec.substr(first + 1, second - first - 1));
    const int points = std::stoi(spec.substr(second + 1));
    if (points < 1 || end < start) throw std::domain_error("grid spec not increasing");
    std::vector<double> grid(static_cast<std::size_t>(points));
    if (points == 1) {
        grid[0] = start;
        return grid;
    }
    for (int i = 0; i < points; ++i)
        grid[static_cast<std::size_t>(i)] = start + (end - start) * i / (points - 1);
    return grid;
}

int run(const RunConfig& config) {
    if (config.command == "lln") return run_lln(config);
    if (config.command == "exact") return run_exact(config);
    if (config.command == "clt") return run_clt(config);
    if (config.command == "ldp") return run_ldp(config);
    if (config.command == "squarefree") return run_squarefree(config);
    if (config.command == "dgcd") return run_dgcd(config);
    if (config.command == "coupling") return run_coupling(config);
    if (config.command == "tails") return run_tails(config);
    throw std::domain_error("run: unknown command " + config.command);
}

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Limit-theorem experiments for the empirical density of gcds"};
    app.set_version_flag("--version", GCDLAB_VERSION);
    app.require_subcommand(1);

    RunConfig cfg;
    std::string schema_format = "csv";
    std::string schema_command;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.output, "output path (default stdout; GCDLAB_OUT_DIR applies)");
        sub->add_option("--format", cfg.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--seed", cfg.seed, "64-bit seed");
        sub->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
        sub->add_flag("--check", cfg.check, "run the reduced-size brute-force oracle first");
    };

    CLI::App* lln = app.add_subcommand("lln", "empirical vs exact gcd-density");
    lln->add_option("--n", cfg.n_list, "range bound")->delimiter(',');
    lln->add_option("--count", cfg.count, "draws per batch (default n)");
    lln->add_option("--ell", cfg.ell_list, "target gcd list")->delimiter(',');
    add_common(lln);

    CLI::App* exact = app.add_subcommand("exact", "exact moments and variances");
    exact->add_option("--n", cfg.n_list, "sample-space size")->delimiter(',');
    exact->add_option("--ell", cfg.ell_list, "target gcd")->delimiter(',');
    add_common(exact);

    CLI::App* clt = app.add_subcommand("clt", "replica ensembles and KS distances");
    clt->add_option("--n", cfg.n_list, "comma list of n values")->delimiter(',');
    clt->add_option("--ell", cfg.ell_list, "target gcd")->delimiter(',');
    clt->add_option("--d", cfg.d, "tuple size")->check(CLI::Range(2, 8));
    clt->add_option("--replicas", cfg.replicas, "replica count");
    clt->add_flag("--scale-literal-paper", cfg.scale_literal_paper,
                  "use the literal 2 sigma^2 n^(3/2) normalization");
    clt->add_option("--d-mode", cfg.d_mode, "dependency degree: paper (2n-5) or recount (2n-3)")
        ->check(CLI::IsMember({"paper", "recount"}));
    add_common(clt);

    CLI::App* ldp = app.add_subcommand("ldp", "truncated rate function curves");
    ldp->add_option("--ell", cfg.ell_list, "target gcd")->delimiter(',');
    ldp->add_option("--k", cfg.k_spec, "digit truncation, single k or ladder lo:hi");
    ldp->add_option("--grid", cfg.grid, "level grid start:end:points");
    ldp->add_flag("--strict-phrase-kernel", cfg.strict_phrase_kernel,
                  "forbid shared ternary 1s as well (comparison variant)");
    ldp->add_option("--damping", cfg.damping, "fixed-point damping");
    ldp->add_option("--tol", cfg.tol, "stationarity tolerance");
    ldp->add_option("--max-iter", cfg.max_iter, "fixed-point iteration cap");
    ldp->add_option("--lambda-window", cfg.lambda_window, "multiplier sweep half-width");
    ldp->add_option("--restarts", cfg.restarts, "perturbed restarts");
    add_common(ldp);

    CLI::App* squarefree = app.add_subcommand("squarefree", "square-free density suite");
    squarefree->add_option("--n", cfg.n_list, "range bound")->delimiter(',');
    squarefree->add_option("--count", cfg.count, "Monte Carlo draws");
    squarefree->add_option("--grid", cfg.grid, "emit the closed-form rate on this grid");
    add_common(squarefree);

    CLI::App* dgcd = app.add_subcommand("dgcd", "d-tuple gcd density");
    dgcd->add_option("--d", cfg.d, "tuple size")->check(CLI::Range(2, 8));
    dgcd->add_option("--n", cfg.n_list, "range bound")->delimiter(',');
    dgcd->add_option("--count", cfg.count, "draws per batch (default n)");
    dgcd->add_option("--replicas", cfg.replicas, "also run the variance check");
    add_common(dgcd);

    CLI::App* coupling = app.add_subcommand("coupling", "CRT coupling experiment");
    coupling->add_option("--window", [&cfg](const std::vector<std::string>& vals) {
        const auto comma = vals.front().find(',');
        if (comma == std::string::npos) return false;
        cfg.window_lo = std::stoull(vals.front().substr(0, comma));
        cfg.window_hi = std::stoull(vals.front().substr(comma + 1));
        return true;
    }, "prime window k1,k2 (primes with k1 < p <= k2)");
    coupling->add_option("--n", cfg.n_list, "range bound")->delimiter(',');
    coupling->add_option("--count", cfg.count, "coupled draws");
    add_common(coupling);

    CLI::App* tails = app.add_subcommand("tails", "window tail statistics vs analytic bounds");
    tails->add_option("--measure", cfg.measure, "uniform or product")
        ->check(CLI::IsMember({"uniform", "product"}));
    tails->add_option("--window", [&cfg](const std::vector<std::string>& vals) {
        const auto comma = vals.front().find(',');
        if (comma == std::string::npos) return false;
        cfg.window_lo = std::stoull(vals.front().substr(0, comma));
        cfg.window_hi = std::stoull(vals.front().substr(comma + 1));
        return true;
    }, "prime window k1,k2");
    tails->add_option("--n", cfg.n_list, "batch size")->delimiter(',');
    tails->add_option("--epsilon", cfg.epsilon, "threshold");
    tails->add_option("--pilot-quantile", cfg.pilot_quantile,
                      "choose epsilon at this quantile of a pilot run");
    tails->add_option("--replicas", cfg.replicas, "replica count");
    add_common(tails);

    CLI::App* schema = app.add_subcommand("schema", "print report schemas");
    schema->add_option("--format", schema_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    schema->add_option("--command", schema_command, "command name (default: all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (schema->parsed()) {
            if (!schema_command.empty()) {
                std::cout << report_schema(schema_format, schema_command) << "\n";
            } else {
                for (const std::string& name : schema_commands())
                    std::cout << name << ": " << report_schema(schema_format, name) << "\n";
            }
            return 0;
        }
        for (CLI::App* sub : app.get_subcommands()) cfg.command = sub->get_name();
        return run(cfg);
    } catch (const std::exception& e) {
        nlohmann::json err;
        err["error"] = {{"command", cfg.command}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 3;
    }
}

}  // namespace gcdlab
