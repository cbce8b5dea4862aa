#include "gcdlab/clt_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gcdlab/parallel.hpp"
#include "gcdlab/sampler.hpp"
#include "gcdlab/special.hpp"

namespace gcdlab {

ReplicaEnsemble replicate_statistic(std::uint64_t n, std::uint64_t ell, int d, int replicas,
                                    std::uint64_t seed, const PrimeTable& table,
                                    const ReplicateOptions& opts) {
    if (n < 3) throw std::domain_error("replicate_statistic: n must be >= 3");
    if (replicas < 2) throw std::domain_error("replicate_statistic: replicas must be >= 2");
    if (d < 2) throw std::domain_error("replicate_statistic: d must be >= 2");
    if (d >= 3 && ell != 1)
        throw std::domain_error("replicate_statistic: d >= 3 supported only for ell = 1");

    ReplicaEnsemble e;
    e.n = n;
    e.ell = ell;
    e.d = d;
    e.replicas = replicas;
    e.seed = seed;

    const double nd = static_cast<double>(n);
    const LimitVariance lv = limit_variance(ell, d, table);
    e.norm.sigma_limit = std::sqrt(lv.value);
    if (d == 2) {
        const double pi2 = std::numbers::pi * std::numbers::pi;
        e.norm.center = nd * nd * 6.0 / (static_cast<double>(ell) * ell * pi2);
        e.norm.scale = opts.scale_literal_paper
                           ? 2.0 * lv.value * std::pow(nd, 1.5)
                           : 2.0 * e.norm.sigma_limit * std::pow(nd, 1.5);
    } else {
        const auto pair = euler_product(ProductFamily::CoprimePair, d, table.limit, table);
        e.norm.center = std::pow(nd, d) * pair.value;
        e.norm.scale = d * e.norm.sigma_limit * std::pow(nd, (2.0 * d - 1.0) / 2.0);
    }

    e.values = Eigen::ArrayXd::Zero(replicas);
    parallel_for(static_cast<std::size_t>(replicas), opts.threads, [&](std::size_t r) {
        const SampleBatch batch =
            sample_uniform(n, static_cast<std::size_t>(n), seed, static_cast<std::uint64_t>(r));
        const long double stat = d == 2
                                     ? static_cast<long double>(gcd_pair_count(batch, ell, table))
                                     : gcd_tuple_count(batch, d, table);
        e.values[static_cast<Eigen::Index>(r)] =
            static_cast<double>((stat - static_cast<long double>(e.norm.center)) /
                                static_cast<long double>(e.norm.scale));
    });
    return e;
}

double ks_distance(const Eigen::ArrayXd& values) {
    if (values.size() == 0) throw std::domain_error("ks_distance: empty sample");
    std::vector<double> sorted(values.data(), values.data() + values.size());
    std::sort(sorted.begin(), sorted.end());

    const double r = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double phi = normal_cdf(sorted[i]);
        const double upper = static_cast<double>(i + 1) / r - phi;
        const double lower = phi - static_cast<double>(i) / r;
        d = std::max({d, upper, lower});
    }
    return d;
}

FitResult convergence_fit(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw std::domain_error("convergence_fit: need at least 3 points");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].second <= 0.0)
            throw std::domain_error("convergence_fit: d_ks values must be positive");
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i].first == points[j].first)
                throw std::domain_error("convergence_fit: n values must be distinct");
    }

    Eigen::MatrixXd a(points.size(), 2);
    Eigen::VectorXd y(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        a(static_cast<Eigen::Index>(i), 0) = std::log(points[i].first);
        a(static_cast<Eigen::Index>(i), 1) = 1.0;
        y(static_cast<Eigen::Index>(i)) = std::log(points[i].second);
    }
    const Eigen::Vector2d sol = (a.transpose() * a).ldlt().solve(a.transpose() * y);
    return {sol(0), sol(1)};
}

std::uint64_t dependency_degree(std::uint64_t n, DependencyMode mode) {
    if (n < 3) throw std::domain_error("dependency_degree: n must be >= 3");
    return mode == DependencyMode::Paper ? 2 * n - 5 : 2 * n - 3;
}

double baldi_bound(std::uint64_t n, double sigma_n, DependencyMode mode) {
    if (!(sigma_n > 0.0)) throw std::domain_error("baldi_bound: sigma must be positive");
    if (n < 3) throw std::domain_error("baldi_bound: n must be >= 3");

    const double bigd = static_cast<double>(dependency_degree(n, mode));
    const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    const double first = bigd * bigd * pairs / std::pow(sigma_n, 3.0);
    const double second = std::sqrt(2.0 * sigma_n / std::numbers::pi) * std::pow(bigd, 1.5) *
                          std::sqrt(pairs) / (sigma_n * sigma_n);
    return first + second;
}

}  // namespace gcdlab
