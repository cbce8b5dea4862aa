// Monte Carlo reproduction of the normal limit for the gcd-pair density:
// replica ensembles of the normalized statistic, one-sample
// Kolmogorov-Smirnov distance to the standard normal, a log-log convergence
// fit and the dependency-graph normal-approximation bound.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "gcdlab/exact_oracle.hpp"
#include "gcdlab/prime_table.hpp"

namespace gcdlab {

struct Normalization {
    double center = 0.0;       ///< n^2 * 6/(ell^2 pi^2) for d = 2, n^d * prod(1 - 1/p^d) otherwise
    double scale = 1.0;        ///< 2 sigma n^(3/2) for d = 2, d sigma n^((2d-1)/2) otherwise
    double sigma_limit = 0.0;  ///< sqrt(limit_variance)
};

struct ReplicaEnsemble {
    std::uint64_t n = 0;
    std::uint64_t ell = 1;
    int d = 2;
    int replicas = 0;
    std::uint64_t seed = 0;
    Normalization norm;
    Eigen::ArrayXd values;  ///< one normalized statistic per replica
};

struct ReplicateOptions {
    bool scale_literal_paper = false;  ///< use 2 sigma^2 n^(3/2) instead of 2 sigma n^(3/2)
    int threads = 1;
};

/// Draws `replicas` fresh batches (count = n, stream id = replica index),
/// evaluates the ordered tuple count with gcd = ell (diagonal included),
/// and centers/scales it. d >= 3 requires ell = 1.
ReplicaEnsemble replicate_statistic(std::uint64_t n, std::uint64_t ell, int d, int replicas,
                                    std::uint64_t seed, const PrimeTable& table,
                                    const ReplicateOptions& opts = {});

/// Exact one-sample KS statistic against the standard normal CDF.
double ks_distance(const Eigen::ArrayXd& values);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
};

/// Least squares of log(d_ks) against log(n); needs >= 3 points with
/// distinct n and positive d_ks.
FitResult convergence_fit(const std::vector<std::pair<double, double>>& points);

enum class DependencyMode {
    Paper,    ///< D = 2n - 5
    Recount,  ///< D = 2n - 3 (conservative default)
};

/// Normal-approximation bound for the dependency graph of shared-index pairs:
///   D^2 C(n,2) / sigma^3 + sqrt(2 sigma / pi) D^(3/2) sqrt(C(n,2)) / sigma^2
/// with sigma the standard deviation of the upper-triangular sum.
double baldi_bound(std::uint64_t n, double sigma_n,
                   DependencyMode mode = DependencyMode::Recount);

std::uint64_t dependency_degree(std::uint64_t n, DependencyMode mode);

struct KSReport {
    std::uint64_t n = 0;
    int replicas = 0;
    double d_ks = 0.0;
    double baldi = 0.0;
    std::uint64_t dependency = 0;
};

}  // namespace gcdlab
