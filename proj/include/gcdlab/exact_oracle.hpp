// Exact finite-n probabilities and moments of the gcd-density statistic,
// computed through Mobius floor-sum identities. Counts are carried as exact
// integers over the full sample space until the final real conversion.
#pragma once

#include <cstdint>

#include "gcdlab/euler.hpp"
#include "gcdlab/prime_table.hpp"

namespace gcdlab {

/// An exact probability count/total with both parts integral.
struct ExactProb {
    std::int64_t count = 0;
    std::int64_t total = 1;
    double value() const { return static_cast<double>(count) / static_cast<double>(total); }
    long double value_l() const {
        return static_cast<long double>(count) / static_cast<long double>(total);
    }
};

/// P(gcd(X1, X2) = ell) over ordered pairs of uniform draws on {1..n},
/// diagonal pairs included. Exact fraction with total = n^2.
ExactProb exact_pair_prob(std::uint64_t n, std::uint64_t ell, const PrimeTable& table);

/// P(gcd(X1, X2) = gcd(X1, X3) = ell), exact fraction with total = n^3.
ExactProb exact_triple_prob(std::uint64_t n, std::uint64_t ell, const PrimeTable& table);

struct ExactStats {
    std::uint64_t n = 0;
    std::uint64_t ell = 1;
    ExactProb alpha;       ///< pair probability
    ExactProb beta;        ///< shared-index triple probability
    double sigma_n_sq = 0; ///< C(n,2)(a - a^2) + 6 C(n,3)(b - a^2)
};

/// Finite-n variance of the centered upper-triangular pair sum. Requires n >= 3.
ExactStats exact_variance(std::uint64_t n, std::uint64_t ell, const PrimeTable& table);

struct LimitVariance {
    double value = 0.0;
    double tail_bound = 0.0;  ///< absolute truncation envelope from the Euler products
};

/// Limiting variance of the normalized statistic. d = 2 admits any ell >= 1:
///   (1/ell^3) prod(1 - 2/p^2 + 1/p^3) - 36/(ell^4 pi^4).
/// d >= 3 is only defined for ell = 1:
///   prod(1 - 2/p^d + 1/p^(2d-1)) - prod(1 - 1/p^d)^2.
/// Products are truncated at the table limit.
LimitVariance limit_variance(std::uint64_t ell, int d, const PrimeTable& table);

/// Exact number of square-free integers in {1..n}, via sum over d <= sqrt(n)
/// of mobius(d) * floor(n/d^2). Needs table.limit >= floor(sqrt(n)).
std::uint64_t squarefree_count(std::uint64_t n, const PrimeTable& table);

/// 6/pi^2, the limiting coprime-pair and square-free density.
double squarefree_density();

}  // namespace gcdlab
