// Truncated Euler products with rigorous tail envelopes, and prime
// reciprocal sums over windows.
#pragma once

#include <cstdint>

#include "gcdlab/prime_table.hpp"

namespace gcdlab {

enum class ProductFamily {
    CoprimePair,  ///< term(p) = 1 - 1/p^d
    Triple,       ///< term(p) = 1 - 2/p^d + 1/p^(2d-1)
};

struct EulerProductResult {
    double value = 1.0;        ///< product over primes p <= cutoff
    std::uint64_t cutoff = 0;  ///< largest prime bound included
    double tail_bound = 0.0;   ///< upper estimate of |log(full) - log(partial)|
};

/// Product over primes p <= cutoff of the family term. Accumulated in log
/// space for cutoff > 1e4 to limit rounding drift. The tail bound is the
/// elementary envelope c * (cutoff + 1/2)^(1-d) / (d-1), corrected by
/// 1/(1 - c/(cutoff+1)^d) to absorb the higher-order terms of -log(term);
/// c = 1 for CoprimePair and c = 2 for Triple.
EulerProductResult euler_product(ProductFamily family, int d, std::uint64_t cutoff,
                                 const PrimeTable& table);

/// Sum of 1/q over primes q with k1 < q <= k2. Requires 1 <= k1 < k2 <= limit.
double mertens_sum(std::uint64_t k1, std::uint64_t k2, const PrimeTable& table);

/// Meissel-Mertens constant.
inline constexpr double kMeisselMertens = 0.261497;

}  // namespace gcdlab
