// Deterministic number-theoretic kernels: linear sieve with smallest prime
// factors, Mobius values, prime windows.
#pragma once

#include <cstdint>
#include <vector>

namespace gcdlab {

/// Sieve output up to a fixed limit. One linear pass fills the prime list,
/// the smallest-prime-factor table and the Mobius function together.
struct PrimeTable {
    std::uint64_t limit = 0;
    std::vector<std::uint32_t> primes;       ///< all primes <= limit, increasing
    std::vector<std::int8_t> mobius_table;   ///< index 0..limit, mobius_table[0] unused
    std::vector<std::uint32_t> spf_table;    ///< smallest prime factor, index 0..limit

    int mobius(std::uint64_t d) const;
    std::uint32_t spf(std::uint64_t d) const;
    bool is_prime(std::uint64_t d) const;

    /// Number of primes <= bound (bound <= limit).
    std::size_t prime_count(std::uint64_t bound) const;

    /// Primes p with k1 < p <= k2.
    std::vector<std::uint32_t> window_primes(std::uint64_t k1, std::uint64_t k2) const;

    /// The i-th prime, 0-based (primes[0] == 2).
    std::uint32_t nth_prime(std::size_t i) const;
};

/// Builds the table for 2 <= limit. Throws std::domain_error for limit < 2.
PrimeTable build_prime_table(std::uint64_t limit);

}  // namespace gcdlab
