// Seeded sampling under the uniform and the independent-divisibility product
// measures, fast empirical gcd densities, divisor-count statistics and the
// Chinese-Remainder coupling of the two measures.
#pragma once

#include <cstdint>
#include <vector>

#include "gcdlab/prime_table.hpp"
#include "gcdlab/rng.hpp"

namespace gcdlab {

/// Seeded i.i.d. uniform draws on {1..n}.
struct SampleBatch {
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
    std::vector<std::uint32_t> values;
};

SampleBatch sample_uniform(std::uint64_t n, std::size_t count, std::uint64_t seed,
                           std::uint64_t stream_id = 0);

/// Number of ordered index pairs (i, j), diagonal included, whose sampled
/// values have gcd exactly ell. Computed as sum_m mobius(m) * c(ell*m)^2
/// with c(d) = #{i : d | X_i}, via one multiples pass over a multiplicity
/// table: O(n log n + count), never O(count^2).
std::int64_t gcd_pair_count(const SampleBatch& batch, std::uint64_t ell, const PrimeTable& table);

/// gcd_pair_count / count^2.
double empirical_gcd_density(const SampleBatch& batch, std::uint64_t ell, const PrimeTable& table);

/// Ordered d-tuples (indices may repeat) whose values have gcd 1:
/// sum_m mobius(m) * c(m)^d. Exact integer arithmetic while c^d fits.
long double gcd_tuple_count(const SampleBatch& batch, int d, const PrimeTable& table);

/// gcd_tuple_count / count^d.
double empirical_dgcd_density(const SampleBatch& batch, int d, const PrimeTable& table);

/// Primes p with lo < p <= hi.
struct PrimeWindow {
    std::uint64_t lo = 1;
    std::uint64_t hi = 2;
};

/// Y_p = #{i : p | X_i} for every prime p in the window.
struct DivisorCountProfile {
    PrimeWindow window;
    std::vector<std::uint32_t> primes;
    std::vector<std::uint64_t> counts;
};

DivisorCountProfile divisor_counts(const SampleBatch& batch, PrimeWindow window,
                                   const PrimeTable& table);

/// Batch of prime-divisor patterns over a fixed prime list; bit j of a mask
/// corresponds to primes[j].
struct PatternBatch {
    std::vector<std::uint32_t> primes;
    std::vector<std::uint64_t> masks;
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

/// Independent inclusion of each window prime p with probability 1/p.
PatternBatch sample_tilde(PrimeWindow window, std::size_t count, std::uint64_t seed,
                          std::uint64_t stream_id, const PrimeTable& table);

/// Encodes each pattern as the squarefree product of its primes. Throws when
/// a product cannot fit 64 bits.
std::vector<std::uint64_t> pattern_products(const PatternBatch& batch);

/// Coupled draws (X, X_tilde): X uniform on {1..n}; below the threshold
/// m * prod(p) the pattern of X_tilde copies the divisor pattern of X, above
/// it fresh independent Bernoulli(1/p) digits are drawn. The marginal of the
/// X_tilde pattern is the exact product law on the window.
struct CoupledBatch {
    std::uint64_t n = 0;
    PrimeWindow window;
    std::vector<std::uint32_t> primes;
    std::uint64_t m = 0;  ///< floor(n / prod(primes))
    std::vector<std::uint32_t> x;
    std::vector<std::uint64_t> x_tilde;        ///< squarefree product of pattern primes
    std::vector<std::uint64_t> tilde_pattern;  ///< bitmask over window primes
    std::vector<std::uint8_t> mismatch;        ///< window patterns of X and X_tilde differ
};

CoupledBatch crt_coupling(std::uint64_t n, PrimeWindow window, std::size_t count,
                          std::uint64_t seed, std::uint64_t stream_id, const PrimeTable& table);

/// Binary divisibility pattern of x over the first `length` primes.
struct DigitPattern {
    std::uint64_t bits = 0;
    int length = 0;
};

/// Digit i (bit i-1) is 1 iff the i-th prime divides x. Requires the k-th
/// prime to be inside the table.
DigitPattern psi(std::uint64_t x, int k, const PrimeTable& table);

/// Patterns over the first k primes with independent Bernoulli(1/p_i) digits.
PatternBatch sample_nu(int k, std::size_t count, std::uint64_t seed, std::uint64_t stream_id,
                       const PrimeTable& table);

}  // namespace gcdlab
