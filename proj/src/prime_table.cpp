#include "gcdlab/prime_table.hpp"

#include <algorithm>
#include <stdexcept>

namespace gcdlab {

int PrimeTable::mobius(std::uint64_t d) const {
    if (d == 0 || d > limit) throw std::domain_error("PrimeTable::mobius: argument outside table");
    return mobius_table[d];
}

std::uint32_t PrimeTable::spf(std::uint64_t d) const {
    if (d < 2 || d > limit) throw std::domain_error("PrimeTable::spf: argument outside table");
    return spf_table[d];
}

bool PrimeTable::is_prime(std::uint64_t d) const {
    if (d < 2 || d > limit) return false;
    return spf_table[d] == d;
}

std::size_t PrimeTable::prime_count(std::uint64_t bound) const {
    if (bound > limit) throw std::domain_error("PrimeTable::prime_count: bound exceeds table limit");
    auto it = std::upper_bound(primes.begin(), primes.end(), static_cast<std::uint32_t>(bound));
    return static_cast<std::size_t>(it - primes.begin());
}

std::vector<std::uint32_t> PrimeTable::window_primes(std::uint64_t k1, std::uint64_t k2) const {
    if (k2 > limit) throw std::domain_error("PrimeTable::window_primes: k2 exceeds table limit");
    auto lo = std::upper_bound(primes.begin(), primes.end(), static_cast<std::uint32_t>(k1));
    auto hi = std::upper_bound(primes.begin(), primes.end(), static_cast<std::uint32_t>(k2));
    return std::vector<std::uint32_t>(lo, hi);
}

std::uint32_t PrimeTable::nth_prime(std::size_t i) const {
    if (i >= primes.size()) throw std::domain_error("PrimeTable::nth_prime: index beyond table");
    return primes[i];
}

PrimeTable build_prime_table(std::uint64_t limit) {
    if (limit < 2) throw std::domain_error("build_prime_table: limit must be >= 2");
    if (limit > (1ULL << 31)) throw std::domain_error("build_prime_table: limit too large for table");

    PrimeTable t;
    t.limit = limit;
    t.mobius_table.assign(limit + 1, 0);
    t.spf_table.assign(limit + 1, 0);
    t.mobius_table[1] = 1;

    // Linear sieve: every composite is crossed exactly once, by its smallest
    // prime factor, which makes the Mobius recurrence exact.
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (t.spf_table[i] == 0) {
            t.spf_table[i] = static_cast<std::uint32_t>(i);
            t.primes.push_back(static_cast<std::uint32_t>(i));
            t.mobius_table[i] = -1;
        }
        for (std::uint32_t p : t.primes) {
            if (p > t.spf_table[i] || i * p > limit) break;
            t.spf_table[i * p] = p;
            t.mobius_table[i * p] = (i % p == 0) ? std::int8_t{0}
                                                 : static_cast<std::int8_t>(-t.mobius_table[i]);
        }
    }
    return t;
}

}  // namespace gcdlab
