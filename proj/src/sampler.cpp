#include "gcdlab/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace gcdlab {

SampleBatch sample_uniform(std::uint64_t n, std::size_t count, std::uint64_t seed,
                           std::uint64_t stream_id) {
    if (n == 0) throw std::domain_error("sample_uniform: n must be >= 1");
    if (n > 0xFFFFFFFFULL) throw std::domain_error("sample_uniform: n exceeds 32-bit value range");

    SampleBatch b;
    b.n = n;
    b.seed = seed;
    b.stream_id = stream_id;
    b.values.resize(count);
    CounterRng rng(seed, stream_id);
    for (std::size_t i = 0; i < count; ++i)
        b.values[i] = static_cast<std::uint32_t>(rng.next_below(n) + 1);
    return b;
}

namespace {

std::vector<std::uint32_t> multiplicities(const SampleBatch& batch) {
    std::vector<std::uint32_t> mult(batch.n + 1, 0);
    for (std::uint32_t v : batch.values) {
        if (v == 0 || v > batch.n) throw std::domain_error("batch value outside {1..n}");
        ++mult[v];
    }
    return mult;
}

}  // namespace

std::int64_t gcd_pair_count(const SampleBatch& batch, std::uint64_t ell, const PrimeTable& table) {
    if (ell == 0) throw std::domain_error("gcd_pair_count: ell must be positive");
    if (table.limit < batch.n) throw std::domain_error("gcd_pair_count: table limit below batch n");
    if (batch.values.empty()) return 0;
    if (ell > batch.n) return 0;

    const auto mult = multiplicities(batch);
    const std::uint64_t n = batch.n;

    std::int64_t count = 0;
    for (std::uint64_t m = 1; m * ell <= n; ++m) {
        const int mu = table.mobius_table[m];
        if (mu == 0) continue;
        const std::uint64_t d = m * ell;
        std::int64_t c = 0;
        for (std::uint64_t j = d; j <= n; j += d) c += mult[j];
        count += mu * c * c;
    }
    return count;
}

double empirical_gcd_density(const SampleBatch& batch, std::uint64_t ell, const PrimeTable& table) {
    if (batch.values.empty()) throw std::domain_error("empirical_gcd_density: empty batch");
    const auto count = static_cast<double>(batch.values.size());
    return static_cast<double>(gcd_pair_count(batch, ell, table)) / (count * count);
}

long double gcd_tuple_count(const SampleBatch& batch, int d, const PrimeTable& table) {
    if (d < 2) throw std::domain_error("gcd_tuple_count: d must be >= 2");
    if (table.limit < batch.n) throw std::domain_error("gcd_tuple_count: table limit below batch n");
    if (batch.values.empty()) return 0.0L;

    const auto mult = multiplicities(batch);
    const std::uint64_t n = batch.n;
    const double count_bits = d * std::log2(static_cast<double>(batch.values.size()) + 1.0);
    const bool exact = count_bits < 120.0;  // c^d fits __int128 with headroom

    __int128 icount = 0;
    long double fcount = 0.0L;
    for (std::uint64_t m = 1; m <= n; ++m) {
        const int mu = table.mobius_table[m];
        if (mu == 0) continue;
        std::uint64_t c = 0;
        for (std::uint64_t j = m; j <= n; j += m) c += mult[j];
        if (c == 0) continue;
        if (exact) {
            __int128 power = 1;
            for (int t = 0; t < d; ++t) power *= static_cast<__int128>(c);
            icount += mu > 0 ? power : -power;
        } else {
            fcount += mu * std::pow(static_cast<long double>(c), d);
        }
    }
    return exact ? static_cast<long double>(icount) : fcount;
}

double empirical_dgcd_density(const SampleBatch& batch, int d, const PrimeTable& table) {
    if (batch.values.empty()) throw std::domain_error("empirical_dgcd_density: empty batch");
    const long double count = static_cast<long double>(batch.values.size());
    return static_cast<double>(gcd_tuple_count(batch, d, table) / std::pow(count, d));
}

DivisorCountProfile divisor_counts(const SampleBatch& batch, PrimeWindow window,
                                   const PrimeTable& table) {
    if (window.hi > table.limit)
        throw std::domain_error("divisor_counts: window beyond table limit");

    DivisorCountProfile profile;
    profile.window = window;
    profile.primes = table.window_primes(window.lo, window.hi);
    profile.counts.assign(profile.primes.size(), 0);

    // Per-value factorization through the smallest-prime-factor table.
    for (std::uint32_t v : batch.values) {
        std::uint32_t x = v;
        while (x > 1) {
            const std::uint32_t p = table.spf_table[x];
            if (p > window.lo && p <= window.hi) {
                const auto it = std::lower_bound(profile.primes.begin(), profile.primes.end(), p);
                ++profile.counts[static_cast<std::size_t>(it - profile.primes.begin())];
            }
            while (x % p == 0) x /= p;
        }
    }
    return profile;
}

PatternBatch sample_tilde(PrimeWindow window, std::size_t count, std::uint64_t seed,
                          std::uint64_t stream_id, const PrimeTable& table) {
    PatternBatch b;
    b.primes = table.window_primes(window.lo, window.hi);
    if (b.primes.size() > 64) throw std::domain_error("sample_tilde: window wider than 64 primes");
    b.seed = seed;
    b.stream_id = stream_id;
    b.masks.resize(count);

    CounterRng rng(seed, stream_id);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t mask = 0;
        for (std::size_t j = 0; j < b.primes.size(); ++j)
            if (rng.bernoulli_one_over(b.primes[j])) mask |= 1ULL << j;
        b.masks[i] = mask;
    }
    return b;
}

std::vector<std::uint64_t> pattern_products(const PatternBatch& batch) {
    std::vector<std::uint64_t> products;
    products.reserve(batch.masks.size());
    for (std::uint64_t mask : batch.masks) {
        std::uint64_t product = 1;
        for (std::size_t j = 0; j < batch.primes.size(); ++j) {
            if (!(mask & (1ULL << j))) continue;
            if (product > UINT64_MAX / batch.primes[j])
                throw std::overflow_error("pattern_products: product exceeds 64 bits");
            product *= batch.primes[j];
        }
        products.push_back(product);
    }
    return products;
}

namespace {

std::uint64_t window_pattern(std::uint32_t value, const std::vector<std::uint32_t>& primes) {
    std::uint64_t mask = 0;
    for (std::size_t j = 0; j < primes.size(); ++j)
        if (value % primes[j] == 0) mask |= 1ULL << j;
    return mask;
}

}  // namespace

CoupledBatch crt_coupling(std::uint64_t n, PrimeWindow window, std::size_t count,
                          std::uint64_t seed, std::uint64_t stream_id, const PrimeTable& table) {
    CoupledBatch cb;
    cb.n = n;
    cb.window = window;
    cb.primes = table.window_primes(window.lo, window.hi);
    if (cb.primes.empty()) throw std::domain_error("crt_coupling: empty prime window");
    if (cb.primes.size() > 64) throw std::domain_error("crt_coupling: window wider than 64 primes");

    std::uint64_t prod = 1;
    for (std::uint32_t p : cb.primes) {
        if (prod > n / p) throw std::domain_error("crt_coupling: product of window primes exceeds n");
        prod *= p;
    }
    cb.m = n / prod;
    const std::uint64_t threshold = cb.m * prod;

    cb.x.resize(count);
    cb.x_tilde.resize(count);
    cb.tilde_pattern.resize(count);
    cb.mismatch.resize(count);

    CounterRng rng(seed, stream_id);
    for (std::size_t i = 0; i < count; ++i) {
        const auto xi = static_cast<std::uint32_t>(rng.next_below(n) + 1);
        const std::uint64_t true_pattern = window_pattern(xi, cb.primes);

        std::uint64_t pattern;
        if (xi > threshold) {
            pattern = 0;
            for (std::size_t j = 0; j < cb.primes.size(); ++j)
                if (rng.bernoulli_one_over(cb.primes[j])) pattern |= 1ULL << j;
        } else {
            pattern = true_pattern;
        }

        std::uint64_t tilde = 1;
        for (std::size_t j = 0; j < cb.primes.size(); ++j)
            if (pattern & (1ULL << j)) tilde *= cb.primes[j];

        cb.x[i] = xi;
        cb.tilde_pattern[i] = pattern;
        cb.x_tilde[i] = tilde;
        cb.mismatch[i] = pattern != true_pattern ? 1 : 0;
    }
    return cb;
}

DigitPattern psi(std::uint64_t x, int k, const PrimeTable& table) {
    if (k < 0 || static_cast<std::size_t>(k) > table.primes.size())
        throw std::domain_error("psi: k-th prime beyond table");
    if (k > 64) throw std::domain_error("psi: at most 64 digits supported");

    DigitPattern p;
    p.length = k;
    for (int i = 0; i < k; ++i)
        if (x % table.primes[static_cast<std::size_t>(i)] == 0) p.bits |= 1ULL << i;
    return p;
}

PatternBatch sample_nu(int k, std::size_t count, std::uint64_t seed, std::uint64_t stream_id,
                       const PrimeTable& table) {
    if (k < 1 || static_cast<std::size_t>(k) > table.primes.size())
        throw std::domain_error("sample_nu: k-th prime beyond table");
    PrimeWindow window{1, table.primes[static_cast<std::size_t>(k - 1)]};
    return sample_tilde(window, count, seed, stream_id, table);
}

}  // namespace gcdlab
