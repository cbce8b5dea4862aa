#include "gcdlab/euler.hpp"

#include <cmath>
#include <stdexcept>

namespace gcdlab {

namespace {

double family_term(ProductFamily family, int d, double p) {
    switch (family) {
        case ProductFamily::CoprimePair:
            return 1.0 - std::pow(p, -d);
        case ProductFamily::Triple:
            return 1.0 - 2.0 * std::pow(p, -d) + std::pow(p, -(2 * d - 1));
    }
    throw std::logic_error("euler_product: unknown family");
}

double family_tail_coeff(ProductFamily family) {
    return family == ProductFamily::Triple ? 2.0 : 1.0;
}

}  // namespace

EulerProductResult euler_product(ProductFamily family, int d, std::uint64_t cutoff,
                                 const PrimeTable& table) {
    if (d < 2) throw std::domain_error("euler_product: d must be >= 2");
    if (cutoff > table.limit) throw std::domain_error("euler_product: cutoff exceeds table limit");

    EulerProductResult r;
    r.cutoff = cutoff;

    if (cutoff > 10000) {
        long double log_sum = 0.0L;
        for (std::uint32_t p : table.primes) {
            if (p > cutoff) break;
            log_sum += std::log(static_cast<long double>(family_term(family, d, p)));
        }
        r.value = static_cast<double>(std::exp(log_sum));
    } else {
        double prod = 1.0;
        for (std::uint32_t p : table.primes) {
            if (p > cutoff) break;
            prod *= family_term(family, d, p);
        }
        r.value = prod;
    }

    // -log(term(p)) <= c/p^d / (1 - c/p^d) for p > cutoff, and the prime sum
    // is dominated by the integer sum, which the midpoint rule bounds by
    // (N + 1/2)^(1-d)/(d-1).
    const double c = family_tail_coeff(family);
    const double n_eff = std::max<double>(static_cast<double>(cutoff), 1.0);
    const double integer_tail = std::pow(n_eff + 0.5, 1.0 - d) / (d - 1);
    const double correction = 1.0 / (1.0 - c * std::pow(n_eff + 1.0, -static_cast<double>(d)));
    r.tail_bound = c * integer_tail * correction;
    return r;
}

double mertens_sum(std::uint64_t k1, std::uint64_t k2, const PrimeTable& table) {
    if (k1 < 1) throw std::domain_error("mertens_sum: k1 must be >= 1");
    if (k1 >= k2) throw std::domain_error("mertens_sum: require k1 < k2");
    if (k2 > table.limit) throw std::domain_error("mertens_sum: k2 exceeds table limit");

    long double sum = 0.0L;
    for (std::uint32_t p : table.primes) {
        if (p <= k1) continue;
        if (p > k2) break;
        sum += 1.0L / static_cast<long double>(p);
    }
    return static_cast<double>(sum);
}

}  // namespace gcdlab
