#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "gcdlab/special.hpp"

namespace gcdlab::oracles {

std::uint64_t naive_pair_gcd_count(const std::vector<std::uint32_t>& values, std::uint64_t ell) {
    std::uint64_t count = 0;
    for (std::uint32_t a : values)
        for (std::uint32_t b : values)
            if (std::gcd(a, b) == ell) ++count;
    return count;
}

std::uint64_t naive_triple_gcd_count(const std::vector<std::uint32_t>& values) {
    std::uint64_t count = 0;
    for (std::uint32_t a : values)
        for (std::uint32_t b : values) {
            const std::uint32_t g = std::gcd(a, b);
            for (std::uint32_t c : values)
                if (std::gcd(g, c) == 1) ++count;
        }
    return count;
}

std::vector<std::uint64_t> enumerate_pair_counts(std::uint32_t n) {
    std::vector<std::uint64_t> counts(n + 1, 0);
    for (std::uint32_t i = 1; i <= n; ++i)
        for (std::uint32_t j = 1; j <= n; ++j) ++counts[std::gcd(i, j)];
    return counts;
}

std::vector<std::uint64_t> enumerate_shared_triple_counts(std::uint32_t n) {
    std::vector<std::uint64_t> counts(n + 1, 0);
    for (std::uint32_t x = 1; x <= n; ++x) {
        // bucket gcd(x, .) once, then pair the buckets
        std::vector<std::uint64_t> by_gcd(n + 1, 0);
        for (std::uint32_t y = 1; y <= n; ++y) ++by_gcd[std::gcd(x, y)];
        for (std::uint32_t l = 1; l <= n; ++l) counts[l] += by_gcd[l] * by_gcd[l];
    }
    return counts;
}

double enumerate_pair_sum_variance(std::uint32_t n, std::uint32_t ell) {
    if (n > 6) throw std::domain_error("enumerate_pair_sum_variance: n too large to enumerate");
    const std::uint64_t outcomes = [&] {
        std::uint64_t o = 1;
        for (std::uint32_t i = 0; i < n; ++i) o *= n;
        return o;
    }();

    // alpha over ordered pairs, diagonal included
    double alpha = 0.0;
    for (std::uint32_t i = 1; i <= n; ++i)
        for (std::uint32_t j = 1; j <= n; ++j)
            if (std::gcd(i, j) == ell) alpha += 1.0;
    alpha /= static_cast<double>(n) * static_cast<double>(n);

    double sum = 0.0, sum_sq = 0.0;
    std::vector<std::uint32_t> draw(n, 1);
    for (std::uint64_t code = 0; code < outcomes; ++code) {
        std::uint64_t rest = code;
        for (std::uint32_t i = 0; i < n; ++i) {
            draw[i] = static_cast<std::uint32_t>(rest % n) + 1;
            rest /= n;
        }
        double w = 0.0;
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = i + 1; j < n; ++j)
                w += (std::gcd(draw[i], draw[j]) == ell ? 1.0 : 0.0) - alpha;
        sum += w;
        sum_sq += w * w;
    }
    const double mean = sum / static_cast<double>(outcomes);
    return sum_sq / static_cast<double>(outcomes) - mean * mean;
}

std::uint64_t simple_sieve_prime_count(std::uint64_t n) {
    std::vector<bool> composite(n + 1, false);
    std::uint64_t count = 0;
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        ++count;
        for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
    }
    return count;
}

std::uint64_t squared_sieve_squarefree_count(std::uint64_t n) {
    std::vector<bool> divisible(n + 1, false);
    for (std::uint64_t d = 2; d * d <= n; ++d)
        for (std::uint64_t j = d * d; j <= n; j += d * d) divisible[j] = true;
    std::uint64_t count = 0;
    for (std::uint64_t v = 1; v <= n; ++v)
        if (!divisible[v]) ++count;
    return count;
}

bool trial_division_squarefree(std::uint64_t v) {
    for (std::uint64_t d = 2; d * d <= v; ++d)
        if (v % (d * d) == 0) return false;
    return true;
}

namespace {

double k1_kl(double t) {
    double kl = 0.0;
    if (t > 0.0) kl += t * std::log(2.0 * t);
    if (t < 1.0) kl += (1.0 - t) * std::log(2.0 * (1.0 - t));
    return kl;
}

}  // namespace

double rate_k1_closed_form(double x) { return k1_kl(std::sqrt(1.0 - x)); }

double rate_k1_grid_search(double x, double step) {
    // one free weight t on the digit-1 state with the level 1 - t^2
    double best = std::numeric_limits<double>::infinity();
    const double t_target = std::sqrt(1.0 - x);
    for (double t = std::max(0.0, t_target - 50 * step); t <= std::min(1.0, t_target + 50 * step);
         t += step)
        if (std::fabs((1.0 - t * t) - x) <= 2.0 * step) best = std::min(best, k1_kl(t));
    // level solved exactly at the nearest feasible t
    best = std::min(best, k1_kl(t_target));
    return best;
}

double rate_k2_simplex_search(double x, double step) {
    // States over the first two primes: 00, 10, 01, 11 with reference
    // (1/3, 1/3, 1/6, 1/6). Level F = w00^2 + 2 w00 (1 - w00) + 2 w10 w01,
    // solved exactly for w00 given (w10, w01).
    const double ref[4] = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0};
    double best = std::numeric_limits<double>::infinity();
    for (double w10 = 0.0; w10 <= 1.0; w10 += step)
        for (double w01 = 0.0; w01 + w10 <= 1.0; w01 += step) {
            const double disc = 1.0 - x + 2.0 * w10 * w01;
            if (disc < 0.0) continue;
            const double w00 = 1.0 - std::sqrt(disc);
            if (w00 < 0.0) continue;
            const double w11 = 1.0 - w00 - w10 - w01;
            if (w11 < -1e-15) continue;
            const double w[4] = {w00, w10, w01, std::max(w11, 0.0)};
            double kl = 0.0;
            for (int s = 0; s < 4; ++s)
                if (w[s] > 0.0) kl += w[s] * std::log(w[s] / ref[s]);
            best = std::min(best, kl);
        }
    return best;
}

double binomial_mgf_exact(double alpha, double lambda, int n) {
    const double la = std::log(alpha);
    const double lq = std::log1p(-alpha);
    double max_term = -std::numeric_limits<double>::infinity();
    std::vector<double> terms(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        const double t = log_binomial(n, i) + i * la + (n - i) * lq +
                         lambda * static_cast<double>(i) * i / n;
        terms[static_cast<std::size_t>(i)] = t;
        max_term = std::max(max_term, t);
    }
    double sum = 0.0;
    for (double t : terms) sum += std::exp(t - max_term);
    return (max_term + std::log(sum)) / n;
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal_quantile: p outside (0, 1)");
    double lo = -12.0, hi = 12.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (normal_cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace gcdlab::oracles
