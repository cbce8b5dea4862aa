#include "gcdlab/measure.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace gcdlab {

namespace {

constexpr std::size_t kMaxBinaryStates = std::size_t{1} << 24;
constexpr std::size_t kMaxMixedStates = std::size_t{1} << 20;
constexpr std::size_t kDirectMixedStates = std::size_t{1} << 10;

int ternary_digit(std::uint32_t packed, int i) {
    for (int t = 0; t < i; ++t) packed /= 3;
    return static_cast<int>(packed % 3);
}

/// 1 iff the packed ternary blocks are admissible and compatible.
int ternary_compatible(std::uint32_t ta, std::uint32_t tb, int m, KernelVariant variant) {
    for (int i = 0; i < m; ++i) {
        const int da = static_cast<int>(ta % 3);
        const int db = static_cast<int>(tb % 3);
        ta /= 3;
        tb /= 3;
        if (da == 0 || db == 0) return 0;
        if (da == 2 && db == 2) return 0;
        if (variant == KernelVariant::StrictPhrase && da == 1 && db == 1) return 0;
    }
    return 1;
}

/// Subset sums Z[s] = sum_{b subset of s} w[b] for one ternary block of the
/// weight array, in place.
void subset_sum_transform(double* w, int k) {
    const std::size_t size = std::size_t{1} << k;
    for (int bit = 0; bit < k; ++bit) {
        const std::size_t step = std::size_t{1} << bit;
        for (std::size_t s = 0; s < size; ++s)
            if (s & step) w[s] += w[s ^ step];
    }
}

}  // namespace

std::size_t StateShape::ternary_states() const {
    std::size_t n = 1;
    for (int i = 0; i < ternary_count(); ++i) n *= 3;
    return n;
}

bool StateShape::same_shape(const StateShape& other) const {
    return ell == other.ell && ternary_primes == other.ternary_primes &&
           ternary_exponents == other.ternary_exponents && binary_primes == other.binary_primes;
}

StateShape binary_shape(int k, const PrimeTable& table) {
    if (k < 1) throw std::domain_error("binary_shape: k must be >= 1");
    if (static_cast<std::size_t>(k) > table.primes.size())
        throw std::domain_error("binary_shape: k-th prime beyond table");
    StateShape s;
    s.ell = 1;
    s.binary_primes.assign(table.primes.begin(), table.primes.begin() + k);
    return s;
}

StateShape mixed_shape(std::uint64_t ell, int k, const PrimeTable& table) {
    if (ell < 2) throw std::domain_error("mixed_shape: ell must be >= 2");
    if (k < 0) throw std::domain_error("mixed_shape: k must be >= 0");

    StateShape s;
    s.ell = ell;
    std::uint64_t rest = ell;
    while (rest > 1) {
        if (rest > table.limit) throw std::domain_error("mixed_shape: ell beyond table limit");
        const std::uint32_t q = table.spf(rest);
        std::uint32_t beta = 0;
        while (rest % q == 0) {
            rest /= q;
            ++beta;
        }
        s.ternary_primes.push_back(q);
        s.ternary_exponents.push_back(beta);
    }

    for (std::uint32_t p : table.primes) {
        if (s.binary_count() == k) break;
        bool divides_ell = false;
        for (std::uint32_t q : s.ternary_primes) divides_ell |= (p == q);
        if (!divides_ell) s.binary_primes.push_back(p);
    }
    if (s.binary_count() != k) throw std::domain_error("mixed_shape: table too small for k tail primes");
    if (s.state_count() > kMaxMixedStates)
        throw std::length_error("mixed_shape: state space exceeds capacity");
    return s;
}

TruncatedMeasure reference_measure(const StateShape& shape) {
    const std::size_t states = shape.state_count();
    const std::size_t limit =
        shape.ternary_count() == 0 ? kMaxBinaryStates : kMaxMixedStates;
    if (states > limit) throw std::length_error("reference_measure: state space exceeds capacity");

    TruncatedMeasure mu;
    mu.shape = shape;
    mu.weights = Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(states));

    const int m = shape.ternary_count();
    const int k = shape.binary_count();

    // Ternary digit weights g(q^beta): miss / exact / exceed.
    std::vector<std::array<double, 3>> g(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        const double q = shape.ternary_primes[static_cast<std::size_t>(i)];
        const double beta = shape.ternary_exponents[static_cast<std::size_t>(i)];
        const double q_beta = std::pow(q, beta);
        g[static_cast<std::size_t>(i)] = {1.0 - 1.0 / q_beta, 1.0 / q_beta - 1.0 / (q_beta * q),
                                          1.0 / (q_beta * q)};
    }

    for (std::size_t t = 0; t < shape.ternary_states(); ++t) {
        double tw = 1.0;
        for (int i = 0; i < m; ++i)
            tw *= g[static_cast<std::size_t>(i)][static_cast<std::size_t>(
                ternary_digit(static_cast<std::uint32_t>(t), i))];
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << k); ++b) {
            double w = tw;
            for (int j = 0; j < k; ++j) {
                const double p = shape.binary_primes[static_cast<std::size_t>(j)];
                w *= (b >> j) & 1 ? 1.0 / p : 1.0 - 1.0 / p;
            }
            mu.weights[static_cast<Eigen::Index>(shape.index(t, b))] = w;
        }
    }
    mu.reference = mu.weights;
    return mu;
}

void validate_measure(const TruncatedMeasure& mu) {
    if (mu.weights.size() != mu.reference.size() ||
        mu.weights.size() != static_cast<Eigen::Index>(mu.shape.state_count()))
        throw std::invalid_argument("measure: weight/reference/state-space size mismatch");
    if ((mu.weights < 0.0).any()) throw std::invalid_argument("measure: negative weight");
    if ((mu.reference <= 0.0).any())
        throw std::invalid_argument("measure: reference must be strictly positive");
    if (std::fabs(mu.weights.sum() - 1.0) > 1e-12)
        throw std::invalid_argument("measure: weights must sum to 1 within 1e-12");
}

int kernel_f(DigitPattern a, DigitPattern b) {
    if (a.length != b.length) throw std::domain_error("kernel_f: pattern length mismatch");
    return (a.bits & b.bits) == 0 ? 1 : 0;
}

int kernel_f_ell(const MixedState& a, const MixedState& b, KernelVariant variant) {
    if (a.m != b.m || a.k != b.k) throw std::domain_error("kernel_f_ell: state shape mismatch");
    if (!ternary_compatible(a.ternary, b.ternary, a.m, variant)) return 0;
    return (a.binary & b.binary) == 0 ? 1 : 0;
}

Eigen::ArrayXd interaction_field(const StateShape& shape, const Eigen::ArrayXd& weights,
                                 KernelVariant variant) {
    const std::size_t states = shape.state_count();
    if (weights.size() != static_cast<Eigen::Index>(states))
        throw std::invalid_argument("interaction_field: weight size mismatch");

    const int m = shape.ternary_count();
    const int k = shape.binary_count();
    const std::size_t tail_states = std::size_t{1} << k;
    const std::uint64_t full = tail_states - 1;
    Eigen::ArrayXd field = Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(states));

    if (m == 0) {
        if (states > kMaxBinaryStates)
            throw std::length_error("interaction_field: state space exceeds capacity");
        // G(a) = Z[~a] where Z is the subset-sum transform of the weights.
        Eigen::ArrayXd z = weights;
        subset_sum_transform(z.data(), k);
        for (std::uint64_t a = 0; a < tail_states; ++a)
            field[static_cast<Eigen::Index>(a)] = z[static_cast<Eigen::Index>(full & ~a)];
        return field;
    }

    if (states > kMaxMixedStates)
        throw std::length_error("interaction_field: state space exceeds capacity");
    const std::size_t t_states = shape.ternary_states();

    if (states <= kDirectMixedStates) {
        for (std::size_t ta = 0; ta < t_states; ++ta)
            for (std::size_t tb = 0; tb < t_states; ++tb) {
                if (!ternary_compatible(static_cast<std::uint32_t>(ta),
                                        static_cast<std::uint32_t>(tb), m, variant))
                    continue;
                for (std::uint64_t ba = 0; ba < tail_states; ++ba) {
                    const std::uint64_t free = full & ~ba;
                    double sum = 0.0;
                    // iterate subsets of the complement
                    std::uint64_t sub = free;
                    while (true) {
                        sum += weights[static_cast<Eigen::Index>(shape.index(tb, sub))];
                        if (sub == 0) break;
                        sub = (sub - 1) & free;
                    }
                    field[static_cast<Eigen::Index>(shape.index(ta, ba))] += sum;
                }
            }
        return field;
    }

    // Factorized path: subset-sum the binary tail within each ternary block,
    // then accumulate over compatible ternary pairs.
    std::vector<Eigen::ArrayXd> z(t_states);
    for (std::size_t t = 0; t < t_states; ++t) {
        z[t] = weights.segment(static_cast<Eigen::Index>(t * tail_states),
                               static_cast<Eigen::Index>(tail_states));
        subset_sum_transform(z[t].data(), k);
    }
    for (std::size_t ta = 0; ta < t_states; ++ta)
        for (std::size_t tb = 0; tb < t_states; ++tb) {
            if (!ternary_compatible(static_cast<std::uint32_t>(ta), static_cast<std::uint32_t>(tb),
                                    m, variant))
                continue;
            for (std::uint64_t ba = 0; ba < tail_states; ++ba)
                field[static_cast<Eigen::Index>(shape.index(ta, ba))] +=
                    z[tb][static_cast<Eigen::Index>(full & ~ba)];
        }
    return field;
}

double quadratic_functional(const TruncatedMeasure& mu, KernelVariant variant) {
    const Eigen::ArrayXd field = interaction_field(mu.shape, mu.weights, variant);
    return (mu.weights * field).sum();
}

double kl_divergence(const TruncatedMeasure& mu) {
    if (mu.weights.size() != mu.reference.size())
        throw std::invalid_argument("kl_divergence: size mismatch");
    double kl = 0.0;
    for (Eigen::Index i = 0; i < mu.weights.size(); ++i) {
        const double w = mu.weights[i];
        if (w > 0.0) kl += w * std::log(w / mu.reference[i]);
    }
    return kl;
}

TruncatedMeasure empirical_measure(const PatternBatch& patterns, const StateShape& shape) {
    if (patterns.masks.empty()) throw std::domain_error("empirical_measure: empty batch");
    if (shape.ternary_count() != 0)
        throw std::domain_error("empirical_measure: only binary shapes supported");
    if (patterns.primes != shape.binary_primes)
        throw std::domain_error("empirical_measure: pattern primes do not match shape");

    TruncatedMeasure mu = reference_measure(shape);
    mu.weights.setZero();
    const double inc = 1.0 / static_cast<double>(patterns.masks.size());
    for (std::uint64_t mask : patterns.masks)
        mu.weights[static_cast<Eigen::Index>(mask)] += inc;
    return mu;
}

}  // namespace gcdlab
