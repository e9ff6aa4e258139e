#include "uniqrecall/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace uniqrecall {

namespace {

// 53-bit mantissa uniform in [0, 1); part of the reproducibility contract
double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

double log_binom(double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

std::vector<double> layer_means_from_counts(const std::vector<std::uint64_t>& counts,
                                            std::uint64_t k_max) {
    // histogram of per-color counts, then suffix-accumulate for "seen >= k"
    std::vector<double> seen_ge(k_max + 1, 0.0);
    for (std::uint64_t c : counts)
        if (c >= 1)
            seen_ge[std::min(c, k_max)] += 1.0;
    for (std::uint64_t k = k_max; k >= 2; --k)
        seen_ge[k - 1] += seen_ge[k];
    return seen_ge;
}

} // namespace

namespace detail {

std::uint64_t hypergeometric_draw(std::uint64_t N, std::uint64_t K, std::uint64_t n,
                                  double u) {
    const std::uint64_t lo = (n + K > N) ? n + K - N : 0;
    const std::uint64_t hi = std::min(K, n);
    if (lo >= hi)
        return lo;

    const double Nd = static_cast<double>(N);
    const double Kd = static_cast<double>(K);
    const double nd = static_cast<double>(n);

    std::uint64_t mode = static_cast<std::uint64_t>((nd + 1.0) * (Kd + 1.0) / (Nd + 2.0));
    mode = std::clamp(mode, lo, hi);
    const double md = static_cast<double>(mode);
    const double p_mode = std::exp(log_binom(Kd, md) + log_binom(Nd - Kd, nd - md) -
                                   log_binom(Nd, nd));

    // F(mode) by summing downward from the mode; terms decay fast
    double F = p_mode;
    {
        double p = p_mode;
        for (std::uint64_t c = mode; c > lo; --c) {
            const double cd = static_cast<double>(c);
            p *= cd * (Nd - Kd - nd + cd) / ((Kd - cd + 1.0) * (nd - cd + 1.0));
            F += p;
            if (p < p_mode * 1e-18)
                break;
        }
    }

    if (u < F) {
        // smallest c with F(c) >= u, walking down
        std::uint64_t cur = mode;
        double pc = p_mode;
        double Fc = F;
        while (cur > lo) {
            const double Fprev = Fc - pc;
            if (Fprev < u)
                break;
            const double cd = static_cast<double>(cur);
            pc *= cd * (Nd - Kd - nd + cd) / ((Kd - cd + 1.0) * (nd - cd + 1.0));
            Fc = Fprev;
            --cur;
        }
        return cur;
    }

    std::uint64_t cur = mode;
    double pc = p_mode;
    double Fc = F;
    while (cur < hi && Fc < u) {
        const double cd = static_cast<double>(cur);
        pc *= (Kd - cd) * (nd - cd) / ((cd + 1.0) * (Nd - Kd - nd + cd + 1.0));
        ++cur;
        Fc += pc;
    }
    return cur;
}

} // namespace detail

std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t trial) {
    std::uint64_t z = master_seed + (trial + 1) * 0x9E3779B97F4A7C15ull;
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

std::vector<double> SampleDraw::delta_hat(std::uint64_t k_max) const {
    std::vector<double> d(k_max + 1, 0.0);
    const double a_u = static_cast<double>(counts.size());
    for (std::uint64_t c : counts)
        d[std::min(c, k_max)] += 1.0 / a_u;
    return d;
}

std::vector<double> SampleDraw::omega_hat(std::uint64_t k_max) const {
    std::vector<double> w = layer_means_from_counts(counts, k_max);
    const double a_u = static_cast<double>(counts.size());
    for (auto& v : w)
        v /= a_u;
    w[0] = 1.0;
    return w;
}

SampleDraw sample_once(const RedundancyProfile& profile, std::uint64_t b,
                       std::uint64_t seed) {
    const std::uint64_t a = profile.total();
    if (b > a)
        throw std::domain_error("sample_once: b must be <= a");

    std::mt19937_64 eng(seed);
    SampleDraw draw;
    draw.counts.assign(profile.distinct(), 0);

    // conditional hypergeometric chain over colors in rank order
    std::uint64_t remaining_balls = a;
    std::uint64_t remaining_draws = b;
    for (std::size_t i = 0; i < profile.ranks().size() && remaining_draws > 0; ++i) {
        const std::uint64_t rho = profile.ranks()[i];
        const double u = uniform01(eng);
        const std::uint64_t c =
            detail::hypergeometric_draw(remaining_balls, rho, remaining_draws, u);
        draw.counts[i] = c;
        remaining_draws -= c;
        remaining_balls -= rho;
    }

    for (std::uint64_t c : draw.counts)
        if (c > 0)
            ++draw.distinct;
    draw.unique_recall = static_cast<double>(draw.distinct) /
                         static_cast<double>(profile.distinct());
    return draw;
}

SampleDraw sample_once_reference(const RedundancyProfile& profile, std::uint64_t b,
                                 std::uint64_t seed) {
    const std::uint64_t a = profile.total();
    if (b > a)
        throw std::domain_error("sample_once_reference: b must be <= a");
    if (a > 100'000)
        throw std::invalid_argument("sample_once_reference: urn too large (a > 1e5)");

    std::vector<std::uint32_t> balls;
    balls.reserve(a);
    for (std::size_t i = 0; i < profile.ranks().size(); ++i)
        balls.insert(balls.end(), profile.ranks()[i], static_cast<std::uint32_t>(i));

    std::mt19937_64 eng(seed);
    SampleDraw draw;
    draw.counts.assign(profile.distinct(), 0);
    for (std::uint64_t j = 0; j < b; ++j) {
        const std::uint64_t span = a - j;
        std::uint64_t idx = j + static_cast<std::uint64_t>(uniform01(eng) *
                                                           static_cast<double>(span));
        if (idx >= a)
            idx = a - 1;
        std::swap(balls[j], balls[idx]);
        ++draw.counts[balls[j]];
    }

    for (std::uint64_t c : draw.counts)
        if (c > 0)
            ++draw.distinct;
    draw.unique_recall = static_cast<double>(draw.distinct) /
                         static_cast<double>(profile.distinct());
    return draw;
}

SimulationStats simulate(const RedundancyProfile& profile, std::uint64_t b,
                         std::uint64_t trials, std::uint64_t master_seed) {
    if (trials < 1)
        throw std::domain_error("simulate: trials must be >= 1");
    if (b > profile.total())
        throw std::domain_error("simulate: b must be <= a");

    const std::uint64_t k_max = profile.max_redundancy();
    const double a_u = static_cast<double>(profile.distinct());

    std::vector<double> per_trial_ru;
    per_trial_ru.reserve(trials);
    std::vector<double> omega_sum(k_max + 1, 0.0);
    std::vector<double> delta_sum(k_max + 1, 0.0);

    // fixed ascending trial order keeps the reduction byte-identical
    for (std::uint64_t t = 0; t < trials; ++t) {
        const SampleDraw draw = sample_once(profile, b, derive_trial_seed(master_seed, t));
        per_trial_ru.push_back(draw.unique_recall);
        std::vector<double> seen_ge = layer_means_from_counts(draw.counts, k_max);
        double unseen = a_u - seen_ge[1];
        delta_sum[0] += unseen / a_u;
        for (std::uint64_t k = 1; k <= k_max; ++k) {
            omega_sum[k] += seen_ge[k] / a_u;
            const double next = (k < k_max) ? seen_ge[k + 1] : 0.0;
            delta_sum[k] += (seen_ge[k] - next) / a_u;
        }
    }

    SimulationStats stats;
    stats.trials = trials;
    stats.master_seed = master_seed;

    double total = 0.0;
    for (double v : per_trial_ru)
        total += v;
    stats.mean_unique_recall = total / static_cast<double>(trials);

    std::vector<double> sorted = per_trial_ru;
    std::sort(sorted.begin(), sorted.end());
    auto nearest_rank = [&](double p) {
        std::uint64_t rank = static_cast<std::uint64_t>(
            std::ceil(p / 100.0 * static_cast<double>(trials)));
        rank = std::clamp<std::uint64_t>(rank, 1, trials);
        return sorted[rank - 1];
    };
    stats.p5 = nearest_rank(5.0);
    stats.p50 = nearest_rank(50.0);
    stats.p95 = nearest_rank(95.0);

    stats.mean_omega.assign(k_max + 1, 0.0);
    stats.mean_delta.assign(k_max + 1, 0.0);
    stats.mean_omega[0] = 1.0;
    for (std::uint64_t k = 0; k <= k_max; ++k) {
        if (k >= 1)
            stats.mean_omega[k] = omega_sum[k] / static_cast<double>(trials);
        stats.mean_delta[k] = delta_sum[k] / static_cast<double>(trials);
    }
    return stats;
}

} // namespace uniqrecall
