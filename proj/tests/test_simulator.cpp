#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include <uniqrecall/evolution.hpp>
#include <uniqrecall/recall.hpp>
#include <uniqrecall/simulator.hpp>

#include "brute_force.hpp"

using namespace uniqrecall;

TEST_CASE("trial seed derivation is the documented splitmix64 stream") {
    auto reference = [](std::uint64_t state) {
        std::uint64_t z = state;
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    };
    CHECK(derive_trial_seed(0, 0) == reference(0x9E3779B97F4A7C15ull));
    CHECK(derive_trial_seed(42, 7) == reference(42ull + 8ull * 0x9E3779B97F4A7C15ull));
    CHECK(derive_trial_seed(42, 7) != derive_trial_seed(42, 8));
    CHECK(derive_trial_seed(42, 7) != derive_trial_seed(43, 7));
}

TEST_CASE("hypergeometric draws invert the exact CDF") {
    // small case: compare against the exact CDF at many quantiles
    const std::uint64_t N = 20, K = 6, n = 9;
    auto pmf = [&](std::uint64_t c) {
        auto comb = [](std::uint64_t a, std::uint64_t b) -> double {
            if (b > a)
                return 0.0;
            double v = 1.0;
            for (std::uint64_t j = 0; j < b; ++j)
                v = v * static_cast<double>(a - j) / static_cast<double>(j + 1);
            return v;
        };
        return comb(K, c) * comb(N - K, n - c) / comb(N, n);
    };
    for (double u = 0.001; u < 1.0; u += 0.037) {
        double cum = 0.0;
        std::uint64_t want = 0;
        for (std::uint64_t c = 0; c <= std::min(K, n); ++c) {
            cum += pmf(c);
            if (cum >= u) {
                want = c;
                break;
            }
        }
        CHECK(detail::hypergeometric_draw(N, K, n, u) == want);
    }
    // degenerate support
    CHECK(detail::hypergeometric_draw(10, 4, 10, 0.5) == 4);
    CHECK(detail::hypergeometric_draw(10, 4, 0, 0.99) == 0);
    // huge color: the mode-anchored walk must not underflow
    const std::uint64_t big = detail::hypergeometric_draw(1'000'000, 5000, 200'000, 0.5);
    CHECK(big > 900);
    CHECK(big < 1100);
}

TEST_CASE("sample_once edge draws") {
    const RedundancyProfile example({6, 3, 3, 2, 1});
    const auto all = sample_once(example, 15, 123);
    CHECK(all.counts == example.ranks());
    CHECK(all.unique_recall == 1.0);

    const auto none = sample_once(example, 0, 123);
    CHECK(none.distinct == 0);
    CHECK(none.unique_recall == 0.0);

    CHECK_THROWS_AS(sample_once(example, 16, 1), std::domain_error);
}

TEST_CASE("sample_once is deterministic and respects per-color bounds") {
    const RedundancyProfile profile({5, 4, 2, 2, 1, 1});
    for (std::uint64_t seed : {1ull, 77ull, 909090ull}) {
        const auto d1 = sample_once(profile, 7, seed);
        const auto d2 = sample_once(profile, 7, seed);
        CHECK(d1.counts == d2.counts);
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < d1.counts.size(); ++i) {
            CHECK(d1.counts[i] <= profile.ranks()[i]);
            total += d1.counts[i];
        }
        CHECK(total == 7);
    }
    CHECK(sample_once(profile, 7, 1).counts != sample_once(profile, 7, 2).counts);
}

TEST_CASE("two-color urn matches enumeration") {
    const RedundancyProfile pairs({2, 2});
    const auto [mean, var] = oracle::enumerate_distinct(pairs, 2);
    const auto stats = simulate(pairs, 2, 100'000, 20240811);
    const double se = std::sqrt(var / 4.0 / 100'000.0); // distinct/2 variance
    CHECK(std::fabs(stats.mean_unique_recall - mean / 2.0) <= 3.0 * se);
    CHECK(stats.mean_unique_recall == doctest::Approx(0.8333).epsilon(0.01));
}

TEST_CASE("simulate aggregates are deterministic and ordered") {
    const RedundancyProfile profile({4, 3, 2, 1, 1, 1});
    const auto s1 = simulate(profile, 6, 500, 99);
    const auto s2 = simulate(profile, 6, 500, 99);
    CHECK(s1.mean_unique_recall == s2.mean_unique_recall);
    CHECK(s1.mean_omega == s2.mean_omega);
    CHECK(s1.mean_delta == s2.mean_delta);
    CHECK(s1.p5 <= s1.p50);
    CHECK(s1.p50 <= s1.p95);

    double prev = 1.0 + 1e-12;
    for (std::uint64_t k = 1; k <= profile.max_redundancy(); ++k) {
        CHECK(s1.mean_omega[k] <= prev);
        prev = s1.mean_omega[k];
    }
    double delta_total = std::accumulate(s1.mean_delta.begin(), s1.mean_delta.end(), 0.0);
    CHECK(delta_total == doctest::Approx(1.0).epsilon(1e-12));

    const auto full = simulate(profile, profile.total(), 10, 7);
    CHECK(full.mean_unique_recall == 1.0);
    CHECK(full.p5 == 1.0);
    CHECK(full.p95 == 1.0);
}

TEST_CASE("stratified sampler agrees with exact expectations on small urns") {
    // fixed-seed subset of the a<=12 sweep (the full sweep is tag [slow])
    const std::vector<std::vector<std::uint64_t>> profiles = {
        {2, 2}, {3, 2, 1}, {4, 4}, {2, 2, 2, 1}, {5, 3, 2, 1, 1}, {6, 3, 3}};
    std::uint64_t seed = 1;
    for (const auto& ranks : profiles) {
        const RedundancyProfile profile(ranks);
        const std::uint64_t a = profile.total();
        for (std::uint64_t b = 0; b <= a; b += 2) {
            const std::uint64_t trials = 40'000;
            const auto stats = simulate(profile, b, trials, seed++);
            const auto [mean, var] = oracle::enumerate_distinct(profile, b);
            const double a_u = static_cast<double>(profile.distinct());
            const double se = std::sqrt(var) / a_u / std::sqrt(static_cast<double>(trials));
            CHECK(std::fabs(stats.mean_unique_recall - mean / a_u) <= 3.0 * se + 1e-12);
        }
    }
}

TEST_CASE("stratified and shuffle samplers draw the same law") {
    const RedundancyProfile profile({3, 2, 1, 1});
    const std::uint64_t trials = 40'000;
    const std::uint64_t b = 3;

    double mean_strat = 0.0, mean_ref = 0.0;
    std::vector<double> counts_strat(profile.distinct(), 0.0);
    std::vector<double> counts_ref(profile.distinct(), 0.0);
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto ds = sample_once(profile, b, derive_trial_seed(5, t));
        const auto dr = sample_once_reference(profile, b, derive_trial_seed(6, t));
        mean_strat += ds.unique_recall;
        mean_ref += dr.unique_recall;
        for (std::size_t i = 0; i < counts_strat.size(); ++i) {
            counts_strat[i] += static_cast<double>(ds.counts[i]);
            counts_ref[i] += static_cast<double>(dr.counts[i]);
        }
    }
    mean_strat /= trials;
    mean_ref /= trials;

    const auto [mean, var] = oracle::enumerate_distinct(profile, b);
    const double a_u = static_cast<double>(profile.distinct());
    const double se = std::sqrt(var) / a_u / std::sqrt(static_cast<double>(trials));
    CHECK(std::fabs(mean_strat - mean / a_u) <= 3.0 * se);
    CHECK(std::fabs(mean_ref - mean / a_u) <= 3.0 * se);

    // per-color expected count is b * rho_i / a for both samplers
    for (std::size_t i = 0; i < counts_strat.size(); ++i) {
        const double expect = 3.0 * static_cast<double>(profile.ranks()[i]) / 7.0;
        CHECK(counts_strat[i] / trials == doctest::Approx(expect).epsilon(0.03));
        CHECK(counts_ref[i] / trials == doctest::Approx(expect).epsilon(0.03));
    }

    CHECK_THROWS_AS(
        sample_once_reference(RedundancyProfile(std::vector<std::uint64_t>(2, 60'000)), 1, 1),
        std::invalid_argument);
}

TEST_CASE("empirical means reproduce the exact-expectation convergence sequence") {
    // a = 4, 6, 8, 10 at rho = 2, r = 0.5, then the asymptotic limit
    const double expected[] = {5.0 / 6.0, 0.8, 0.785714, 0.777778};
    int idx = 0;
    for (std::uint64_t a_u : {2ull, 3ull, 4ull, 5ull}) {
        const RedundancyProfile profile(std::vector<std::uint64_t>(a_u, 2));
        const auto stats = simulate(profile, a_u, 30'000, 31337 + a_u);
        const double exact = unique_recall_exact(profile, a_u).value;
        CHECK(exact == doctest::Approx(expected[idx]).epsilon(1e-6));
        const double var = variance_uniform_exact(2 * a_u, 2, a_u) /
                           (static_cast<double>(a_u) * static_cast<double>(a_u));
        const double se = std::sqrt(var / 30'000.0);
        CHECK(std::fabs(stats.mean_unique_recall - exact) <= 3.0 * se);
        ++idx;
    }
}

TEST_CASE("per-layer means approach the analytic sample spectrum as a_u grows") {
    const auto alpha = FrequencySpectrum::from_dense(
        std::vector<double>{0.2, 0.2, 0.4, 0.0, 0.0, 0.2});
    const auto predicted = evolve(alpha, 0.5);
    // finite-size bias shrinks like 1/a_u until Monte Carlo noise (~2e-3 at
    // 100 trials) takes over, so the decrease is asserted up to that noise
    double first_err = 0.0;
    double prev_err = 10.0;
    for (std::uint64_t a_u : {5ull, 20ull, 100ull, 1000ull}) {
        const auto profile = rho_from_alpha(alpha, a_u);
        const std::uint64_t b = profile.total() / 2;
        const auto stats = simulate(profile, b, 100, 271828);
        double err = 0.0;
        for (std::uint64_t k = 1; k <= 6; ++k)
            err = std::max(err, std::fabs(stats.mean_omega[k] - predicted.omega[k]));
        CHECK(err < prev_err + 0.004);
        if (a_u == 5)
            first_err = err;
        prev_err = err;
    }
    CHECK(prev_err <= 0.01); // the a_u = 1000 endpoint
    CHECK(prev_err < first_err);
}

// full a<=12 sweep; heavy and statistical, so hidden behind the [slow] tag:
//   ./test_simulator -ts=slow -ntc
TEST_SUITE("slow" * doctest::skip(true)) {
    TEST_CASE("exhaustive small-urn sweep stays within the standard-error budget") {
        std::uint64_t combos = 0;
        std::uint64_t beyond3 = 0;
        std::uint64_t beyond5 = 0;
        std::uint64_t seed = 1000;
        for (std::uint64_t a = 1; a <= 12; ++a) {
            for (const auto& ranks : oracle::partitions(a)) {
                const RedundancyProfile profile(ranks);
                for (std::uint64_t b = 0; b <= a; ++b) {
                    const std::uint64_t trials = 100'000;
                    const auto stats = simulate(profile, b, trials, seed++);
                    const auto [mean, var] = oracle::enumerate_distinct(profile, b);
                    const double a_u = static_cast<double>(profile.distinct());
                    const double se =
                        std::sqrt(var) / a_u / std::sqrt(static_cast<double>(trials));
                    const double dev = std::fabs(stats.mean_unique_recall - mean / a_u);
                    ++combos;
                    if (dev > 3.0 * se + 1e-12)
                        ++beyond3;
                    if (dev > 5.0 * se + 1e-12)
                        ++beyond5;
                }
            }
        }
        CHECK(combos > 2500);
        CHECK(static_cast<double>(beyond3) <= 0.01 * static_cast<double>(combos));
        CHECK(beyond5 == 0);
    }
}
