#pragma once

#include <cstdint>
#include <vector>

#include "uniqrecall/distribution.hpp"

namespace uniqrecall {

/// Outcome of one draw of b balls without replacement: per-color counts in
/// rank order, joint law multivariate hypergeometric.
struct SampleDraw {
    std::vector<std::uint64_t> counts;
    std::uint64_t distinct = 0; // b_u
    double unique_recall = 0.0; // r_u

    /// Empirical sample spectrum: fraction of colors drawn exactly k times,
    /// k = 0..k_max.
    std::vector<double> delta_hat(std::uint64_t k_max) const;
    /// Empirical layers: fraction of colors drawn >= k times, index 0 is 1.
    std::vector<double> omega_hat(std::uint64_t k_max) const;
};

/// Monte Carlo aggregates over independent trials. Percentiles are
/// nearest-rank on the sorted per-trial unique recalls. mean_omega[k]
/// (k >= 1, [0] == 1) and mean_delta[k] (k >= 0) are per-layer means of the
/// empirical vectors above.
struct SimulationStats {
    std::uint64_t trials = 0;
    std::uint64_t master_seed = 0;
    double mean_unique_recall = 0.0;
    double p5 = 0.0;
    double p50 = 0.0;
    double p95 = 0.0;
    std::vector<double> mean_omega;
    std::vector<double> mean_delta;
};

/// Trial seeds are the outputs of a splitmix64 stream seeded at master_seed:
/// z = master_seed + (trial+1) * 0x9E3779B97F4A7C15, then the splitmix64
/// finalizer (z ^= z>>30; z *= 0xBF58476D1CE4E5B9; z ^= z>>27;
/// z *= 0x94D049BB133111EB; z ^= z>>31). This derivation, the per-trial
/// mt19937_64 engine, and the (x >> 11) * 2^-53 uniforms are part of the
/// reproducibility contract: identical inputs give byte-identical stats.
std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t trial);

/// One draw via stratified conditional hypergeometric sampling per color
/// (no ball array is materialized, so a up to ~1e8 is fine). Deterministic
/// for fixed (profile, b, seed).
SampleDraw sample_once(const RedundancyProfile& profile, std::uint64_t b,
                       std::uint64_t seed);

/// Reference sampler: materializes the urn and partially Fisher-Yates
/// shuffles it. Limited to a <= 1e5; kept as the independent cross-check of
/// the conditional-draw path.
SampleDraw sample_once_reference(const RedundancyProfile& profile, std::uint64_t b,
                                 std::uint64_t seed);

/// Aggregates `trials` independent sample_once runs, trial seeds derived as
/// documented above, reduced in ascending trial order.
SimulationStats simulate(const RedundancyProfile& profile, std::uint64_t b,
                         std::uint64_t trials, std::uint64_t master_seed);

namespace detail {
/// Inverse-CDF draw from Hypergeometric(N population, K successes, n draws)
/// at uniform u in [0,1). CDF inversion is anchored at the mode so the walk
/// stays in healthy floating-point territory for K up to 1e6.
std::uint64_t hypergeometric_draw(std::uint64_t N, std::uint64_t K,
                                  std::uint64_t n, double u);
} // namespace detail

} // namespace uniqrecall
