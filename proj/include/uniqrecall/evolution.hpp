#pragma once

#include <cstdint>
#include <vector>

#include "uniqrecall/distribution.hpp"

namespace uniqrecall {

/// Expected sample distribution at recall r. delta[k] (k = 0..k_max) is the
/// fraction of information appearing exactly k times in the sample, with
/// delta[0] the unseen mass; omega[k] (k = 1..k_max) is the fraction
/// appearing at least k times, omega[0] == 1 by convention.
struct SampleSpectrum {
    double r = 0.0;
    std::vector<double> delta;
    std::vector<double> omega;

    std::uint64_t k_max() const { return delta.empty() ? 0 : delta.size() - 1; }
};

/// r_uk = omega_k / eta_k for k = 1..k_max; at(1) is unique recall.
struct KRecallCurve {
    double r = 0.0;
    std::vector<double> values; // values[k-1] <-> k

    std::uint64_t k_max() const { return values.size(); }
    double at(std::uint64_t k) const { return values[k - 1]; }
};

struct CoreBandRow {
    std::uint64_t k;
    double k_recall;
    double ratio; // r_uk / r^gamma
};

/// Per-k ratio table with the maximal contiguous band where the ratio sits
/// inside [1 - band_tol, 1 + band_tol].
struct CoreInvarianceReport {
    double r = 0.0;
    double gamma = 0.0;
    double band_tol = 0.1;
    std::vector<CoreBandRow> rows;
    bool has_band = false;
    std::uint64_t band_lo = 0;
    std::uint64_t band_hi = 0;
};

struct EvolveConfig {
    /// Binomial masses below this are skipped; every skipped term is
    /// certified smaller than the cutoff, so |error per delta_k| <= cutoff.
    double cutoff = 1e-16;
    /// Spectra with k_max at or below this are evolved by the plain full
    /// double loop (no windowing), keeping the stratification identity
    /// bit-exact at small scale.
    std::uint64_t dense_limit = 512;
};

/// Binomial mass C(rho,k) r^k (1-r)^(rho-k); 0 for k > rho. Direct product
/// for rho <= 1000, log-space via lgamma above.
double delta_uniform(std::uint64_t k, std::uint64_t rho, double r);

/// delta_k = sum_{x>=k} alpha_x * delta_uniform(k, x, r) for k = 0..k_max
/// (ascending x, compensated); omega is the exact suffix sum of delta.
SampleSpectrum evolve(const FrequencySpectrum& spectrum, double r,
                      const EvolveConfig& cfg = {});

KRecallCurve k_recall_curve(const FrequencySpectrum& spectrum, double r,
                            const EvolveConfig& cfg = {});

CoreInvarianceReport core_invariance_report(const FrequencySpectrum& spectrum,
                                            double r, double gamma,
                                            double band_tol = 0.1,
                                            const EvolveConfig& cfg = {});

} // namespace uniqrecall
