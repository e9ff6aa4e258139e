#pragma once

#include <cstdint>
#include <string_view>

#include "uniqrecall/distribution.hpp"
#include "uniqrecall/recall.hpp"
#include "uniqrecall/special_functions.hpp"

namespace uniqrecall {

/// One of the four analytic tail families, each with its exponent:
///   zipf_rank            rho(i) ~ i^-delta          (delta > 0)
///   frequency_power_law  alpha_k = k^-beta / zeta(beta)   (beta > 1)
///   layer_power_law      eta_k = k^-gamma            (gamma > 0)
///   invariant            alpha_k = (-1)^(k-1) C(tau,k)    (0 < tau <= 1)
class TailFamily {
public:
    enum class Kind { zipf_rank, frequency_power_law, layer_power_law, invariant };

    static TailFamily zipf_rank(double delta);
    static TailFamily frequency_power_law(double beta);
    static TailFamily layer_power_law(double gamma);
    static TailFamily invariant(double tau);

    Kind kind() const { return kind_; }
    double param() const { return param_; }
    /// CLI spelling: "zipf" | "alpha" | "eta" | "invariant".
    std::string_view name() const;

private:
    TailFamily(Kind kind, double param);
    Kind kind_;
    double param_;
};

/// Pointwise alpha_k of the (untruncated) family.
double family_mass(const TailFamily& family, std::uint64_t k);

/// Pointwise eta_k of the (untruncated) family.
double family_layer(const TailFamily& family, std::uint64_t k);

/// Truncated family: alpha_k as above for k < k_max, and alpha_{k_max}
/// absorbs the remaining tail so the spectrum sums to 1 exactly.
/// Trailing zero mass is trimmed (the tau = 1 invariant degenerates to a
/// single layer).
FrequencySpectrum materialize(const TailFamily& family, std::uint64_t k_max);

/// Closed-form unique recall of the untruncated family:
///   zipf delta=1:  r/sqrt(1-r) * artanh(sqrt(1-r))
///   zipf general:  certified series over alpha_k (1-r)^k
///   alpha:         1 - Li_beta(1-r)/zeta(beta)
///   eta:           r/(1-r) * Li_gamma(1-r), gamma=1: -r ln r/(1-r)
///   invariant:     r^tau
/// Limits 0 and 1 at r = 0 and r = 1.
RecallEstimate recall_closed_form(const TailFamily& family, double r,
                                  const SeriesConfig& cfg = {});

struct ExponentEquivalents {
    double gamma;
    double beta;
    double delta;
};

/// The tail exponents determine each other: beta = gamma + 1 = 1/delta + 1
/// = tau + 1. Input is validated against the source family's domain.
ExponentEquivalents exponent_convert(TailFamily::Kind source, double value);

/// k-recall of the invariant family: r^tau, independent of k.
double k_recall_invariant(double tau, double r);

/// Finite realization of a family at a_u colors: layer counts
/// floor(a_u*eta_k) - floor(a_u*eta_{k+1}) expanded to a rank vector.
/// This is how the synthetic data sets for end-to-end runs are produced.
RedundancyProfile quantize_profile(const TailFamily& family, std::uint64_t k_max,
                                   std::uint64_t a_u);

} // namespace uniqrecall
