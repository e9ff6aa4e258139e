#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace uniqrecall {

/// One occupied position of a sparse non-negative vector indexed by
/// redundancy k >= 1.
struct SpectrumEntry {
    std::uint64_t k;
    double value;
};

/// Normalized redundancy frequency distribution: value at k is the fraction
/// of distinct pieces of information carried by exactly k data items.
///
/// Entries are kept sparse (ascending k). Interior zero entries are legal and
/// preserved; the last entry must carry positive mass, so k_max() is always
/// the largest redundancy with (declared) support. Instances are immutable
/// after construction.
class FrequencySpectrum {
public:
    /// Normalization slack for analytically constructed spectra.
    static constexpr double kAnalyticSlack = 1e-9;
    /// Looser slack for spectra built from counted data.
    static constexpr double kIngestSlack = 1e-6;

    FrequencySpectrum() = default;

    /// mass[i] is the fraction at redundancy i+1. Zero entries are kept.
    static FrequencySpectrum from_dense(std::span<const double> mass,
                                        double norm_slack = kAnalyticSlack);

    /// Entries must be structurally sound: strictly ascending k, k >= 1,
    /// finite values. Semantic invariants are checked by validate().
    static FrequencySpectrum from_entries(std::vector<SpectrumEntry> entries,
                                          double norm_slack = kAnalyticSlack);

    const std::vector<SpectrumEntry>& entries() const { return entries_; }
    std::uint64_t k_max() const { return entries_.empty() ? 0 : entries_.back().k; }
    double norm_slack() const { return norm_slack_; }

    double mass_at(std::uint64_t k) const;
    std::vector<double> to_dense() const;
    /// Dense view padded (or cut) to exactly `size` positions.
    std::vector<double> to_dense(std::uint64_t size) const;

    double total_mass() const;
    /// sum_k k * alpha_k
    double mean_redundancy() const;

private:
    std::vector<SpectrumEntry> entries_;
    double norm_slack_ = kAnalyticSlack;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Reports every violated spectrum invariant; never throws, never mutates.
ValidationReport validate(const FrequencySpectrum& spectrum);

/// Throws std::invalid_argument listing the violations when validate fails.
void require_valid(const FrequencySpectrum& spectrum);

/// Rank-ordered redundancies (rho_1 >= rho_2 >= ... >= 1), the finite exact
/// description of a data set. total() is the number of data items a,
/// distinct() the number of pieces of information a_u.
class RedundancyProfile {
public:
    /// ranks must be non-increasing with every entry >= 1.
    explicit RedundancyProfile(std::vector<std::uint64_t> ranks);

    static RedundancyProfile from_unsorted(std::vector<std::uint64_t> ranks);

    const std::vector<std::uint64_t>& ranks() const { return ranks_; }
    std::uint64_t total() const { return total_; }
    std::uint64_t distinct() const { return ranks_.size(); }
    std::uint64_t max_redundancy() const { return ranks_.front(); }

    /// (redundancy value, multiplicity), ascending value.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> grouped() const;

private:
    std::vector<std::uint64_t> ranks_;
    std::uint64_t total_ = 0;
};

/// Complementary cumulative layers: value at k is the fraction of
/// information appearing with redundancy >= k. eta_1 == 1 exactly,
/// non-increasing, positive through k_max. Sparse like the spectrum;
/// between stored entries the layer value is that of the next stored k.
class LayerProfile {
public:
    static LayerProfile from_dense(std::span<const double> eta,
                                   double pin_slack = 1e-9);
    static LayerProfile from_entries(std::vector<SpectrumEntry> entries,
                                     double pin_slack = 1e-9);

    const std::vector<SpectrumEntry>& entries() const { return entries_; }
    std::uint64_t k_max() const { return entries_.empty() ? 0 : entries_.back().k; }

    /// eta_k for any k >= 1 (0 beyond k_max).
    double layer_at(std::uint64_t k) const;
    std::vector<double> to_dense() const;

private:
    std::vector<SpectrumEntry> entries_;
};

/// Histogram pass over the ranks: alpha_k = #{i : rho_i = k} / a_u.
/// The returned count is a_u; keeping it alongside alpha makes the mapping
/// invertible.
std::pair<FrequencySpectrum, std::uint64_t> alpha_from_rho(const RedundancyProfile& profile);

/// Inverse of alpha_from_rho. Requires every a_u * alpha_k to be integral
/// within |a_u*alpha_k - round(.)| <= 1e-6 * a_u; rejects otherwise, naming
/// the offending k. Ranks come out as each k repeated round(a_u*alpha_k)
/// times, descending, which realizes rho_i = max{k : eta_k >= i/a_u}.
RedundancyProfile rho_from_alpha(const FrequencySpectrum& spectrum, std::uint64_t a_u);

/// Suffix sums eta_k = sum_{x>=k} alpha_x; eta_1 is pinned to exactly 1.
LayerProfile eta_from_alpha(const FrequencySpectrum& spectrum);

/// Exact inverse of eta_from_alpha: alpha_k = eta_k - eta_{k+1} with the
/// convention eta_{k_max+1} = 0.
FrequencySpectrum alpha_from_eta(const LayerProfile& layers);

} // namespace uniqrecall
