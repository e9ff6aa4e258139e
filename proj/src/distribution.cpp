#include "uniqrecall/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "uniqrecall/summation.hpp"

namespace uniqrecall {

namespace {

void check_structure(const std::vector<SpectrumEntry>& entries, const char* what) {
    std::uint64_t prev = 0;
    for (const auto& e : entries) {
        if (e.k < 1)
            throw std::invalid_argument(std::string(what) + ": index k must be >= 1");
        if (e.k <= prev)
            throw std::invalid_argument(std::string(what) + ": entries must be strictly ascending in k");
        if (!std::isfinite(e.value))
            throw std::invalid_argument(std::string(what) + ": non-finite value at k=" + std::to_string(e.k));
        prev = e.k;
    }
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

FrequencySpectrum FrequencySpectrum::from_dense(std::span<const double> mass,
                                                double norm_slack) {
    std::vector<SpectrumEntry> entries;
    entries.reserve(mass.size());
    for (std::size_t i = 0; i < mass.size(); ++i)
        entries.push_back({static_cast<std::uint64_t>(i + 1), mass[i]});
    return from_entries(std::move(entries), norm_slack);
}

FrequencySpectrum FrequencySpectrum::from_entries(std::vector<SpectrumEntry> entries,
                                                  double norm_slack) {
    check_structure(entries, "FrequencySpectrum");
    FrequencySpectrum s;
    s.entries_ = std::move(entries);
    s.norm_slack_ = norm_slack;
    return s;
}

double FrequencySpectrum::mass_at(std::uint64_t k) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), k,
                               [](const SpectrumEntry& e, std::uint64_t kk) { return e.k < kk; });
    if (it != entries_.end() && it->k == k)
        return it->value;
    return 0.0;
}

std::vector<double> FrequencySpectrum::to_dense() const { return to_dense(k_max()); }

std::vector<double> FrequencySpectrum::to_dense(std::uint64_t size) const {
    std::vector<double> dense(size, 0.0);
    for (const auto& e : entries_)
        if (e.k <= size)
            dense[e.k - 1] = e.value;
    return dense;
}

double FrequencySpectrum::total_mass() const {
    CompensatedSum sum;
    for (const auto& e : entries_)
        sum.add(e.value);
    return sum.value();
}

double FrequencySpectrum::mean_redundancy() const {
    CompensatedSum sum;
    for (const auto& e : entries_)
        sum.add(static_cast<double>(e.k) * e.value);
    return sum.value();
}

ValidationReport validate(const FrequencySpectrum& spectrum) {
    ValidationReport report;
    auto flag = [&](std::string msg) {
        report.ok = false;
        report.violations.push_back(std::move(msg));
    };

    if (spectrum.entries().empty()) {
        flag("spectrum is empty");
        return report;
    }
    for (const auto& e : spectrum.entries())
        if (e.value < 0.0)
            flag("alpha_" + std::to_string(e.k) + " = " + fmt(e.value) + " < 0");
    if (spectrum.entries().back().value <= 0.0)
        flag("alpha_k_max = " + fmt(spectrum.entries().back().value) +
             " must be > 0 (k_max = " + std::to_string(spectrum.k_max()) + ")");
    const double total = spectrum.total_mass();
    if (std::fabs(total - 1.0) > spectrum.norm_slack())
        flag("sum = " + fmt(total) + " != 1 (slack " + fmt(spectrum.norm_slack()) + ")");
    return report;
}

void require_valid(const FrequencySpectrum& spectrum) {
    ValidationReport report = validate(spectrum);
    if (report.ok)
        return;
    std::string msg = "invalid spectrum:";
    for (const auto& v : report.violations)
        msg += " " + v + ";";
    throw std::invalid_argument(msg);
}

RedundancyProfile::RedundancyProfile(std::vector<std::uint64_t> ranks)
    : ranks_(std::move(ranks)) {
    if (ranks_.empty())
        throw std::invalid_argument("RedundancyProfile: needs at least one rank");
    std::uint64_t prev = ranks_.front();
    for (std::uint64_t r : ranks_) {
        if (r < 1)
            throw std::invalid_argument("RedundancyProfile: redundancies must be >= 1");
        if (r > prev)
            throw std::invalid_argument("RedundancyProfile: ranks must be non-increasing");
        prev = r;
        total_ += r;
    }
}

RedundancyProfile RedundancyProfile::from_unsorted(std::vector<std::uint64_t> ranks) {
    std::sort(ranks.begin(), ranks.end(), std::greater<>());
    return RedundancyProfile(std::move(ranks));
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> RedundancyProfile::grouped() const {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> groups;
    // ranks are descending; walk from the back for ascending values
    for (auto it = ranks_.rbegin(); it != ranks_.rend(); ++it) {
        if (!groups.empty() && groups.back().first == *it)
            ++groups.back().second;
        else
            groups.emplace_back(*it, 1);
    }
    return groups;
}

LayerProfile LayerProfile::from_dense(std::span<const double> eta, double pin_slack) {
    std::vector<SpectrumEntry> entries;
    entries.reserve(eta.size());
    for (std::size_t i = 0; i < eta.size(); ++i)
        entries.push_back({static_cast<std::uint64_t>(i + 1), eta[i]});
    return from_entries(std::move(entries), pin_slack);
}

LayerProfile LayerProfile::from_entries(std::vector<SpectrumEntry> entries,
                                        double pin_slack) {
    check_structure(entries, "LayerProfile");
    if (entries.empty())
        throw std::invalid_argument("LayerProfile: needs at least one layer");
    if (entries.front().k != 1)
        throw std::invalid_argument("LayerProfile: must start at k = 1");
    if (std::fabs(entries.front().value - 1.0) > pin_slack)
        throw std::invalid_argument("LayerProfile: eta_1 = " + fmt(entries.front().value) +
                                    " must equal 1");
    entries.front().value = 1.0;
    double prev = entries.front().value;
    for (const auto& e : entries) {
        if (e.value <= 0.0)
            throw std::invalid_argument("LayerProfile: eta_" + std::to_string(e.k) +
                                        " must be > 0");
        if (e.value > prev)
            throw std::invalid_argument("LayerProfile: layers must be non-increasing (at k=" +
                                        std::to_string(e.k) + ")");
        prev = e.value;
    }
    LayerProfile p;
    p.entries_ = std::move(entries);
    return p;
}

double LayerProfile::layer_at(std::uint64_t k) const {
    if (k < 1 || entries_.empty() || k > k_max())
        return k < 1 ? 1.0 : 0.0;
    // eta is constant between occupied entries: take the next stored k >= k
    auto it = std::lower_bound(entries_.begin(), entries_.end(), k,
                               [](const SpectrumEntry& e, std::uint64_t kk) { return e.k < kk; });
    return it->value;
}

std::vector<double> LayerProfile::to_dense() const {
    std::vector<double> dense(k_max(), 0.0);
    std::size_t j = 0;
    for (std::uint64_t k = 1; k <= k_max(); ++k) {
        while (entries_[j].k < k)
            ++j;
        dense[k - 1] = entries_[j].value;
    }
    return dense;
}

std::pair<FrequencySpectrum, std::uint64_t> alpha_from_rho(const RedundancyProfile& profile) {
    const auto groups = profile.grouped();
    const double a_u = static_cast<double>(profile.distinct());
    std::vector<SpectrumEntry> entries;
    entries.reserve(groups.size());
    for (const auto& [value, count] : groups)
        entries.push_back({value, static_cast<double>(count) / a_u});
    return {FrequencySpectrum::from_entries(std::move(entries)), profile.distinct()};
}

RedundancyProfile rho_from_alpha(const FrequencySpectrum& spectrum, std::uint64_t a_u) {
    require_valid(spectrum);
    if (a_u < 1)
        throw std::invalid_argument("rho_from_alpha: a_u must be >= 1");

    const double slack = 1e-6 * static_cast<double>(a_u);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> counts; // (k, count)
    std::uint64_t total = 0;
    for (const auto& e : spectrum.entries()) {
        const double scaled = static_cast<double>(a_u) * e.value;
        const double rounded = std::round(scaled);
        if (std::fabs(scaled - rounded) > slack)
            throw std::invalid_argument("rho_from_alpha: a_u*alpha_k is not integral at k=" +
                                        std::to_string(e.k) + " (a_u*alpha_k = " + fmt(scaled) + ")");
        const auto c = static_cast<std::uint64_t>(rounded);
        if (c > 0)
            counts.emplace_back(e.k, c);
        total += c;
    }
    if (total != a_u)
        throw std::invalid_argument("rho_from_alpha: layer counts sum to " +
                                    std::to_string(total) + " != a_u = " + std::to_string(a_u));

    std::vector<std::uint64_t> ranks;
    ranks.reserve(a_u);
    for (auto it = counts.rbegin(); it != counts.rend(); ++it)
        ranks.insert(ranks.end(), it->second, it->first);
    return RedundancyProfile(std::move(ranks));
}

LayerProfile eta_from_alpha(const FrequencySpectrum& spectrum) {
    require_valid(spectrum);
    const auto& src = spectrum.entries();
    std::vector<SpectrumEntry> entries(src.size());
    CompensatedSum suffix;
    for (std::size_t i = src.size(); i-- > 0;) {
        suffix.add(src[i].value);
        entries[i] = {src[i].k, std::min(suffix.value(), 1.0)};
    }
    if (entries.front().k != 1)
        entries.insert(entries.begin(), SpectrumEntry{1, entries.front().value});
    return LayerProfile::from_entries(std::move(entries), spectrum.norm_slack());
}

FrequencySpectrum alpha_from_eta(const LayerProfile& layers) {
    const auto& src = layers.entries();
    std::vector<SpectrumEntry> entries(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) {
        const double next = (i + 1 < src.size()) ? src[i + 1].value : 0.0;
        entries[i] = {src[i].k, src[i].value - next};
    }
    return FrequencySpectrum::from_entries(std::move(entries));
}

} // namespace uniqrecall
