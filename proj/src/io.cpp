#include "uniqrecall/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <unordered_set>

#include "uniqrecall/evolution.hpp"
#include "uniqrecall/recall.hpp"

namespace uniqrecall {

namespace {

bool is_blank_or_comment(const std::string& line) {
    for (char ch : line) {
        if (ch == '#')
            return true;
        if (!std::isspace(static_cast<unsigned char>(ch)))
            return false;
    }
    return true;
}

std::uint64_t parse_positive(const std::string& token, const char* what,
                             std::size_t line_no) {
    try {
        std::size_t pos = 0;
        if (token.empty() || token[0] == '-')
            throw std::invalid_argument(token);
        const unsigned long long v = std::stoull(token, &pos);
        if (pos != token.size() || v < 1)
            throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw parse_error("line " + std::to_string(line_no) + ": " + what +
                              " must be a positive integer, got '" + token + "'",
                          line_no);
    }
}

IngestResult result_from_counts(const std::map<std::uint64_t, std::uint64_t>& counts) {
    if (counts.empty())
        throw parse_error("no records");
    std::uint64_t a_u = 0;
    std::uint64_t a = 0;
    for (const auto& [k, c] : counts) {
        a_u += c;
        a += k * c;
    }
    std::vector<SpectrumEntry> entries;
    entries.reserve(counts.size());
    for (const auto& [k, c] : counts)
        entries.push_back({k, static_cast<double>(c) / static_cast<double>(a_u)});
    IngestResult out;
    out.spectrum = FrequencySpectrum::from_entries(std::move(entries),
                                                   FrequencySpectrum::kIngestSlack);
    out.distinct = a_u;
    out.total = a;
    return out;
}

// first tab wins; otherwise the first whitespace run
std::pair<std::string, std::string> split_record(const std::string& line) {
    std::size_t cut = line.find('\t');
    if (cut == std::string::npos) {
        cut = line.find_first_of(" \t");
        if (cut == std::string::npos)
            return {line, ""};
    }
    std::size_t second = line.find_first_not_of(" \t", cut);
    std::string left = line.substr(0, cut);
    std::string right = second == std::string::npos ? "" : line.substr(second);
    while (!right.empty() && (right.back() == '\r' || right.back() == ' ' ||
                              right.back() == '\t'))
        right.pop_back();
    return {left, right};
}

} // namespace

IngestResult ingest_histogram(std::istream& in) {
    std::map<std::uint64_t, std::uint64_t> counts; // duplicate k merged by summation
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank_or_comment(line))
            continue;
        auto [left, right] = split_record(line);
        if (right.empty())
            throw parse_error("line " + std::to_string(line_no) +
                                  ": expected 'k<TAB>count'",
                              line_no);
        const std::uint64_t k = parse_positive(left, "redundancy k", line_no);
        const std::uint64_t c = parse_positive(right, "count", line_no);
        counts[k] += c;
    }
    return result_from_counts(counts);
}

IngestResult ingest_raw(std::istream& in) {
    std::map<std::uint64_t, std::uint64_t> counts;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank_or_comment(line))
            continue;
        auto [item, freq] = split_record(line);
        if (freq.empty())
            throw parse_error("line " + std::to_string(line_no) +
                                  ": expected 'item<TAB>frequency'",
                              line_no);
        if (!seen.insert(item).second)
            throw parse_error("line " + std::to_string(line_no) + ": duplicate item '" +
                                  item + "'",
                              line_no);
        counts[parse_positive(freq, "frequency", line_no)] += 1;
    }
    return result_from_counts(counts);
}

FitResult fit_exponent(const LayerProfile& layers, std::uint64_t k_lo,
                       std::uint64_t k_hi) {
    if (k_lo < 1 || k_lo >= k_hi)
        throw std::invalid_argument("fit_exponent: need 1 <= k_lo < k_hi");
    if (k_hi > layers.k_max())
        throw std::invalid_argument("fit_exponent: k_hi exceeds k_max");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (const auto& e : layers.entries()) {
        if (e.k < k_lo || e.k > k_hi)
            continue;
        const double x = std::log(static_cast<double>(e.k));
        const double y = std::log(e.value);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 5)
        throw std::invalid_argument("fit_exponent: too few points (" + std::to_string(n) +
                                    " occupied layers in range, need 5)");

    const double nn = static_cast<double>(n);
    const double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / nn;

    double ss = 0;
    for (const auto& e : layers.entries()) {
        if (e.k < k_lo || e.k > k_hi)
            continue;
        const double x = std::log(static_cast<double>(e.k));
        const double resid = std::log(e.value) - (intercept + slope * x);
        ss += resid * resid;
    }

    FitResult fit;
    fit.gamma = -slope;
    fit.k_lo = k_lo;
    fit.k_hi = k_hi;
    fit.residual = std::sqrt(ss / nn);
    fit.points = n;
    fit.ok = fit.residual <= 0.1 && fit.gamma > 0.0;
    if (fit.gamma > 0.0) {
        const auto eq = exponent_convert(TailFamily::Kind::layer_power_law, fit.gamma);
        fit.beta = eq.beta;
        fit.delta = eq.delta;
    } else {
        fit.beta = std::numeric_limits<double>::quiet_NaN();
        fit.delta = std::numeric_limits<double>::quiet_NaN();
    }
    return fit;
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void emit_recall_curve(std::ostream& os, const FrequencySpectrum& spectrum,
                       std::span<const double> r_grid) {
    os << "# recall-curve source=spectrum k_max=" << spectrum.k_max()
       << " columns=r,unique_recall\n";
    for (double r : r_grid)
        os << format_value(r) << '\t'
           << format_value(unique_recall_asymptotic(spectrum, r).value) << '\n';
}

void emit_recall_curve(std::ostream& os, const TailFamily& family,
                       std::span<const double> r_grid, const SeriesConfig& cfg) {
    os << "# recall-curve source=family family=" << family.name()
       << " param=" << format_value(family.param()) << " columns=r,unique_recall\n";
    for (double r : r_grid)
        os << format_value(r) << '\t'
           << format_value(recall_closed_form(family, r, cfg).value) << '\n';
}

void emit_loglog(std::ostream& os, const LayerProfile& layers, const std::string& note) {
    os << "# loglog k_max=" << layers.k_max();
    if (!note.empty())
        os << ' ' << note;
    os << " columns=k,eta\n";
    for (const auto& e : layers.entries())
        os << e.k << '\t' << format_value(e.value) << '\n';
}

void emit_krecall(std::ostream& os, const FrequencySpectrum& spectrum, double r,
                  std::optional<double> gamma, std::uint64_t max_k) {
    const KRecallCurve curve = k_recall_curve(spectrum, r);
    const std::uint64_t hi = max_k == 0 ? curve.k_max() : std::min(max_k, curve.k_max());
    os << "# krecall r=" << format_value(r);
    if (gamma)
        os << " gamma=" << format_value(*gamma) << " columns=k,k_recall,ratio\n";
    else
        os << " columns=k,k_recall\n";
    for (std::uint64_t k = 1; k <= hi; ++k) {
        os << k << '\t' << format_value(curve.at(k));
        if (gamma)
            os << '\t' << format_value(curve.at(k) / std::pow(r, *gamma));
        os << '\n';
    }
}

void emit_evolution(std::ostream& os, const FrequencySpectrum& spectrum, double r) {
    const SampleSpectrum sample = evolve(spectrum, r);
    os << "# evolution r=" << format_value(r) << " k_max=" << sample.k_max()
       << " columns=k,delta,omega\n";
    for (std::uint64_t k = 0; k <= sample.k_max(); ++k)
        os << k << '\t' << format_value(sample.delta[k]) << '\t'
           << format_value(sample.omega[k]) << '\n';
}

} // namespace uniqrecall
