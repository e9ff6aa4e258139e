#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "uniqrecall/distribution.hpp"
#include "uniqrecall/powerlaw.hpp"

namespace uniqrecall {

class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t line = 0)
        : std::runtime_error(what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Spectrum plus the two counts that make it an exact description.
struct IngestResult {
    FrequencySpectrum spectrum;
    std::uint64_t distinct = 0; // a_u
    std::uint64_t total = 0;    // a
};

/// "k<TAB>count" lines, '#' comments and blank lines ignored, duplicate k
/// merged by summation. Errors carry the 1-based line number.
IngestResult ingest_histogram(std::istream& in);

/// "item<TAB>frequency" lines; item identifiers must be unique, frequencies
/// positive. Equivalent to histogramming the frequencies.
IngestResult ingest_raw(std::istream& in);

struct FitResult {
    double gamma = 0.0; // negated log-log slope of the layers
    std::uint64_t k_lo = 0;
    std::uint64_t k_hi = 0;
    double residual = 0.0; // RMS log-log residual
    bool ok = false;       // poor when residual > 0.1 or gamma <= 0
    std::size_t points = 0;
    double beta = 0.0;  // gamma + 1 (when gamma > 0)
    double delta = 0.0; // 1 / gamma (when gamma > 0)
};

/// Ordinary least squares on (log k, log eta_k) over the occupied layers in
/// [k_lo, k_hi]; needs at least 5 points.
FitResult fit_exponent(const LayerProfile& layers, std::uint64_t k_lo,
                       std::uint64_t k_hi);

// Table emitters. Tab-separated rows, one '#' header line naming columns and
// parameters, 6 significant digits, ascending r or k.

void emit_recall_curve(std::ostream& os, const FrequencySpectrum& spectrum,
                       std::span<const double> r_grid);
void emit_recall_curve(std::ostream& os, const TailFamily& family,
                       std::span<const double> r_grid,
                       const SeriesConfig& cfg = {});
void emit_loglog(std::ostream& os, const LayerProfile& layers,
                 const std::string& note = {});
void emit_krecall(std::ostream& os, const FrequencySpectrum& spectrum, double r,
                  std::optional<double> gamma = std::nullopt,
                  std::uint64_t max_k = 0);
void emit_evolution(std::ostream& os, const FrequencySpectrum& spectrum, double r);

/// "%.6g" style rendering used by every table.
std::string format_value(double v);

} // namespace uniqrecall
