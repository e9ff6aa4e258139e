#include "uniqrecall/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "uniqrecall/summation.hpp"

namespace uniqrecall {

namespace {

void check_recall_fraction(double r) {
    if (!(r >= 0.0 && r <= 1.0))
        throw std::domain_error("recall r must be in [0, 1]");
}

double log_binom(double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// direct product path, safe for rho <= 1000: C(rho,k) r^k stays below
// ~e^694 and the (1-r) factors are drained in as soon as the running
// product exceeds 1, so nothing over- or underflows spuriously
double binom_pmf_direct(std::uint64_t k, std::uint64_t rho, double r) {
    const double q = 1.0 - r;
    double acc = 1.0;
    std::uint64_t nq = rho - k;
    for (std::uint64_t j = 1; j <= k; ++j) {
        acc *= static_cast<double>(rho - k + j) / static_cast<double>(j) * r;
        while (acc > 1.0 && nq > 0) {
            acc *= q;
            --nq;
        }
    }
    while (nq > 0) {
        acc *= q;
        --nq;
    }
    return acc;
}

// Hoeffding bound: pmf(k; x, r) < cutoff whenever 2 (x r - k)^2 / x
// exceeds -ln(cutoff/2). Solving x r - k = +-sqrt(c x) gives the x-window
// outside of which every term is certified below the cutoff.
std::pair<double, double> x_window(std::uint64_t k, double r, double cutoff) {
    const double c = -std::log(cutoff / 2.0) / 2.0;
    const double kk = static_cast<double>(k);
    const double s = std::sqrt(c + 4.0 * r * kk);
    const double hi = (std::sqrt(c) + s) / (2.0 * r);
    const double lo = (s - std::sqrt(c)) / (2.0 * r);
    return {lo * lo, hi * hi};
}

} // namespace

double delta_uniform(std::uint64_t k, std::uint64_t rho, double r) {
    if (rho < 1)
        throw std::domain_error("delta_uniform: rho must be >= 1");
    check_recall_fraction(r);
    if (k > rho)
        return 0.0;
    if (r == 0.0)
        return k == 0 ? 1.0 : 0.0;
    if (r == 1.0)
        return k == rho ? 1.0 : 0.0;
    if (k == 0)
        return std::pow(1.0 - r, static_cast<double>(rho));
    if (k == rho)
        return std::pow(r, static_cast<double>(rho));
    if (rho <= 1000)
        return binom_pmf_direct(k, rho, r);
    const double x = static_cast<double>(rho);
    const double kk = static_cast<double>(k);
    return std::exp(log_binom(x, kk) + kk * std::log(r) +
                    (x - kk) * std::log1p(-r));
}

SampleSpectrum evolve(const FrequencySpectrum& spectrum, double r,
                      const EvolveConfig& cfg) {
    require_valid(spectrum);
    check_recall_fraction(r);

    const std::uint64_t k_max = spectrum.k_max();
    SampleSpectrum out;
    out.r = r;
    out.delta.assign(k_max + 1, 0.0);
    out.omega.assign(k_max + 1, 0.0);

    const auto& entries = spectrum.entries();

    if (r == 1.0) {
        for (const auto& e : entries)
            out.delta[e.k] = e.value;
    } else if (r == 0.0) {
        out.delta[0] = 1.0;
    } else if (k_max <= cfg.dense_limit) {
        for (std::uint64_t k = 0; k <= k_max; ++k) {
            CompensatedSum sum;
            for (const auto& e : entries)
                if (e.k >= k && e.value != 0.0)
                    sum.add(e.value * delta_uniform(k, e.k, r));
            out.delta[k] = sum.value();
        }
    } else {
        for (std::uint64_t k = 0; k <= k_max; ++k) {
            // certified window: terms outside have binomial mass < cutoff
            std::uint64_t x_lo = k;
            std::uint64_t x_hi = k_max;
            if (k == 0) {
                // (1-r)^x < cutoff past lim; below-cutoff terms are skipped
                x_lo = 1;
                const double lim = std::log(cfg.cutoff) / std::log1p(-r);
                if (lim < 1.0)
                    continue;
                if (lim < static_cast<double>(x_hi))
                    x_hi = static_cast<std::uint64_t>(lim);
            } else {
                const auto [wlo, whi] = x_window(k, r, cfg.cutoff);
                if (wlo > static_cast<double>(x_lo))
                    x_lo = static_cast<std::uint64_t>(wlo);
                if (whi < static_cast<double>(x_hi))
                    x_hi = static_cast<std::uint64_t>(std::ceil(whi));
            }
            if (x_lo > x_hi)
                continue;
            auto it = std::lower_bound(entries.begin(), entries.end(), x_lo,
                                       [](const SpectrumEntry& e, std::uint64_t kk) {
                                           return e.k < kk;
                                       });
            CompensatedSum sum;
            for (; it != entries.end() && it->k <= x_hi; ++it)
                if (it->value != 0.0)
                    sum.add(it->value * delta_uniform(k, it->k, r));
            out.delta[k] = sum.value();
        }
    }

    // omega is the exact suffix sum of delta; omega_0 = 1 by convention
    double suffix = 0.0;
    for (std::uint64_t k = k_max; k >= 1; --k) {
        suffix += out.delta[k];
        out.omega[k] = suffix;
    }
    out.omega[0] = 1.0;
    return out;
}

KRecallCurve k_recall_curve(const FrequencySpectrum& spectrum, double r,
                            const EvolveConfig& cfg) {
    const SampleSpectrum sample = evolve(spectrum, r, cfg);
    const std::uint64_t k_max = sample.k_max();

    // dense layers from the spectrum; eta_k > 0 through k_max
    std::vector<double> eta(k_max + 1, 0.0);
    for (const auto& e : spectrum.entries())
        eta[e.k] = e.value;
    double suffix = 0.0;
    for (std::uint64_t k = k_max; k >= 1; --k) {
        suffix += eta[k];
        eta[k] = suffix;
    }

    KRecallCurve curve;
    curve.r = r;
    curve.values.resize(k_max);
    for (std::uint64_t k = 1; k <= k_max; ++k)
        curve.values[k - 1] = sample.omega[k] / eta[k];
    return curve;
}

CoreInvarianceReport core_invariance_report(const FrequencySpectrum& spectrum,
                                            double r, double gamma,
                                            double band_tol,
                                            const EvolveConfig& cfg) {
    if (!(r > 0.0 && r < 1.0))
        throw std::domain_error("core_invariance_report: r must be in (0, 1)");
    if (!(gamma > 0.0))
        throw std::domain_error("core_invariance_report: gamma must be > 0");

    const KRecallCurve curve = k_recall_curve(spectrum, r, cfg);
    const double scale = std::pow(r, gamma);

    CoreInvarianceReport report;
    report.r = r;
    report.gamma = gamma;
    report.band_tol = band_tol;
    report.rows.reserve(curve.k_max());

    std::uint64_t run_lo = 0;
    std::uint64_t best_len = 0;
    for (std::uint64_t k = 1; k <= curve.k_max(); ++k) {
        const double ratio = curve.at(k) / scale;
        report.rows.push_back({k, curve.at(k), ratio});
        if (std::fabs(ratio - 1.0) <= band_tol) {
            if (run_lo == 0)
                run_lo = k;
            const std::uint64_t len = k - run_lo + 1;
            if (len > best_len) {
                best_len = len;
                report.band_lo = run_lo;
                report.band_hi = k;
                report.has_band = true;
            }
        } else {
            run_lo = 0;
        }
    }
    return report;
}

} // namespace uniqrecall
