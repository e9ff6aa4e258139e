#include "uniqrecall/powerlaw.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "uniqrecall/summation.hpp"

namespace uniqrecall {

namespace {

void check_recall_fraction(double r) {
    if (!(r >= 0.0 && r <= 1.0))
        throw std::domain_error("recall r must be in [0, 1]");
}

[[noreturn]] void bad_param(const char* which, const char* domain) {
    throw std::domain_error(std::string(which) + " exponent out of domain: needs " + domain);
}

} // namespace

TailFamily::TailFamily(Kind kind, double param) : kind_(kind), param_(param) {}

TailFamily TailFamily::zipf_rank(double delta) {
    if (!(delta > 0.0))
        bad_param("zipf_rank", "delta > 0");
    return {Kind::zipf_rank, delta};
}

TailFamily TailFamily::frequency_power_law(double beta) {
    if (!(beta > 1.0))
        bad_param("frequency_power_law", "beta > 1");
    return {Kind::frequency_power_law, beta};
}

TailFamily TailFamily::layer_power_law(double gamma) {
    if (!(gamma > 0.0))
        bad_param("layer_power_law", "gamma > 0");
    return {Kind::layer_power_law, gamma};
}

TailFamily TailFamily::invariant(double tau) {
    if (!(tau > 0.0 && tau <= 1.0))
        bad_param("invariant", "0 < tau <= 1");
    return {Kind::invariant, tau};
}

std::string_view TailFamily::name() const {
    switch (kind_) {
    case Kind::zipf_rank: return "zipf";
    case Kind::frequency_power_law: return "alpha";
    case Kind::layer_power_law: return "eta";
    case Kind::invariant: return "invariant";
    }
    return "?";
}

double family_layer(const TailFamily& family, std::uint64_t k) {
    const double kk = static_cast<double>(k);
    switch (family.kind()) {
    case TailFamily::Kind::zipf_rank:
        return std::pow(2.0 * kk - 1.0, -1.0 / family.param());
    case TailFamily::Kind::frequency_power_law:
        return 1.0 - gen_harmonic(k - 1, family.param()) / zeta(family.param());
    case TailFamily::Kind::layer_power_law:
        return std::pow(kk, -family.param());
    case TailFamily::Kind::invariant:
        // eta_k = (-1)^(k-1) C(tau-1, k-1), positive for tau <= 1
        return std::fabs(binom_real(family.param() - 1.0, k - 1));
    }
    return 0.0;
}

double family_mass(const TailFamily& family, std::uint64_t k) {
    switch (family.kind()) {
    case TailFamily::Kind::zipf_rank:
    case TailFamily::Kind::layer_power_law:
        return family_layer(family, k) - family_layer(family, k + 1);
    case TailFamily::Kind::frequency_power_law:
        return std::pow(static_cast<double>(k), -family.param()) / zeta(family.param());
    case TailFamily::Kind::invariant:
        return std::fabs(binom_real(family.param(), k));
    }
    return 0.0;
}

FrequencySpectrum materialize(const TailFamily& family, std::uint64_t k_max) {
    if (k_max < 1)
        throw std::invalid_argument("materialize: k_max must be >= 1");

    std::vector<SpectrumEntry> entries;
    entries.reserve(k_max);
    CompensatedSum head;

    switch (family.kind()) {
    case TailFamily::Kind::zipf_rank:
    case TailFamily::Kind::layer_power_law: {
        double eta = family_layer(family, 1); // == 1
        for (std::uint64_t k = 1; k < k_max; ++k) {
            const double next = family_layer(family, k + 1);
            entries.push_back({k, eta - next});
            head.add(eta - next);
            eta = next;
        }
        break;
    }
    case TailFamily::Kind::frequency_power_law: {
        const double z = zeta(family.param());
        for (std::uint64_t k = 1; k < k_max; ++k) {
            const double mass = std::pow(static_cast<double>(k), -family.param()) / z;
            entries.push_back({k, mass});
            head.add(mass);
        }
        break;
    }
    case TailFamily::Kind::invariant: {
        const double tau = family.param();
        double mass = tau; // alpha_1, then alpha_{k+1} = alpha_k (k - tau)/(k + 1)
        for (std::uint64_t k = 1; k < k_max; ++k) {
            entries.push_back({k, mass});
            head.add(mass);
            mass *= (static_cast<double>(k) - tau) / static_cast<double>(k + 1);
        }
        break;
    }
    }

    // terminal layer absorbs the remaining tail so the spectrum sums to 1
    const double tail = std::max(1.0 - head.value(), 0.0);
    entries.push_back({k_max, tail});
    while (entries.size() > 1 && entries.back().value <= 0.0)
        entries.pop_back();
    return FrequencySpectrum::from_entries(std::move(entries));
}

RecallEstimate recall_closed_form(const TailFamily& family, double r,
                                  const SeriesConfig& cfg) {
    check_recall_fraction(r);
    if (r == 0.0)
        return {0.0, RecallKind::asymptotic, std::nullopt};
    if (r == 1.0)
        return {1.0, RecallKind::asymptotic, std::nullopt};

    double value = 0.0;
    switch (family.kind()) {
    case TailFamily::Kind::zipf_rank: {
        const double delta = family.param();
        if (delta == 1.0) {
            const double x = std::sqrt(1.0 - r);
            value = r / x * artanh(x);
        } else {
            // sum alpha_k (1-r)^k; tail past K bounded by eta_{K+1} (1-r)^(K+1)
            const double q = 1.0 - r;
            CompensatedSum missing;
            double qp = 1.0;
            bool done = false;
            for (std::uint64_t k = 1; k <= cfg.max_terms; ++k) {
                qp *= q;
                missing.add(family_mass(family, k) * qp);
                if (family_layer(family, k + 1) * qp * q <= cfg.tol) {
                    done = true;
                    break;
                }
            }
            if (!done)
                throw convergence_error("zipf_rank recall series did not certify tolerance",
                                        cfg.max_terms);
            value = 1.0 - missing.value();
        }
        break;
    }
    case TailFamily::Kind::frequency_power_law: {
        const double beta = family.param();
        value = 1.0 - polylog(beta, 1.0 - r, cfg) / zeta(beta, cfg);
        break;
    }
    case TailFamily::Kind::layer_power_law: {
        const double gamma = family.param();
        if (gamma == 1.0)
            value = -r * std::log(r) / (1.0 - r);
        else
            value = r / (1.0 - r) * polylog(gamma, 1.0 - r, cfg);
        break;
    }
    case TailFamily::Kind::invariant:
        value = std::pow(r, family.param());
        break;
    }
    return {std::clamp(value, 0.0, 1.0), RecallKind::asymptotic, std::nullopt};
}

ExponentEquivalents exponent_convert(TailFamily::Kind source, double value) {
    double beta = 0.0;
    switch (source) {
    case TailFamily::Kind::zipf_rank:
        if (!(value > 0.0))
            bad_param("zipf_rank", "delta > 0");
        beta = 1.0 / value + 1.0;
        break;
    case TailFamily::Kind::frequency_power_law:
        if (!(value > 1.0))
            bad_param("frequency_power_law", "beta > 1");
        beta = value;
        break;
    case TailFamily::Kind::layer_power_law:
        if (!(value > 0.0))
            bad_param("layer_power_law", "gamma > 0");
        beta = value + 1.0;
        break;
    case TailFamily::Kind::invariant:
        if (!(value > 0.0 && value <= 1.0))
            bad_param("invariant", "0 < tau <= 1");
        beta = value + 1.0;
        break;
    }
    return {beta - 1.0, beta, 1.0 / (beta - 1.0)};
}

double k_recall_invariant(double tau, double r) {
    if (!(tau > 0.0 && tau <= 1.0))
        bad_param("invariant", "0 < tau <= 1");
    check_recall_fraction(r);
    return std::pow(r, tau);
}

RedundancyProfile quantize_profile(const TailFamily& family, std::uint64_t k_max,
                                   std::uint64_t a_u) {
    if (a_u < 1)
        throw std::invalid_argument("quantize_profile: a_u must be >= 1");
    const FrequencySpectrum spectrum = materialize(family, k_max);
    const auto& src = spectrum.entries();

    // suffix layers, then integer layer counts floor(a_u * eta_k)
    std::vector<double> eta(src.size());
    CompensatedSum suffix;
    for (std::size_t i = src.size(); i-- > 0;) {
        suffix.add(src[i].value);
        eta[i] = suffix.value();
    }

    std::vector<std::uint64_t> ranks;
    ranks.reserve(a_u);
    std::uint64_t below = 0; // floor(a_u * eta_{k+1}) of the entry after src[i]
    for (std::size_t i = src.size(); i-- > 0;) {
        const std::uint64_t level =
            (i == 0) ? a_u
                     : static_cast<std::uint64_t>(std::floor(static_cast<double>(a_u) * eta[i]));
        const std::uint64_t count = level > below ? level - below : 0;
        ranks.insert(ranks.end(), count, src[i].k);
        below = level;
    }
    return RedundancyProfile(std::move(ranks));
}

} // namespace uniqrecall
