#include "uniqrecall/recall.hpp"

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

} // namespace

namespace detail {

double missing_ratio(std::uint64_t a, std::uint64_t drop, std::uint64_t b) {
    if (b == 0)
        return 1.0;
    if (drop >= a || b > a - drop) // C(a-drop, b) = 0 exactly when b > a - drop
        return 0.0;
    double ratio = 1.0;
    for (std::uint64_t j = 0; j < drop; ++j)
        ratio *= static_cast<double>(a - b - j) / static_cast<double>(a - j);
    return ratio;
}

} // namespace detail

RecallEstimate unique_recall_uniform(std::uint64_t rho, double r) {
    if (rho < 1)
        throw std::domain_error("unique_recall_uniform: rho must be >= 1");
    check_recall_fraction(r);
    const double value = 1.0 - std::pow(1.0 - r, static_cast<double>(rho));
    return {value, RecallKind::asymptotic, std::nullopt};
}

RecallEstimate unique_recall_asymptotic(const FrequencySpectrum& spectrum, double r) {
    require_valid(spectrum);
    check_recall_fraction(r);
    const double q = 1.0 - r;
    CompensatedSum missing;
    for (const auto& e : spectrum.entries())
        missing.add(e.value * std::pow(q, static_cast<double>(e.k)));
    const double value = std::clamp(1.0 - missing.value(), 0.0, 1.0);
    return {value, RecallKind::asymptotic, std::nullopt};
}

RecallEstimate unique_recall_exact(const RedundancyProfile& profile, std::uint64_t b) {
    const std::uint64_t a = profile.total();
    if (b > a)
        throw std::domain_error("unique_recall_exact: b must be <= a");
    const double a_u = static_cast<double>(profile.distinct());
    CompensatedSum missing;
    for (const auto& [value, count] : profile.grouped())
        missing.add(static_cast<double>(count) * detail::missing_ratio(a, value, b));
    const double v = std::clamp(1.0 - missing.value() / a_u, 0.0, 1.0);
    return {v, RecallKind::exact, a_u * v};
}

double variance_uniform_asymptotic(std::uint64_t rho, double r, std::uint64_t a_u) {
    if (rho < 1)
        throw std::domain_error("variance_uniform_asymptotic: rho must be >= 1");
    if (a_u < 1)
        throw std::domain_error("variance_uniform_asymptotic: a_u must be >= 1");
    check_recall_fraction(r);
    if (r == 1.0)
        return 0.0; // continuity convention
    const double q = std::pow(1.0 - r, static_cast<double>(rho));
    const double var = q * (1.0 - q * (1.0 + r * static_cast<double>(rho) / (1.0 - r))) /
                       static_cast<double>(a_u);
    return std::max(var, 0.0);
}

double variance_uniform_exact(std::uint64_t a, std::uint64_t rho, std::uint64_t b) {
    if (rho < 1 || a % rho != 0)
        throw std::domain_error("variance_uniform_exact: a must be a positive multiple of rho");
    if (b > a)
        throw std::domain_error("variance_uniform_exact: b must be <= a");
    const double a_u = static_cast<double>(a / rho);
    const double q1 = detail::missing_ratio(a, rho, b);
    const double q2 = detail::missing_ratio(a, 2 * rho, b);
    const double var = a_u * a_u * (q2 - q1 * q1) + a_u * (q1 - q2);
    return std::max(var, 0.0);
}

} // namespace uniqrecall
