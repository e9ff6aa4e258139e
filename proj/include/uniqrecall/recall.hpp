#pragma once

#include <cstdint>
#include <optional>

#include "uniqrecall/distribution.hpp"

namespace uniqrecall {

enum class RecallKind { exact, asymptotic };

/// Expected unique recall in [0,1]. expected_distinct (= a_u * value) is
/// populated for exact finite-population queries.
struct RecallEstimate {
    double value = 0.0;
    RecallKind kind = RecallKind::asymptotic;
    std::optional<double> expected_distinct;
};

/// Large-data limit for a uniform urn: 1 - (1-r)^rho.
RecallEstimate unique_recall_uniform(std::uint64_t rho, double r);

/// Large-data limit for an arbitrary spectrum:
/// 1 - sum_k alpha_k (1-r)^k, equivalently the alpha-weighted mean of the
/// uniform limits. Summed ascending k with compensation.
RecallEstimate unique_recall_asymptotic(const FrequencySpectrum& spectrum, double r);

/// Exact finite-population expectation for b draws without replacement:
/// 1 - (1/a_u) sum_i C(a-rho_i, b)/C(a, b). Each ratio is the product
/// prod_{j<rho_i} (a-b-j)/(a-j), which is 0 exactly when b > a - rho_i;
/// equal redundancies are grouped so one ratio serves the whole group.
RecallEstimate unique_recall_exact(const RedundancyProfile& profile, std::uint64_t b);

/// Large-data variance of unique recall for a uniform urn:
/// (1/a_u)(1-r)^rho (1 - (1-r)^rho (1 + r*rho/(1-r))), with value 0 at r = 1
/// by continuity.
double variance_uniform_asymptotic(std::uint64_t rho, double r, std::uint64_t a_u);

/// Exact Var(b_u) for the uniform urn (a divisible by rho):
/// a_u^2 (q2 - q1^2) + a_u (q1 - q2) with q1 = C(a-rho,b)/C(a,b),
/// q2 = C(a-2rho,b)/C(a,b).
double variance_uniform_exact(std::uint64_t a, std::uint64_t rho, std::uint64_t b);

namespace detail {
/// C(a-drop, b) / C(a, b) as a product of drop ratios; 0 when b > a - drop.
double missing_ratio(std::uint64_t a, std::uint64_t drop, std::uint64_t b);
} // namespace detail

} // namespace uniqrecall
