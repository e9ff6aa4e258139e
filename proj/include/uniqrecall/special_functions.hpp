#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace uniqrecall {

/// Truncation contract for the infinite series backing the closed forms.
/// tol is an absolute error bound certified by a tail estimate; max_terms
/// converts pathological inputs into diagnosable failures instead of hangs.
struct SeriesConfig {
    double tol = 1e-10;
    std::uint64_t max_terms = 10'000'000;
};

/// Thrown when a series cannot certify its tolerance within max_terms.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, std::uint64_t terms_used)
        : std::runtime_error(what), terms_used_(terms_used) {}
    std::uint64_t terms_used() const { return terms_used_; }

private:
    std::uint64_t terms_used_;
};

/// Li_s(x) = sum_{k>=1} k^-s x^k for 0 <= x < 1, certified by the geometric
/// envelope of the term ratio. Convergence slows as x -> 1; with the default
/// config that is fine down to x ~ 1 - 1e-4.
double polylog(double s, double x, const SeriesConfig& cfg = {});

/// Riemann zeta for real s > 1. Euler-Maclaurin with B2/B4 corrections and a
/// 2x first-omitted-term certificate; the plain integral tail would need
/// astronomically large partial sums near s = 1.
double zeta(double s, const SeriesConfig& cfg = {});

/// Inverse hyperbolic tangent, |x| < 1.
double artanh(double x);

/// Binomial coefficient extended to real upper argument, computed as the
/// running product t(t-1)...(t-k+1)/k!. Satisfies
/// C(t,k) = C(t,k-1)*(t-k+1)/k exactly as computed.
double binom_real(double t, std::uint64_t k);

/// Generalized harmonic number H_n^(s) = sum_{x=1..n} x^-s (0 for n = 0).
double gen_harmonic(std::uint64_t n, double s);

} // namespace uniqrecall
