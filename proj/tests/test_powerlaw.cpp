#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <uniqrecall/powerlaw.hpp>
#include <uniqrecall/recall.hpp>

using namespace uniqrecall;

namespace {

// independent truncated-series oracle: sum the family's alpha_k (1-r)^k with
// the pointwise formulas until the geometric envelope is below tol
double recall_series_oracle(const TailFamily& family, double r, double tol = 1e-12) {
    const double q = 1.0 - r;
    double missing = 0.0;
    double qp = 1.0;
    for (std::uint64_t k = 1; k < 10'000'000; ++k) {
        qp *= q;
        missing += family_mass(family, k) * qp;
        if (qp * q / (1.0 - q) <= tol) // remaining alpha mass <= 1
            break;
    }
    return 1.0 - missing;
}

} // namespace

TEST_CASE("family parameter domains") {
    CHECK_THROWS_AS(TailFamily::zipf_rank(0.0), std::domain_error);
    CHECK_THROWS_AS(TailFamily::frequency_power_law(1.0), std::domain_error);
    CHECK_THROWS_AS(TailFamily::layer_power_law(-0.5), std::domain_error);
    CHECK_THROWS_AS(TailFamily::invariant(1.2), std::domain_error);
    CHECK_THROWS_AS(TailFamily::invariant(0.0), std::domain_error);
    CHECK(TailFamily::invariant(1.0).param() == 1.0);
}

TEST_CASE("materialize spot checks") {
    const auto eta3 = materialize(TailFamily::layer_power_law(1.0), 3);
    const auto dense = eta3.to_dense();
    REQUIRE(dense.size() == 3);
    CHECK(dense[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(dense[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(dense[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    const auto zipf = materialize(TailFamily::zipf_rank(1.0), 100'000);
    CHECK(zipf.mass_at(1) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    const auto freq = materialize(TailFamily::frequency_power_law(2.0), 100'000);
    CHECK(freq.mass_at(1) == doctest::Approx(0.6079).epsilon(1e-4));

    // degenerate invariant: all mass at k = 1, trailing zeros trimmed
    const auto inv1 = materialize(TailFamily::invariant(1.0), 50);
    CHECK(inv1.k_max() == 1);
    CHECK(inv1.to_dense(5) == std::vector<double>{1.0, 0.0, 0.0, 0.0, 0.0});

    CHECK_THROWS_AS(materialize(TailFamily::layer_power_law(1.0), 0), std::invalid_argument);
}

TEST_CASE("materialized spectra validate across a parameter grid") {
    std::vector<TailFamily> families;
    for (double d : {0.5, 1.0, 1.43})
        families.push_back(TailFamily::zipf_rank(d));
    for (double b : {1.3, 1.7, 2.0, 2.3})
        families.push_back(TailFamily::frequency_power_law(b));
    for (double g : {0.7, 1.0, 1.3})
        families.push_back(TailFamily::layer_power_law(g));
    for (double t : {0.3, 0.5, 1.0})
        families.push_back(TailFamily::invariant(t));

    for (const auto& family : families)
        for (std::uint64_t k_max : {1ull, 2ull, 10ull, 1000ull}) {
            const auto spectrum = materialize(family, k_max);
            CHECK(validate(spectrum).ok);
            CHECK(spectrum.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
        }
}

TEST_CASE("closed-form recall spot values") {
    CHECK(recall_closed_form(TailFamily::layer_power_law(1.0), 0.2).value ==
          doctest::Approx(0.4024).epsilon(1e-4));
    CHECK(recall_closed_form(TailFamily::zipf_rank(1.0), 0.2).value ==
          doctest::Approx(0.3228).epsilon(1e-4));
    CHECK(recall_closed_form(TailFamily::frequency_power_law(2.0), 0.2).value ==
          doctest::Approx(0.3466).epsilon(1e-4));
    CHECK(recall_closed_form(TailFamily::invariant(0.5), 0.25).value ==
          doctest::Approx(0.5).epsilon(1e-15));
    for (const auto& family :
         {TailFamily::zipf_rank(1.0), TailFamily::zipf_rank(1.4),
          TailFamily::frequency_power_law(2.0), TailFamily::layer_power_law(1.0),
          TailFamily::layer_power_law(0.7), TailFamily::invariant(0.5)}) {
        CHECK(recall_closed_form(family, 0.0).value == 0.0);
        CHECK(recall_closed_form(family, 1.0).value == 1.0);
    }
}

TEST_CASE("closed forms agree with the independent series oracle") {
    for (const auto& family :
         {TailFamily::zipf_rank(1.0), TailFamily::zipf_rank(0.8),
          TailFamily::zipf_rank(1.43), TailFamily::frequency_power_law(2.0),
          TailFamily::frequency_power_law(1.7), TailFamily::layer_power_law(1.0),
          TailFamily::layer_power_law(1.3), TailFamily::invariant(0.5)}) {
        for (double r : {0.1, 0.2, 0.5, 0.9})
            CHECK(recall_closed_form(family, r).value ==
                  doctest::Approx(recall_series_oracle(family, r)).epsilon(1e-9));
    }
}

TEST_CASE("closed forms agree with materialized asymptotic recall") {
    for (const auto& family :
         {TailFamily::zipf_rank(1.0), TailFamily::frequency_power_law(2.0),
          TailFamily::layer_power_law(1.0), TailFamily::invariant(0.5)}) {
        const auto spectrum = materialize(family, 100'000);
        for (double r : {0.1, 0.2, 0.5, 0.9}) {
            const double closed = recall_closed_form(family, r).value;
            const double truncated = unique_recall_asymptotic(spectrum, r).value;
            CHECK(std::fabs(closed - truncated) <= 1e-3);
        }
    }
}

TEST_CASE("the gamma=1 equivalents order and stay in the 32-41% band at r=0.2") {
    const double zipf = recall_closed_form(TailFamily::zipf_rank(1.0), 0.2).value;
    const double freq = recall_closed_form(TailFamily::frequency_power_law(2.0), 0.2).value;
    const double layer = recall_closed_form(TailFamily::layer_power_law(1.0), 0.2).value;
    CHECK(zipf < freq);
    CHECK(freq < layer);
    for (double v : {zipf, freq, layer}) {
        CHECK(v >= 0.32);
        CHECK(v <= 0.41);
    }
}

TEST_CASE("closed-form recall is monotone in r") {
    for (const auto& family :
         {TailFamily::zipf_rank(1.0), TailFamily::zipf_rank(0.7),
          TailFamily::frequency_power_law(1.7), TailFamily::layer_power_law(1.3),
          TailFamily::invariant(0.3)}) {
        double prev = -1.0;
        for (double r = 0.0; r <= 1.0 + 1e-12; r += 0.05) {
            const double v = recall_closed_form(family, std::min(r, 1.0)).value;
            CHECK(v > prev - 1e-15);
            prev = v;
        }
    }
}

TEST_CASE("materialized tails share the log-log slope -beta") {
    struct Probe {
        TailFamily family;
        double beta;
    };
    const Probe probes[] = {
        {TailFamily::layer_power_law(1.0), 2.0},
        {TailFamily::frequency_power_law(2.0), 2.0},
        {TailFamily::zipf_rank(1.0), 2.0},
        {TailFamily::invariant(0.5), 1.5},
    };
    for (const auto& probe : probes) {
        const auto spectrum = materialize(probe.family, 100'000);
        // least squares on (log k, log alpha_k) over the core decade
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        std::size_t n = 0;
        for (const auto& e : spectrum.entries()) {
            if (e.k < 100 || e.k > 1000)
                continue;
            const double x = std::log(static_cast<double>(e.k));
            const double y = std::log(e.value);
            sx += x; sy += y; sxx += x * x; sxy += x * y;
            ++n;
        }
        const double slope =
            (static_cast<double>(n) * sxy - sx * sy) / (static_cast<double>(n) * sxx - sx * sx);
        CHECK(std::fabs(-slope - probe.beta) <= 0.05);
    }
}

TEST_CASE("invariant family mass is positive and sums to 1") {
    for (double tau : {0.3, 0.5, 0.9}) {
        const auto spectrum = materialize(TailFamily::invariant(tau), 2000);
        for (const auto& e : spectrum.entries())
            CHECK(e.value > 0.0);
        CHECK(spectrum.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("exponent conversions") {
    const auto from_gamma = exponent_convert(TailFamily::Kind::layer_power_law, 1.0);
    CHECK(from_gamma.beta == doctest::Approx(2.0));
    CHECK(from_gamma.delta == doctest::Approx(1.0));

    const auto crawl = exponent_convert(TailFamily::Kind::layer_power_law, 0.7);
    CHECK(crawl.beta == doctest::Approx(1.7));
    CHECK(crawl.delta == doctest::Approx(1.0 / 0.7).epsilon(1e-12));

    const auto inv = exponent_convert(TailFamily::Kind::invariant, 0.5);
    CHECK(inv.beta == doctest::Approx(1.5));
    CHECK(inv.gamma == doctest::Approx(0.5));

    const auto zipf = exponent_convert(TailFamily::Kind::zipf_rank, 1.43);
    CHECK(zipf.beta == doctest::Approx(1.0 / 1.43 + 1.0));

    // roundtrip through beta
    const auto back = exponent_convert(TailFamily::Kind::frequency_power_law, crawl.beta);
    CHECK(back.gamma == doctest::Approx(0.7));
    CHECK(back.delta == doctest::Approx(crawl.delta));

    CHECK_THROWS_AS(exponent_convert(TailFamily::Kind::layer_power_law, -1.0),
                    std::domain_error);
    CHECK_THROWS_AS(exponent_convert(TailFamily::Kind::frequency_power_law, 0.9),
                    std::domain_error);
}

TEST_CASE("k_recall_invariant") {
    CHECK(k_recall_invariant(0.5, 0.81) == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(k_recall_invariant(0.7, 1.0) == 1.0);
    CHECK(k_recall_invariant(0.3, 0.5) == doctest::Approx(0.8123).epsilon(1e-4));
    CHECK_THROWS_AS(k_recall_invariant(1.5, 0.5), std::domain_error);
}

TEST_CASE("quantize_profile expands integer layer counts") {
    const auto profile = quantize_profile(TailFamily::layer_power_law(1.0), 4, 12);
    CHECK(profile.ranks() ==
          std::vector<std::uint64_t>{4, 4, 4, 3, 2, 2, 1, 1, 1, 1, 1, 1});
    CHECK(profile.distinct() == 12);

    // layer counts match floor(a_u * eta_k) for every k
    const auto big = quantize_profile(TailFamily::layer_power_law(1.3), 100, 1000);
    CHECK(big.distinct() == 1000);
    std::uint64_t at_least_10 = 0;
    for (auto r : big.ranks())
        if (r >= 10)
            ++at_least_10;
    CHECK(at_least_10 ==
          static_cast<std::uint64_t>(std::floor(1000.0 * std::pow(10.0, -1.3))));
}
