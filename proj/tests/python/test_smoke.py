"""Smoke tests for the python bindings: one probe per operation group."""

import math

import pytest

import uniqrecall as ur

FIG_ALPHA = [0.2, 0.2, 0.4, 0.0, 0.0, 0.2]


def test_spectrum_roundtrips():
    alpha = ur.FrequencySpectrum.from_dense(FIG_ALPHA)
    ok, violations = ur.validate(alpha)
    assert ok and violations == []
    assert alpha.k_max == 6
    assert alpha.mass_at(3) == pytest.approx(0.4)

    eta = ur.eta_from_alpha(alpha)
    assert eta.to_dense() == pytest.approx([1.0, 0.8, 0.6, 0.2, 0.2, 0.2])
    back = ur.alpha_from_eta(eta)
    assert back.to_dense() == pytest.approx(FIG_ALPHA, abs=1e-14)

    profile = ur.rho_from_alpha(alpha, 5)
    assert list(profile.ranks) == [6, 3, 3, 2, 1]
    alpha2, a_u = ur.alpha_from_rho(profile)
    assert a_u == 5
    assert alpha2.to_dense() == FIG_ALPHA


def test_recall_estimators():
    alpha = ur.FrequencySpectrum.from_dense(FIG_ALPHA)
    assert ur.unique_recall_asymptotic(alpha, 0.2).value == pytest.approx(0.455, abs=5e-4)
    assert ur.unique_recall_uniform(2, 0.5).value == pytest.approx(0.75)

    profile = ur.rho_from_alpha(alpha, 5)
    exact = ur.unique_recall_exact(profile, 3)
    assert exact.expected_distinct == pytest.approx(2.420, abs=5e-4)
    assert ur.variance_uniform_exact(4, 2, 2) == pytest.approx(2.0 / 9.0)

    with pytest.raises(Exception):
        ur.unique_recall_exact(profile, 99)


def test_special_functions():
    assert ur.polylog(1.0, 0.5) == pytest.approx(math.log(2.0), abs=1e-9)
    assert ur.zeta(2.0) == pytest.approx(math.pi**2 / 6.0, abs=1e-10)
    assert ur.artanh(0.5) == pytest.approx(math.atanh(0.5))
    assert ur.binom_real(0.5, 2) == -0.125
    assert ur.gen_harmonic(3, 2.0) == pytest.approx(1.0 + 0.25 + 1.0 / 9.0)
    with pytest.raises(ur.ConvergenceError):
        ur.polylog(1.01, 0.999999, ur.SeriesConfig(tol=1e-12, max_terms=50))


def test_families_and_evolution():
    family = ur.TailFamily.layer_power_law(1.0)
    assert ur.recall_closed_form(family, 0.2).value == pytest.approx(0.4024, abs=1e-4)
    spectrum = ur.materialize(family, 3)
    assert spectrum.to_dense() == pytest.approx([0.5, 1.0 / 6.0, 1.0 / 3.0])

    eq = ur.exponent_convert(ur.TailFamily.Kind.layer_power_law, 0.7)
    assert (eq.beta, eq.delta) == (pytest.approx(1.7), pytest.approx(1.0 / 0.7))

    alpha = ur.FrequencySpectrum.from_dense(FIG_ALPHA)
    sample = ur.evolve(alpha, 0.5)
    assert sample.omega[1] == pytest.approx(0.796875, abs=1e-12)
    assert sum(sample.delta) == pytest.approx(1.0, abs=1e-9)

    curve = ur.k_recall_curve(ur.materialize(ur.TailFamily.invariant(0.5), 2000), 0.25)
    assert curve.at(7) == pytest.approx(0.5, abs=5e-3)
    assert ur.k_recall_invariant(0.5, 0.25) == 0.5


def test_simulation_is_deterministic():
    profile = ur.RedundancyProfile([2] * 50)
    first = ur.simulate(profile, 50, trials=200, master_seed=42)
    second = ur.simulate(profile, 50, trials=200, master_seed=42)
    assert first.mean_unique_recall == second.mean_unique_recall
    assert list(first.mean_omega) == list(second.mean_omega)
    assert abs(first.mean_unique_recall - 0.75) < 0.03
    assert first.p5 <= first.p50 <= first.p95

    draw = ur.sample_once(profile, 50, seed=ur.derive_trial_seed(42, 0))
    assert sum(draw.counts) == 50


def test_ingest_and_fit():
    result = ur.ingest_histogram("1\t1\n2\t1\n3\t2\n6\t1\n")
    assert (result.distinct, result.total) == (5, 15)
    assert result.spectrum.to_dense() == pytest.approx(FIG_ALPHA)

    raw = ur.ingest_raw("u1\t6\nu2\t3\nu3\t3\nu4\t2\nu5\t1\n")
    assert raw.spectrum.to_dense() == pytest.approx(FIG_ALPHA)
    with pytest.raises(ur.ParseError):
        ur.ingest_raw("x\t1\nx\t2\n")

    layers = ur.LayerProfile.from_dense([k ** -1.3 for k in range(1, 1001)])
    fit = ur.fit_exponent(layers, 10, 1000)
    assert fit.gamma == pytest.approx(1.3, abs=1e-6)
    assert fit.ok
