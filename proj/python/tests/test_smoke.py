import math

import pytest

import isohyp


def test_unweighted_ball_closed_form():
    # cosh:0 is the unweighted reference: P = 2 pi sinh(tau), V = 2 pi (cosh(tau) - 1)
    d = isohyp.RadialDensity.parse("cosh:0")
    b = isohyp.ball_quantities(2, d, 2.0)
    assert b.Pf == pytest.approx(2 * math.pi * math.sinh(2.0), rel=1e-12)
    assert b.Vf == pytest.approx(2 * math.pi * (math.cosh(2.0) - 1), rel=1e-12)
    assert isohyp.ball_radius_for_volume(2, d, b.Vf) == pytest.approx(2.0, rel=1e-10)


def test_density_derivatives():
    d = isohyp.RadialDensity.cosh_power(3)
    assert d.h(0.7) == pytest.approx(3 * math.log(math.cosh(0.7)), rel=1e-14)
    assert d.dh(0.7) == pytest.approx(3 * math.tanh(0.7), rel=1e-14)
    assert d.is_strict()
    with pytest.raises(ValueError):
        isohyp.RadialDensity.parse("cosh:-1")


def test_constant_profile_matches_ball():
    d = isohyp.RadialDensity.cosh_power(1)
    for n in (2, 3, 4):
        r = isohyp.profile_functionals(isohyp.PolarProfile.constant(1.0, n), d)
        b = isohyp.ball_quantities(n, d, 1.0)
        assert r.Pf == pytest.approx(b.Pf, rel=1e-10)
        assert r.Vf == pytest.approx(b.Vf, rel=1e-10)


def test_translated_ball_exceeds_centered_ball():
    d = isohyp.RadialDensity.cosh_power(1)
    r = isohyp.profile_functionals(isohyp.translated_ball_profile(3, 1.0, 0.4, 32), d)
    tau = isohyp.ball_radius_for_volume(3, d, r.Vf)
    assert r.Pf > isohyp.ball_quantities(3, d, tau).Pf


def test_centered_circle_shot():
    d = isohyp.RadialDensity.cosh_power(1)
    lam = isohyp.lambda_for_ball(3, d, 1.0)
    r = isohyp.shoot_classify(3, d, lam, 1.0)
    assert r["class"] == "CenteredCircle"
    assert r["max_radius_deviation"] < 1e-6


def test_hopf_crosscheck():
    rel_p, rel_v = isohyp.hopf_crosscheck("C", 2, 1.0)
    assert rel_p < 1e-10 and rel_v < 1e-10


def test_cli_roundtrip():
    j = isohyp.run_json("verify", "--suite", "kappa", "--seed", "7", "--count", "20")
    assert j["suites"]["kappa_comparison"]["passed"] == 20
    code, _, _ = isohyp.run_cli("verify", "--suite", "nope")
    assert code == 2
