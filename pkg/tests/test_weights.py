import math
from fractions import Fraction

import pytest

from sgtree import (
    check_superexponential,
    custom_weights,
    factorial_alpha_weights,
    lambda_factorial_weights,
    uniform_weights,
)
from sgtree.logdomain import LOG_ZERO


def test_log_weight_examples():
    assert factorial_alpha_weights(0.5).log_weight(1) == 0.0  # 0!^0.5 = 1
    assert lambda_factorial_weights(2).log_weight(2) == pytest.approx(math.log(2), rel=1e-15)
    assert factorial_alpha_weights(0.5).log_weight(4) == pytest.approx(
        0.5 * math.log(6), rel=1e-14
    )


def test_degree_zero_rejected():
    for ws in (uniform_weights(), factorial_alpha_weights(1.5)):
        with pytest.raises(ValueError):
            ws.log_weight(0)


def test_log_weight_deterministic():
    ws = factorial_alpha_weights(0.37)
    vals = [ws.log_weight(n) for n in range(1, 200)]
    assert vals == [ws.log_weight(n) for n in range(1, 200)]


def test_lambda_family_matches_factorial_at_lam_one():
    # alpha = 1 factorial powers coincide with the pinned family at lam = 1
    fa = factorial_alpha_weights(1.0)
    lf = lambda_factorial_weights(1)
    for n in range(1, 60):
        assert fa.log_weight(n) == lf.log_weight(n)
        assert fa.exact_weight(n) == lf.exact_weight(n)


def test_exact_view_matches_log_view():
    """exp(log w_n) vs the exact rational w_n.

    Values above ~170! overflow floats, so large degrees are compared in
    the log domain; there the inherent float64 spacing of log w_n itself is
    ~1e-11 absolute at n = 10^4, and the cumulative sum stays well inside
    1e-12 relative to the magnitude of the log.
    """
    for ws in (uniform_weights(), lambda_factorial_weights("2.5"), factorial_alpha_weights(2.0)):
        for n in list(range(1, 120)) + [500, 2000, 10_000]:
            exact = ws.exact_weight(n)
            got = ws.log_weight(n)
            if exact == 0:
                assert got == LOG_ZERO
                continue
            log_exact = math.log(exact.numerator) - math.log(exact.denominator)
            if abs(log_exact) < 500:
                assert math.exp(got) == pytest.approx(float(exact), rel=1e-12)
            assert got == pytest.approx(log_exact, rel=1e-12, abs=1e-12)


def test_custom_weights_validity():
    ws = custom_weights(["1", "0.5", "2"])
    assert ws.exact_weight(2) == Fraction(1, 2)
    assert ws.exact_weight(9) == 0
    assert ws.log_weight(9) == LOG_ZERO
    with pytest.raises(ValueError):
        custom_weights(["0", "1", "1"])  # w_1 = 0
    with pytest.raises(ValueError):
        custom_weights(["1", "5"])  # no support above degree 2
    with pytest.raises(ValueError):
        custom_weights(["1", "-1", "1"])


def test_family_parameter_validation():
    with pytest.raises(ValueError):
        lambda_factorial_weights(0)
    with pytest.raises(ValueError):
        factorial_alpha_weights(-0.5)


def test_config_round_trip():
    for ws in (
        uniform_weights(),
        lambda_factorial_weights("2"),
        factorial_alpha_weights(0.4),
        custom_weights(["1", "2", "0.25"]),
    ):
        from sgtree import WeightSequence

        again = WeightSequence.from_config(ws.to_config())
        assert again == ws


def test_growth_report_factorial_alpha():
    report = check_superexponential(factorial_alpha_weights(0.5), 10)
    # ratio w_{n+1}/w_n = n^0.5
    for n, r in enumerate(report.ratios, start=1):
        assert r == pytest.approx(n**0.5, rel=1e-12)
    assert report.looks_superexponential
    assert report.warnings == ()


def test_growth_report_uniform_warns():
    report = check_superexponential(uniform_weights(), 10)
    assert all(r == 1.0 for r in report.ratios)
    assert not report.looks_superexponential
    assert report.warnings


def test_growth_report_lambda_dip():
    # lam = 3: the ratio dips to 2/3 at n = 2, then climbs
    report = check_superexponential(lambda_factorial_weights(3), 10)
    assert report.ratios[0] == pytest.approx(3.0)
    assert report.ratios[1] == pytest.approx(2.0 / 3.0)
    assert report.increasing_from == 2
    assert report.looks_superexponential
