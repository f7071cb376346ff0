"""ALE decay of the constructed potentials along the unbounded coordinate."""

import io
from fractions import Fraction

import pytest

from scalarflat.ansatz import build_ansatz
from scalarflat.asymptotics import (
    ale_ray,
    ale_report,
    closed_form_decay_coefficient,
    comparison_tails,
    decay_fit,
    flat_image_moments,
    ricci_flat_test,
    write_ray_csv,
    xi_growth_check,
)


def test_closed_form_coefficient_values():
    d7 = build_ansatz(7, (2, 3))
    assert d7.lin_a == 28
    assert closed_form_decay_coefficient(d7) == Fraction(-7)
    d3 = build_ansatz(7, (1,), mults=(2,))
    assert closed_form_decay_coefficient(d3) == \
        Fraction(2) ** (d3.m - 4) * d3.lin_a / ((d3.m - 2) * (d3.m - 1))
    rf = build_ansatz(5, (2, 3))
    assert closed_form_decay_coefficient(rf) == 0


def test_flat_data_has_identically_zero_correction():
    data = build_ansatz(3, (1,), mults=(1,), flat=True)
    rows = ale_ray(data, count=12)
    for _, _, _, corr in rows:
        assert corr == 0.0


def test_comparison_tails_flat_and_domain():
    data = build_ansatz(3, (1,), mults=(1,), flat=True)
    assert comparison_tails((5.0,), data) == [0.0]
    live = build_ansatz(5, (2, 3))
    with pytest.raises(ValueError):
        comparison_tails((-12.0, -1.0), live)


def test_flat_image_moments_positive_factors():
    data = build_ansatz(7, (2, 3))
    pushed, norm_sq = flat_image_moments((-18.0, 5.0), data, lam=1.0)
    assert all(v > 0 for v in pushed)
    assert norm_sq > 0
    with pytest.raises(ValueError):
        flat_image_moments((-18.0, 0.5), data, lam=1.0)


def test_log_coefficient_on_surface_sets():
    """m=2 non-Ricci-flat sets carry a log term with coefficient -a/4."""
    for a0, w, target in [(7, (2, 3), -7.0), (5, (1,), -7.5)]:
        mults = None if len(w) == 2 else (1,)
        data = build_ansatz(a0, w, mults=mults)
        report = ale_report(data)
        assert report["m"] == 2
        assert not report["ricci_flat"]
        closed = float(Fraction(report["closed_coefficient"]))
        assert closed == target
        assert abs(report["fitted_coefficient"] - closed) <= 0.05 * abs(closed)
        assert report["pass"], report


def test_power_decay_exponent_m3():
    data = build_ansatz(7, (1,), mults=(2,))
    report = ale_report(data)
    assert report["m"] == 3
    assert abs(report["fitted_exponent"] + 2.0) <= 0.06
    closed = float(Fraction(report["closed_coefficient"]))
    assert abs(report["fitted_coefficient"] - closed) <= 0.05 * abs(closed)
    assert report["pass"]


def test_power_decay_exponent_m4():
    data = build_ansatz(9, (1,), mults=(3,))
    report = ale_report(data)
    assert report["m"] == 4
    assert abs(report["fitted_exponent"] + 4.0) <= 0.12
    assert report["pass"]


def test_ricci_flat_sets_have_vanishing_coefficient():
    for a0, w, mults in [(5, (2, 3), None), (3, (1, 2), None),
                         (4, (1,), (3,)), (3, (1,), (2,))]:
        data = build_ansatz(a0, w, mults=mults)
        report = ale_report(data)
        assert report["ricci_flat"]
        assert report["coefficient_pass"]
        assert report["pass"], report


def test_coefficient_sign_follows_linear_term():
    for a0, w, mults in [(7, (2, 3), None), (7, (1,), (2,)), (9, (1,), (3,))]:
        data = build_ansatz(a0, w, mults=mults)
        report = ale_report(data)
        assert data.lin_a != 0
        closed = float(Fraction(report["closed_coefficient"]))
        assert report["fitted_coefficient"] * closed > 0
        if data.m >= 3:
            assert report["fitted_coefficient"] * data.lin_a > 0


def test_order_minus_r_family_iff():
    """The one-interval family over projective (m-1)-space is Ricci-flat
    exactly when the order matches the complex dimension."""
    for r, n in [(2, 1), (3, 2), (4, 3), (5, 1), (7, 2), (9, 3), (5, 3)]:
        data = build_ansatz(r, (1,), mults=(n,))
        report = ale_report(data)
        expect_rf = r == n + 1
        assert report["ricci_flat"] == expect_rf
        if expect_rf:
            assert report["coefficient_pass"]
        else:
            closed = float(Fraction(report["closed_coefficient"]))
            assert abs(report["fitted_coefficient"] - closed) \
                <= 0.05 * abs(closed)
        assert report["pass"], (r, n, report)


def test_ricci_flat_test_agrees_with_weight_criterion():
    cases = [
        ((5, (2, 3), None), True),
        ((7, (2, 3), None), False),
        ((3, (1, 2), None), True),
        ((4, (1,), (3,)), True),
        ((9, (1,), (3,)), False),
    ]
    for (a0, w, mults), expect in cases:
        out = ricci_flat_test(a0, w, mults=mults)
        assert out["ricci_flat"] == expect
        assert out["agree"]
        assert out["derivative_route"] == expect


def test_growth_slope_matches_flat_rate():
    data = build_ansatz(5, (2, 3))
    rows = ale_ray(data, count=14)
    out = xi_growth_check(rows, data)
    assert out["pass"]
    assert abs(out["slope"]) < 1e-3


def test_ale_ray_validates_arguments():
    data = build_ansatz(5, (2, 3))
    with pytest.raises(ValueError):
        ale_ray(data, count=5)
    with pytest.raises(ValueError):
        ale_ray(data, count=40)
    with pytest.raises(ValueError):
        ale_ray(data, span=(100.0, 10.0))


def test_ray_rows_are_monotone_in_tail():
    data = build_ansatz(7, (2, 3))
    rows = ale_ray(data, count=12)
    tails = [row[0] for row in rows]
    assert tails == sorted(tails)
    assert len(rows) == 12
    for tail, norm_sq, potential, corr in rows:
        assert norm_sq > 0
        assert abs(potential - (0.25 * norm_sq + corr)) < 1e-9 * norm_sq


def test_decay_fit_report_fields():
    data = build_ansatz(7, (2, 3))
    fit = decay_fit(ale_ray(data, count=16), data)
    assert fit.m == 2
    assert fit.linear_coefficient == 28
    assert fit.closed_coefficient == Fraction(-7)
    assert not fit.ricci_flat
    assert fit.fit_residual >= 0.0


def test_csv_export_deterministic():
    data = build_ansatz(5, (2, 3))
    rows = ale_ray(data, count=10)
    buf1, buf2 = io.StringIO(), io.StringIO()
    write_ray_csv(rows, buf1)
    write_ray_csv(rows, buf2)
    text = buf1.getvalue()
    assert text == buf2.getvalue()
    lines = text.strip().split("\n")
    assert lines[0] == "xi_last,norm_sq,potential,correction"
    assert len(lines) == 11
