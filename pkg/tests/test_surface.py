"""Tests for the four-dimensional branch: profile pairs, the dual metric
obtained by conformal rescaling, and the bounded simplex image."""

from fractions import Fraction

import pytest

from scalarflat.ansatz import build_ansatz, vertical_gram
from scalarflat.polys import peval
from scalarflat.surface import (
    bochner_dual,
    calabi_sigma_point,
    conformal_factor_check,
    dual_affine_map,
    dual_functionals,
    dual_gram_direct,
    dual_membership_check,
    dual_normals,
    dual_polytope,
    dual_simplex_coordinates,
    eval_functional,
    orthotoric_gram,
    polynomiality_check,
    primal_sigma_gram,
    sample_points,
    surface_data,
)

F = Fraction


def test_orthotoric_fields():
    sd = surface_data(7, 2, 3)
    assert sd.kind == "orthotoric"
    assert sd.lam == 294
    assert sd.theta1_coeffs == (F(588), F(70), F(2))
    assert sd.theta2_coeffs == (F(0), F(98), F(2))
    assert sd.alpha == (F(-21), F(-14))


def test_calabi_fields():
    sc = surface_data(5, 2, 2)
    assert sc.kind == "calabi"
    assert sc.lam == F(1, 16)
    assert sc.ansatz.mult == (1,)
    assert sc.ansatz.m == 2


def test_surface_data_validation():
    with pytest.raises(ValueError):
        surface_data(7, 3, 2)
    with pytest.raises(ValueError):
        surface_data(7, 0, 2)
    with pytest.raises(ValueError):
        surface_data(-1, 2, 3)


def test_profile_coefficient_formulas():
    for a0 in (1, 2, 3, 5, 7, 11):
        for a1, a2 in ((1, 2), (2, 3), (3, 8), (5, 12)):
            sd = surface_data(a0, a1, a2)
            assert sd.theta1_coeffs == (
                F(2 * a0 * a0 * a1 * a2),
                F(2 * a0 * (a1 + a2)),
                F(2),
            )
            assert sd.theta2_coeffs == (F(0), F(2 * a0 * a0), F(2))


def test_second_profile_equals_ansatz_polynomial():
    # Coefficientwise agreement between the surface profile and the general
    # construction, across every distinct two-weight set with entries <= 12.
    for a0 in range(1, 13):
        for a1 in range(1, 12):
            for a2 in range(a1 + 1, 13):
                sd = surface_data(a0, a1, a2)
                data = build_ansatz(a0, (a1, a2))
                assert sd.theta2_coeffs == data.f_ell_coeffs
                assert data.f_ell_coeffs == (F(0), F(2 * a0 * a0), F(2))


def test_orthotoric_gram_frozen():
    sd = surface_data(7, 2, 3)
    g = orthotoric_gram(F(-18), F(5), sd)
    assert g == [
        [F(564, 23), F(-9600, 23)],
        [F(-9600, 23), F(175560, 23)],
    ]


def test_orthotoric_gram_entry_formulas():
    pairs = {
        (7, 2, 3): ((F(-18), F(5)), (F(-39, 2), F(3))),
        (5, 2, 3): ((F(-13), F(2)), (F(-29, 2), F(19, 2))),
    }
    for weights, points in pairs.items():
        sd = surface_data(*weights)
        for xi1, xi2 in points:
            t1 = peval(list(sd.theta1_coeffs), xi1)
            t2 = peval(list(sd.theta2_coeffs), xi2)
            d = xi1 - xi2
            g = orthotoric_gram(xi1, xi2, sd)
            assert g[0][0] == (t1 - t2) / d
            assert g[0][1] == (xi2 * t1 - xi1 * t2) / d
            assert g[1][0] == g[0][1]
            assert g[1][1] == (xi2 ** 2 * t1 - xi1 ** 2 * t2) / d


def test_orthotoric_gram_matches_general_route():
    for weights in ((7, 2, 3), (5, 2, 3)):
        sd = surface_data(*weights)
        data = build_ansatz(weights[0], weights[1:])
        al1, al2 = data.alpha
        mid = (al1 + al2) / 2
        for xi in ((mid, F(5)), (mid - F(1, 3), F(7, 3))):
            assert orthotoric_gram(xi[0], xi[1], sd) == vertical_gram(xi, data)


def test_primal_sigma_gram_orthotoric_is_vertical():
    sd = surface_data(7, 2, 3)
    pt = (F(-18), F(5))
    assert primal_sigma_gram(pt, sd) == orthotoric_gram(pt[0], pt[1], sd)


def test_primal_sigma_gram_calabi_frozen():
    sc = surface_data(5, 2, 2)
    g = primal_sigma_gram((F(2, 3), F(1, 5)), sc)
    assert g == [
        [F(2528, 1275), F(1264, 1275)],
        [F(1264, 1275), F(1976, 255)],
    ]
    assert g[0][0] > 0 and g[1][1] > 0
    assert g[0][0] * g[1][1] - g[0][1] ** 2 > 0


def test_calabi_sigma_point():
    sc = surface_data(5, 2, 2)
    assert calabi_sigma_point(F(-4), F(1, 2), sc) == (F(4, 5), F(1))
    sd = surface_data(7, 2, 3)
    with pytest.raises(ValueError):
        calabi_sigma_point(F(-4), F(1, 2), sd)


def test_bochner_dual_frozen():
    sd = surface_data(7, 2, 3)
    sig, ht, factor = bochner_dual((F(-18), F(5)), sd)
    assert sig == (F(1, 23), F(-13, 46))
    assert factor == F(1, 529)
    assert ht == [
        [F(564, 12167), F(-9600, 12167)],
        [F(-9600, 12167), F(175560, 12167)],
    ]


def test_conformal_law_exact():
    # The dual Gram matrix times the squared coordinate gap reproduces the
    # primal one entry by entry, in exact arithmetic.
    cases = {
        (7, 2, 3): ((F(-18), F(5)), (F(-39, 2), F(3)), (F(-15), F(100))),
        (5, 2, 3): ((F(-13), F(2)), (F(-29, 2), F(19, 2)), (F(-11), F(50))),
    }
    for weights, points in cases.items():
        sd = surface_data(*weights)
        for xi in points:
            g = orthotoric_gram(xi[0], xi[1], sd)
            _, ht, factor = bochner_dual(xi, sd)
            gap = (xi[0] - xi[1]) ** 2
            assert factor * gap == 1
            for i in range(2):
                for j in range(2):
                    assert ht[i][j] * gap == g[i][j]


def test_dual_gram_direct_agrees():
    # Independent route straight from the profile polynomials.
    for weights in ((7, 2, 3), (5, 2, 3), (3, 1, 2)):
        sd = surface_data(*weights)
        data = build_ansatz(weights[0], weights[1:])
        al2 = data.alpha[1]
        for xi in ((al2 - 1, al2 + 2), (al2 - F(1, 3), al2 + F(17, 4))):
            _, ht, _ = bochner_dual(xi, sd)
            assert dual_gram_direct(xi[0], xi[1], sd) == ht


def test_dual_functionals_frozen_values():
    sd = surface_data(7, 2, 3)
    funs = dual_functionals(sd)
    sig = (F(1, 23), F(-13, 46))
    values = [eval_functional(f, sig) for f in funs]
    assert values == [F(3, 23), F(4, 23), F(5, 23)]
    assert sum(values) == F(12, 23)


def test_dual_points_inside_simplex():
    for weights in ((7, 2, 3), (5, 2, 3)):
        sd = surface_data(*weights)
        funs = dual_functionals(sd)
        for pt in sample_points(sd, 9):
            sig, _, _ = bochner_dual(pt, sd)
            assert all(eval_functional(f, sig) > 0 for f in funs)
            lam = dual_simplex_coordinates(sig, sd)
            assert lam[0] > 0 and lam[1] > 0
            assert lam[0] + lam[1] < 1


def test_dual_affine_map_frozen():
    mat, off = dual_affine_map(surface_data(7, 2, 3))
    assert mat == [[F(42), F(2)], [F(-42), F(-3)]]
    assert off == [F(-1), F(3, 2)]


def test_conformal_factor_check_orthotoric():
    rep = conformal_factor_check(surface_data(7, 2, 3), count=12)
    assert rep["check"] == "conformal_factor"
    assert rep["pass"] is True
    assert rep["max_residual"] == 0.0
    assert rep["tolerance"] == 1e-12
    assert rep["points"] == 12
    assert rep["sigma_form_sample"] == "36/755"
    assert rep["momentum_form_sample"] == "-36/755"
    sig = Fraction(rep["sigma_form_sample"])
    mom = Fraction(rep["momentum_form_sample"])
    assert sig == -mom


def test_conformal_factor_check_calabi():
    rep = conformal_factor_check(surface_data(5, 2, 2), count=12)
    assert rep["pass"] is True
    assert rep["max_residual"] == 0.0
    assert Fraction(rep["sigma_form_sample"]) == Fraction(
        rep["momentum_form_sample"]
    )


def test_dual_membership_check():
    for weights in ((7, 2, 3), (5, 2, 2)):
        rep = dual_membership_check(surface_data(*weights), count=100)
        assert rep["check"] == "dual_simplex_membership"
        assert rep["pass"] is True
        assert rep["max_residual"] == 0.0
        assert rep["tolerance"] == 0.0
        assert rep["points"] == 100


def test_dual_normals_orthotoric():
    sd = surface_data(7, 2, 3)
    dn = dual_normals(sd)
    assert dn["scaled"] == [
        (F(6174), F(0)),
        (F(0), F(4116)),
        (F(-1764), F(-1764)),
    ]
    assert dn["boundary"] == [
        (F(1, 14), F(0)),
        (F(0), F(1, 21)),
        (F(-1, 49), F(-1, 49)),
    ]
    lam2 = sd.lam ** 2
    for s, b in zip(dn["scaled"], dn["boundary"]):
        assert s == (lam2 * b[0], lam2 * b[1])


def test_dual_normals_calabi_coincide():
    dn = dual_normals(surface_data(5, 2, 2))
    assert dn["scaled"] == dn["boundary"]
    assert dn["scaled"] == [
        (F(5, 8), F(0)),
        (F(0), F(5, 8)),
        (F(-1, 4), F(-1, 4)),
    ]


def test_dual_polytope_bounded_simplex():
    sd = surface_data(7, 2, 3)
    dp = dual_polytope(sd)
    assert dp.bounded
    assert [(f.normal, f.offset) for f in dp.facets] == [
        ((F(1), F(0)), F(0)),
        ((F(0), F(1)), F(0)),
        ((F(-1), F(-1)), F(1)),
    ]
    weights = [f.weight for f in dp.facets]
    assert weights == [F(6174), F(4116), F(1764)]


def test_polynomiality_check_passes():
    rep = polynomiality_check(surface_data(7, 2, 3), samples=20, holdout=10)
    assert rep["pass"] is True
    assert rep["max_residual"] == 0
    assert rep["tolerance"] == 0
    assert rep["points"] == 30
    assert rep["degree_two_fails"] is True


def test_polynomiality_check_rank_deficient():
    with pytest.raises(ValueError, match="rank deficient"):
        polynomiality_check(surface_data(7, 2, 3), samples=12)


def test_dual_entries_are_cubic_polynomials():
    rep = polynomiality_check(surface_data(7, 2, 3), samples=20, holdout=10)
    coeffs = rep["coefficients"]
    assert sorted(coeffs.keys()) == [(0, 0), (0, 1), (1, 1)]
    for table in coeffs.values():
        assert all(i + j <= 3 for i, j in table)
    lead = coeffs[(0, 0)]
    assert lead[(2, 0)] == F(84)
    assert lead[(1, 1)] == F(4)
    assert lead[(3, 0)] == F(-588)
    assert lead[(0, 0)] == 0


def test_polynomials_reproduce_dual_gram():
    sd = surface_data(7, 2, 3)
    rep = polynomiality_check(sd, samples=20, holdout=10)
    coeffs = rep["coefficients"]
    for xi in ((F(-18), F(5)), (F(-16), F(-9)), (F(-20), F(31, 2))):
        sig, ht, _ = bochner_dual(xi, sd)
        for (i, j), table in coeffs.items():
            value = sum(
                coef * sig[0] ** e1 * sig[1] ** e2
                for (e1, e2), coef in table.items()
            )
            assert value == ht[i][j]
