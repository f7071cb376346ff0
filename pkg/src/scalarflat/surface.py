"""Four-real-dimensional specializations: explicit rank-two Gram matrices,
the conformally dual Kahler structure carrying the opposite orientation, its
momenta, bounded simplex image, and weighted normals.

Two kinds of data occur: distinct positive weights behind the leading one
give the generic (orthotoric) branch; equal weights give the degenerate
branch built on a single projective line. All structural constants are
exact; evaluation functions are polymorphic and stay exact on rational
input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .ansatz import AnsatzData, build_ansatz, full_gram, vertical_gram, xi_to_x
from .polys import peval
from .polytope import Facet, LabelledPolytope


@dataclass(frozen=True)
class SurfaceData:
    """Data of one four-dimensional family member plus its dual constants."""

    kind: str
    a: tuple[int, int, int]
    theta1_coeffs: tuple[Fraction, ...]
    theta2_coeffs: tuple[Fraction, ...]
    lam: Fraction
    ansatz: AnsatzData

    @property
    def alpha(self) -> tuple[Fraction, ...]:
        return self.ansatz.alpha


def surface_data(a0: int, a1: int, a2: int) -> SurfaceData:
    """Build the surface data for positive integer weights with a1 <= a2."""
    if a0 < 1 or a1 < 1 or a2 < 1:
        raise ValueError("weights must be positive")
    if a1 > a2:
        raise ValueError("weights behind the leading one must be ascending")
    if a1 == a2:
        ansatz = build_ansatz(a0, (a1,), mults=(1,))
        kind = "calabi"
        lam = Fraction(1, a1 ** 4)
    else:
        ansatz = build_ansatz(a0, (a1, a2))
        kind = "orthotoric"
        lam = Fraction(a0 ** 2 * a1 * a2)
    return SurfaceData(
        kind=kind,
        a=(int(a0), int(a1), int(a2)),
        theta1_coeffs=ansatz.theta_coeffs,
        theta2_coeffs=ansatz.f_ell_coeffs,
        lam=lam,
        ansatz=ansatz,
    )


def _require_orthotoric(data: SurfaceData) -> None:
    if data.kind != "orthotoric":
        raise ValueError("operation requires distinct weights")


def orthotoric_gram(xi1, xi2, data: SurfaceData) -> list[list]:
    """Rank-two Gram matrix of the torus action from the two profile
    polynomials; agrees with the general vertical Gram matrix."""
    _require_orthotoric(data)
    a0, a1, a2 = data.a
    if not (-a0 * a2 < xi1 < -a0 * a1) or not (xi2 > 0):
        raise ValueError("point outside the coordinate domain")
    t1 = peval(list(data.theta1_coeffs), xi1)
    t2 = peval(list(data.theta2_coeffs), xi2)
    d = xi2 - xi1
    return [
        [(t2 - t1) / d, (xi1 * t2 - xi2 * t1) / d],
        [(xi1 * t2 - xi2 * t1) / d, (xi1 ** 2 * t2 - xi2 ** 2 * t1) / d],
    ]


def calabi_sigma_point(xi1, fiber_t, data: SurfaceData) -> tuple:
    """Momenta (sigma_1, sigma_2) of the degenerate branch: sigma_1 scales
    the base moment by a1^2 and sigma_2 scales the joint fiber moment by
    a0 a1."""
    if data.kind != "calabi":
        raise ValueError("operation requires equal weights")
    a0, a1, _ = data.a
    x = xi_to_x((xi1,), data.ansatz)[0]
    return (a1 ** 2 * x, a0 * a1 * x * fiber_t)


def primal_sigma_gram(point: Sequence, data: SurfaceData) -> list[list]:
    """Gram matrix of the two torus generators in the momentum basis used by
    the dual construction. Orthotoric input is (xi1, xi2); degenerate input
    is (xi1, fiber_t)."""
    if data.kind == "orthotoric":
        return vertical_gram(point, data.ansatz)
    xi1, t = point
    g = full_gram((xi1,), [(t,)], data.ansatz)
    a0, a1, _ = data.a
    s = (a1 ** 2, a1)
    return [[s[i] * g[i][j] * s[j] for j in range(2)] for i in range(2)]


def bochner_dual(point: Sequence, data: SurfaceData) -> tuple[tuple, list[list], object]:
    """Dual momenta, dual Gram matrix, and the conformal factor relating the
    dual metric to the primal one (dual = factor * primal on the Gram
    level)."""
    if data.kind == "orthotoric":
        xi1, xi2 = point
        d = xi1 - xi2
        inv = 1.0 / d if isinstance(d, float) else Fraction(1) / d
        sig = (-inv, -(xi1 + xi2) * inv / 2)
        factor = inv * inv
        h = vertical_gram(point, data.ansatz)
    else:
        sigma = calabi_sigma_point(point[0], point[1], data)
        z = sigma[0]
        sig = (1 / z, (sigma[1] / sigma[0]) / z)
        factor = 1 / z ** 2
        h = primal_sigma_gram(point, data)
    ht = [[factor * h[i][j] for j in range(2)] for i in range(2)]
    return sig, ht, factor


def dual_gram_direct(xi1, xi2, data: SurfaceData) -> list[list]:
    """Dual Gram matrix straight from the two profile polynomials, an
    independent route from the conformal rescaling of the primal matrix."""
    _require_orthotoric(data)
    t1 = peval(list(data.theta1_coeffs), xi1)
    t2 = peval(list(data.theta2_coeffs), xi2)
    cube = (xi1 - xi2) ** 3
    return [
        [(t1 - t2) / cube, (xi2 * t1 - xi1 * t2) / cube],
        [(xi2 * t1 - xi1 * t2) / cube, (xi2 ** 2 * t1 - xi1 ** 2 * t2) / cube],
    ]


def dual_functionals(data: SurfaceData) -> list[tuple]:
    """Affine functionals (offset, coefficients) in the dual momenta cutting
    out the bounded simplex image, ordered to match the standard-simplex
    coordinates (first, second, complement)."""
    if data.kind == "orthotoric":
        al1, al2 = data.alpha
        return [
            (Fraction(-1, 2), (-al1, Fraction(1))),
            (Fraction(1, 2), (al2, Fraction(-1))),
            (Fraction(1, 2), (Fraction(0), Fraction(1))),
        ]
    a0, a1, _ = data.a
    ell = Fraction(a0, a1)
    aa = Fraction(a1 ** 2)
    return [
        (Fraction(0), (ell, Fraction(-1))),
        (Fraction(0), (Fraction(0), Fraction(1))),
        (Fraction(1, aa), (Fraction(-1), Fraction(0))),
    ]


def eval_functional(fun: tuple, sig: Sequence):
    off, coeffs = fun
    return off + coeffs[0] * sig[0] + coeffs[1] * sig[1]


def dual_affine_map(data: SurfaceData) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Affine map sending the dual momenta to the standard simplex
    coordinates; built so that the simplex coordinates are positive scalings
    of the first two dual functionals."""
    funs = dual_functionals(data)
    if data.kind == "orthotoric":
        al1, al2 = data.alpha
        s1 = al2 / (al1 - al2)
        s2 = al1 / (al1 - al2)
    else:
        a0, a1, _ = data.a
        s1 = Fraction(a1 ** 3, a0)
        s2 = Fraction(a1 ** 3, a0)
    mat = [
        [s1 * funs[0][1][0], s1 * funs[0][1][1]],
        [s2 * funs[1][1][0], s2 * funs[1][1][1]],
    ]
    off = [s1 * funs[0][0], s2 * funs[1][0]]
    return mat, off


def dual_simplex_coordinates(sig: Sequence, data: SurfaceData) -> tuple:
    mat, off = dual_affine_map(data)
    return (
        off[0] + mat[0][0] * sig[0] + mat[0][1] * sig[1],
        off[1] + mat[1][0] * sig[0] + mat[1][1] * sig[1],
    )


def dual_normals(data: SurfaceData) -> dict:
    """Weighted inward normals of the standard simplex for the dual metric.

    The scaled form multiplies the stated products by the dual constant; the
    boundary-derived form comes out of the affine transport of the dual
    boundary conditions. Both are recorded."""
    a0, a1, a2 = data.a
    lam = data.lam
    lam_b = Fraction(1, a0 ** 2 * a1 * a2) if data.kind == "orthotoric" else lam
    scaled = [
        (lam * a0 * a2, Fraction(0)),
        (Fraction(0), lam * a0 * a1),
        (-lam * a1 * a2, -lam * a1 * a2),
    ]
    boundary = [
        (lam_b * a0 * a2, Fraction(0)),
        (Fraction(0), lam_b * a0 * a1),
        (-lam_b * a1 * a2, -lam_b * a1 * a2),
    ]
    return {"scaled": scaled, "boundary": boundary}


def dual_polytope(data: SurfaceData) -> LabelledPolytope:
    """The standard simplex labelled with the scaled dual normals."""
    a0, a1, a2 = data.a
    lam = data.lam
    facets = (
        Facet(normal=(Fraction(1), Fraction(0)), offset=Fraction(0), weight=lam * a0 * a2),
        Facet(normal=(Fraction(0), Fraction(1)), offset=Fraction(0), weight=lam * a0 * a1),
        Facet(normal=(Fraction(-1), Fraction(-1)), offset=Fraction(1), weight=lam * a1 * a2),
    )
    interior = (Fraction(1, 4), Fraction(1, 4))
    return LabelledPolytope(dimension=2, facets=facets, bounded=True, interior_point=interior)


def sample_points(data: SurfaceData, count: int) -> list[tuple[Fraction, Fraction]]:
    """Rational interior points spread over both coordinates. The first
    coordinate walks a bounded interval for distinct weights and an unbounded
    one for equal weights; the second walks the open positive axis or the
    open unit interval accordingly."""
    side = 1
    while side * side < count:
        side += 1
    if data.kind == "orthotoric":
        al1, al2 = data.alpha
        firsts = [al1 + (al2 - al1) * Fraction(2 * i + 1, 2 * side + 1)
                  for i in range(side)]
        seconds = [Fraction(2 * j ** 2 + 5 * j + 3, 3 * j + 4) for j in range(side)]
    else:
        firsts = [Fraction(3 * i ** 2 + 4 * i + 2, 2 * i + 3) for i in range(side)]
        seconds = [Fraction(2 * j + 1, 2 * side + 1) for j in range(side)]
    pts = [(f, s) for f in firsts for s in seconds]
    return pts[:count]


def _monomials(max_degree: int) -> list[tuple[int, int]]:
    out = []
    for total in range(max_degree + 1):
        for i in range(total, -1, -1):
            out.append((i, total - i))
    return out


def _exact_poly_fit(points: list[tuple], values: list, monomials: list[tuple[int, int]]):
    """Exact interpolation over a pool of rational points: row reduce until
    every monomial has a pivot, back-substitute, and return None if the pool
    never reaches full rank."""
    ncol = len(monomials)
    rows = []
    for pt, val in zip(points, values):
        rows.append([pt[0] ** i * pt[1] ** j for (i, j) in monomials] + [val])
    pivots = []
    reduced = []
    for row in rows:
        work = row[:]
        for prow, pcol in zip(reduced, pivots):
            if work[pcol] != 0:
                fac = work[pcol] / prow[pcol]
                work = [w - fac * p for w, p in zip(work, prow)]
        pcol = next((c for c in range(ncol) if work[c] != 0), None)
        if pcol is None:
            if work[ncol] != 0:
                return None
            continue
        reduced.append(work)
        pivots.append(pcol)
        if len(pivots) == ncol:
            break
    if len(pivots) < ncol:
        return None
    coeffs = [Fraction(0)] * ncol
    for prow, pcol in sorted(zip(reduced, pivots), key=lambda t: -t[1]):
        acc = prow[ncol]
        for c in range(ncol):
            if c != pcol and prow[c] != 0:
                acc -= prow[c] * coeffs[c]
        coeffs[pcol] = acc / prow[pcol]
    return {mon: co for mon, co in zip(monomials, coeffs)}


def polynomiality_check(data: SurfaceData, samples: int = 20, holdout: int = 10) -> dict:
    """Exact-interpolation certificate that every dual Gram entry is a
    bivariate polynomial of total degree at most three in the dual momenta,
    with zero residual at held-out rational points, plus the sharpness flag
    recording whether some entry has a nonzero cubic part."""
    pts = sample_points(data, samples + holdout)
    sigs = []
    grams = []
    for pt in pts:
        sig, ht, _ = bochner_dual(pt, data)
        sigs.append(sig)
        grams.append(ht)
    monomials = _monomials(3)
    entries = [(0, 0), (0, 1), (1, 1)]
    coeff_maps = {}
    max_holdout_residual = Fraction(0)
    cubic_nonzero = False
    for (i, j) in entries:
        fit = _exact_poly_fit(sigs[:samples], [g[i][j] for g in grams[:samples]], monomials)
        if fit is None:
            raise ValueError("interpolation pool is rank deficient; enlarge the grid")
        coeff_maps[(i, j)] = fit
        for sig, g in zip(sigs[samples:], grams[samples:]):
            pred = sum(co * sig[0] ** mi * sig[1] ** mj for (mi, mj), co in fit.items())
            res = abs(pred - g[i][j])
            if res > max_holdout_residual:
                max_holdout_residual = res
        if any(co != 0 for (mi, mj), co in fit.items() if mi + mj == 3):
            cubic_nonzero = True
    return {
        "check": "dual_gram_polynomiality",
        "pass": max_holdout_residual == 0,
        "max_residual": float(max_holdout_residual),
        "tolerance": 0.0,
        "points": samples + holdout,
        "degree_two_fails": cubic_nonzero,
        "coefficients": coeff_maps,
    }


def dual_membership_check(data: SurfaceData, count: int = 100) -> dict:
    """The dual momenta of interior points satisfy all simplex functionals
    strictly, and the simplex coordinates land in the open standard
    simplex."""
    funs = dual_functionals(data)
    worst = None
    for pt in sample_points(data, count):
        sig, _, _ = bochner_dual(pt, data)
        vals = [eval_functional(f, sig) for f in funs]
        xt = dual_simplex_coordinates(sig, data)
        vals.extend([xt[0], xt[1], 1 - xt[0] - xt[1]])
        low = min(vals)
        if worst is None or low < worst:
            worst = low
    return {
        "check": "dual_simplex_membership",
        "pass": worst is not None and worst > 0,
        "max_residual": float(-worst) if worst is not None and worst <= 0 else 0.0,
        "tolerance": 0.0,
        "points": count,
    }


def conformal_factor_check(data: SurfaceData, count: int = 50) -> dict:
    """Sign and magnitude bookkeeping for the conformal factor: the momentum
    form of the first dual momentum keeps one sign on the whole domain and
    matches the coordinate form up to that sign; the entrywise conformal law
    between the two Gram matrices holds exactly at rational points."""
    a0, a1, a2 = data.a
    worst_law = Fraction(0)
    sigma_form = None
    momentum_form = None
    sign_ok = True
    for pt in sample_points(data, count):
        sig, ht, factor = bochner_dual(pt, data)
        h = primal_sigma_gram(pt, data)
        for i in range(2):
            for j in range(2):
                res = abs(ht[i][j] - factor * h[i][j])
                if res > worst_law:
                    worst_law = res
        xt = dual_simplex_coordinates(sig, data)
        if data.kind == "orthotoric":
            expr = -(xt[0] / (a0 * a1) + xt[1] / (a0 * a2))
            sign_ok = sign_ok and expr < 0 and sig[0] > 0 and -expr == sig[0]
        else:
            expr = (xt[0] + xt[1]) / Fraction(a1 ** 2)
            sign_ok = sign_ok and expr > 0 and expr == sig[0]
        if sigma_form is None:
            sigma_form = sig[0]
            momentum_form = expr
    return {
        "check": "conformal_factor",
        "pass": sign_ok and worst_law == 0,
        "max_residual": float(worst_law),
        "tolerance": 1e-12,
        "points": count,
        "sigma_form_sample": str(sigma_form),
        "momentum_form_sample": str(momentum_form),
    }
