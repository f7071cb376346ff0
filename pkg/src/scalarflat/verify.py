"""Numerical verification of the metric-level claims: vanishing scalar
curvature by finite differences of the inverse Hessian, facet boundary
conditions with their weighted normals, positive-definiteness, determinant
factorization across facets, exact interpolation identities, and consistency
between the potential and the metric.

All checks are deterministic given the construction data, the grid sizes,
and the seed. Reports serialize to a fixed JSON shape.
"""

from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .ansatz import (
    AnsatzData,
    full_gram,
    gram_weights,
    momenta_pack,
    potential_from_momenta,
    sigma_to_xi,
    vandermonde_inverse_sum,
    vandermonde_power_sum,
    x_to_sigma,
    xi_to_x,
)
from .polys import pderiv, peval
from .polytope import block_layout, fibered_to_joint, joint_to_fibered

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
           53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


@dataclass
class CheckReport:
    """Outcome of one verification check."""

    check: str
    max_residual: float
    tolerance: float
    passed: bool
    points: int
    seconds: float
    grid: str = ""
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "check": self.check,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "points": self.points,
            "seconds": self.seconds,
        }


def _finish(check: str, residual: float, tol: float, points: int,
            t0: float, grid: str = "", details: dict | None = None) -> CheckReport:
    return CheckReport(
        check=check,
        max_residual=float(residual),
        tolerance=float(tol),
        passed=bool(residual <= tol),
        points=int(points),
        seconds=time.perf_counter() - t0,
        grid=grid,
        details=details or {},
    )


def halton_value(index: int, base: int) -> float:
    out = 0.0
    f = 1.0
    i = index
    while i > 0:
        f /= base
        out += f * (i % base)
        i //= base
    return out


def halton_point(index: int, dims: int) -> tuple[float, ...]:
    if dims > len(_PRIMES):
        raise ValueError("dimension exceeds the prime table")
    return tuple(halton_value(index, _PRIMES[d]) for d in range(dims))


def interior_points(data: AnsatzData, count: int, seed: int = 0,
                    box: float = 3.0, margin: float = 0.02) -> list[tuple[float, ...]]:
    """Low-discrepancy interior points in the joint moment coordinates,
    rejected against the polytope constraints with a small safety margin."""
    m = data.m
    pts: list[tuple[float, ...]] = []
    idx = 17 + 911 * seed
    while len(pts) < count:
        idx += 1
        cand = tuple(margin + (box - margin) * v for v in halton_point(idx, m))
        if not data.flat and sum(cand) <= 1.0 + margin:
            continue
        pts.append(cand)
    return pts


def xi_grid(data: AnsatzData, per_axis: int, margin: float = 0.05,
            spread: float | None = None) -> list[tuple[float, ...]]:
    """Tensor grid over the coordinate intervals: uniform on bounded factors,
    uniform in an arctangent compactification on the unbounded one."""
    axes: list[list[float]] = []
    if spread is None:
        spread = max(1.0, float(-data.alpha[-1]))
    for lo, hi in data.xi_intervals():
        vals: list[float] = []
        for i in range(per_axis):
            u = margin + (1.0 - 2.0 * margin) * (i + 0.5) / per_axis
            if hi is None:
                vals.append(float(lo) + spread * math.tan(u * math.pi / 2.0))
            else:
                vals.append(float(lo) + (float(hi) - float(lo)) * u)
        axes.append(vals)
    grid = [()]
    for vals in axes:
        grid = [g + (v,) for g in grid for v in vals]
    return grid


def grid_fibers(data: AnsatzData, index: int) -> list[tuple[float, ...]]:
    """One low-discrepancy fiber configuration per grid index, strictly
    inside each simplex factor."""
    fibers = []
    dim_used = 0
    for n in data.mult:
        if n == 0:
            fibers.append(())
            continue
        raw = halton_point(37 + index, n + dim_used)[dim_used:]
        dim_used += n
        total = sum(raw) + 1.0
        fibers.append(tuple(0.1 + 0.8 * r / total for r in raw))
    return fibers


@dataclass(frozen=True)
class FacetSpec:
    """One polytope facet in the packed momentum coordinates: the affine
    functional vanishing on it and the weighted normal entering the boundary
    conditions."""

    name: str
    kind: str
    block: int
    slot: int
    grad: tuple[Fraction, ...]
    offset: Fraction
    normal: tuple[Fraction, ...]

    def value(self, z: Sequence) -> float:
        return float(sum(float(g) * float(v) for g, v in zip(self.grad, z))
                     + float(self.offset))


def killing_facet_normals(data: AnsatzData) -> list[FacetSpec]:
    """All facets of the moment polytope, expressed in the packed momentum
    coordinates. Fiber facets carry normal r_j e, block facets carry
    (c/a_j) e_j minus r_j times the fiber block sum, and the compact facet
    (absent on the cone) carries (c/a_0) times the sum of the base slots."""
    m = data.m
    ell = data.ell
    c = data.c
    layout = block_layout(data.mult)
    zero = tuple(Fraction(0) for _ in range(m))
    specs: list[FacetSpec] = []
    for j in range(1, ell + 1):
        start, stop = layout[j - 1]
        scale = data.hat_factor(j)
        rj = data.r[j - 1]
        aj = data.weights[j - 1]
        for q in range(start, stop):
            grad = list(zero)
            grad[q] = 1 / scale
            normal = list(zero)
            normal[q] = rj
            specs.append(FacetSpec(
                name="fiber_%d_%d" % (j, q - start + 1),
                kind="fiber", block=j, slot=q,
                grad=tuple(grad), offset=Fraction(0), normal=tuple(normal)))
        if data.mult[j - 1] == 0 and ell == 1 and not data.flat:
            continue
        grad = list(zero)
        grad[j - 1] = Fraction(1)
        normal = list(zero)
        normal[j - 1] = Fraction(c, aj)
        for q in range(start, stop):
            grad[q] = -1 / scale
            normal[q] = -rj
        specs.append(FacetSpec(
            name="block_%d" % j, kind="head", block=j, slot=-1,
            grad=tuple(grad), offset=Fraction(0), normal=tuple(normal)))
    if not data.flat:
        grad = list(zero)
        normal = list(zero)
        for j in range(ell):
            grad[j] = Fraction(1)
            normal[j] = Fraction(c, data.a0)
        specs.append(FacetSpec(
            name="sum", kind="sum", block=0, slot=-1,
            grad=tuple(grad), offset=Fraction(-1), normal=tuple(normal)))
    return specs


def _facet_distance_z(z: Sequence, specs: list[FacetSpec]) -> float:
    dist = math.inf
    for spec in specs:
        norm = math.sqrt(sum(float(g) ** 2 for g in spec.grad))
        dist = min(dist, spec.value(z) / norm)
    return dist


def _axis_distances(z: Sequence, specs: list[FacetSpec]) -> list[float]:
    """Distance to the boundary along each coordinate axis; unconstrained
    axes fall back to the coordinate magnitude."""
    out = []
    for u in range(len(z)):
        d = math.inf
        for spec in specs:
            gu = abs(float(spec.grad[u]))
            if gu > 0.0:
                d = min(d, spec.value(z) / gu)
        out.append(d if d < math.inf else max(1.0, abs(float(z[u]))))
    return out


def _fd_steps(z: Sequence, specs: list[FacetSpec], h: float | None) -> list[float]:
    """Per-coordinate step sizes: a fixed fraction of the per-axis boundary
    distance by default, or the explicit step scaled by coordinate magnitude
    and capped to keep the stencil interior."""
    if h is None:
        return [max(1e-4, 1e-2 * d) for d in _axis_distances(z, specs)]
    dist = _facet_distance_z(z, specs)
    return [min(h * max(1.0, abs(float(zv))), dist / 8.0) for zv in z]


def gram_at_momenta(z: Sequence, data: AnsatzData) -> np.ndarray:
    """Gram matrix of the torus generators as a function of the packed
    momenta alone; the root recovery makes this usable inside difference
    stencils."""
    x = tuple(float(v) for v in z[: data.ell])
    layout = block_layout(data.mult)
    fibers = []
    for j in range(1, data.ell + 1):
        start, stop = layout[j - 1]
        scale = float(data.hat_factor(j))
        fibers.append(tuple(float(z[q]) / (scale * x[j - 1]) for q in range(start, stop)))
    sigma = x_to_sigma(x, data)
    xi = sigma_to_xi([float(s) for s in sigma], data)
    return np.array(full_gram(xi, fibers, data), dtype=float)


def _second_derivative(fun: Callable[[Sequence], np.ndarray], z: Sequence,
                       u: int, v: int, hu: float, hv: float,
                       cache: dict, levels: int = 1) -> np.ndarray:
    def at(du: float, dv: float) -> np.ndarray:
        key = (round(du / hu * 4) if hu else 0, u, round(dv / hv * 4) if hv else 0, v)
        if key not in cache:
            zz = list(z)
            zz[u] += du
            zz[v] += dv
            cache[key] = fun(zz)
        return cache[key]

    def stencil(su: float, sv: float) -> np.ndarray:
        if u == v:
            return (at(su, 0.0) - 2.0 * at(0.0, 0.0) + at(-su, 0.0)) / su ** 2
        return (at(su, sv) - at(su, -sv) - at(-su, sv) + at(-su, -sv)) / (4.0 * su * sv)

    if levels == 1:
        return (4.0 * stencil(hu, hv) - stencil(2.0 * hu, 2.0 * hv)) / 3.0
    r1 = (4.0 * stencil(hu, hv) - stencil(2.0 * hu, 2.0 * hv)) / 3.0
    r2 = (4.0 * stencil(2.0 * hu, 2.0 * hv) - stencil(4.0 * hu, 4.0 * hv)) / 3.0
    return (16.0 * r1 - r2) / 15.0


def abreu_scalar(xtilde: Sequence, data: AnsatzData, h: float | None = None) -> float:
    """Scalar curvature at an interior point as the negated double divergence
    of the Gram matrix in the packed momentum coordinates, by central
    differences with one extrapolation level."""
    x, fibers = joint_to_fibered([float(v) for v in xtilde], data.mult)
    z = list(momenta_pack(x, fibers, data))
    z = [float(v) for v in z]
    specs = killing_facet_normals(data)
    dist = _facet_distance_z(z, specs)
    if dist < 4.0 * (h if h is not None else max(1e-4, 1e-2 * dist)):
        raise ValueError("point too close to the boundary for the stencil")
    steps = _fd_steps(z, specs, h)
    m = data.m
    cache: dict = {}
    fun = lambda zz: gram_at_momenta(zz, data)
    total = 0.0
    for u in range(m):
        for v in range(u, m):
            dd = _second_derivative(fun, z, u, v, steps[u], steps[v], cache)
            term = dd[u][v]
            total += term if u == v else 2.0 * term
    return -total


def scalar_flat_check(data: AnsatzData, per_axis: int = 15,
                      tolerance: float | None = None,
                      h: float | None = None) -> CheckReport:
    """Maximum |scalar curvature| over a tensor grid of interior points."""
    t0 = time.perf_counter()
    if tolerance is None:
        tolerance = 1e-8 if data.flat else 1e-5
    if h is None and data.flat:
        h = 1e-3
    pts = xi_grid(data, per_axis)
    worst = 0.0
    used = 0
    for idx, xi in enumerate(pts):
        fibers = grid_fibers(data, idx)
        x = xi_to_x(xi, data)
        xt = fibered_to_joint(x, fibers)
        try:
            s = abreu_scalar(xt, data, h=h)
        except ValueError:
            continue
        used += 1
        worst = max(worst, abs(s))
    return _finish("scalar_flat", worst, tolerance, used, t0,
                   grid="xi tensor %d per axis" % per_axis)


def _reference_state(data: AnsatzData) -> tuple[list[float], list[list[float]]]:
    xi = []
    for lo, hi in data.xi_intervals():
        if hi is None:
            xi.append(float(lo) + max(1.0, float(-data.alpha[-1]) / 2.0))
        else:
            xi.append((float(lo) + float(hi)) / 2.0)
    fibers = [[1.0 / (n + 1)] * n for n in data.mult]
    return xi, fibers


def _approach_state(data: AnsatzData, spec: FacetSpec, d: float) -> tuple[list[float], list[list[float]]]:
    """Interior point at approach parameter d for the given facet."""
    xi, fibers = _reference_state(data)
    ell = data.ell
    alpha = [float(a) for a in data.alpha]
    if spec.kind == "fiber":
        j = spec.block
        start, _ = block_layout(data.mult)[j - 1]
        k = spec.slot - start
        n = data.mult[j - 1]
        fibers[j - 1] = [(1.0 - d) / (n + 1)] * n
        fibers[j - 1][k] = d
    elif spec.kind == "head":
        j = spec.block
        n = data.mult[j - 1]
        if n >= 1:
            fibers[j - 1] = [(1.0 - d) / n] * n
        elif j <= ell - 1:
            xi[j - 1] = alpha[j - 1] + d * (alpha[j] - alpha[j - 1]) / 2.0
        elif data.flat:
            xi[ell - 1] = alpha[ell - 1] + d * max(1.0, -alpha[ell - 1]) / 2.0
        else:
            xi[ell - 2] = alpha[ell - 1] - d * (alpha[ell - 1] - alpha[ell - 2]) / 2.0
    else:
        xi[ell - 1] = d * max(1.0, -alpha[ell - 1]) / 2.0
    return xi, fibers


def _state_to_z(xi: Sequence, fibers: Sequence[Sequence], data: AnsatzData) -> list[float]:
    x = xi_to_x([float(v) for v in xi], data)
    return [float(v) for v in momenta_pack(x, fibers, data)]


def boundary_check(data: AnsatzData, d0: float = 0.1, levels: int = 5,
                   tolerance: float = 0.05) -> CheckReport:
    """Boundary conditions at every facet: the Gram matrix annihilates the
    weighted normal linearly in the facet functional (log-log slope within
    tolerance of one, residual ratio 2 +/- 0.2 under halving), and the
    derivative of the squared normal pairing extrapolates to twice the
    normal's squared length."""
    t0 = time.perf_counter()
    specs = killing_facet_normals(data)
    worst = 0.0
    details: dict = {}
    points = 0
    for spec in specs:
        u = np.array([float(v) for v in spec.normal])
        unorm2 = float(u @ u)
        lvals = []
        rvals = []
        dirvals = []
        for i in range(levels):
            d = d0 / 2.0 ** i
            xi, fibers = _approach_state(data, spec, d)
            z = _state_to_z(xi, fibers, data)
            g = gram_at_momenta(z, data)
            lval = spec.value(z)
            res = float(np.max(np.abs(g @ u)))
            lvals.append(lval)
            rvals.append(res)
            dist = _facet_distance_z(z, specs)
            step = min(max(1e-5, 1e-2 * dist), dist / 4.0) / math.sqrt(unorm2)
            zp = np.array(z) + step * u
            zm = np.array(z) - step * u
            fp = float(u @ gram_at_momenta(zp, data) @ u)
            fm = float(u @ gram_at_momenta(zm, data) @ u)
            dirvals.append((fp - fm) / (2.0 * step))
            points += 1
        logl = np.log(np.array(lvals))
        logr = np.log(np.array(rvals))
        slope = float(np.polyfit(logl, logr, 1)[0])
        ratio = rvals[-2] / rvals[-1]
        extrap = 2.0 * dirvals[-1] - dirvals[-2]
        grad_err = abs(extrap - 2.0 * unorm2) / (2.0 * unorm2)
        facet_res = max(abs(slope - 1.0), abs(ratio - 2.0) / 4.0, grad_err)
        worst = max(worst, facet_res)
        details[spec.name] = {
            "slope": slope,
            "ratio": ratio,
            "directional_extrapolation": extrap,
            "target": 2.0 * unorm2,
        }
    return _finish("boundary_conditions", worst, tolerance, points, t0,
                   grid="dyadic approach from %g, %d levels" % (d0, levels),
                   details=details)


def calabi_facet_identity(data: AnsatzData) -> bool:
    """Exact reduction of the boundary condition for a single bounded
    interval: the degree-one profile factor vanishes at the interval end
    with derivative exactly two."""
    if data.ell != 1:
        raise ValueError("identity applies to the single-interval case")
    theta = list(data.theta_coeffs)
    alpha = data.alpha[0]
    return peval(theta, alpha) == 0 and peval(pderiv(theta), alpha) == 2


def positivity_check(data: AnsatzData, count: int = 200, seed: int = 0) -> CheckReport:
    """Smallest Gram eigenvalue over low-discrepancy interior points stays
    positive, and every vertical weight is positive."""
    t0 = time.perf_counter()
    pts = interior_points(data, count, seed=seed)
    min_eig = math.inf
    weight_ok = True
    for xt in pts:
        x, fibers = joint_to_fibered(xt, data.mult)
        sigma = x_to_sigma([float(v) for v in x], data)
        xi = sigma_to_xi([float(s) for s in sigma], data)
        g = np.array(full_gram(xi, fibers, data), dtype=float)
        min_eig = min(min_eig, float(np.linalg.eigvalsh(g)[0]))
        if any(float(w) <= 0.0 for w in gram_weights(xi, data)):
            weight_ok = False
    residual = max(0.0, -min_eig) if weight_ok else 1.0
    return _finish("positivity", residual, 0.0, len(pts), t0,
                   grid="%d low-discrepancy points" % count,
                   details={"min_eigenvalue": min_eig})


def facet_eigen_ratios(data: AnsatzData, d0: float = 0.02, levels: int = 3) -> dict:
    """Ratio of smallest Gram eigenvalues under halving the facet approach
    parameter; linear degeneration gives ratios near two."""
    out = {}
    for spec in killing_facet_normals(data):
        eigs = []
        for i in range(levels):
            xi, fibers = _approach_state(data, spec, d0 / 2.0 ** i)
            z = _state_to_z(xi, fibers, data)
            g = gram_at_momenta(z, data)
            eigs.append(float(np.linalg.eigvalsh(g)[0]))
        out[spec.name] = [eigs[i] / eigs[i + 1] for i in range(levels - 1)]
    return out


def det_factorization(data: AnsatzData, count: int = 200, seed: int = 0,
                      d0: float = 0.05, levels: int = 4,
                      tolerance: float = 0.10) -> CheckReport:
    """Gram determinant divided by the product of the facet monomials: the
    quotient is positive on interior samples and has small relative variation
    along shrinking neighborhoods of each facet midpoint. The compact-facet
    factor is dropped on the cone."""
    t0 = time.perf_counter()
    if data.m < 2:
        raise ValueError("factorization check needs at least two momenta")

    def delta(xt: Sequence, xi: Sequence, fibers: Sequence) -> float:
        g = np.array(full_gram(list(xi), [tuple(f) for f in fibers], data), dtype=float)
        det = float(np.linalg.det(g))
        den = 1.0
        for v in xt:
            den *= float(v)
        if not data.flat:
            den *= sum(float(v) for v in xt) - 1.0
        return det / den

    min_delta = math.inf
    pts = interior_points(data, count, seed=seed)
    for xt in pts:
        x, fibers = joint_to_fibered(xt, data.mult)
        sigma = x_to_sigma([float(v) for v in x], data)
        xi = sigma_to_xi([float(s) for s in sigma], data)
        min_delta = min(min_delta, delta(xt, xi, fibers))
    worst_var = 0.0
    used = len(pts)
    for spec in killing_facet_normals(data):
        vals = []
        for i in range(levels):
            xi, fibers = _approach_state(data, spec, d0 / 2.0 ** i)
            x = xi_to_x([float(v) for v in xi], data)
            xt = fibered_to_joint(x, fibers)
            vals.append(delta(xt, xi, fibers))
            used += 1
        tail = vals[-3:]
        mid = sum(tail) / len(tail)
        worst_var = max(worst_var, (max(tail) - min(tail)) / abs(mid))
        min_delta = min(min_delta, min(vals))
    residual = worst_var if min_delta > 0.0 else math.inf
    return _finish("determinant_factorization", residual, tolerance, used, t0,
                   grid="%d points plus facet approaches" % count,
                   details={"min_quotient": min_delta})


def vandermonde_check(data: AnsatzData) -> CheckReport:
    """Exact interpolation identities for the residue coefficients."""
    t0 = time.perf_counter()
    alpha = list(data.alpha)
    ok = True
    for s in range(1, data.ell + 1):
        expect = Fraction(1) if s == 1 else Fraction(0)
        ok = ok and vandermonde_power_sum(alpha, s) == expect
    prod = Fraction(1)
    for a in alpha:
        prod *= a
    ok = ok and vandermonde_inverse_sum(alpha) == Fraction((-1) ** (data.ell - 1)) / prod
    return _finish("vandermonde", 0.0 if ok else 1.0, 0.0, data.ell + 1, t0,
                   grid="exact")


def hessian_consistency(data: AnsatzData, count: int = 10, seed: int = 0,
                        tolerance: float | None = None,
                        h: float | None = None) -> CheckReport:
    """Finite-difference Hessian of the symplectic potential in the packed
    momenta, inverted, against the Gram matrix; relative error in the
    Frobenius norm. Ill conditioning raises a warning, not a failure."""
    t0 = time.perf_counter()
    sharp = data.flat and data.ell == 1
    if tolerance is None:
        tolerance = 1e-8 if sharp else 1e-6
    m = data.m
    pts = interior_points(data, count, seed=seed, margin=0.3 if sharp else 0.1)
    specs = killing_facet_normals(data)
    worst = 0.0
    for xt in pts:
        x, fibers = joint_to_fibered(xt, data.mult)
        z = [float(v) for v in momenta_pack(x, fibers, data)]
        if sharp and h is None:
            steps = [max(1e-5, 7.5e-3 * di) for di in _axis_distances(z, specs)]
        else:
            steps = _fd_steps(z, specs, h)
        cache: dict = {}
        fun = lambda zz: np.array([[potential_from_momenta(zz, data)]])
        hess = np.zeros((m, m))
        for u in range(m):
            for v in range(u, m):
                dd = _second_derivative(fun, z, u, v, steps[u], steps[v],
                                        cache, levels=2 if sharp else 1)
                hess[u][v] = hess[v][u] = dd[0][0]
        cond = float(np.linalg.cond(hess))
        if cond > 1e10:
            warnings.warn("potential Hessian condition number %.3e" % cond)
        ginv = np.linalg.inv(hess)
        g = gram_at_momenta(z, data)
        rel = float(np.linalg.norm(ginv - g) / np.linalg.norm(g))
        worst = max(worst, rel)
    return _finish("hessian_consistency", worst, tolerance, len(pts), t0,
                   grid="%d low-discrepancy points" % count)


def run_checks(data: AnsatzData, level: str = "quick", seed: int = 0) -> list[CheckReport]:
    """Run the full battery at one of two effort levels."""
    if level not in ("quick", "full"):
        raise ValueError("level must be quick or full")
    full = level == "full"
    reports = [
        scalar_flat_check(data, per_axis=15 if (full and data.ell <= 2) else 5),
        boundary_check(data),
        positivity_check(data, count=200 if full else 60, seed=seed),
        vandermonde_check(data),
        hessian_consistency(data, count=10 if full else 4, seed=seed),
    ]
    if data.m >= 2:
        reports.insert(3, det_factorization(data, count=200 if full else 60, seed=seed))
    return reports
