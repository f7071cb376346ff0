"""Exact construction data for the scalar-flat metric family and evaluation
of coordinates, Gram matrices, and potentials at interior points.

All structural constants (roots, residue constants, polynomial coefficients)
are exact rationals; floating point is used only when evaluating coordinates,
quadratures, and Gram matrices at numeric points. Functions accepting points
are polymorphic: handing them Fraction inputs keeps the results exact
wherever no quadrature or root finding is involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polys import (
    elementary_symmetric,
    pderiv,
    peval,
    pfrom_roots,
    pmul,
    pscale,
    psub,
    ptrim,
    solve_linear,
)
from .weights import GroupedWeights, group_with_multiplicity

_QUAD_EPS = 1e-13
_QUAD_CHECK = 1e-8


@dataclass(frozen=True)
class AnsatzData:
    """Exact data of one member of the metric family.

    The profile polynomial family is p(x) = 2 prod (x - alpha_j)^(1+n_j) with
    minimal polynomial theta; the closing polynomial is f_ell = p + a x + b
    (a = 2 b0 - p'(0), b = -p(0)), or f_ell = p in the flat model."""

    ell: int
    mult: tuple[int, ...]
    a0: int
    weights: tuple[int, ...]
    alpha: tuple[Fraction, ...]
    r: tuple[Fraction, ...]
    p_coeffs: tuple[Fraction, ...]
    theta_coeffs: tuple[Fraction, ...]
    f_ell_coeffs: tuple[Fraction, ...]
    b0: Fraction
    c0: Fraction
    lin_a: Fraction
    const_b: Fraction
    flat: bool
    ricci_flat: bool

    @property
    def m(self) -> int:
        return self.ell + sum(self.mult)

    @property
    def c(self) -> int:
        prod = self.a0
        for v in self.weights:
            prod *= v
        return prod

    def grouped(self) -> GroupedWeights:
        return GroupedWeights(self.a0, self.weights, self.mult)

    def xi_intervals(self) -> list[tuple[Fraction, Fraction | None]]:
        """Open intervals carrying the xi coordinates; the last one is
        unbounded (None upper bound). The flat model starts the last interval
        at the largest root instead of zero."""
        out: list[tuple[Fraction, Fraction | None]] = []
        for j in range(self.ell - 1):
            out.append((self.alpha[j], self.alpha[j + 1]))
        last_lo = self.alpha[-1] if self.flat else Fraction(0)
        out.append((last_lo, None))
        return out

    def hat_factor(self, j: int) -> Fraction:
        """Scaling between fiber momenta and joint momenta for block j
        (1-based): c / (r_j a_j)."""
        return Fraction(self.c) / (self.r[j - 1] * self.weights[j - 1])


def build_ansatz(a0: int, weights: Sequence[int], mults: Sequence[int] | None = None, flat: bool = False) -> AnsatzData:
    """Construct the exact ansatz data for leading weight a0 and the grouped
    positive weights. With mults omitted, repeated weights are grouped
    automatically; with mults given, the weights must already be distinct and
    ascending."""
    if mults is None:
        values, counts = group_with_multiplicity(weights)
    else:
        values, counts = tuple(int(v) for v in weights), tuple(int(n) for n in mults)
    gw = GroupedWeights(int(a0), values, counts)
    ell = gw.ell
    c = gw.c
    alpha = tuple(Fraction(-c, aj) for aj in values)
    r = []
    for j in range(ell):
        prod = Fraction(1)
        for k in range(ell):
            if k != j:
                prod *= alpha[j] - alpha[k]
        r.append(Fraction((-1) ** (ell - 1 - j)) / prod)
    r = tuple(r)
    if any(v <= 0 for v in r):
        raise AssertionError("residue constants must be positive")
    roots = []
    for j in range(ell):
        roots.extend([alpha[j]] * (1 + counts[j]))
    p_coeffs = tuple(pscale(Fraction(2), pfrom_roots(roots)))
    theta_coeffs = tuple(pscale(Fraction(2), pfrom_roots(list(alpha))))
    m = gw.m
    prod_alpha_n = Fraction(1)
    for j in range(ell):
        prod_alpha_n *= alpha[j] ** counts[j]
    b0 = Fraction((-1) ** (m - ell)) * prod_alpha_n * a0 ** 2 * Fraction(c) ** (ell - 2)
    if b0 <= 0:
        raise AssertionError("b0 must be positive")
    c0 = Fraction((-1) ** (m - ell)) * prod_alpha_n / b0
    p0 = peval(list(p_coeffs), Fraction(0))
    pprime0 = peval(pderiv(list(p_coeffs)), Fraction(0))
    if flat:
        lin_a = Fraction(0)
        const_b = Fraction(0)
        f_ell = p_coeffs
    else:
        lin_a = 2 * b0 - pprime0
        const_b = -p0
        f_ell = list(p_coeffs)
        f_ell[0] = f_ell[0] + const_b
        f_ell[1] = f_ell[1] + lin_a
        f_ell = tuple(f_ell)
    ricci = 2 * b0 == pprime0
    ricci_weight = a0 == sum((counts[j] + 1) * values[j] for j in range(ell))
    if (not flat) and ricci != ricci_weight:
        raise AssertionError("the two Ricci-flat criteria disagree")
    return AnsatzData(
        ell=ell,
        mult=counts,
        a0=int(a0),
        weights=values,
        alpha=alpha,
        r=r,
        p_coeffs=p_coeffs,
        theta_coeffs=theta_coeffs,
        f_ell_coeffs=f_ell,
        b0=b0,
        c0=c0,
        lin_a=lin_a,
        const_b=const_b,
        flat=bool(flat),
        ricci_flat=bool(flat or ricci),
    )


def validate_xi(xi: Sequence, data: AnsatzData) -> bool:
    """Strict interval membership of a xi tuple."""
    if len(xi) != data.ell:
        return False
    for value, (lo, hi) in zip(xi, data.xi_intervals()):
        if not (value > lo and (hi is None or value < hi)):
            return False
    return True


def validate_fibers(fibers: Sequence[Sequence], data: AnsatzData) -> bool:
    """Strict open-simplex membership of the per-block fiber coordinates."""
    if len(fibers) != data.ell:
        return False
    for fib, n in zip(fibers, data.mult):
        if len(fib) != n:
            return False
        if any(t <= 0 for t in fib) or sum(fib) >= 1:
            return False
    return True


def xi_to_sigma(xi: Sequence) -> tuple:
    """Elementary symmetric momenta (sigma_1 .. sigma_ell) of xi."""
    return tuple(elementary_symmetric(list(xi))[1:])


def sigma_to_xi(sigma: Sequence, data: AnsatzData) -> tuple[float, ...]:
    """Recover xi from sigma as the roots of the associated monic polynomial,
    one per coordinate interval, by bracketed root finding. Raises ValueError
    if any root escapes its open interval."""
    from scipy.optimize import brentq

    ell = data.ell
    if len(sigma) != ell:
        raise ValueError("sigma length mismatch")
    if ell == 1:
        lo, hi = data.xi_intervals()[0]
        root = float(sigma[0])
        if not (root > float(lo) and (hi is None or root < float(hi))):
            raise ValueError("recovered root is not interior")
        return (root,)
    coeffs = [0.0] * (ell + 1)
    coeffs[ell] = 1.0
    for rr in range(1, ell + 1):
        coeffs[ell - rr] = float((-1) ** rr) * float(sigma[rr - 1])
    def mpoly(t: float) -> float:
        return peval(coeffs, t)

    out = []
    intervals = data.xi_intervals()
    for j, (lo, hi) in enumerate(intervals):
        flo = float(lo)
        if hi is not None:
            fhi = float(hi)
            vlo, vhi = mpoly(flo), mpoly(fhi)
            if vlo == 0.0 or vhi == 0.0 or (vlo > 0) == (vhi > 0):
                raise ValueError("no sign change in interval %d" % (j + 1))
            xtol = 1e-15 * max(1.0, abs(flo))
            root = brentq(mpoly, flo, fhi, xtol=xtol, rtol=8.9e-16, maxiter=200)
        else:
            vlo = mpoly(flo)
            if vlo == 0.0:
                raise ValueError("root at the boundary of the last interval")
            width = max(1.0, 2.0 * abs(float(sigma[0])) + 2.0, abs(flo))
            fhi = flo + width
            tries = 0
            while (mpoly(fhi) > 0) == (vlo > 0):
                width *= 2.0
                fhi = flo + width
                tries += 1
                if tries > 200:
                    raise ValueError("failed to bracket the unbounded root")
            xtol = 1e-15 * max(1.0, abs(flo))
            root = brentq(mpoly, flo, fhi, xtol=xtol, rtol=8.9e-16, maxiter=200)
        if not (root > flo and (hi is None or root < float(hi))):
            raise ValueError("recovered root is not interior")
        out.append(root)
    return tuple(out)


def moment_map(data: AnsatzData) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Exact affine map sigma -> x: returns (matrix, offset) with
    x = matrix . sigma + offset. The matrix also changes the Killing basis of
    the vertical Gram matrix."""
    ell = data.ell
    mat = []
    off = []
    for j in range(ell):
        rj = data.r[j]
        aj = data.alpha[j]
        sign = Fraction((-1) ** (ell - 1 - j))
        row = []
        for rr in range(1, ell + 1):
            row.append(sign * Fraction((-1) ** rr) * rj * aj ** (ell - 1 - rr))
        mat.append(row)
        off.append(sign * rj * aj ** (ell - 1))
    return mat, off


def sigma_to_x(sigma: Sequence, data: AnsatzData) -> tuple:
    mat, off = moment_map(data)
    out = []
    for j in range(data.ell):
        acc = off[j]
        for rr in range(data.ell):
            acc = acc + mat[j][rr] * sigma[rr]
        out.append(acc)
    return tuple(out)


def x_to_sigma(x: Sequence, data: AnsatzData) -> tuple:
    mat, off = moment_map(data)
    rhs = [x[j] - off[j] for j in range(data.ell)]
    return tuple(solve_linear([row[:] for row in mat], rhs))


def xi_to_x(xi: Sequence, data: AnsatzData) -> tuple:
    """Product form of the moment coordinates: agrees exactly with
    sigma_to_x(xi_to_sigma(xi)) at rational points."""
    ell = data.ell
    out = []
    for j in range(ell):
        prod = Fraction((-1) ** (ell - 1 - j)) * data.r[j] / data.alpha[j]
        for k in range(ell):
            prod = prod * (data.alpha[j] - xi[k])
        out.append(prod)
    return tuple(out)


def x_to_xtilde(x: Sequence, fibers: Sequence[Sequence]) -> tuple:
    from .polytope import fibered_to_joint

    return fibered_to_joint(x, fibers)


def xtilde_to_x(xt: Sequence, data: AnsatzData) -> tuple[tuple, list[tuple]]:
    from .polytope import joint_to_fibered

    return joint_to_fibered(xt, data.mult)


def momenta_pack(x: Sequence, fibers: Sequence[Sequence], data: AnsatzData) -> tuple:
    """Momentum coordinates dual to the full Killing basis: the base moments
    followed, block by block, by the lifted fiber momenta
    (c / (r_j a_j)) x_j fiber_k."""
    out = list(x)
    for j in range(1, data.ell + 1):
        scale = data.hat_factor(j)
        for t in fibers[j - 1]:
            out.append(scale * x[j - 1] * t)
    return tuple(out)


def momenta_unpack(vec: Sequence, data: AnsatzData) -> tuple[tuple, list[tuple]]:
    x = tuple(vec[: data.ell])
    fibers = []
    pos = data.ell
    for j in range(1, data.ell + 1):
        n = data.mult[j - 1]
        scale = data.hat_factor(j)
        block = tuple(vec[pos + k] / (scale * x[j - 1]) for k in range(n))
        fibers.append(block)
        pos += n
    return x, fibers


def _f_poly(data: AnsatzData, j: int) -> list[Fraction]:
    if j < data.ell:
        return list(data.p_coeffs)
    return list(data.f_ell_coeffs)


def gram_weights(xi: Sequence, data: AnsatzData) -> list:
    """Per-root weights theta(xi_j) F_j(xi_j) / (p(xi_j) prod_k (xi_j-xi_k));
    all strictly positive at interior points."""
    ell = data.ell
    out = []
    for j in range(1, ell + 1):
        xj = xi[j - 1]
        delta = 1 if not isinstance(xj, float) else 1.0
        for k in range(ell):
            if k != j - 1:
                delta = delta * (xj - xi[k])
        if delta == 0:
            raise ValueError("coincident xi values")
        theta = peval(list(data.theta_coeffs), xj)
        fj = peval(_f_poly(data, j), xj)
        pj = peval(list(data.p_coeffs), xj)
        out.append(theta * fj / (pj * delta))
    return out


def vertical_gram(xi: Sequence, data: AnsatzData) -> list[list]:
    """Gram matrix of the vertical Killing basis at xi: entry (r, s) is
    sum_j w_j e_{r-1}(xi without j) e_{s-1}(xi without j)."""
    ell = data.ell
    w = gram_weights(xi, data)
    sig = []
    for j in range(ell):
        others = [xi[k] for k in range(ell) if k != j]
        sig.append(elementary_symmetric(others))
    out = [[None] * ell for _ in range(ell)]
    for rr in range(ell):
        for ss in range(ell):
            acc = 0 if not isinstance(w[0], float) else 0.0
            for j in range(ell):
                acc = acc + w[j] * sig[j][rr] * sig[j][ss]
            out[rr][ss] = acc
    return out


def fs_inverse_hessian(fiber: Sequence, r_j) -> list[list]:
    """Inverse Hessian of the projective-space fiber potential at the simplex
    point: (2 / r_j)(diag(fiber) - fiber fiber^T)."""
    n = len(fiber)
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for k in range(n):
            val = -fiber[i] * fiber[k]
            if i == k:
                val = val + fiber[i]
            out[i][k] = 2 * val / r_j
    return out


def full_gram(xi: Sequence, fibers: Sequence[Sequence], data: AnsatzData) -> list[list]:
    """Gram matrix of the full Killing basis (base fields, then lifted fiber
    fields block by block), paired with the momenta of momenta_pack."""
    ell = data.ell
    m = data.m
    mat, _ = moment_map(data)
    hv = vertical_gram(xi, data)
    gxx = [[None] * ell for _ in range(ell)]
    for i in range(ell):
        for j in range(ell):
            acc = 0 if not isinstance(hv[0][0], float) else 0.0
            for rr in range(ell):
                for ss in range(ell):
                    acc = acc + mat[i][rr] * hv[rr][ss] * mat[j][ss]
            gxx[i][j] = acc
    x = xi_to_x(xi, data)
    out = [[None] * m for _ in range(m)]
    for i in range(ell):
        for j in range(ell):
            out[i][j] = gxx[i][j]
    offsets = []
    pos = ell
    for j in range(ell):
        offsets.append(pos)
        pos += data.mult[j]
    for j in range(1, ell + 1):
        scale = data.hat_factor(j)
        base = offsets[j - 1]
        fib = fibers[j - 1]
        for k in range(data.mult[j - 1]):
            for i in range(ell):
                val = scale * fib[k] * gxx[i][j - 1]
                out[i][base + k] = val
                out[base + k][i] = val
    for j in range(1, ell + 1):
        fs = fs_inverse_hessian(fibers[j - 1], data.r[j - 1]) if data.mult[j - 1] else []
        for jp in range(1, ell + 1):
            bj, bjp = offsets[j - 1], offsets[jp - 1]
            for k in range(data.mult[j - 1]):
                for pq in range(data.mult[jp - 1]):
                    val = (
                        data.hat_factor(j)
                        * data.hat_factor(jp)
                        * fibers[j - 1][k]
                        * fibers[jp - 1][pq]
                        * gxx[j - 1][jp - 1]
                    )
                    if j == jp:
                        val = val + data.hat_factor(j) * x[j - 1] * fs[k][pq]
                    out[bj + k][bjp + pq] = val
    return out


def _quad(fn, lo: float, hi: float) -> float:
    from scipy.integrate import quad

    val, err = quad(fn, lo, hi, epsabs=_QUAD_EPS, epsrel=_QUAD_EPS, limit=400)
    if err > _QUAD_CHECK * max(1.0, abs(val)):
        raise ValueError(
            "quadrature did not converge: value %.6g, error estimate %.3g over [%g, %g]"
            % (val, err, lo, hi)
        )
    return val


def far_quad(fn, lo: float, hi: float, split: float = 100.0) -> float:
    """Quadrature robust to very long positive ranges: the near part is
    integrated directly and the far tail through the substitution t = 1/u,
    which compactifies the range. Endpoints must be positive."""
    if hi < lo:
        return -far_quad(fn, hi, lo, split=split)
    if not 0.0 < lo <= hi:
        raise ValueError("need positive endpoints")
    cut = max(split, lo)
    if hi <= cut:
        return _quad(fn, lo, hi)
    head = _quad(fn, lo, cut) if cut > lo else 0.0
    tail = _quad(lambda u: fn(1.0 / u) / u ** 2, 1.0 / hi, 1.0 / cut)
    return head + tail


def _u0_bases(data: AnsatzData) -> list[float]:
    out = []
    intervals = data.xi_intervals()
    for lo, hi in intervals[:-1]:
        out.append(float(lo + hi) / 2.0)
    out.append(1.0)
    return out


def base_potential(xi: Sequence, data: AnsatzData) -> float:
    """Fiber-wise symplectic potential of the vertical metric, computed by
    quadrature from fixed interior base points (interval midpoints, 1 for the
    unbounded interval). The one-variable flat model takes the closed form."""
    if data.flat and data.ell == 1:
        return ell1_flat_base_potential(xi[0], data.alpha[0], base=1.0)
    ell = data.ell
    xif = [float(v) for v in xi]
    theta = [float(v) for v in data.theta_coeffs]
    pc = [1.0]
    for j in range(ell):
        for _ in range(data.mult[j]):
            pc = pmul(pc, [-float(data.alpha[j]), 1.0])
    f_last = [float(v) for v in data.f_ell_coeffs]
    bases = _u0_bases(data)
    total = 0.0
    for j in range(ell):
        def integrand(t: float, j: int = j) -> float:
            prod = 1.0
            for k in range(ell):
                prod *= t - xif[k]
            if j < ell - 1:
                return prod / peval(theta, t)
            return peval(pc, t) * prod / peval(f_last, t)

        total -= _quad(integrand, bases[j], xif[j])
    return total


def fiber_potential(fiber: Sequence, r_j) -> float:
    """Projective-space potential on the open simplex."""
    import math

    s = sum(float(t) for t in fiber)
    acc = (1.0 - s) * math.log(1.0 - s)
    for t in fiber:
        acc += float(t) * math.log(float(t))
    return 0.5 * float(r_j) * acc


def symplectic_potential(xi: Sequence, fibers: Sequence[Sequence], data: AnsatzData) -> float:
    """Full symplectic potential: base part plus the weighted fiber parts."""
    total = base_potential(xi, data)
    x = [float(v) for v in xi_to_x([float(t) for t in xi], data)]
    for j in range(1, data.ell + 1):
        if data.mult[j - 1] == 0:
            continue
        total += float(data.hat_factor(j)) * x[j - 1] * fiber_potential(fibers[j - 1], data.r[j - 1])
    return total


def potential_from_momenta(vec: Sequence, data: AnsatzData) -> float:
    """Symplectic potential as a function of the momentum vector of
    momenta_pack; used for finite-difference Hessian checks."""
    x, fibers = momenta_unpack([float(v) for v in vec], data)
    sigma = x_to_sigma(list(x), data)
    xi = sigma_to_xi([float(s) for s in sigma], data)
    return symplectic_potential(xi, fibers, data)


def flat_kahler_potential(xi: Sequence, data: AnsatzData):
    """Potential of the flat comparison metric: half the gap between the
    first momentum and its value at the vertex."""
    acc = 0
    for v in xi:
        acc = acc + v
    return (acc - sum(data.alpha)) / 2


def kahler_potential(xi: Sequence, data: AnsatzData, lam: float = 1.0) -> float:
    """Invariant potential at xi: the flat part minus half the integral of
    (a t + b) / f_ell from the base point lam to the last coordinate."""
    hf = float(flat_kahler_potential(xi, data))
    if data.flat:
        return hf
    a = float(data.lin_a)
    b = float(data.const_b)
    f_last = [float(v) for v in data.f_ell_coeffs]

    def integrand(t: float) -> float:
        return (a * t + b) / peval(f_last, t)

    return hf - 0.5 * far_quad(integrand, float(lam), float(xi[-1]))


def ell1_flat_base_potential(xi_val, alpha, base=1.0) -> float:
    """Closed form of base_potential for one variable in the flat model:
    minus the integral of (t - xi) / (2 (t - alpha)) from the base point."""
    import math

    xif = float(xi_val)
    al = float(alpha)
    b = float(base)
    return -(0.5 * (xif - b) + 0.5 * (al - xif) * math.log((xif - al) / (b - al)))


@dataclass(frozen=True)
class CalabiProfile:
    """One-parameter scalar-flat profile over a single projective factor:
    profile(x) = (2/r) P(x) / x^n with P the defining polynomial."""

    r: int
    n: int
    alpha: Fraction
    defining_coeffs: tuple[Fraction, ...]

    def value(self, x):
        num = peval(list(self.defining_coeffs), x)
        return 2 * num / (self.r * x ** self.n)

    def derivative(self, x):
        num = peval(list(self.defining_coeffs), x)
        dnum = peval(pderiv(list(self.defining_coeffs)), x)
        return 2 * (dnum * x - self.n * num) / (self.r * x ** (self.n + 1))


def calabi_profile(r: int, n: int, alpha_param) -> CalabiProfile:
    """Scalar-flat profile on the rank-one model: defining polynomial
    x^(n+1) + (r-n-1) alpha^n x + (n-r) alpha^(n+1), vanishing to first order
    at alpha with slope matching the closing condition."""
    if r < 1 or n < 1:
        raise ValueError("need r >= 1 and n >= 1")
    alpha = Fraction(alpha_param)
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    coeffs = [Fraction(0)] * (n + 2)
    coeffs[n + 1] = Fraction(1)
    coeffs[1] = Fraction(r - n - 1) * alpha ** n
    coeffs[0] = Fraction(n - r) * alpha ** (n + 1)
    return CalabiProfile(int(r), int(n), alpha, tuple(coeffs))


def calabi_factored_quotient(profile: CalabiProfile) -> tuple[Fraction, ...]:
    """Exact quotient of the defining polynomial by (x - alpha): equals
    sum_{i<n} x^(n-i) alpha^i + (r - n) alpha^n, certifying positivity of the
    profile beyond alpha."""
    n, alpha, r = profile.n, profile.alpha, profile.r
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    for i in range(1, n):
        coeffs[n - i] = alpha ** i
    coeffs[0] = coeffs[0] + Fraction(r - n) * alpha ** n
    return tuple(coeffs)


def calabi_scal_defect(r: int, n: int, alpha_param) -> list[Fraction]:
    """Exact polynomial coefficients of s_base x^(n-1) - (x^n profile(x))'',
    where s_base = 2 n (n+1) / r; identically zero for the scalar-flat
    profile."""
    prof = calabi_profile(r, n, alpha_param)
    num = pscale(Fraction(2, r), list(prof.defining_coeffs))
    second = pderiv(pderiv(num))
    s_base = Fraction(2 * n * (n + 1), r)
    lead = [Fraction(0)] * n
    lead[n - 1] = s_base
    return ptrim(psub(lead, second))


def vandermonde_power_sum(alpha: Sequence[Fraction], s: int) -> Fraction:
    """sum_j alpha_j^(l-s) / prod_{k != j} (alpha_j - alpha_k)."""
    ell = len(alpha)
    acc = Fraction(0)
    for j in range(ell):
        denom = Fraction(1)
        for k in range(ell):
            if k != j:
                denom *= alpha[j] - alpha[k]
        acc += alpha[j] ** (ell - s) / denom
    return acc


def vandermonde_inverse_sum(alpha: Sequence[Fraction]) -> Fraction:
    """sum_j alpha_j^(-1) / prod_{k != j} (alpha_j - alpha_k)."""
    ell = len(alpha)
    acc = Fraction(0)
    for j in range(ell):
        denom = Fraction(1)
        for k in range(ell):
            if k != j:
                denom *= alpha[j] - alpha[k]
        acc += Fraction(1) / (alpha[j] * denom)
    return acc


def sigma_side_normals(data: AnsatzData) -> list[tuple[Fraction, ...]]:
    """Weighted inward normals of the momentum image in sigma coordinates,
    ordered (sum facet, coordinate facets 1..ell); the moment_map matrix maps
    them to the x-side normals by transpose."""
    ell = data.ell
    out = []
    u0 = [Fraction(0)] * ell
    u0[ell - 1] = data.c0 * Fraction((-1) ** (ell - 1))
    out.append(tuple(u0))
    for j in range(ell):
        cj = Fraction((-1) ** (ell - 1 - j)) * data.r[j]
        row = []
        for rr in range(1, ell + 1):
            row.append(cj * Fraction((-1) ** (rr - 1)) * data.alpha[j] ** (ell - rr))
        out.append(tuple(row))
    return out
