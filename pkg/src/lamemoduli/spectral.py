"""Spectral polynomials of the Lame equation and their covering identities.

Component I is the characteristic polynomial of the symmetric-kind operator
in the g2,g3 frame.  Component II multiplies the three asymmetric-kind
characteristic polynomials in the root frame and pushes the symmetric
coefficients down to g2,g3.  The Legendre-frame polynomials H_m^j are
characteristic polynomials in B over Q[a]; composing with the covering maps
(B,a) -> (lambda,g2,g3) must reproduce the spectral polynomials exactly, and
that identity is checked verbatim here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import (
    char_poly,
    primitive_normalize,
    reduce_on_slice,
    restrict_to_slice,
    weighted_degree,
)
from .mpoly import MPoly, NEG_INF, Q, UPoly, rat
from .operators import (
    build_operator,
    legendre_component_subsets,
    legendre_frame,
    weierstrass_e_frame,
    weierstrass_g_frame,
)

__all__ = [
    "ComponentAbsent",
    "IdentityFailed",
    "NoRationalEigenvalue",
    "RootIsolationFailed",
    "SpectralPolynomial",
    "LegendrePolynomial",
    "CoverMaps",
    "degree_I",
    "degree_II",
    "spectral_F",
    "spectral_H",
    "cover_maps",
    "verify_cover_identity",
    "s3_invariance_check",
    "lame_residual",
    "bethe_residual",
    "real_spectrum_check",
    "rational_eigenvalues",
]

WEIGHTS = {"lambda": 1, "g2": 2, "g3": 3}


class ComponentAbsent(ValueError):
    """The requested (m, component) pair does not exist."""


class IdentityFailed(AssertionError):
    """An exact polynomial identity did not hold."""


class NoRationalEigenvalue(Exception):
    """Informative: the operator has no rational eigenvalue at this point."""


class RootIsolationFailed(RuntimeError):
    """Numeric zeros of Q collide beyond tolerance."""


def degree_I(m: int) -> int:
    return m // 2 + 1 if m % 2 == 0 else (m - 1) // 2


def degree_II(m: int) -> int:
    return 3 * ((m + 1) // 2)


@dataclass(frozen=True)
class SpectralPolynomial:
    m: int
    component: str  # "I" or "II"
    poly: UPoly  # monic in lambda over Q[g2,g3]
    primitive: UPoly  # integer-primitive scaling

    @property
    def degree(self) -> int:
        d = self.poly.degree()
        return 0 if d is NEG_INF else int(d)


@dataclass(frozen=True)
class LegendrePolynomial:
    m: int
    j: int
    subset: tuple[int, ...]
    poly: UPoly  # monic in B over Q[a]
    primitive: UPoly

    @property
    def degree(self) -> int:
        return int(self.poly.degree())


@lru_cache(maxsize=None)
def spectral_F(m: int, component: str) -> SpectralPolynomial:
    """The spectral polynomial F_m^I or F_m^II, monic in lambda."""
    if component not in ("I", "II"):
        raise ValueError(f"component must be 'I' or 'II', got {component!r}")
    if m < 0:
        raise ComponentAbsent("m must be non-negative")
    if component == "II" and m < 1:
        raise ComponentAbsent("component II starts at m = 1")
    if component == "I":
        if m == 1:
            # empty factor: no symmetric-kind solutions at m = 1
            poly = UPoly("lambda", [MPoly.const(1)])
            return SpectralPolynomial(m, "I", poly, poly)
        subset = () if m % 2 == 0 else (0, 1, 2)
        op = build_operator(weierstrass_g_frame(), subset, m)
        poly = char_poly(op.matrix, "lambda")
        return SpectralPolynomial(m, "I", poly, primitive_normalize(poly))
    subsets = [(0,), (1,), (2,)] if m % 2 == 1 else [(0, 1), (0, 2), (1, 2)]
    frame = weierstrass_e_frame()
    prod = None
    for s in subsets:
        op = build_operator(frame, s, m)
        cp = char_poly(op.matrix, "lambda")
        sliced = UPoly("lambda", [restrict_to_slice(c) for c in cp.coeffs])
        prod = sliced if prod is None else prod * sliced
    poly = UPoly("lambda", [reduce_on_slice(c) for c in prod.coeffs])
    return SpectralPolynomial(m, "II", poly, primitive_normalize(poly))


@lru_cache(maxsize=None)
def spectral_H(m: int, j: int) -> LegendrePolynomial:
    """The Legendre-frame polynomial H_m^j, monic in B over Q[a]."""
    if j not in (0, 1, 2, 3):
        raise ValueError("j must be in 0..3")
    subsets = legendre_component_subsets(m)
    subset = subsets[j]
    if m < len(subset):
        raise ComponentAbsent(f"(m={m}, j={j}) needs m >= {len(subset)}")
    op = build_operator(legendre_frame(), subset, m)
    poly = char_poly(op.matrix, "B")
    return LegendrePolynomial(m, j, subset, poly, primitive_normalize(poly))


@dataclass(frozen=True)
class CoverMaps:
    """The maps (B,a) -> (lambda, g2, g3) identifying the two frames."""

    m: int
    r1: MPoly  # lambda = B + m(m+1)(a+1)/3
    r2: MPoly  # g2 = 4(a^2-a+1)/3
    r3: MPoly  # g3 = (8a^3 - 12a^2 - 12a + 8)/27

    def delta(self) -> MPoly:
        return self.r2**3 - 27 * self.r3**2


def cover_maps(m: int) -> CoverMaps:
    a = MPoly.var("a")
    b = MPoly.var("B")
    r1 = b + (a + 1) * rat(m * (m + 1), 3)
    r2 = (a**2 - a + 1) * rat(4, 3)
    r3 = (8 * a**3 - 12 * a**2 - 12 * a + 8) * rat(1, 27)
    cm = CoverMaps(m, r1, r2, r3)
    # discriminant of the Legendre cubic: 16 a^2 (a-1)^2
    assert cm.delta() == 16 * a**2 * (a - 1) ** 2
    return cm


@dataclass(frozen=True)
class CoverIdentityReport:
    m: int
    holds_I: bool
    holds_II: bool


def verify_cover_identity(m: int) -> CoverIdentityReport:
    """F_m^I(R1,R2,R3) = H_m^0 and F_m^II o R = H^1 H^2 H^3, exactly."""
    if m < 0:
        raise ValueError("m must be non-negative")
    cm = cover_maps(m)
    subs = {"lambda": cm.r1, "g2": cm.r2, "g3": cm.r3}

    holds_i = holds_ii = True
    if m != 1:  # component I is an empty factor at m = 1
        lhs = spectral_F(m, "I").poly.to_mpoly().subs(subs)
        rhs = spectral_H(m, 0).poly.to_mpoly()
        diff = lhs - rhs
        if not diff.is_zero():
            raise IdentityFailed(f"component I at m={m}: difference {diff}")
    if m >= 1:
        lhs = spectral_F(m, "II").poly.to_mpoly().subs(subs)
        rhs = MPoly.const(1)
        for j in (1, 2, 3):
            rhs = rhs * spectral_H(m, j).poly.to_mpoly()
        diff = lhs - rhs
        if not diff.is_zero():
            raise IdentityFailed(f"component II at m={m}: difference {diff}")
    return CoverIdentityReport(m, holds_i, holds_ii)


# ---------------------------------------------------------------------------
# S3 action on the Legendre frame


def _transform_negate(poly: MPoly, m: int) -> MPoly:
    """(B,a) -> (-B - m(m+1), 1 - a)."""
    b = MPoly.var("B")
    a = MPoly.var("a")
    return poly.subs({"B": -b - m * (m + 1), "a": 1 - a})


def _transform_invert(poly: MPoly) -> MPoly:
    """a^deg * poly(B/a, 1/a); needs total degree <= B-degree."""
    d = poly.degree_in("B")
    if d is NEG_INF:
        raise ValueError("constant polynomial")
    d = int(d)
    ib = poly.vars.index("B") if "B" in poly.vars else None
    ia = poly.vars.index("a") if "a" in poly.vars else None
    terms = {}
    for exps, c in poly.terms.items():
        p = exps[ib] if ib is not None else 0
        q = exps[ia] if ia is not None else 0
        rest = d - p - q
        if rest < 0:
            raise ValueError("total degree exceeds B-degree")
        terms[(p, q + rest)] = c
    out = MPoly(("B", "a"), {})
    for (p, aa), c in terms.items():
        out = out + MPoly(("B", "a"), {(p, aa): c})
    return out


def _match_sign(candidate: MPoly, targets: dict[int, MPoly]) -> tuple[int, int]:
    for j, t in targets.items():
        if candidate == t:
            return j, +1
        if candidate == -t:
            return j, -1
    raise IdentityFailed(f"no match for {candidate}")


@dataclass(frozen=True)
class S3InvarianceReport:
    m: int
    j: int
    negate_target: int
    negate_sign: int
    invert_target: int
    invert_sign: int


def s3_invariance_check(m: int, j: int) -> S3InvarianceReport:
    """Action of the two generators on H_m^j.

    For j=0 both generators fix the polynomial up to sign; for j in 1..3 they
    permute the three components.  Returns which target each generator maps
    H^j to, with the sign.
    """
    h = spectral_H(m, j).poly.to_mpoly()
    if j == 0:
        targets = {0: h}
    else:
        targets = {k: spectral_H(m, k).poly.to_mpoly() for k in (1, 2, 3)}
    neg_j, neg_sign = _match_sign(_transform_negate(h, m), targets)
    inv_j, inv_sign = _match_sign(_transform_invert(h), targets)
    return S3InvarianceReport(m, j, neg_j, neg_sign, inv_j, inv_sign)


# ---------------------------------------------------------------------------
# residual checks


def rational_eigenvalues(matrix_entries: list[list[Q]]) -> list[Q]:
    """Exact rational eigenvalues of a rational matrix.

    Numeric roots of the characteristic polynomial are rationalized with
    bounded denominators and then verified exactly.
    """
    from .mpoly import PolyMatrix
    import numpy as np

    n = len(matrix_entries)
    pm = PolyMatrix([[MPoly.const(e) for e in row] for row in matrix_entries])
    cp = char_poly(pm, "lambda")
    coeffs = [c.constant_value() for c in cp.coeffs]  # low to high
    arr = np.array([float(Fraction(int(c.numerator), int(c.denominator))) for c in coeffs][::-1])
    roots = np.roots(arr) if n else []
    found: list[Q] = []
    for r in roots:
        if abs(r.imag) > 1e-6:
            continue
        cand = Fraction(r.real).limit_denominator(10**8)
        val = Q(0)
        x = Q(cand.numerator, cand.denominator)
        for c in reversed(coeffs):
            val = val * x + c
        if val == 0 and x not in found:
            found.append(x)
    return sorted(found)


def _kernel_vector(entries: list[list[Q]]) -> list[Q]:
    """One nonzero kernel vector of a singular rational matrix."""
    n = len(entries)
    a = [row[:] for row in entries]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c]
        a[r] = [v / inv for v in a[r]]
        for i in range(n):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    free = [c for c in range(n) if c not in pivots]
    if not free:
        raise ValueError("matrix is nonsingular")
    f0 = free[0]
    vec = [Q(0)] * n
    vec[f0] = Q(1)
    for row_i, c in enumerate(pivots):
        vec[c] = -a[row_i][f0]
    return vec


@dataclass(frozen=True)
class ResidualEntry:
    eigenvalue: Q
    residual_zero: bool
    residual: MPoly


def lame_residual(m: int, subset, g2=None, g3=None, e_values=None) -> list[ResidualEntry]:
    """Exact check of the second-order equation for every rational eigenvalue.

    Either (g2, g3) or three distinct rational e-values must be given.  The
    solution w = Q * sigma^(1/2) with sigma = prod_{t in S}(x - t) is pushed
    through P w'' + (P'/2) w' - (m(m+1)x + lambda) w and the polynomial
    remainder (cleared of half-integer powers) must vanish identically.
    """
    s = tuple(sorted(set(subset)))
    if e_values is not None:
        ev = [rat(v) for v in e_values]
        if len(set(ev)) != 3:
            raise ValueError("e-values must be distinct")
        frame = weierstrass_e_frame(ev)
        roots = [MPoly.const(v) for v in ev]
    else:
        if g2 is None or g3 is None:
            raise ValueError("need g2,g3 or e_values")
        g2, g3 = rat(g2), rat(g3)
        if g2**3 - 27 * g3**2 == 0:
            raise ValueError("discriminant vanishes")
        if s not in ((), (0, 1, 2)):
            raise ValueError("one/two-root subsets need e_values")
        frame = weierstrass_g_frame(g2, g3)
        roots = None
    op = build_operator(frame, s, m)
    entries = op.matrix.rational_entries()
    eigs = rational_eigenvalues(entries)
    if not eigs:
        raise NoRationalEigenvalue(f"no rational eigenvalue for m={m}, S={s}")

    x = MPoly.var("x")
    P = frame.P
    dP = P.derivative("x")
    if roots is not None:
        sigma = MPoly.const(1)
        for t in s:
            sigma = sigma * (x - roots[t])
    else:
        sigma = MPoly.const(1) if not s else P * rat(1, 4)
    dsigma = sigma.derivative("x")
    d2sigma = dsigma.derivative("x")

    out = []
    n = op.n
    for lam in eigs:
        shifted = [
            [entries[i][j] - (lam if i == j else 0) for j in range(n + 1)]
            for i in range(n + 1)
        ]
        vec = _kernel_vector(shifted)
        qpoly = MPoly()
        for k, c in enumerate(vec):
            if c != 0:
                qpoly = qpoly + MPoly.var("x", k) * c if k else qpoly + MPoly.const(c)
        dq = qpoly.derivative("x")
        d2q = dq.derivative("x")
        u = dq * sigma + qpoly * dsigma * rat(1, 2)
        du = d2q * sigma + dq * dsigma * rat(3, 2) + qpoly * d2sigma * rat(1, 2)
        residual = (
            P * (sigma * du - dsigma * u * rat(1, 2))
            + dP * rat(1, 2) * sigma * u
            - (m * (m + 1) * x + lam) * qpoly * sigma * sigma
        )
        out.append(ResidualEntry(lam, residual.is_zero(), residual))
    return out


def bethe_residual(m: int, subset, e_values, precision: int = 50) -> float:
    """Max residual of the interior-zero system at the numeric eigenvectors.

    For every eigenvector, the zeros zeta_k of Q are extracted and
    2 sum_{j != k} 1/(zeta_k - zeta_j) + sum_j (k_j + 1/2)/(zeta_k - e_j)
    is evaluated; the largest magnitude over all k and all eigenvectors is
    returned.  Vacuously 0.0 when n = 0.
    """
    import mpmath as mp

    s = tuple(sorted(set(subset)))
    ev = [rat(v) for v in e_values]
    if len(set(ev)) != 3:
        raise ValueError("e-values must be distinct")
    op = build_operator(weierstrass_e_frame(ev), s, m)
    if op.n == 0:
        return 0.0
    kexp = [1 if i in s else 0 for i in range(3)]
    with mp.workdps(precision):
        mat = mp.matrix(
            [[mp.mpq(int(c.numerator), int(c.denominator)) for c in row]
             for row in op.matrix.rational_entries()]
        )
        eigvals, eigvecs = mp.eig(mat)
        emp = [mp.mpf(int(v.numerator)) / mp.mpf(int(v.denominator)) for v in ev]
        worst = mp.mpf(0)
        for idx in range(len(eigvals)):
            coeffs = [eigvecs[i, idx] for i in range(op.n + 1)]
            # strip numerically-zero leading coefficients
            scale = max(abs(c) for c in coeffs)
            while coeffs and abs(coeffs[-1]) < scale * mp.mpf(10) ** (-precision // 2):
                coeffs.pop()
            if len(coeffs) <= 1:
                continue
            zeros = mp.polyroots(list(reversed(coeffs)), maxsteps=200, extraprec=precision * 4)
            for i in range(len(zeros)):
                for j in range(i + 1, len(zeros)):
                    if abs(zeros[i] - zeros[j]) < mp.mpf(10) ** (-precision // 4):
                        raise RootIsolationFailed(f"zeros collide: {zeros}")
            for k, zk in enumerate(zeros):
                total = mp.mpf(0)
                for j, zj in enumerate(zeros):
                    if j != k:
                        total += 2 / (zk - zj)
                for j in range(3):
                    total += (kexp[j] + mp.mpf(1) / 2) / (zk - emp[j])
                worst = max(worst, abs(total))
        return float(worst)


@dataclass(frozen=True)
class RealSpectrumReport:
    m: int
    count: int
    all_real: bool
    all_simple: bool
    max_imag: float
    min_gap: float


def real_spectrum_check(m: int, g2, g3, imag_tol: float = 1e-8, gap_tol: float = 1e-8) -> RealSpectrumReport:
    """All 2m+1 roots of F_m^I * F_m^II at real (g2,g3) with positive
    discriminant must be real and simple."""
    import numpy as np

    g2f, g3f = float(g2), float(g3)
    if g2f**3 - 27 * g3f**2 <= 0:
        raise ValueError("needs positive discriminant")
    roots = []
    for comp in ("I", "II"):
        if comp == "II" and m < 1:
            continue
        sp = spectral_F(m, comp)
        if sp.degree == 0:
            continue
        cs = [c.eval_numeric({"g2": g2f, "g3": g3f}).real for c in sp.poly.coeffs]
        roots.extend(np.roots(np.array(cs[::-1])))
    roots = np.array(roots)
    max_imag = float(np.max(np.abs(roots.imag))) if len(roots) else 0.0
    reals = np.sort(roots.real)
    min_gap = float(np.min(np.diff(reals))) if len(reals) > 1 else float("inf")
    return RealSpectrumReport(
        m,
        len(roots),
        max_imag < imag_tol,
        min_gap > gap_tol,
        max_imag,
        min_gap,
    )
