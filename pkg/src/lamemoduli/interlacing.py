"""Structural spectral lemmas: three-chain recurrences and banded matrices.

The determinant recurrence D_{k+3} = s D_{k+2} + c_k D_k of the matrices with
positive first superdiagonal and second subdiagonal splits, after the
substitution x = s^3, into three polynomial chains P, Q, R whose roots are
negative, simple and interlace.  That interlacing is certified here with
exact rational sign evaluations (floating roots only propose separators; a
Sturm-chain fallback isolates roots when the proposal fails).  The matrix
shape checks feed the actual spectral matrices at the square and hexagonal
points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import char_poly
from .mpoly import MPoly, PolyMatrix, Q, UPoly, rat

__all__ = [
    "NonPositiveCoefficient",
    "ShapeViolation",
    "PQRTriple",
    "pqr_recurrence",
    "interlacing_check",
    "jacobi_structure_check",
    "cyclic3_structure_check",
    "tarasov_minors",
    "sturm_root_count",
    "isolate_roots",
]


class NonPositiveCoefficient(ValueError):
    """Recurrence coefficients must be strictly positive."""


class ShapeViolation(ValueError):
    """Matrix does not have the required banded sign pattern."""


@dataclass(frozen=True)
class PQRTriple:
    j: int
    P: UPoly
    Q: UPoly
    R: UPoly
    A: Q | None  # coefficients used to advance from level j-1
    B: Q | None
    C: Q | None


def pqr_recurrence(a_seq, b_seq, c_seq, steps: int) -> list[PQRTriple]:
    """Exact chains P_{j+1} = x R_j + A_j P_j, Q_{j+1} = P_{j+1} + B_j Q_j,
    R_{j+1} = Q_{j+1} + C_j R_j from P_0 = Q_0 = R_0 = 1."""
    a = [rat(v) for v in a_seq]
    b = [rat(v) for v in b_seq]
    c = [rat(v) for v in c_seq]
    if len(a) < steps or len(b) < steps or len(c) < steps:
        raise ValueError("need at least `steps` coefficients in each sequence")
    for v in (*a[:steps], *b[:steps], *c[:steps]):
        if v <= 0:
            raise NonPositiveCoefficient(str(v))
    x = UPoly.from_mpoly(MPoly.var("x"), "x")
    one = UPoly("x", [MPoly.const(1)])
    triples = [PQRTriple(0, one, one, one, None, None, None)]
    p, q, r = one, one, one
    for j in range(steps):
        p = x * r + p.scale(a[j])
        q = p + q.scale(b[j])
        r = q + r.scale(c[j])
        triples.append(PQRTriple(j + 1, p, q, r, a[j], b[j], c[j]))
    return triples


def tarasov_minors(a_seq, b_seq) -> list[UPoly]:
    """Principal minors D_0..D_n of the banded matrix with s on the diagonal,
    a_i on the first superdiagonal (i = 1..n-1) and b_i on the second
    subdiagonal (i = 3..n), via D_{k+3} = s D_{k+2} + c_k D_k."""
    a = [rat(v) for v in a_seq]  # a[0] is a_1
    b = [rat(v) for v in b_seq]  # b[0] is b_1 (entries b_1, b_2 unused)
    n = len(a) + 1
    if len(b) != n:
        raise ValueError("need n-1 superdiagonal and n subdiagonal entries")
    s = UPoly.from_mpoly(MPoly.var("s"), "s")
    minors = [UPoly("s", [MPoly.const(1)]), s, s * s]
    for k in range(0, n - 2):
        c_k = a[k] * a[k + 1] * b[k + 2]
        minors.append(s * minors[k + 2] + minors[k].scale(c_k))
    return minors[: n + 1]


# ---------------------------------------------------------------------------
# exact real-root machinery


def _int_coeffs(f: UPoly) -> list[int]:
    cs = f.rational_coeffs()
    from math import gcd

    lcm = 1
    for c in cs:
        d = int(c.denominator)
        lcm = lcm * d // gcd(lcm, d)
    out = [int(c.numerator) * (lcm // int(c.denominator)) for c in cs]
    g = 0
    for v in out:
        g = gcd(g, abs(v))
    return [v // g for v in out] if g else out


def _poly_eval(cs: list[int], x: Fraction) -> Fraction:
    total = Fraction(0)
    for c in reversed(cs):
        total = total * x + c
    return total


def _eval_sign_at_fraction(cs: list[int], x: Fraction) -> int:
    """Sign of sum c_k x^k using pure integer arithmetic."""
    p, q = x.numerator, x.denominator
    d = len(cs) - 1
    qpow = [1] * (d + 1)
    for k in range(1, d + 1):
        qpow[k] = qpow[k - 1] * q
    acc = 0
    for k in range(d, -1, -1):
        acc = acc * p + cs[k] * qpow[d - k]
    return (acc > 0) - (acc < 0)


def _sturm_chain(cs: list[int]) -> list[list[int]]:
    from math import gcd

    def primitive(v: list[Fraction]) -> list[int]:
        lcm = 1
        for c in v:
            lcm = lcm * c.denominator // gcd(lcm, c.denominator)
        ints = [int(c * lcm) for c in v]
        g = 0
        for c in ints:
            g = gcd(g, abs(c))
        return [c // g for c in ints] if g else ints

    chain = [cs, primitive([Fraction(k * c) for k, c in enumerate(cs)][1:])]
    while len(chain[-1]) > 1:
        a = [Fraction(c) for c in chain[-2]]
        b = chain[-1]
        # remainder of a by b over Q, negated
        while len(a) >= len(b):
            f = a[-1] / b[-1]
            k = len(a) - len(b)
            for i, c in enumerate(b):
                a[i + k] -= f * c
            a.pop()
            while a and a[-1] == 0:
                a.pop()
        if not a:
            break
        chain.append(primitive([-c for c in a]))
    return chain


def _variations(chain: list[list[int]], x: Fraction) -> int:
    signs = []
    for cs in chain:
        s = _eval_sign_at_fraction(cs, x)
        if s:
            signs.append(s)
    return sum(1 for s1, s2 in zip(signs, signs[1:]) if s1 != s2)


def sturm_root_count(f: UPoly, lo, hi) -> int:
    """Number of distinct real roots in (lo, hi]."""
    cs = _int_coeffs(f)
    chain = _sturm_chain(cs)
    return _variations(chain, Fraction(lo)) - _variations(chain, Fraction(hi))


def isolate_roots(f: UPoly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational isolating intervals for all real roots, sorted
    ascending, by Sturm counts and bisection."""
    cs = _int_coeffs(f)
    if len(cs) <= 1:
        return []
    bound = Fraction(1) + max(Fraction(abs(c)) for c in cs[:-1]) / abs(cs[-1])
    chain = _sturm_chain(cs)

    def count(lo: Fraction, hi: Fraction) -> int:
        return _variations(chain, lo) - _variations(chain, hi)

    out = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        k = count(lo, hi)
        if k == 0:
            continue
        if k == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        while _poly_eval(cs, mid) == 0:
            mid = (mid + hi) / 2
        stack.append((lo, mid))
        stack.append((mid, hi))
    return sorted(out)


def _refine(f_cs: list[int], lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    slo = _eval_sign_at_fraction(f_cs, lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = _eval_sign_at_fraction(f_cs, mid)
        if s == 0:
            eps = (hi - lo) / 16
            return (mid - eps, mid + eps)
        if slo != s:
            hi = mid
        else:
            lo, slo = mid, s
    return lo, hi


@dataclass(frozen=True)
class InterlacingReport:
    levels: int
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def interlacing_check(triples: list[PQRTriple]) -> InterlacingReport:
    """Certify, per level j, that all roots are negative and simple and the
    merged chain descends p_k > q_k > r_k > p_{k+1}.

    A floating pre-pass proposes rational separators between consecutive
    roots of the merged sequence; exact sign evaluations then certify that
    each polynomial changes sign exactly inside its own slots.  If the
    proposal fails (clustered roots), exact Sturm isolation takes over.
    """
    violations = []
    for t in triples:
        if t.j == 0:
            continue
        if not _check_level(t):
            violations.append(f"level {t.j}")
    return InterlacingReport(len(triples) - 1, violations)


def _approx_roots(f: UPoly) -> list[float]:
    cs = [float(Fraction(int(c.numerator), int(c.denominator))) for c in f.rational_coeffs()]
    return sorted(np.roots(cs[::-1]).real.tolist())


def _check_level(t: PQRTriple) -> bool:
    j = t.j
    polys = [t.P, t.Q, t.R]
    int_cs = [_int_coeffs(f) for f in polys]
    approx = [_approx_roots(f) for f in polys]
    if any(len(r) != j for r in approx):
        return _check_level_sturm(t)
    # expected descending merge: p1 q1 r1 p2 q2 r2 ... (approx are ascending)
    merged = []
    for k in range(j - 1, -1, -1):
        for which in (0, 1, 2):
            merged.append((approx[which][k], which))
    values = [v for v, _ in merged]
    if any(v >= 0 for v in values) or any(b >= a for a, b in zip(values, values[1:])):
        return _check_level_sturm(t)
    # rational separators strictly between consecutive merged roots
    seps = [Fraction(0)]
    for a, b in zip(values, values[1:]):
        seps.append(Fraction((a + b) / 2).limit_denominator(10**7))
    seps.append(Fraction(int(np.floor(values[-1])) - 1))
    # sign certificates: poly `which` flips across slot i owning its root
    signs = [[_eval_sign_at_fraction(int_cs[w], s) for s in seps] for w in (0, 1, 2)]
    if any(0 in row for row in signs):
        return _check_level_sturm(t)
    for i, (_, owner) in enumerate(merged):
        for which in (0, 1, 2):
            flips = signs[which][i] != signs[which][i + 1]
            if flips != (which == owner):
                return _check_level_sturm(t)
    return True


def _check_level_sturm(t: PQRTriple) -> bool:
    """Exact fallback: full isolation, then pairwise interval comparison."""
    j = t.j
    iso = [isolate_roots(f) for f in (t.P, t.Q, t.R)]
    if any(len(iv) != j for iv in iso):
        return False
    cs = [_int_coeffs(f) for f in (t.P, t.Q, t.R)]
    # refine until all intervals are pairwise disjoint and below zero
    width = Fraction(1, 2)
    for _ in range(200):
        flat = []
        for which in (0, 1, 2):
            for k, (lo, hi) in enumerate(iso[which]):
                flat.append((lo, hi, which, k))
        flat.sort()
        disjoint = all(a[1] < b[0] for a, b in zip(flat, flat[1:]))
        if disjoint and all(hi < 0 for _, hi, _, _ in flat):
            order = [(which, k) for _, _, which, k in flat]
            expected = []
            for k in range(j):  # ascending: r, q, p of each descending rank
                for which in (2, 1, 0):
                    expected.append((which, k))
            return order == expected
        width /= 4
        iso = [
            [_refine(cs[w], lo, hi, width) for lo, hi in iso[w]]
            for w in (0, 1, 2)
        ]
    return False


# ---------------------------------------------------------------------------
# banded matrix structure checks


def _entries_rational(m) -> list[list[Fraction]]:
    if isinstance(m, PolyMatrix):
        return [[Fraction(int(c.numerator), int(c.denominator)) for c in
                 (e.constant_value() for e in row)] for row in m.entries]
    return [[Fraction(v) for v in row] for row in m]


@dataclass(frozen=True)
class StructureReport:
    n: int
    k: int  # power of lambda split off
    reduced_roots: list[complex]
    all_real_simple: bool | None
    all_positive_simple: bool | None


def _charpoly_coeffs(entries: list[list[Fraction]]) -> list[Fraction]:
    pm = PolyMatrix([[MPoly.const(Q(v.numerator, v.denominator)) for v in row] for row in entries])
    cp = char_poly(pm, "lambda")
    return [Fraction(int(c.numerator), int(c.denominator))
            for c in (cc.constant_value() for cc in cp.coeffs)]


def jacobi_structure_check(m) -> StructureReport:
    """Zero-diagonal Jacobi matrix: char poly is lambda^k P(lambda^2) with
    real simple roots."""
    entries = _entries_rational(m)
    n = len(entries)
    for i in range(n):
        for j in range(n):
            on_band = abs(i - j) == 1
            if on_band and entries[i][j] <= 0:
                raise ShapeViolation(f"entry ({i},{j}) must be positive")
            if not on_band and entries[i][j] != 0:
                raise ShapeViolation(f"entry ({i},{j}) must be zero")
    cs = _charpoly_coeffs(entries)
    k = n % 2
    for idx, c in enumerate(cs):
        if (idx - k) % 2 != 0 and c != 0:
            raise ShapeViolation(f"parity violated at coefficient {idx}")
    reduced = [float(cs[k + 2 * t]) for t in range(0, (n - k) // 2 + 1)]
    roots = np.roots(reduced[::-1]) if len(reduced) > 1 else np.array([])
    # matrix spectrum = +-sqrt of P's roots plus k zeros: real and simple
    # exactly when P's roots are positive, real, simple and P(0) != 0
    simple = len(set(np.round(roots, 9))) == len(roots)
    real = bool(np.all(np.abs(roots.imag) < 1e-9)) if len(roots) else True
    positive = bool(np.all(roots.real > 1e-12)) if len(roots) else True
    return StructureReport(n, k, roots.tolist(), real and simple and positive, None)


def cyclic3_structure_check(m) -> StructureReport:
    """Positive first superdiagonal and second subdiagonal: char poly is
    lambda^k P(lambda^3) with k = n mod 3 and P has simple positive roots."""
    entries = _entries_rational(m)
    n = len(entries)
    for i in range(n):
        for j in range(n):
            on_band = (j == i + 1) or (j == i - 2)
            if on_band and entries[i][j] <= 0:
                raise ShapeViolation(f"entry ({i},{j}) must be positive")
            if not on_band and entries[i][j] != 0:
                raise ShapeViolation(f"entry ({i},{j}) must be zero")
    cs = _charpoly_coeffs(entries)
    k = n % 3
    for idx, c in enumerate(cs):
        if (idx - k) % 3 != 0 and c != 0:
            raise ShapeViolation(f"cubic structure violated at coefficient {idx}")
    reduced = [float(cs[k + 3 * t]) for t in range(0, (n - k) // 3 + 1)]
    roots = np.roots(reduced[::-1]) if len(reduced) > 1 else np.array([])
    real = bool(np.all(np.abs(roots.imag) < 1e-9)) if len(roots) else True
    positive = bool(np.all(roots.real > 0)) if len(roots) else True
    simple = len(set(np.round(roots, 9))) == len(roots)
    return StructureReport(n, k, roots.tolist(), None, real and positive and simple)
