"""Finite-dimensional operator matrices for the four kinds of Lame functions.

A solution whose square is a degree-m polynomial factors as a half-integer
power attached to a subset S of the three roots of the cubic, times an
ordinary polynomial Q of degree n = (m - |S|)/2.  Conjugating the second
order equation by that half-integer factor leaves a polynomial operator

    Q  |->  A Q'' + Bc Q' + C0 Q

which preserves the space of polynomials of degree <= n; its matrix in the
monomial basis is what the spectral module takes characteristic polynomials
of.  Three symbolic frames are supported (Weierstrass with g2,g3; Weierstrass
with roots e1,e2,e3; Legendre with roots 0,1,a) plus numeric instances of the
same shapes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .mpoly import MPoly, PolyMatrix, rat

__all__ = [
    "CubicFrame",
    "OperatorMatrix",
    "ParityMismatch",
    "UnsupportedKind",
    "build_operator",
    "legendre_component_subsets",
    "legendre_frame",
    "weierstrass_e_frame",
    "weierstrass_g_frame",
    "ALT_EVEN_SUBSETS",
]


class ParityMismatch(ValueError):
    """m and |S| must have the same parity with m >= |S|."""


class UnsupportedKind(ValueError):
    """The g2,g3 frame only supports the two symmetric kinds (S empty or full)."""


@dataclass(frozen=True)
class CubicFrame:
    """A cubic P(x) = 4*(x-r1)(x-r2)(x-r3) with optional root expressions.

    ``roots`` is None exactly in the g2,g3 frame, where the roots are not
    polynomial expressions.  ``eigen_var`` names the accessory parameter the
    eigenvalue equation is written in.
    """

    kind: str
    variable: str
    P: MPoly
    roots: tuple[MPoly, ...] | None
    eigen_var: str

    def __post_init__(self):
        if self.roots is not None:
            x = MPoly.var(self.variable)
            prod = MPoly.const(4)
            for r in self.roots:
                prod = prod * (x - r)
            if prod != self.P:
                raise ValueError("P does not equal 4 * prod(x - root)")


def weierstrass_g_frame(g2=None, g3=None) -> CubicFrame:
    """4x^3 - g2 x - g3, symbolic by default, numeric if values are given."""
    x = MPoly.var("x")
    g2p = MPoly.var("g2") if g2 is None else MPoly.const(g2)
    g3p = MPoly.var("g3") if g3 is None else MPoly.const(g3)
    return CubicFrame("weierstrass-g", "x", 4 * x**3 - g2p * x - g3p, None, "lambda")


def weierstrass_e_frame(e_values=None) -> CubicFrame:
    """4(x-e1)(x-e2)(x-e3), symbolic roots by default or three rationals."""
    x = MPoly.var("x")
    if e_values is None:
        roots = tuple(MPoly.var(v) for v in ("e1", "e2", "e3"))
    else:
        roots = tuple(MPoly.const(v) for v in e_values)
    prod = MPoly.const(4)
    for r in roots:
        prod = prod * (x - r)
    return CubicFrame("weierstrass-e", "x", prod, roots, "lambda")


def legendre_frame(a=None) -> CubicFrame:
    """4z(z-1)(z-a) with accessory parameter B."""
    z = MPoly.var("z")
    ap = MPoly.var("a") if a is None else MPoly.const(a)
    roots = (MPoly(), MPoly.const(1), ap)
    P = 4 * z * (z - 1) * (z - ap)
    return CubicFrame("legendre", "z", P, roots, "B")


@dataclass(frozen=True)
class OperatorMatrix:
    """The conjugated operator restricted to polynomials of degree <= n."""

    frame: CubicFrame
    m: int
    subset: tuple[int, ...]
    n: int
    A: MPoly
    Bc: MPoly
    C0: MPoly
    matrix: PolyMatrix

    @property
    def eigen_var(self) -> str:
        return self.frame.eigen_var


def build_operator(frame: CubicFrame, subset, m: int) -> OperatorMatrix:
    """Assemble the operator matrix for root subset ``subset`` and degree m.

    ``subset`` is a collection of root indices in {0,1,2}.  Coefficients:
    Bc = sum_t P_t + P'/2 and C0 = sum_t P_t'/4 + (1/4) sum_{t != r} P_{t,r}
    - m(m+1) x, where P_t = P/(x-t) and P_{t,r} = P/((x-t)(x-r)), all exact
    divisions.  In the g2,g3 frame the symmetric kinds reduce to derivative
    identities (sum_t P_t = P', sum_{t,r} P_{t,r} = P'') so no roots are
    needed.
    """
    s = tuple(sorted(set(subset)))
    if any(i not in (0, 1, 2) for i in s):
        raise ValueError(f"bad root indices {s}")
    if m < len(s) or (m - len(s)) % 2:
        raise ParityMismatch(f"m={m} incompatible with |S|={len(s)}")
    x = MPoly.var(frame.variable)
    P = frame.P
    dP = P.derivative(frame.variable)
    if frame.roots is None:
        if len(s) == 0:
            bc = dP * rat("1/2")
            c0 = -m * (m + 1) * x
        elif len(s) == 3:
            bc = dP * rat("3/2")
            c0 = dP.derivative(frame.variable) * rat("1/2") - m * (m + 1) * x
        else:
            raise UnsupportedKind("one- and two-root kinds need root expressions")
    else:
        roots = frame.roots
        p_parts = {t: P.exact_div(x - roots[t]) for t in s}
        bc = dP * rat("1/2")
        for t in s:
            bc = bc + p_parts[t]
        c0 = -m * (m + 1) * x
        for t in s:
            c0 = c0 + p_parts[t].derivative(frame.variable) * rat("1/4")
        for t in s:
            for r in s:
                if t != r:
                    c0 = c0 + p_parts[t].exact_div(x - roots[r]) * rat("1/4")
    n = (m - len(s)) // 2
    columns = []
    for j in range(n + 1):
        xj = MPoly.var(frame.variable, j) if j else MPoly.const(1)
        image = c0 * xj
        if j >= 1:
            image = image + bc * j * (MPoly.var(frame.variable, j - 1) if j > 1 else MPoly.const(1))
        if j >= 2:
            image = image + P * (j * (j - 1)) * MPoly.var(frame.variable, j - 2)
        columns.append(_coeffs_in(image, frame.variable, n))
    entries = [[columns[j][i] for j in range(n + 1)] for i in range(n + 1)]
    matrix = PolyMatrix(entries)
    if frame.kind == "legendre":
        for row in matrix.entries:
            for e in row:
                for c in e.coefficients():
                    if int(c.denominator) != 1:
                        raise AssertionError(f"non-integer entry {e} in Legendre frame")
    return OperatorMatrix(frame, m, s, n, P, bc, c0, matrix)


def _coeffs_in(poly: MPoly, var: str, n: int) -> list[MPoly]:
    """Coefficients in ``var`` for powers 0..n; higher powers must vanish."""
    from .mpoly import UPoly

    up = UPoly.from_mpoly(poly, var)
    deg = up.degree()
    if deg != float("-inf") and int(deg) > n:
        raise AssertionError(
            f"operator does not preserve degree <= {n}: overflow {up[int(deg)]}"
        )
    return [up[i] for i in range(n + 1)]


# Component labels j in {0,1,2,3} mapped to root subsets of (0,1,a).
#
# For odd m the three half-integer kinds follow the root order (0, 1, a).
# For even m two conventions circulate for labelling the pair kinds; the one
# used here is calibrated so that j=1 reproduces the classical H_m^1 tables
# shipped in golden/ (subset {0,1} gives B + 4a + 1 at m=2).  The alternative
# convention (pair complementary to root j) is kept for reference.
EVEN_SUBSETS = {0: (), 1: (0, 1), 2: (0, 2), 3: (1, 2)}
ALT_EVEN_SUBSETS = {0: (), 1: (1, 2), 2: (0, 2), 3: (0, 1)}
ODD_SUBSETS = {0: (0, 1, 2), 1: (0,), 2: (1,), 3: (2,)}


def legendre_component_subsets(m: int) -> dict[int, tuple[int, ...]]:
    """Root-index subsets of the Legendre frame for components j = 0..3."""
    if m < 0:
        raise ValueError("m must be non-negative")
    return dict(EVEN_SUBSETS if m % 2 == 0 else ODD_SUBSETS)
