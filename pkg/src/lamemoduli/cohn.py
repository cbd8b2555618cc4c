"""Exact discriminants of spectral polynomials and Cohn polynomials C(J).

The lambda-discriminant of a spectral component is quasi-homogeneous in
(g2,g3), so its zero locus descends to the J-line.  The pipeline strips the
monomial and Delta factors, rewrites the reduced part in u = g2^3, v = g3^2,
and maps each squarefree factor of R(u,1) through u = 27J/(J-1).  The J = 0
factor J^ceil(alpha/3) accounts for the zero of order alpha at g2 = 0.
Degrees are compared against both closed-form candidates.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import discriminant, squarefree_decompose, weighted_degree
from .mpoly import MPoly, Q, UPoly, rat
from .spectral import SpectralPolynomial, spectral_F
from .topology import degree_I, degree_II

__all__ = [
    "StructureViolation",
    "CohnResult",
    "cohn_polynomial",
    "cohn_degree_check",
]


class StructureViolation(AssertionError):
    """The discriminant's exponents violate the mod-3 / mod-2 structure."""


DELTA = MPoly.var("g2") ** 3 - 27 * MPoly.var("g3") ** 2
WEIGHTS = {"g2": 2, "g3": 3}


@dataclass(frozen=True)
class CohnResult:
    m: int
    component: str
    disc: MPoly
    delta_multiplicity: int  # c
    alpha: int  # power of g2 stripped
    beta: int  # power of g3 stripped
    beta_nonzero: bool
    reduced: MPoly  # R(u, v), homogeneous
    cohn: UPoly  # monic C(J)
    cohn_primitive: UPoly
    degree: int
    expected_degree: int
    expected_degree_claimed: int

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "component": self.component,
            "disc": str(self.disc),
            "c": self.delta_multiplicity,
            "alpha": self.alpha,
            "beta": self.beta,
            "reduced": str(self.reduced),
            "cohn": str(self.cohn.to_mpoly()),
            "cohn_primitive": str(self.cohn_primitive.to_mpoly()),
            "degree": self.degree,
            "expected_degree": self.expected_degree,
            "expected_degree_claimed": self.expected_degree_claimed,
        }


def _strip_variable(poly: MPoly, name: str) -> tuple[MPoly, int]:
    if name not in poly.vars or poly.is_zero():
        return poly, 0
    i = poly.vars.index(name)
    k = min(exps[i] for exps in poly.terms)
    if k == 0:
        return poly, 0
    terms = {exps[:i] + (exps[i] - k,) + exps[i + 1:]: c for exps, c in poly.terms.items()}
    return MPoly(poly.vars, terms)._compress(), k


def _strip_delta(poly: MPoly) -> tuple[MPoly, int]:
    from .mpoly import NonDivisible

    c = 0
    while True:
        try:
            poly = poly.exact_div(DELTA)
            c += 1
        except NonDivisible:
            return poly, c


def _to_uv(poly: MPoly) -> MPoly:
    """Rewrite g2^(3i) g3^(2j) monomials as u^i v^j."""
    ig2 = poly.vars.index("g2") if "g2" in poly.vars else None
    ig3 = poly.vars.index("g3") if "g3" in poly.vars else None
    out = MPoly()
    for exps, c in poly.terms.items():
        a = exps[ig2] if ig2 is not None else 0
        b = exps[ig3] if ig3 is not None else 0
        if a % 3 or b % 2:
            raise StructureViolation(f"exponents (g2^{a}, g3^{b}) not (0 mod 3, 0 mod 2)")
        out = out + MPoly(("u", "v"), {(a // 3, b // 2): c})
    return out


def _factor_to_J(h: UPoly, mult: int) -> UPoly:
    """Map a squarefree factor h(u) to (J-1)^t h(27J/(J-1)) / 27^t."""
    t = int(h.degree())
    cs = h.rational_coeffs()
    jvar = MPoly.var("J")
    total = MPoly()
    for k, c in enumerate(cs):
        if c == 0:
            continue
        term = MPoly.const(c) * ((27 * jvar) ** k) * ((jvar - 1) ** (t - k))
        total = total + term
    total = total / rat(27) ** t
    out = UPoly.from_mpoly(total, "J")
    assert int(out.degree()) == t, "factor has a root at u = 27 (Delta not fully stripped)"
    return out


def cohn_polynomial(sp: SpectralPolynomial) -> CohnResult:
    """Cohn polynomial of one spectral component, with degree bookkeeping."""
    d = sp.degree
    if d < 2:
        raise ValueError("degree-1 factors have constant Cohn polynomial")
    disc = discriminant(sp.poly)
    w = weighted_degree(disc, WEIGHTS)
    if w != d * (d - 1):
        raise StructureViolation(f"disc weight {w} != d(d-1) = {d*(d-1)}")
    body, alpha = _strip_variable(disc, "g2")
    body, beta = _strip_variable(body, "g3")
    body, c = _strip_delta(body)
    reduced = _to_uv(body)
    u_poly = UPoly.from_mpoly(reduced.subs({"v": MPoly.const(1)}), "u")
    factors = squarefree_decompose(u_poly)
    jvar = MPoly.var("J")
    cohn = UPoly.from_mpoly(jvar ** ((alpha + 2) // 3) if alpha else MPoly.const(1), "J")
    for h, mult in factors:
        hj = _factor_to_J(h, mult)
        for _ in range(mult):
            cohn = cohn * hj
    # monic normalization over Q
    lead = cohn.leading_coeff().constant_value()
    cohn = cohn.scale(Q(1) / lead)
    from .algebra import primitive_normalize

    deg = int(cohn.degree())
    if sp.component == "I":
        expected = (d * d - d + 4) // 6
        claimed = expected
    else:
        expected = (d // 3) * (d // 3 - 1) // 2
        claimed = d * (d - 1) // 2
    return CohnResult(
        m=sp.m,
        component=sp.component,
        disc=disc,
        delta_multiplicity=c,
        alpha=alpha,
        beta=beta,
        beta_nonzero=beta > 0,
        reduced=reduced,
        cohn=cohn,
        cohn_primitive=primitive_normalize(cohn),
        degree=deg,
        expected_degree=expected,
        expected_degree_claimed=claimed,
    )


@dataclass(frozen=True)
class CohnDegreeReport:
    results: dict
    mismatches: list[str]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def cohn_degree_check(max_m_I: int = 8, max_m_II: int = 6) -> CohnDegreeReport:
    """Exact Cohn degrees against the closed forms.

    Component I runs 2 <= m <= max_m_I against floor((d^2-d+4)/6); component
    II runs 1 <= m <= max_m_II against (d/3)(d/3-1)/2, with the alternative
    closed form d(d-1)/2 reported alongside.
    """
    results = {}
    mismatches = []
    for m in range(2, max_m_I + 1):
        d = degree_I(m)
        expected = (d * d - d + 4) // 6
        if d < 2:
            got = 0
        else:
            res = cohn_polynomial(spectral_F(m, "I"))
            results[(m, "I")] = res
            got = res.degree
        if got != expected:
            mismatches.append(f"({m},I): degree {got} != {expected}")
    for m in range(1, max_m_II + 1):
        d = degree_II(m)
        res = cohn_polynomial(spectral_F(m, "II"))
        results[(m, "II")] = res
        expected = (d // 3) * (d // 3 - 1) // 2
        if res.degree != expected:
            mismatches.append(f"({m},II): degree {res.degree} != {expected}")
    return CohnDegreeReport(results, mismatches)
