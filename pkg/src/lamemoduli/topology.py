"""Closed-form topological invariants of the two moduli components.

Everything here is exact integer/rational arithmetic in m: degrees of the
forgetful map, orbifold data, Euler characteristics, genera, puncture counts,
ramification profiles over the three special J-values, and the degree
bookkeeping for Cohn polynomials.  The reference tables for m <= 13 ship as
golden fixtures and `table_crosscheck` compares every field against them.
"""

from __future__ import annotations

from dataclasses import dataclass, field, asdict
from fractions import Fraction

__all__ = [
    "ComponentAbsent",
    "TopologyReport",
    "degree_I",
    "degree_II",
    "epsilons",
    "invariants",
    "table_crosscheck",
    "genus_degree_check_H",
    "ramification_profile",
]


class ComponentAbsent(ValueError):
    """(0,II) and (1,I) do not exist."""


def degree_I(m: int) -> int:
    return m // 2 + 1 if m % 2 == 0 else (m - 1) // 2


def degree_II(m: int) -> int:
    return 3 * ((m + 1) // 2)


def epsilons(m: int) -> tuple[int, int, int]:
    """(eps0, eps1, eps2): order-3 point present, order-2 point on component I,
    corner faces on component I."""
    eps0 = 0 if m % 3 == 1 else 1
    eps1 = 0 if m % 4 in (1, 2) else 1
    eps2 = 1 if m % 2 == 0 else 0
    return eps0, eps1, eps2


def ramification_profile(d: int, component: str) -> dict[str, list[int]]:
    """Local degrees of the forgetful map over J = 0, 1, infinity."""
    over0 = [3] * (d // 3)
    if d % 3 == 2:
        over0.append(2)
    elif d % 3 == 1:
        over0.append(1)
    over1 = [2] * (d // 2)
    if d % 2 == 1:
        over1.append(1)
    if component == "II":
        overinf = [2] * (d // 3) + [1] * (d // 3)
    else:
        overinf = [1] * d
    return {"0": over0, "1": over1, "inf": overinf}


@dataclass(frozen=True)
class TopologyReport:
    m: int
    component: str
    d: int
    eps0: int
    eps1: int
    eps2: int
    chi: int
    chi_orb: Fraction
    orbifold_correction: Fraction
    genus: int
    punctures: int
    cohn_degree: int
    cohn_degree_claimed: int
    profile: dict[str, list[int]] = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        d = asdict(self)
        d["chi_orb"] = str(self.chi_orb)
        d["orbifold_correction"] = str(self.orbifold_correction)
        return d


def invariants(m: int, component: str) -> TopologyReport:
    """All closed-form invariants for one (m, component)."""
    if component not in ("I", "II"):
        raise ValueError("component must be 'I' or 'II'")
    if component == "II" and m == 0:
        raise ComponentAbsent("(0, II)")
    if component == "I" and m == 1:
        raise ComponentAbsent("(1, I)")
    if m < 0:
        raise ValueError("m must be non-negative")
    eps0, eps1, eps2 = epsilons(m)
    if component == "I":
        d = degree_I(m)
        corr = Fraction(4 * eps0 + 3 * eps1, 6)
        chi_orb = -Fraction(d * d, 6)
        if m % 2 == 0:
            chi = -Fraction((m + 2) ** 2, 24) + corr
        else:
            chi = -Fraction((m - 1) ** 2, 24) + corr
        genus = Fraction(1) + Fraction(d * d, 12) - Fraction(d, 2) - corr / 2
        punctures = d
        cohn = (d * d - d + 4) // 6
        cohn_claimed = cohn
    else:
        d = degree_II(m)
        corr = Fraction(1 - eps1, 2)
        chi_orb = -Fraction(d * d, 18)
        if m % 2 == 0:
            chi = -Fraction(m * m, 8) + corr
        else:
            chi = -Fraction((m + 1) ** 2, 8) + corr
        genus = Fraction(1) + Fraction(d * d, 36) - Fraction(d, 3) - corr / 2
        punctures = 2 * d // 3
        cohn = (d // 3) * (d // 3 - 1) // 2
        cohn_claimed = d * (d - 1) // 2
    assert chi.denominator == 1 and genus.denominator == 1
    rep = TopologyReport(
        m=m,
        component=component,
        d=d,
        eps0=eps0,
        eps1=eps1,
        eps2=eps2,
        chi=int(chi),
        chi_orb=chi_orb,
        orbifold_correction=corr,
        genus=int(genus),
        punctures=punctures,
        cohn_degree=cohn,
        cohn_degree_claimed=cohn_claimed,
        profile=ramification_profile(d, component),
    )
    assert rep.chi == 2 - 2 * rep.genus - rep.punctures, rep
    assert Fraction(rep.chi) == rep.chi_orb + rep.orbifold_correction, rep
    if component == "I":
        assert rep.punctures == rep.d
    else:
        assert 3 * rep.punctures == 2 * rep.d
    for key in ("0", "1", "inf"):
        assert sum(rep.profile[key]) == rep.d, (key, rep)
    return rep


@dataclass(frozen=True)
class CrosscheckReport:
    max_m: int
    mismatches: list[str]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def table_crosscheck(max_m: int = 13) -> CrosscheckReport:
    """Compare invariants() against the embedded reference tables."""
    from .golden import component_tables

    if max_m < 13:
        raise ValueError("tables cover m <= 13; ask for at least that")
    mismatches = []
    tables = component_tables()
    for comp, rows in tables.items():
        for row in rows:
            m = row["m"]
            rep = invariants(m, comp)
            expected = {
                "d": row["d"],
                "eps1": row["eps1"],
                "eps2": row["eps2"],
                "chi": row["chi"],
                "punctures": row["h"],
                "genus": row["g"],
            }
            if comp == "I":
                expected["eps0"] = row["eps0"]
            for key, want in expected.items():
                got = getattr(rep, key)
                if got != want:
                    mismatches.append(f"({m},{comp}).{key}: got {got}, table {want}")
            corr = rep.orbifold_correction
            if Fraction(rep.chi) != rep.chi_orb + corr:
                mismatches.append(f"({m},{comp}): chi != chi_orb + correction")
    return CrosscheckReport(max_m, mismatches)


@dataclass(frozen=True)
class GenusDegreeReport:
    m: int
    chi_H0: int
    genus_H0: int
    D_H0: int
    chi_Hj: int
    genus_Hj: int
    D_Hj: int

    @property
    def ok(self) -> bool:
        return (
            self.genus_H0 == (self.D_H0 - 1) * (self.D_H0 - 2) // 2
            and self.genus_Hj == (self.D_Hj - 1) * (self.D_Hj - 2) // 2
        )


def genus_degree_check_H(m: int) -> GenusDegreeReport:
    """Genus of the compactified Legendre-frame curves equals the plane-curve
    genus-degree bound with equality (the nonsingularity statement)."""
    if m < 2:
        raise ValueError("needs m >= 2")
    rep_i = invariants(m, "I")
    rep_ii = invariants(m, "II")
    chi_h0 = 6 * (rep_i.chi_orb + Fraction(rep_i.d, 2))
    chi_hj = 2 * (rep_ii.chi_orb + Fraction(rep_ii.d, 2))
    assert chi_h0.denominator == 1 and chi_hj.denominator == 1
    g_h0 = (2 - int(chi_h0)) // 2
    g_hj = (2 - int(chi_hj)) // 2
    return GenusDegreeReport(
        m=m,
        chi_H0=int(chi_h0),
        genus_H0=g_h0,
        D_H0=rep_i.d,
        chi_Hj=int(chi_hj),
        genus_Hj=g_hj,
        D_Hj=rep_ii.d // 3,
    )
