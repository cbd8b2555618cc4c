"""Lattice data from tau and the period-collinearity conditions.

Production path: Eisenstein q-series for the invariants and quasi-periods,
batched cubic roots for the e-values.  Verification path (tests only): the
Weierstrass functions themselves, evaluated by lattice summation with the
rows resummed through cotangent identities, so the truncation tail decays
geometrically in |q|; the production path never evaluates them.

Conditions whose zero sets are the collinear-monodromy curves are returned
as vectorized evaluators of Im(N conj(D)) / |N conj(D)|, division-free in
the sense that no intermediate quotient by a possibly-vanishing quantity is
formed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "ImTooSmall",
    "LatticeData",
    "LatticeGrid",
    "LWCondition",
    "lattice_from_tau",
    "lattice_grid",
    "lw_conditions",
    "identity_residuals",
    "wp_lattice_sum",
    "wp_prime_lattice_sum",
    "zeta_lattice_sum",
]

LEGENDRE_SIGN = +1  # eta(1)*tau - eta(tau) = 2 pi i * sign, for Im tau > 0
_TAIL = 1e-18


class ImTooSmall(ValueError):
    """tau must satisfy Im tau > 0.05."""


def _divisor_sums(n_max: int, power: int) -> np.ndarray:
    sig = np.zeros(n_max + 1)
    for d in range(1, n_max + 1):
        sig[d::d] += float(d) ** power
    return sig[1:]


_SIGMA_CACHE: dict[tuple[int, int], np.ndarray] = {}


def _sigma(n_max: int, power: int) -> np.ndarray:
    key = (n_max, power)
    if key not in _SIGMA_CACHE:
        _SIGMA_CACHE[key] = _divisor_sums(n_max, power)
    return _SIGMA_CACHE[key]


def _n_terms(abs_q: float) -> int:
    if abs_q >= 1:
        raise ImTooSmall("|q| >= 1")
    import math

    n = int(math.log(_TAIL) / math.log(abs_q)) + 8
    return min(max(n, 8), 6000)


def _eisenstein(q: np.ndarray, weight: int) -> np.ndarray:
    """E2, E4 or E6 as 1 + c * sum sigma_k(n) q^n, truncated below 1e-18."""
    coeff = {2: -24, 4: 240, 6: -504}[weight]
    n = _n_terms(float(np.max(np.abs(q))))
    sig = _sigma(n, weight - 1)
    total = np.zeros_like(q)
    qpow = q.copy()
    for k in range(n):
        total = total + sig[k] * qpow
        qpow = qpow * q
    return 1 + coeff * total


def _cubic_roots_sorted(g2: np.ndarray, g3: np.ndarray) -> np.ndarray:
    """Roots of 4x^3 - g2 x - g3, sorted by (Re, Im); shape (..., 3)."""
    shape = g2.shape
    comp = np.zeros(shape + (3, 3), dtype=complex)
    comp[..., 1, 0] = 1
    comp[..., 2, 1] = 1
    comp[..., 0, 2] = g3 / 4
    comp[..., 1, 2] = g2 / 4
    roots = np.linalg.eigvals(comp)
    idx = np.lexsort((roots.imag.round(12), roots.real.round(12)), axis=-1)
    return np.take_along_axis(roots, idx, axis=-1)


@dataclass(frozen=True)
class LatticeGrid:
    """Vectorized lattice data over an array of tau values (lattice Z + tau Z)."""

    tau: np.ndarray
    q: np.ndarray
    g2: np.ndarray
    g3: np.ndarray
    e: np.ndarray  # (..., 3) sorted
    eta1: np.ndarray  # quasi-period for period 1
    eta_tau: np.ndarray  # quasi-period for period tau
    J: np.ndarray


@dataclass(frozen=True)
class LatticeData:
    tau: complex
    q: complex
    g2: complex
    g3: complex
    e: tuple[complex, complex, complex]
    eta1: complex
    eta_tau: complex
    J: complex


def lattice_grid(tau: np.ndarray) -> LatticeGrid:
    tau = np.asarray(tau, dtype=complex)
    if np.any(tau.imag <= 0.05):
        raise ImTooSmall("need Im tau > 0.05 everywhere")
    q = np.exp(2j * np.pi * tau)
    e4 = _eisenstein(q, 4)
    e6 = _eisenstein(q, 6)
    e2 = _eisenstein(q, 2)
    g2 = (4 * np.pi**4 / 3) * e4
    g3 = (8 * np.pi**6 / 27) * e6
    eta1 = (np.pi**2 / 3) * e2
    eta_tau = tau * eta1 - 2j * np.pi * LEGENDRE_SIGN
    roots = _cubic_roots_sorted(g2, g3)
    disc = g2**3 - 27 * g3**2
    J = g2**3 / disc
    return LatticeGrid(tau, q, g2, g3, roots, eta1, eta_tau, J)


def lattice_from_tau(tau: complex) -> LatticeData:
    """Invariants, sorted e-values, quasi-periods, and J for one tau."""
    grid = lattice_grid(np.array([tau]))
    return LatticeData(
        tau=complex(grid.tau[0]),
        q=complex(grid.q[0]),
        g2=complex(grid.g2[0]),
        g3=complex(grid.g3[0]),
        e=tuple(complex(v) for v in grid.e[0]),
        eta1=complex(grid.eta1[0]),
        eta_tau=complex(grid.eta_tau[0]),
        J=complex(grid.J[0]),
    )


# ---------------------------------------------------------------------------
# verification-only lattice sums (rows resummed by cotangent identities)


def _rows(tau: complex) -> int:
    return _n_terms(abs(np.exp(2j * np.pi * tau)))


def wp_lattice_sum(z: complex, tau: complex) -> complex:
    """Weierstrass wp via row-resummed lattice summation.

    Each horizontal lattice row sums exactly to pi^2/sin^2; the constant
    sum_{w != 0} w^-2 (Eisenstein summation) is likewise a pure lattice
    quantity, so no q-series enters.
    """
    rows = _rows(tau)
    total = np.pi**2 / np.sin(np.pi * z) ** 2
    const = np.pi**2 / 3
    for n in range(1, rows + 1):
        total += np.pi**2 / np.sin(np.pi * (z - n * tau)) ** 2
        total += np.pi**2 / np.sin(np.pi * (z + n * tau)) ** 2
        const += 2 * np.pi**2 / np.sin(np.pi * n * tau) ** 2
    return total - const


def wp_prime_lattice_sum(z: complex, tau: complex) -> complex:
    rows = _rows(tau)
    def row(w):
        return np.pi**3 * np.cos(np.pi * w) / np.sin(np.pi * w) ** 3
    total = row(z)
    for n in range(1, rows + 1):
        total += row(z - n * tau) + row(z + n * tau)
    return -2 * total


def zeta_lattice_sum(z: complex, tau: complex) -> complex:
    rows = _rows(tau)
    total = np.pi / np.tan(np.pi * z)
    const = np.pi**2 / 3
    for n in range(1, rows + 1):
        total += np.pi / np.tan(np.pi * (z - n * tau))
        total += np.pi / np.tan(np.pi * (z + n * tau))
        const += 2 * np.pi**2 / np.sin(np.pi * n * tau) ** 2
    return total + const * z


@dataclass(frozen=True)
class IdentityReport:
    tau: complex
    max_algebraic_residual: float
    legendre_residual: float
    eta1_mismatch: float


def identity_residuals(tau: complex, z_samples=None, n_samples: int = 20, seed: int = 0) -> IdentityReport:
    """Residuals of (wp')^2 = 4 wp^3 - g2 wp - g3 and the Legendre relation.

    wp, wp', zeta come from the lattice sums above; g2, g3, eta1 from the
    q-series production path.  Samples keep distance >= 0.05 from lattice
    points.
    """
    lat = lattice_from_tau(tau)
    if z_samples is None:
        rng = np.random.default_rng(seed)
        z_samples = []
        while len(z_samples) < n_samples:
            z = rng.uniform(0.08, 0.92) + rng.uniform(0.08, 0.92) * tau
            # distance to nearest lattice point in the fundamental cell
            frac = np.array([abs(z - m - n * tau) for m in (0, 1) for n in (0, 1)])
            if np.min(frac) >= 0.05:
                z_samples.append(z)
    worst = 0.0
    for z in z_samples:
        p = wp_lattice_sum(z, tau)
        dp = wp_prime_lattice_sum(z, tau)
        res = abs(dp**2 - (4 * p**3 - lat.g2 * p - lat.g3))
        scale = max(1.0, abs(dp) ** 2, abs(p) ** 3)
        worst = max(worst, res / scale)
    eta1_sum = 2 * zeta_lattice_sum(0.5, tau)
    eta_tau_sum = 2 * zeta_lattice_sum(tau / 2, tau)
    legendre = abs(eta1_sum * tau - eta_tau_sum - 2j * np.pi * LEGENDRE_SIGN)
    return IdentityReport(
        tau=tau,
        max_algebraic_residual=float(worst),
        legendre_residual=float(legendre),
        eta1_mismatch=float(abs(eta1_sum - lat.eta1)),
    )


# ---------------------------------------------------------------------------
# period-collinearity conditions


@dataclass(frozen=True)
class LWCondition:
    """One real-valued condition whose zero set is a collinearity curve.

    ``evaluate_grid`` returns (values, valid): normalized Im(N conj(D)) and a
    mask where the normalizer |N conj(D)| is large enough to trust.
    """

    m: int
    label: str
    _nd: Callable[[LatticeGrid], tuple[np.ndarray, np.ndarray]]

    def numerator_denominator(self, grid: LatticeGrid) -> tuple[np.ndarray, np.ndarray]:
        return self._nd(grid)

    def evaluate_grid(self, grid: LatticeGrid, floor: float = 1e-8) -> tuple[np.ndarray, np.ndarray]:
        n, d = self._nd(grid)
        prod = n * np.conj(d)
        mag = np.abs(prod)
        valid = mag > floor
        vals = np.where(valid, prod.imag / np.where(valid, mag, 1.0), 0.0)
        return vals, valid

    def evaluate(self, lat: LatticeData) -> float:
        grid = lattice_grid(np.array([lat.tau]))
        vals, valid = self.evaluate_grid(grid)
        return float(vals[0]) if valid[0] else float("nan")


def _halves(grid: LatticeGrid):
    """Half-periods and half quasi-periods (w1, w2, n1, n2)."""
    return 0.5, grid.tau / 2, grid.eta1 / 2, grid.eta_tau / 2


def lw_conditions(m: int) -> list[LWCondition]:
    """The condition list: 3 for m=1, 2+3 for m=2, 1+6 for m=3."""
    if m not in (1, 2, 3):
        raise ValueError("closed-form conditions exist for m in {1,2,3}")
    conds: list[LWCondition] = []
    if m == 1:
        for j in range(3):
            def nd(grid: LatticeGrid, j=j):
                w1, w2, n1, n2 = _halves(grid)
                ej = grid.e[..., j]
                return n1 + w1 * ej, n2 + w2 * ej
            conds.append(LWCondition(1, f"II_e{j+1}", nd))
        return conds
    if m == 2:
        for sign in (+1, -1):
            def nd(grid: LatticeGrid, sign=sign):
                w1, w2, n1, n2 = _halves(grid)
                s = sign * np.sqrt(grid.g2 / 12)
                return n1 + w1 * s, n2 + w2 * s
            conds.append(LWCondition(2, f"I_{'plus' if sign > 0 else 'minus'}", nd))
        for (j, k) in ((0, 1), (0, 2), (1, 2)):
            def nd(grid: LatticeGrid, j=j, k=k):
                w1, w2, n1, n2 = _halves(grid)
                ej, ek = grid.e[..., j], grid.e[..., k]
                pj = 6 * ej**2 - grid.g2 / 2
                pk = 6 * ek**2 - grid.g2 / 2
                num = w1 * (ej * pk - ek * pj) + n1 * (pk - pj)
                den = w2 * (ej * pk - ek * pj) + n2 * (pk - pj)
                return num, den
            conds.append(LWCondition(2, f"II_e{j+1}{k+1}", nd))
        return conds
    # m == 3
    def nd_sym(grid: LatticeGrid):
        w1, w2, n1, n2 = _halves(grid)
        e = grid.e
        p = 6 * e**2 - grid.g2[..., None] / 2
        c = np.empty_like(e)
        for k in range(3):
            c[..., k] = p[..., (k + 2) % 3] * p[..., (k + 1) % 3] * (
                e[..., (k + 2) % 3] - e[..., (k + 1) % 3]
            )
        c0 = -(c * e).sum(axis=-1)
        bsum = c.sum(axis=-1)
        return w1 * c0 - n1 * bsum, w2 * c0 - n2 * bsum
    conds.append(LWCondition(3, "I_sym", nd_sym))
    for k in range(3):
        for sign in (+1, -1):
            def nd(grid: LatticeGrid, k=k, sign=sign):
                w1, w2, n1, n2 = _halves(grid)
                ek = grid.e[..., k]
                pk = 6 * ek**2 - grid.g2 / 2  # wp''(w_k)
                P = -ek / 5 + sign * np.sqrt(3 * (5 * grid.g2 / 4 - 3 * ek**2))
                c1t = -2 * (6 * P**2 - grid.g2 / 2)  # c_1 * wp''(w_k)
                c0t = -c1t * ek - 2 * P * pk  # c_0 * wp''(w_k)
                num = c0t * w1 - (c1t + 2 * pk) * n1
                den = c0t * w2 - (c1t + 2 * pk) * n2
                return num, den
            conds.append(LWCondition(3, f"II_e{k+1}{'p' if sign > 0 else 'm'}", nd))
    return conds
