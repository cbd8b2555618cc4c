"""Exact algebraic algorithms on top of the polynomial types.

Characteristic polynomials are computed division-free: a Berkowitz recursion
for general matrices, with a cheaper division-free expansion for Hessenberg
matrices (the operator matrices built downstream are always banded Hessenberg,
where Berkowitz's O(n^4) ring operations would dominate the whole pipeline).
Discriminants go through a fraction-free Bareiss determinant of the Sylvester
matrix, so every intermediate value stays polynomial.
"""

from __future__ import annotations

from .mpoly import MPoly, NEG_INF, NonDivisible, PolyMatrix, Q, UPoly, rat

__all__ = [
    "DegreeTooSmall",
    "NotQuasiHomogeneous",
    "NotSymmetric",
    "char_poly",
    "char_poly_cofactor",
    "discriminant",
    "resultant",
    "primitive_normalize",
    "squarefree_decompose",
    "symmetric_reduce",
    "weighted_degree",
    "is_quasi_homogeneous",
]


class DegreeTooSmall(ValueError):
    """Discriminant requested for a polynomial of degree below 2."""


class NotSymmetric(ValueError):
    """Input to the symmetric reduction is not a symmetric polynomial."""


class NotQuasiHomogeneous(ValueError):
    """Terms of the polynomial carry different weights."""


# ---------------------------------------------------------------------------
# characteristic polynomials


def _is_upper_hessenberg(m: PolyMatrix) -> bool:
    return all(
        m.entries[i][j].is_zero()
        for i in range(m.n)
        for j in range(m.n)
        if i > j + 1
    )


def _hessenberg_char_coeffs(m: PolyMatrix) -> list[list[MPoly]]:
    """Division-free char polys of leading principal minors of an upper
    Hessenberg matrix.  Returns dense coefficient lists (low degree first)."""
    n = m.n
    one = MPoly.const(1)
    # p[k] = char poly of top-left k x k block, as coefficient list
    p: list[list[MPoly]] = [[one]]
    # running products of subdiagonal entries: subprod[i] = m[i+1,i]*...*m[k-1,k-2]
    for k in range(1, n + 1):
        a = m.entries[k - 1][k - 1]
        # lambda * p[k-1]
        new = [MPoly()] + list(p[k - 1])
        for i, c in enumerate(p[k - 1]):
            new[i] = new[i] - a * c
        # correction terms from column k-1 above the diagonal
        chain = one
        for i in range(k - 1, 0, -1):
            chain = chain * m.entries[i][i - 1]
            b = m.entries[i - 1][k - 1]
            if b.is_zero():
                continue
            factor = b * chain
            for t, c in enumerate(p[i - 1]):
                new[t] = new[t] - factor * c
        p.append(new)
    return p


def _berkowitz_char_coeffs(m: PolyMatrix) -> list[MPoly]:
    """Berkowitz vector of char poly coefficients, highest power first."""
    n = m.n
    one = MPoly.const(1)
    if n == 0:
        return [one]
    coeffs = [one, -m.entries[0][0]]
    for k in range(2, n + 1):
        a = m.entries[k - 1][k - 1]
        row = [m.entries[k - 1][j] for j in range(k - 1)]
        col = [m.entries[i][k - 1] for i in range(k - 1)]
        # first column of the Toeplitz matrix: 1, -a, -R C, -R A C, ...
        toe = [one, -a]
        vec = col
        for _ in range(k - 1):
            dot = MPoly()
            for r, v in zip(row, vec):
                dot = dot + r * v
            toe.append(-dot)
            vec = [
                sum((m.entries[i][j] * vec[j] for j in range(k - 1)), MPoly())
                for i in range(k - 1)
            ]
        # multiply the Toeplitz matrix with first column `toe` by `coeffs`
        new = []
        for i in range(k + 1):
            acc = MPoly()
            for j in range(len(coeffs)):
                if 0 <= i - j < len(toe):
                    acc = acc + toe[i - j] * coeffs[j]
            new.append(acc)
        coeffs = new
    return coeffs


def char_poly(m: PolyMatrix, var: str) -> UPoly:
    """det(var*I - M), monic of degree n, by a division-free scheme."""
    for row in m.entries:
        for e in row:
            if var in e.used_vars():
                raise ValueError(f"variable {var!r} occurs in matrix entries")
    if m.n == 0:
        return UPoly(var, [MPoly.const(1)])
    if _is_upper_hessenberg(m):
        dense = _hessenberg_char_coeffs(m)[m.n]
        return UPoly(var, dense)
    mt = m.transpose()
    if _is_upper_hessenberg(mt):
        dense = _hessenberg_char_coeffs(mt)[m.n]
        return UPoly(var, dense)
    desc = _berkowitz_char_coeffs(m)
    return UPoly(var, list(reversed(desc)))


def char_poly_cofactor(m: PolyMatrix, var: str) -> UPoly:
    """Reference char poly by cofactor expansion of var*I - M (small n only)."""
    x = MPoly.var(var)
    ent = [
        [x - m.entries[i][j] if i == j else -m.entries[i][j] for j in range(m.n)]
        for i in range(m.n)
    ]

    def det(rows: list[list[MPoly]]) -> MPoly:
        k = len(rows)
        if k == 0:
            return MPoly.const(1)
        if k == 1:
            return rows[0][0]
        total = MPoly()
        for j in range(k):
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            term = rows[0][j] * det(minor)
            total = total + term if j % 2 == 0 else total - term
        return total

    return UPoly.from_mpoly(det(ent), var)


# ---------------------------------------------------------------------------
# determinants, resultants, discriminants


def bareiss_det(entries: list[list[MPoly]]) -> MPoly:
    """Fraction-free Gaussian elimination determinant over the polynomial ring."""
    n = len(entries)
    if n == 0:
        return MPoly.const(1)
    a = [row[:] for row in entries]
    sign = 1
    prev = MPoly.const(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            pivot_row = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if pivot_row is None:
                return MPoly()
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = num.exact_div(prev)
            a[i][k] = MPoly()
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def resultant(f: UPoly, g: UPoly) -> MPoly:
    """Resultant via the Sylvester matrix and a Bareiss determinant."""
    assert f.main == g.main
    df, dg = f.degree(), g.degree()
    if df is NEG_INF or dg is NEG_INF:
        return MPoly()
    df, dg = int(df), int(dg)
    if df == 0 and dg == 0:
        return MPoly.const(1)
    size = df + dg
    zero = MPoly()
    rows = []
    fc = [f[df - i] for i in range(df + 1)]  # high to low
    gc = [g[dg - i] for i in range(dg + 1)]
    for shift in range(dg):
        rows.append([zero] * shift + fc + [zero] * (size - df - 1 - shift))
    for shift in range(df):
        rows.append([zero] * shift + gc + [zero] * (size - dg - 1 - shift))
    return bareiss_det(rows)


def discriminant(f: UPoly) -> MPoly:
    """Discriminant of a monic polynomial with respect to its main variable."""
    d = f.degree()
    if d is NEG_INF or int(d) < 2:
        raise DegreeTooSmall(f"degree {d} < 2")
    d = int(d)
    if not f.is_monic():
        raise ValueError("discriminant expects a monic polynomial")
    res = resultant(f, f.derivative())
    if (d * (d - 1) // 2) % 2:
        return -res
    return res


# ---------------------------------------------------------------------------
# univariate gcd / squarefree decomposition over the rationals


def _as_ratlist(f: UPoly) -> list:
    return [c.constant_value() for c in f.coeffs]


def _from_ratlist(main: str, cs: list) -> UPoly:
    return UPoly(main, [MPoly.const(c) for c in cs])


def _rat_divmod(a: list, b: list) -> tuple[list, list]:
    a = a[:]
    while a and a[-1] == 0:
        a.pop()
    b = b[:]
    while b and b[-1] == 0:
        b.pop()
    if not b:
        raise ZeroDivisionError
    q = [Q(0)] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        k = len(a) - len(b)
        factor = a[-1] / b[-1]
        q[k] = factor
        for i, c in enumerate(b):
            a[i + k] -= factor * c
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return q, a


def _rat_gcd(a: list, b: list) -> list:
    while b and any(c != 0 for c in b):
        _, r = _rat_divmod(a, b)
        a, b = b, r
    if not a:
        return a
    lead = a[-1]
    return [c / lead for c in a]


def _rat_deriv(a: list) -> list:
    return [c * k for k, c in enumerate(a)][1:]


def _rat_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [(a[k] if k < len(a) else Q(0)) - (b[k] if k < len(b) else Q(0)) for k in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def squarefree_decompose(f: UPoly) -> list[tuple[UPoly, int]]:
    """Yun decomposition f = lc * prod factor_i^mult_i over the rationals.

    Factors are monic, squarefree and pairwise coprime, returned with
    ascending multiplicities.  Coefficients must be rational constants (that
    is all the Cohn pipeline ever feeds in).
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    a = _as_ratlist(f)
    lead = a[-1]
    a = [c / lead for c in a]
    if len(a) == 1:
        return []
    da = _rat_deriv(a)
    g = _rat_gcd(a, da)
    w, _ = _rat_divmod(a, g)
    y, _ = _rat_divmod(da, g)
    out: list[tuple[UPoly, int]] = []
    mult = 1
    while len(w) > 1:
        z = _rat_sub(y, _rat_deriv(w))
        h = _rat_gcd(w, z) if z else [c / w[-1] for c in w]
        if len(h) > 1:
            out.append((_from_ratlist(f.main, h), mult))
        w, _ = _rat_divmod(w, h)
        y, _ = _rat_divmod(z, h) if z else ([], [])
        mult += 1
    return out


# ---------------------------------------------------------------------------
# symmetric reduction e1,e2,e3 -> g2,g3


_E_VARS = ("e1", "e2", "e3")


def _elementary_powers(cache: dict, which: int, n: int) -> MPoly:
    """sigma_which^n as a polynomial in e1,e2,e3 (cached)."""
    key = (which, n)
    if key not in cache:
        e1, e2, e3 = (MPoly.var(v) for v in _E_VARS)
        base = {
            1: e1 + e2 + e3,
            2: e1 * e2 + e1 * e3 + e2 * e3,
            3: e1 * e2 * e3,
        }[which]
        cache[key] = base ** n
    return cache[key]


def is_symmetric_e(f: MPoly) -> bool:
    """Exact invariance of f under all permutations of e1,e2,e3."""
    for swap in (("e1", "e2"), ("e2", "e3")):
        a, b = swap
        mapping = {a: MPoly.var(b), b: MPoly.var(a)}
        if f.subs(mapping) != f:
            return False
    return True


def symmetric_reduce(f: MPoly) -> MPoly:
    """Rewrite a symmetric polynomial in e1,e2,e3 in terms of g2,g3.

    The root normalization of the cubic 4x^3 - g2 x - g3 means sigma1 = 0,
    sigma2 = -g2/4, sigma3 = g3/4.  Since sigma1 is substituted to zero
    anyway, the reduction happens on the slice e1 = -e2-e3, where the
    leading-term elimination runs against the restricted elementary
    symmetric polynomials in two variables; this is exactly the classical
    three-variable elimination (see ``symmetric_reduce_elimination``) with
    the sigma1-multiples dropped early.
    """
    extraneous = [v for v in f.used_vars() if v not in _E_VARS]
    if extraneous:
        raise NotSymmetric(f"unexpected variables {extraneous}")
    if not is_symmetric_e(f):
        raise NotSymmetric(f"not invariant under permutations: {f}")
    return reduce_on_slice(restrict_to_slice(f))


def restrict_to_slice(f: MPoly) -> MPoly:
    """Substitute e1 = -e2 - e3 (the sigma1 = 0 slice)."""
    if "e1" not in f.vars:
        return f
    return f.subs({"e1": -(MPoly.var("e2") + MPoly.var("e3"))})


def reduce_on_slice(f: MPoly) -> MPoly:
    """Express a polynomial in e2,e3 lying in Q[s2,s3] in terms of g2,g3.

    Here s2, s3 are sigma2, sigma3 restricted to the slice e1 = -e2-e3.
    Raises NotSymmetric when the input is not in that subring.
    """
    extraneous = [v for v in f.used_vars() if v not in ("e2", "e3")]
    if extraneous:
        raise NotSymmetric(f"unexpected variables {extraneous} on slice")
    e2, e3 = MPoly.var("e2"), MPoly.var("e3")
    s2 = -(e2**2 + e2 * e3 + e3**2)
    s3 = -(e2**2 * e3 + e2 * e3**2)
    g2_val = MPoly.var("g2") * rat("-1/4")
    g3_val = MPoly.var("g3") * rat("1/4")
    pow_cache: dict = {}

    def cached_pow(base_key: str, base: MPoly, n: int) -> MPoly:
        key = (base_key, n)
        if key not in pow_cache:
            pow_cache[key] = base ** n
        return pow_cache[key]

    rem = f
    result = MPoly()
    while not rem.is_zero():
        (alpha, beta), coeff = _lex_leading_2(rem)
        if alpha % 2 or alpha // 2 < beta:
            raise NotSymmetric(f"monomial e2^{alpha} e3^{beta} not reducible")
        k = beta
        j = alpha // 2 - beta
        mono = cached_pow("s2", s2, j) * cached_pow("s3", s3, k)
        sign = 1 if (j + k) % 2 == 0 else -1
        rem = rem - mono * (sign * coeff)
        result = result + cached_pow("g2", g2_val, j) * cached_pow("g3", g3_val, k) * (sign * coeff)
    return result


def _lex_leading_2(f: MPoly) -> tuple[tuple[int, int], Q]:
    idx = [f.vars.index(v) if v in f.vars else None for v in ("e2", "e3")]

    def key(exps):
        return tuple(exps[i] if i is not None else 0 for i in idx)

    best = max(f.terms, key=key)
    return key(best), f.terms[best]


def symmetric_reduce_elimination(f: MPoly) -> MPoly:
    """Classical three-variable leading-term elimination (cross-check path)."""
    extraneous = [v for v in f.used_vars() if v not in _E_VARS]
    if extraneous:
        raise NotSymmetric(f"unexpected variables {extraneous}")
    g2 = MPoly.var("g2")
    g3 = MPoly.var("g3")
    sig_vals = {1: MPoly(), 2: g2 * rat("-1/4"), 3: g3 * rat("1/4")}
    cache: dict = {}
    rem = f
    result = MPoly()
    while not rem.is_zero():
        exps, coeff = _lex_leading(rem)
        a, b, c = exps
        if not (a >= b >= c):
            raise NotSymmetric(f"leading exponents {exps} not dominant in {f}")
        monomial = MPoly.const(coeff)
        value = MPoly.const(coeff)
        for which, power in ((1, a - b), (2, b - c), (3, c)):
            if power:
                monomial = monomial * _elementary_powers(cache, which, power)
                value = value * (sig_vals[which] ** power)
        rem = rem - monomial
        result = result + value
    return result


def _lex_leading(f: MPoly) -> tuple[tuple[int, int, int], Q]:
    """Lex-leading term of a polynomial viewed in e1 > e2 > e3."""
    idx = [f.vars.index(v) if v in f.vars else None for v in _E_VARS]

    def key(exps):
        return tuple(exps[i] if i is not None else 0 for i in idx)

    best = max(f.terms, key=key)
    return key(best), f.terms[best]


# ---------------------------------------------------------------------------
# grading and normal forms


def weighted_degree(f: MPoly, weights: dict[str, int]) -> int:
    """Common weight of all terms; raises NotQuasiHomogeneous otherwise."""
    if f.is_zero():
        raise NotQuasiHomogeneous("zero polynomial has no weight")
    seen = None
    for exps in f.terms:
        w = 0
        for name, e in zip(f.vars, exps):
            if e:
                if name not in weights:
                    raise NotQuasiHomogeneous(f"no weight given for {name}")
                w += weights[name] * e
        if seen is None:
            seen = w
        elif w != seen:
            raise NotQuasiHomogeneous(f"weights {seen} and {w} both occur")
    return seen


def is_quasi_homogeneous(f: MPoly, weights: dict[str, int]) -> bool:
    try:
        weighted_degree(f, weights)
        return True
    except NotQuasiHomogeneous:
        return False


def primitive_normalize(f: UPoly) -> UPoly:
    """Scale by the positive rational giving integer coefficients of content 1
    with a positive leading coefficient in the main variable."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    nums: list[int] = []
    dens: list[int] = []
    for coeff in f.coeffs:
        for c in coeff.coefficients():
            nums.append(int(c.numerator))
            dens.append(int(c.denominator))
    from math import gcd

    lcm = 1
    for d in dens:
        lcm = lcm * d // gcd(lcm, d)
    # content of f*lcm is the gcd of the scaled numerators
    g = 0
    for n, d in zip(nums, dens):
        g = gcd(g, abs(n) * (lcm // d))
    factor = Q(lcm, g)
    lead = f.leading_coeff()
    _, lead_coeff = lead.leading()
    if lead_coeff < 0:
        factor = -factor
    return f.scale(factor)
