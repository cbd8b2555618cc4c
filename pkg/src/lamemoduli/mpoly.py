"""Sparse multivariate polynomials over arbitrary-precision rationals.

Everything downstream (operator matrices, spectral polynomials, discriminants,
the Cohn pipeline) is built on three types defined here:

* ``MPoly``    -- sparse multivariate polynomial, dict from exponent vector to
                  nonzero rational coefficient;
* ``UPoly``    -- univariate view: dense coefficient list whose entries are
                  ``MPoly`` values in the remaining variables;
* ``PolyMatrix`` -- square matrix of ``MPoly`` entries.

Coefficients are ``gmpy2.mpq`` when available (much faster), otherwise
``fractions.Fraction``.  Both are always stored in lowest terms with positive
denominator.  All values are immutable after construction and every operation
is a pure function, so concurrent use is safe.

Monomial order: graded lexicographic with the fixed global variable order
``lambda, B, g2, g3, a, e1, e2, e3`` (further names sort after these,
alphabetically).  The text form produced by ``str()`` lists terms in
descending order of this ranking and round-trips through ``parse``.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Union

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q

__all__ = [
    "Q",
    "MPoly",
    "UPoly",
    "PolyMatrix",
    "NonDivisible",
    "NEG_INF",
    "parse",
    "rat",
]

# Degree of the zero polynomial.
NEG_INF = float("-inf")

# Fixed global variable order; names not listed here come afterwards.
GLOBAL_VAR_ORDER = ("lambda", "B", "g2", "g3", "a", "e1", "e2", "e3")
_GLOBAL_RANK = {name: i for i, name in enumerate(GLOBAL_VAR_ORDER)}

Scalar = Union[int, "Q"]


class NonDivisible(ArithmeticError):
    """Raised when an exact division leaves a nonzero remainder."""


def _var_key(name: str) -> tuple[int, str]:
    return (_GLOBAL_RANK.get(name, len(GLOBAL_VAR_ORDER)), name)


def sort_vars(names: Iterable[str]) -> tuple[str, ...]:
    """Order variable names by the fixed global ranking."""
    return tuple(sorted(set(names), key=_var_key))


def rat(value) -> Q:
    """Coerce an int, rational, or 'p/q' string to the coefficient type."""
    if isinstance(value, float):
        raise TypeError("exact layer does not accept floats")
    if isinstance(value, str):
        if "/" in value:
            num, den = value.split("/")
            return Q(int(num), int(den))
        return Q(int(value))
    return Q(value)


class MPoly:
    """Immutable sparse multivariate polynomial with rational coefficients.

    ``terms`` maps exponent tuples (aligned with ``vars``) to nonzero
    coefficients; the zero polynomial has an empty term map.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Iterable[str] = (), terms: Mapping[tuple, object] | None = None):
        vs = tuple(variables)
        assert list(vs) == sorted(vs, key=_var_key), "variables must be in global order"
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                c = coeff if type(coeff) is type(_ONE_Q) else rat(coeff)
                if c != 0:
                    assert len(exps) == len(vs)
                    clean[tuple(exps)] = c
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MPoly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def const(value) -> "MPoly":
        c = rat(value)
        if c == 0:
            return MPoly()
        return MPoly((), {(): c})

    @staticmethod
    def var(name: str, power: int = 1, coeff=1) -> "MPoly":
        if power < 0:
            raise ValueError("negative power")
        if power == 0:
            return MPoly.const(coeff)
        return MPoly((name,), {(power,): rat(coeff)})

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def constant_value(self) -> Q:
        """The value of a constant polynomial."""
        if self.is_zero():
            return Q(0)
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return next(iter(self.terms.values()))

    def total_degree(self):
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str):
        if not self.terms:
            return NEG_INF
        if name not in self.vars:
            return 0
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def used_vars(self) -> tuple[str, ...]:
        """Variables that actually occur with positive exponent."""
        used = set()
        for exps in self.terms:
            for name, e in zip(self.vars, exps):
                if e:
                    used.add(name)
        return sort_vars(used)

    def leading(self) -> tuple[tuple, Q]:
        """Leading (exponent vector, coefficient) under graded lex."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=lambda e: (sum(e), e))
        return exps, self.terms[exps]

    def coefficients(self) -> list:
        return list(self.terms.values())

    # -- variable alignment ------------------------------------------------

    def _embed(self, vs: tuple[str, ...]) -> dict:
        """Re-index the term map onto the variable tuple ``vs`` (a superset)."""
        if vs == self.vars:
            return dict(self.terms)
        pos = [vs.index(v) for v in self.vars]
        n = len(vs)
        out = {}
        for exps, c in self.terms.items():
            new = [0] * n
            for p, e in zip(pos, exps):
                new[p] = e
            out[tuple(new)] = c
        return out

    @staticmethod
    def _union_vars(a: "MPoly", b: "MPoly") -> tuple[str, ...]:
        if a.vars == b.vars:
            return a.vars
        return sort_vars(a.vars + b.vars)

    def _compress(self) -> "MPoly":
        """Drop variables that no longer occur."""
        used = self.used_vars()
        if used == self.vars:
            return self
        pos = [self.vars.index(v) for v in used]
        terms = {tuple(exps[p] for p in pos): c for exps, c in self.terms.items()}
        return MPoly(used, terms)

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(value) -> "MPoly":
        if isinstance(value, MPoly):
            return value
        return MPoly.const(value)

    def __add__(self, other) -> "MPoly":
        other = MPoly._coerce(other)
        vs = MPoly._union_vars(self, other)
        terms = self._embed(vs)
        for exps, c in other._embed(vs).items():
            s = terms.get(exps, 0) + c
            if s == 0:
                terms.pop(exps, None)
            else:
                terms[exps] = s
        return MPoly(vs, terms)._compress()

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MPoly":
        return self + (-MPoly._coerce(other))

    def __rsub__(self, other) -> "MPoly":
        return MPoly._coerce(other) + (-self)

    def __mul__(self, other) -> "MPoly":
        other = MPoly._coerce(other)
        if self.is_zero() or other.is_zero():
            return MPoly()
        vs = MPoly._union_vars(self, other)
        at = self._embed(vs)
        bt = other._embed(vs)
        if len(at) > len(bt):
            at, bt = bt, at
        out: dict = {}
        for ea, ca in at.items():
            for eb, cb in bt.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(key, 0) + ca * cb
                if s == 0:
                    out.pop(key, None)
                else:
                    out[key] = s
        return MPoly(vs, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __truediv__(self, scalar) -> "MPoly":
        c = rat(scalar)
        if c == 0:
            raise ZeroDivisionError
        return MPoly(self.vars, {e: v / c for e, v in self.terms.items()})

    def exact_div(self, divisor: "MPoly") -> "MPoly":
        """Exact polynomial division; raises NonDivisible on nonzero remainder."""
        divisor = MPoly._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return MPoly()
        vs = MPoly._union_vars(self, divisor)
        rem = self._embed(vs)
        div = divisor._embed(vs)
        dlead = max(div, key=lambda e: (sum(e), e))
        dcoeff = div[dlead]
        quot: dict = {}
        while rem:
            rlead = max(rem, key=lambda e: (sum(e), e))
            qexp = tuple(r - d for r, d in zip(rlead, dlead))
            if any(e < 0 for e in qexp):
                raise NonDivisible(f"{self} is not divisible by {divisor}")
            qc = rem[rlead] / dcoeff
            quot[qexp] = qc
            for de, dc in div.items():
                key = tuple(q + d for q, d in zip(qexp, de))
                s = rem.get(key, 0) - qc * dc
                if s == 0:
                    rem.pop(key, None)
                else:
                    rem[key] = s
        return MPoly(vs, quot)._compress()

    def __eq__(self, other) -> bool:
        if not isinstance(other, MPoly):
            try:
                other = MPoly.const(other)
            except (TypeError, ValueError):
                return NotImplemented
        a, b = self._compress(), other._compress()
        return a.vars == b.vars and a.terms == b.terms

    def __hash__(self):
        c = self._compress()
        return hash((c.vars, frozenset(c.terms.items())))

    # -- calculus and substitution ----------------------------------------

    def derivative(self, name: str) -> "MPoly":
        if name not in self.vars:
            return MPoly()
        i = self.vars.index(name)
        terms = {}
        for exps, c in self.terms.items():
            e = exps[i]
            if e:
                new = exps[:i] + (e - 1,) + exps[i + 1:]
                terms[new] = terms.get(new, 0) + c * e
        return MPoly(self.vars, terms)._compress()

    def subs(self, mapping: Mapping[str, object]) -> "MPoly":
        """Substitute polynomials or rationals for variables (exact)."""
        values = {k: MPoly._coerce(v) for k, v in mapping.items()}
        result = MPoly()
        pow_cache: dict[tuple[str, int], MPoly] = {}
        for exps, c in self.terms.items():
            term = MPoly.const(c)
            for name, e in zip(self.vars, exps):
                if e == 0:
                    continue
                if name in values:
                    key = (name, e)
                    if key not in pow_cache:
                        pow_cache[key] = values[name] ** e
                    term = term * pow_cache[key]
                else:
                    term = term * MPoly.var(name, e)
            result = result + term
        return result

    def eval_numeric(self, point: Mapping[str, complex]) -> complex:
        """Floating evaluation; every occurring variable must be given."""
        total = 0j
        for exps, c in self.terms.items():
            val = complex(int(c.numerator)) / complex(int(c.denominator))
            for name, e in zip(self.vars, exps):
                if e:
                    val *= complex(point[name]) ** e
            total += val
        return total

    # -- text form ---------------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple, Q]]:
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, coeff in self.sorted_terms():
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.vars, exps)
                if e
            )
            neg = coeff < 0
            mag = -coeff if neg else coeff
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"MPoly({self})"


_ONE_Q = Q(1)

_TOKEN_CHARS = set("0123456789/")


def parse(text: str) -> MPoly:
    """Parse the canonical text form (inverse of ``str``).

    Accepts explicit ``+``/``-`` signs, ``^`` powers, rational coefficients
    ``p/q``, and optional ``*`` between factors.  Variable names must be
    separated by ``*`` or whitespace when juxtaposed.
    """
    s = text.replace("**", "^").strip()
    if not s:
        raise ValueError("empty polynomial text")
    # split into signed chunks at top level
    chunks: list[tuple[int, str]] = []
    sign, buf = 1, []
    i = 0
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        i = 1
    while i < len(s):
        ch = s[i]
        if ch in "+-" and (i == 0 or s[i - 1] not in "^/"):
            chunks.append((sign, "".join(buf)))
            sign = -1 if ch == "-" else 1
            buf = []
        else:
            buf.append(ch)
        i += 1
    chunks.append((sign, "".join(buf)))

    result = MPoly()
    for sgn, chunk in chunks:
        chunk = chunk.strip()
        if not chunk:
            raise ValueError(f"dangling sign in {text!r}")
        factors = _tokenize_term(chunk)
        coeff = Q(sgn)
        exps: dict[str, int] = {}
        for f in factors:
            if f[0].isdigit():
                coeff *= rat(f)
            else:
                if "^" in f:
                    name, p = f.split("^")
                    power = int(p)
                else:
                    name, power = f, 1
                exps[name] = exps.get(name, 0) + power
        vs = sort_vars(exps)
        term = MPoly(vs, {tuple(exps[v] for v in vs): coeff})
        result = result + term
    return result


def _tokenize_term(chunk: str) -> list[str]:
    parts = []
    for piece in chunk.split("*"):
        piece = piece.strip()
        if not piece:
            raise ValueError(f"empty factor in {chunk!r}")
        for sub in piece.split():
            # juxtaposed "3g2" splits into number and name
            j = 0
            while j < len(sub) and sub[j] in _TOKEN_CHARS:
                j += 1
            if 0 < j < len(sub):
                parts.append(sub[:j])
                parts.append(sub[j:])
            else:
                parts.append(sub)
    return parts


class UPoly:
    """Polynomial in one main variable with ``MPoly`` coefficients.

    Coefficients are stored densely from degree 0 upward; the leading
    coefficient is nonzero unless the polynomial is zero.
    """

    __slots__ = ("main", "coeffs")

    def __init__(self, main: str, coeffs: Iterable):
        cs = [MPoly._coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "main", main)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UPoly is immutable")

    @staticmethod
    def from_mpoly(poly: MPoly, main: str) -> "UPoly":
        if main not in poly.vars:
            return UPoly(main, [poly])
        i = poly.vars.index(main)
        rest = poly.vars[:i] + poly.vars[i + 1:]
        deg = poly.degree_in(main)
        if deg is NEG_INF:
            return UPoly(main, [])
        buckets: list[dict] = [dict() for _ in range(int(deg) + 1)]
        for exps, c in poly.terms.items():
            buckets[exps[i]][exps[:i] + exps[i + 1:]] = c
        return UPoly(main, [MPoly(rest, b)._compress() for b in buckets])

    def to_mpoly(self) -> MPoly:
        total = MPoly()
        for k, c in enumerate(self.coeffs):
            if k == 0:
                total = total + c
            else:
                total = total + c * MPoly.var(self.main, k)
        return total

    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> MPoly:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return MPoly()

    def leading_coeff(self) -> MPoly:
        if not self.coeffs:
            raise ValueError("zero polynomial")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == MPoly.const(1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UPoly):
            return NotImplemented
        return self.main == other.main and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.main, self.coeffs))

    def __add__(self, other: "UPoly") -> "UPoly":
        assert self.main == other.main
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly(self.main, [self[k] + other[k] for k in range(n)])

    def __neg__(self) -> "UPoly":
        return UPoly(self.main, [-c for c in self.coeffs])

    def __sub__(self, other: "UPoly") -> "UPoly":
        return self + (-other)

    def __mul__(self, other) -> "UPoly":
        if not isinstance(other, UPoly):
            return UPoly(self.main, [c * other for c in self.coeffs])
        assert self.main == other.main
        if self.is_zero() or other.is_zero():
            return UPoly(self.main, [])
        out = [MPoly() for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return UPoly(self.main, out)

    __rmul__ = __mul__

    def scale(self, factor) -> "UPoly":
        f = rat(factor)
        return UPoly(self.main, [c * f for c in self.coeffs])

    def derivative(self) -> "UPoly":
        return UPoly(self.main, [c * k for k, c in enumerate(self.coeffs)][1:])

    def eval_poly(self, value: MPoly) -> MPoly:
        """Horner evaluation at an MPoly (or scalar) argument."""
        value = MPoly._coerce(value)
        total = MPoly()
        for c in reversed(self.coeffs):
            total = total * value + c
        return total

    def eval_numeric(self, main_value: complex, point: Mapping[str, complex] | None = None) -> complex:
        point = point or {}
        total = 0j
        for c in reversed(self.coeffs):
            total = total * main_value + c.eval_numeric(point)
        return total

    def rational_coeffs(self) -> list:
        """Coefficient list as rationals (requires constant coefficients)."""
        return [c.constant_value() for c in self.coeffs]

    def __str__(self) -> str:
        return str(self.to_mpoly())

    def __repr__(self) -> str:
        return f"UPoly[{self.main}]({self})"


class PolyMatrix:
    """Square matrix over the polynomial ring."""

    __slots__ = ("n", "entries")

    def __init__(self, entries: Iterable[Iterable]):
        rows = [[MPoly._coerce(e) for e in row] for row in entries]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "entries", tuple(tuple(r) for r in rows))

    def __setattr__(self, name, value):
        raise AttributeError("PolyMatrix is immutable")

    def __getitem__(self, ij: tuple[int, int]) -> MPoly:
        return self.entries[ij[0]][ij[1]]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([[self.entries[j][i] for j in range(self.n)] for i in range(self.n)])

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix([[fn(e) for e in row] for row in self.entries])

    def eval_numeric(self, point: Mapping[str, complex]):
        return [[e.eval_numeric(point) for e in row] for row in self.entries]

    def rational_entries(self) -> list[list]:
        return [[e.constant_value() for e in row] for row in self.entries]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self) -> str:
        return f"PolyMatrix({self.n}x{self.n})"
