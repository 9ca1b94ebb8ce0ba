"""Exact carriers for the coefficient algebra R.

Three concrete rings are supported, all over the rationals:

* ``poly``    -- Q[t1, ..., tn], sparse, graded-lex term order
* ``ratfunc`` -- the fraction field Q(t1, ..., tn), reduced by polynomial gcd
* ``series``  -- Q[[t]] / (t^N), one variable, with per-element precision

Every element carries its :class:`Ring` and all binary operations demand
identical rings.  Canonical forms make ``==`` a structural comparison, except
for series, where equality means "agree on every coefficient known to both".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from numbers import Rational
from typing import Iterable, Mapping

from gmpy2 import mpq

from .errors import (
    DivisionByZero,
    NotDivisible,
    PrecisionExhausted,
    RingMismatch,
)

KINDS = ("poly", "ratfunc", "series")
_MPQ = type(mpq(0))


def _q(x) -> mpq:
    if type(x) is _MPQ:
        return x
    if isinstance(x, (int, Rational)):
        return mpq(x)
    if isinstance(x, str):
        return mpq(Fraction(x))
    raise TypeError(f"not an exact rational: {x!r}")


rational = _q


@dataclass(frozen=True)
class Ring:
    """Descriptor of a carrier ring: its kind, variable names and truncation."""

    kind: str
    variables: tuple[str, ...]
    truncation: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if self.kind not in KINDS:
            raise ValueError(f"ring kind must be one of {KINDS}, got {self.kind!r}")
        if not self.variables:
            raise ValueError("a ring needs at least one variable")
        if any(not v or not isinstance(v, str) for v in self.variables):
            raise ValueError("variable names must be nonempty strings")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        if self.kind == "series":
            if len(self.variables) != 1:
                raise ValueError("series rings have exactly one variable")
            if self.truncation is None or self.truncation < 2:
                raise ValueError("series truncation must be an integer >= 2")
        elif self.truncation is not None:
            raise ValueError("truncation only applies to series rings")

    @classmethod
    def poly(cls, *variables: str) -> "Ring":
        return cls("poly", variables)

    @classmethod
    def ratfunc(cls, *variables: str) -> "Ring":
        return cls("ratfunc", variables)

    @classmethod
    def series(cls, variable: str = "t", truncation: int = 16) -> "Ring":
        return cls("series", (variable,), truncation)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def base(self) -> "Ring":
        """The polynomial ring on the same variables."""
        return self if self.kind == "poly" else Ring("poly", self.variables)

    def __str__(self):
        names = ", ".join(self.variables)
        if self.kind == "poly":
            return f"Q[{names}]"
        if self.kind == "ratfunc":
            return f"Q({names})"
        return f"Q[[{names}]]/({names}^{self.truncation})"

    # -- element construction -------------------------------------------------

    def const(self, value) -> "RingElement":
        q = _q(value)
        if self.kind == "poly":
            return Poly._make(self, {(0,) * self.nvars: q} if q else {})
        if self.kind == "ratfunc":
            return RatFunc._make(self, self.base.const(q), self.base.one())
        return Series._make(self, (q,) + (mpq(0),) * (self.truncation - 1), self.truncation)

    def zero(self) -> "RingElement":
        return self.const(0)

    def one(self) -> "RingElement":
        return self.const(1)

    def gen(self, i: int) -> "RingElement":
        """The i-th variable (0-based)."""
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range for {self}")
        exps = tuple(int(j == i) for j in range(self.nvars))
        return self.from_terms({exps: 1})

    @property
    def gens(self) -> tuple["RingElement", ...]:
        return tuple(self.gen(i) for i in range(self.nvars))

    def from_terms(self, terms: Mapping[tuple[int, ...], object]) -> "RingElement":
        """Build an element from an exponent-vector -> coefficient map."""
        p = Poly(self.base, terms)
        return p if self.kind == "poly" else self.coerce(p)

    def series_from(self, coeffs: Iterable, precision: int | None = None) -> "Series":
        if self.kind != "series":
            raise RingMismatch(f"{self} is not a series ring")
        return Series(self, coeffs, precision)

    def parse(self, text: str, bindings: Mapping[str, "RingElement"] | None = None) -> "RingElement":
        from .parser import parse_expression

        return parse_expression(text, self, bindings)

    def coerce(self, x) -> "RingElement":
        """Bring ``x`` into this ring.

        Accepts rationals, expression strings, elements of this ring, and
        polynomials over the same variables (embedded into ratfunc/series).
        """
        if isinstance(x, RingElement):
            if x.ring == self:
                return x
            if isinstance(x, Poly) and x.ring.variables == self.variables:
                if self.kind == "ratfunc":
                    return RatFunc._make(self, x, self.base.one())
                if self.kind == "series":
                    coeffs = [mpq(0)] * self.truncation
                    for (e,), c in x.terms.items():
                        if e < self.truncation:
                            coeffs[e] = c
                    return Series._make(self, tuple(coeffs), self.truncation)
            raise RingMismatch(f"cannot coerce element of {x.ring} into {self}")
        if isinstance(x, str):
            return self.parse(x)
        return self.const(x)


def order_key(exps: tuple[int, ...]):
    """Graded-lex key: total degree first, then lexicographic with t1 > t2 > ..."""
    return (sum(exps), exps)


class RingElement:
    """Common interface of Poly, RatFunc and Series."""

    __slots__ = ()
    ring: Ring

    @property
    def precision(self) -> int | None:
        """Number of known series coefficients; None for exact carriers."""
        return None

    def _coerce(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Rational)):
            return self.ring.const(other)
        return NotImplemented

    def __radd__(self, other):
        return self + other

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __rmul__(self, other):
        return self * other

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        q = exact_divide(self, other)
        if q is None:
            raise NotDivisible(f"{other} does not divide {self} in {self.ring}")
        return q

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __repr__(self):
        return f"<{type(self).__name__} {self} in {self.ring}>"

    def derive(self, var: int) -> "RingElement":
        raise NotImplementedError

    def is_zero(self) -> bool:
        raise NotImplementedError

    def is_exact_zero(self) -> bool:
        """Zero with nothing lost: multiplying by it may be skipped without losing precision."""
        p = self.precision
        return self.is_zero() and (p is None or p == self.ring.truncation)


class Poly(RingElement):
    """Sparse multivariate polynomial with exact rational coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: Mapping[tuple[int, ...], object] | None = None):
        if ring.kind != "poly":
            raise RingMismatch(f"Poly needs a poly ring, got {ring}")
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != ring.nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for {ring}")
            c = _q(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
        self.ring = ring
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def _make(cls, ring: Ring, terms: dict) -> "Poly":
        p = object.__new__(cls)
        p.ring = ring
        p.terms = terms
        return p

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_term(self) -> mpq:
        return self.terms.get((0,) * self.ring.nvars, mpq(0))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def leading(self) -> tuple[tuple[int, ...], mpq]:
        exps = max(self.terms, key=order_key)
        return exps, self.terms[exps]

    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __neg__(self):
        return Poly._make(self.ring, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._make(self.ring, out)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly._make(self.ring, {e: c for e, c in out.items() if c})

    def scale(self, q) -> "Poly":
        q = _q(q)
        if not q:
            return Poly._make(self.ring, {})
        return Poly._make(self.ring, {e: c * q for e, c in self.terms.items()})

    def derive(self, var: int) -> "Poly":
        if not 0 <= var < self.ring.nvars:
            raise IndexError(f"variable index {var} out of range for {self.ring}")
        out = {}
        for e, c in self.terms.items():
            k = e[var]
            if k:
                out[e[:var] + (k - 1,) + e[var + 1:]] = c * k
        return Poly._make(self.ring, out)

    def divide(self, other: "Poly") -> "Poly | None":
        """Exact quotient by ``other`` or None when ``other`` does not divide."""
        if other.is_zero():
            raise DivisionByZero("division by the zero polynomial")
        lead_b, lc_b = other.leading()
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            lead = max(rem, key=order_key)
            shift = tuple(a - b for a, b in zip(lead, lead_b))
            if any(s < 0 for s in shift):
                return None
            c = rem[lead] / lc_b
            quot[shift] = c
            for e, cb in other.terms.items():
                k = tuple(a + b for a, b in zip(e, shift))
                v = rem.get(k, 0) - c * cb
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return Poly._make(self.ring, quot)

    def _monomial(self, exps) -> str:
        parts = []
        for name, k in zip(self.ring.variables, exps):
            if k == 1:
                parts.append(name)
            elif k > 1:
                parts.append(f"{name}^{k}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for e in sorted(self.terms, key=order_key, reverse=True):
            c = self.terms[e]
            mono = self._monomial(e)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not chunks:
                chunks.append(body if c > 0 else f"-{body}")
            else:
                chunks.append(f"{'+' if c > 0 else '-'} {body}")
        return " ".join(chunks)


@lru_cache(maxsize=None)
def _sympy_ring(variables: tuple[str, ...]):
    from sympy import QQ
    from sympy.polys.orderings import grlex
    from sympy.polys.rings import ring

    return ring(",".join(variables), QQ, grlex)[0]


def _to_sympy(p: Poly):
    from sympy import QQ

    R = _sympy_ring(p.ring.variables)
    return R.from_dict({e: QQ(c.numerator, c.denominator) for e, c in p.terms.items()})


def _from_sympy(ring: Ring, sp) -> Poly:
    return Poly._make(
        ring,
        {tuple(e): mpq(int(c.numerator), int(c.denominator)) for e, c in sp.items()},
    )


class RatFunc(RingElement):
    """Reduced fraction num/den with a monic denominator (graded-lex leading term)."""

    __slots__ = ("ring", "num", "den")

    def __init__(self, ring: Ring, num: Poly, den: Poly | None = None):
        if ring.kind != "ratfunc":
            raise RingMismatch(f"RatFunc needs a ratfunc ring, got {ring}")
        base = ring.base
        num = base.coerce(num)
        den = base.one() if den is None else base.coerce(den)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        n, d = _reduce(num, den)
        self.ring, self.num, self.den = ring, n, d

    @classmethod
    def _make(cls, ring, num, den):
        r = object.__new__(cls)
        r.ring, r.num, r.den = ring, num, den
        return r

    @classmethod
    def _build(cls, ring, num, den):
        n, d = _reduce(num, den)
        return cls._make(ring, n, d)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            other = self.ring.const(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.ring == other.ring and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return RatFunc._make(self.ring, -self.num, self.den)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.num, self.den, other.num, other.den
        if b == d:
            return RatFunc._build(self.ring, a + c, b)
        b1, d1, coprime = _cancel(b, d)
        if coprime:
            # gcd(ad + cb, bd) = 1 when both inputs are reduced and gcd(b, d) = 1
            return RatFunc._make(self.ring, *_monic(a * d + c * b, b * d))
        return RatFunc._build(self.ring, a * d1 + c * b1, b * d1)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.num, self.den, other.num, other.den
        if a.is_zero() or c.is_zero():
            return self.ring.zero()
        a, d, _ = _cancel(a, d)
        c, b, _ = _cancel(c, b)
        return RatFunc._make(self.ring, *_monic(a * c, b * d))

    def derive(self, var: int) -> "RatFunc":
        n, d = self.num, self.den
        return RatFunc._build(self.ring, n.derive(var) * d - n * d.derive(var), d * d)

    def __str__(self):
        if self.den.is_constant():
            return str(self.num)
        return f"({self.num})/({self.den})"


def _cancel(x: Poly, y: Poly) -> tuple[Poly, Poly, bool]:
    """(x/g, y/g, g == 1) for g = gcd(x, y)."""
    if x.is_constant() or y.is_constant():
        return x, y, True
    g, a, b = _to_sympy(x).cofactors(_to_sympy(y))
    if g.is_ground:
        return x, y, True
    return _from_sympy(x.ring, a), _from_sympy(y.ring, b), False


def _monic(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if num.is_zero():
        return num, den.ring.one()
    _, lc = den.leading()
    if lc != 1:
        num, den = num.scale(1 / lc), den.scale(1 / lc)
    return num, den


def _reduce(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if num.is_zero():
        return num, den.ring.one()
    num, den, _ = _cancel(num, den)
    return _monic(num, den)


class Series(RingElement):
    """Truncated power series known modulo t^precision."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: Ring, coeffs: Iterable, precision: int | None = None):
        if ring.kind != "series":
            raise RingMismatch(f"Series needs a series ring, got {ring}")
        coeffs = [_q(c) for c in coeffs]
        if precision is None:
            precision = ring.truncation
        if not 1 <= precision <= ring.truncation:
            raise ValueError(f"precision {precision} outside 1..{ring.truncation}")
        coeffs = (coeffs + [mpq(0)] * precision)[:precision]
        self.ring = ring
        self.coeffs = tuple(coeffs)

    @classmethod
    def _make(cls, ring, coeffs, precision=None):
        s = object.__new__(cls)
        s.ring = ring
        s.coeffs = tuple(coeffs)
        return s

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    def order(self) -> int:
        """Index of the first nonzero known coefficient (precision if none)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return self.precision

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def truncate(self, precision: int) -> "Series":
        return Series._make(self.ring, self.coeffs[:precision])

    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            other = self.ring.const(other)
        if not isinstance(other, Series):
            return NotImplemented
        if self.ring != other.ring:
            return False
        p = min(self.precision, other.precision)
        return self.coeffs[:p] == other.coeffs[:p]

    __hash__ = None

    def __neg__(self):
        return Series._make(self.ring, [-c for c in self.coeffs])

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Series._make(self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Series._make(self.ring, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = min(self.precision, other.precision)
        a = [(i, c) for i, c in enumerate(self.coeffs[:p]) if c]
        b = [(j, c) for j, c in enumerate(other.coeffs[:p]) if c]
        out = [mpq(0)] * p
        for i, ca in a:
            for j, cb in b:
                if i + j >= p:
                    break
                out[i + j] += ca * cb
        return Series._make(self.ring, out)

    def derive(self, var: int = 0) -> "Series":
        if var != 0:
            raise IndexError("series rings have a single variable")
        if self.precision < 2:
            raise PrecisionExhausted("derivative of a series known only to order 1")
        return Series._make(self.ring, [k * c for k, c in enumerate(self.coeffs) if k])

    def divide(self, other: "Series") -> "Series | None":
        if other.is_zero():
            raise DivisionByZero("division by a series with no known nonzero coefficient")
        k = other.order()
        if self.order() < k:
            return None
        p = min(self.precision, other.precision) - k
        if p < 1:
            raise PrecisionExhausted("quotient has no known coefficients")
        a, b = self.coeffs[k:k + p], other.coeffs[k:k + p]
        inv_b0 = 1 / b[0]
        q: list[mpq] = []
        for n in range(p):
            acc = a[n]
            for j in range(1, n + 1):
                if b[j]:
                    acc -= b[j] * q[n - j]
            q.append(acc * inv_b0)
        return Series._make(self.ring, q)

    def __str__(self):
        t = self.ring.variables[0]
        chunks = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else (t if k == 1 else f"{t}^{k}")
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            if not chunks:
                chunks.append(body if c > 0 else f"-{body}")
            else:
                chunks.append(f"{'+' if c > 0 else '-'} {body}")
        tail = f"O({t}^{self.precision})" if self.precision > 1 else f"O({t})"
        chunks.append(f"+ {tail}" if chunks else tail)
        return " ".join(chunks)


def derive(r: RingElement, var: int) -> RingElement:
    """Partial derivative of ``r`` with respect to variable index ``var``."""
    if not 0 <= var < r.ring.nvars:
        raise IndexError(f"variable index {var} out of range for {r.ring}")
    return r.derive(var)


def exact_divide(a: RingElement, b: RingElement) -> RingElement | None:
    """Return c with c*b == a if it exists in the ring of ``a``, else None.

    Raises DivisionByZero when ``b`` is zero.
    """
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    if b.is_zero():
        raise DivisionByZero(f"division by zero in {a.ring}")
    if isinstance(a, Poly):
        return a.divide(b)
    if isinstance(a, RatFunc):
        return RatFunc._build(a.ring, a.num * b.den, a.den * b.num)
    return a.divide(b)


def monomials(nvars: int, max_degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total degree <= max_degree, in graded-lex order."""
    out = []
    for d in range(max_degree + 1):
        for combo in combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return sorted(set(out), key=order_key)


def common_precision(*values) -> int | None:
    """Minimum series precision over (nested) values; None if nothing is a series."""
    best = None
    stack = list(values)
    while stack:
        v = stack.pop()
        if isinstance(v, RingElement):
            p = v.precision
            if p is not None and (best is None or p < best):
                best = p
        elif isinstance(v, (list, tuple)):
            stack.extend(v)
        elif hasattr(v, "elements"):
            stack.extend(v.elements())
    return best
