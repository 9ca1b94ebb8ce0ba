"""Vector fields, one- and two-forms over a carrier ring, and their calculus.

The module of derivations is modelled as the free module on the coordinate
derivations d/dt_i, and one-forms as the free module on the dt_i, so every
object here is a coefficient tuple over a :class:`~cyclor.rings.Ring`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import RingMismatch
from .rings import Ring, RingElement


def _coeffs(ring: Ring, coeffs: Iterable) -> tuple[RingElement, ...]:
    out = tuple(ring.coerce(c) for c in coeffs)
    if len(out) != ring.nvars:
        raise ValueError(f"expected {ring.nvars} coefficients for {ring}, got {len(out)}")
    return out


def _same_ring(*objs):
    ring = objs[0].ring
    for o in objs[1:]:
        if o.ring != ring:
            raise RingMismatch(f"{ring} vs {o.ring}")
    return ring


class _CoeffVector:
    """Shared arithmetic for VectorField and OneForm."""

    ring: Ring
    coeffs: tuple[RingElement, ...]

    @classmethod
    def parse(cls, ring: Ring, exprs: Sequence[str], bindings=None):
        return cls(ring, [ring.parse(e, bindings) if isinstance(e, str) else e for e in exprs])

    @classmethod
    def zero(cls, ring: Ring):
        return cls(ring, [ring.zero()] * ring.nvars)

    @classmethod
    def basis(cls, ring: Ring, i: int):
        return cls(ring, [ring.one() if j == i else ring.zero() for j in range(ring.nvars)])

    def __add__(self, other):
        _same_ring(self, other)
        return type(self)(self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        _same_ring(self, other)
        return type(self)(self.ring, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return type(self)(self.ring, [-a for a in self.coeffs])

    def __rmul__(self, r):
        r = self.ring.coerce(r)
        return type(self)(self.ring, [r * a for a in self.coeffs])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def elements(self):
        return self.coeffs

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.coeffs]


@dataclass(frozen=True, eq=True)
class VectorField(_CoeffVector):
    """A derivation sum_i coeffs[i] * d/dt_i."""

    ring: Ring
    coeffs: tuple[RingElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _coeffs(self.ring, self.coeffs))

    def __call__(self, r: RingElement) -> RingElement:
        return apply(self, r)

    def __str__(self):
        parts = [
            f"({c})*d/d{v}" for c, v in zip(self.coeffs, self.ring.variables) if not c.is_zero()
        ]
        return " + ".join(parts) or "0"


@dataclass(frozen=True, eq=True)
class OneForm(_CoeffVector):
    """A one-form sum_i coeffs[i] * dt_i."""

    ring: Ring
    coeffs: tuple[RingElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _coeffs(self.ring, self.coeffs))

    def __call__(self, X: VectorField) -> RingElement:
        return pair(self, X)

    def __str__(self):
        parts = [
            f"({c})*d{v}" for c, v in zip(self.coeffs, self.ring.variables) if not c.is_zero()
        ]
        return " + ".join(parts) or "0"


@dataclass(frozen=True, eq=True)
class TwoForm:
    """Skew-symmetric bilinear form; only the (i, j), i < j, coefficients are stored."""

    ring: Ring
    coeffs: tuple[tuple[tuple[int, int], RingElement], ...]

    def __post_init__(self):
        given = dict(self.coeffs.items() if isinstance(self.coeffs, Mapping) else self.coeffs)
        n = self.ring.nvars
        for i, j in given:
            if not 0 <= i < j < n:
                raise ValueError(f"two-form keys must satisfy 0 <= i < j < {n}, got {(i, j)}")
        full = tuple(
            ((i, j), self.ring.coerce(given.get((i, j), 0))) for i, j in combinations(range(n), 2)
        )
        object.__setattr__(self, "coeffs", full)

    @classmethod
    def zero(cls, ring: Ring) -> "TwoForm":
        return cls(ring, {})

    def coeff(self, i: int, j: int) -> RingElement:
        if i == j:
            return self.ring.zero()
        if i > j:
            return -self.coeff(j, i)
        return dict(self.coeffs)[(i, j)]

    def __call__(self, X: VectorField, Y: VectorField) -> RingElement:
        _same_ring(self, X, Y)
        total = self.ring.zero()
        for (i, j), c in self.coeffs:
            total += c * (X.coeffs[i] * Y.coeffs[j] - X.coeffs[j] * Y.coeffs[i])
        return total

    def is_zero(self) -> bool:
        return all(c.is_zero() for _, c in self.coeffs)

    def elements(self):
        return tuple(c for _, c in self.coeffs)

    def to_strings(self) -> dict[str, str]:
        return {f"{i + 1},{j + 1}": str(c) for (i, j), c in self.coeffs}

    def __str__(self):
        v = self.ring.variables
        parts = [f"({c})*d{v[i]}^d{v[j]}" for (i, j), c in self.coeffs if not c.is_zero()]
        return " + ".join(parts) or "0"


def apply(X: VectorField, r: RingElement) -> RingElement:
    """X(r) = sum_i X_i * dr/dt_i."""
    if X.ring != r.ring:
        raise RingMismatch(f"{X.ring} vs {r.ring}")
    total = X.ring.zero()
    for i, c in enumerate(X.coeffs):
        if not c.is_exact_zero():
            total += c * r.derive(i)
    return total


def pair(alpha: OneForm, X: VectorField) -> RingElement:
    """Evaluation alpha(X) = sum_i alpha_i * X_i."""
    _same_ring(alpha, X)
    total = X.ring.zero()
    for a, x in zip(alpha.coeffs, X.coeffs):
        total += a * x
    return total


def vf_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """Commutator [X, Y], coordinatewise X(Y_i) - Y(X_i)."""
    ring = _same_ring(X, Y)
    return VectorField(ring, [apply(X, y) - apply(Y, x) for x, y in zip(X.coeffs, Y.coeffs)])


def d_scalar(r: RingElement) -> OneForm:
    return OneForm(r.ring, [r.derive(i) for i in range(r.ring.nvars)])


def d_oneform(alpha: OneForm) -> TwoForm:
    # (d alpha)(d_i, d_j) = d_i(alpha_j) - d_j(alpha_i); coordinate fields commute
    n = alpha.ring.nvars
    return TwoForm(
        alpha.ring,
        {
            (i, j): alpha.coeffs[j].derive(i) - alpha.coeffs[i].derive(j)
            for i, j in combinations(range(n), 2)
        },
    )


def lie_derivative(X: VectorField, alpha: OneForm) -> OneForm:
    """Lie derivative of a one-form along X.

    Evaluating (L_X alpha)(Y) = X(alpha(Y)) - alpha([X, Y]) on Y = d/dt_i gives
    the i-th coefficient X(alpha_i) + sum_j alpha_j * d(X_j)/dt_i.
    """
    ring = _same_ring(X, alpha)
    out = []
    for i in range(ring.nvars):
        c = apply(X, alpha.coeffs[i])
        for a, x in zip(alpha.coeffs, X.coeffs):
            if not a.is_exact_zero():
                c += a * x.derive(i)
        out.append(c)
    return OneForm(ring, out)


def lie_derivative_matrix(X: VectorField) -> tuple[tuple[RingElement, ...], ...]:
    """R-linear part of L_X in the dt basis: entry (i, j) is d(X_j)/dt_i."""
    n = X.ring.nvars
    return tuple(tuple(X.coeffs[j].derive(i) for j in range(n)) for i in range(n))


def ad_matrix(X: VectorField) -> tuple[tuple[RingElement, ...], ...]:
    """R-linear part of ad X in the d/dt basis: column j holds [X, d/dt_j], i.e. -d(X_k)/dt_j."""
    n = X.ring.nvars
    return tuple(tuple(-X.coeffs[k].derive(j) for j in range(n)) for k in range(n))
