"""Covariant differential operators on finite free modules.

A CDO on R^n is stored as a pair (A, X): an R-linear matrix part and a
derivation part, acting by D(v) = A v + X(v) with X applied entrywise.  Every
such pair satisfies D(r v) = r D(v) + X(r) v, and conversely every
K-endomorphism with that property has this form (take A to be D on the
standard basis).  So checking the relation on the ring generators t_i is
complete: if it holds for r and s it holds for r + s and r s, and constants
act K-linearly.

Projective modules are given as the image of an idempotent matrix P on a
free module F.  For n = P n the lift sum_i X(e_i^*(n)) P(e_i) = P X(n)
equals X(n) - X(P) n (differentiate n = P n entrywise), hence the closed
matrix form A = -X(P) used by :func:`projective_lift`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .calculus import VectorField, apply, vf_bracket
from .errors import NotIdempotent, RingMismatch
from .linalg import (
    Matrix,
    Vector,
    as_matrix,
    as_vector,
    identity,
    mat_add,
    mat_mul,
    mat_scale,
    mat_sub,
    mat_vec,
    vec_add,
    vec_scale,
    vec_sub,
    zeros,
)
from .results import CheckResult, describe
from .rings import Ring, RingElement, common_precision
from .sampling import SamplerConfig, draw_vector


@dataclass(frozen=True)
class FreeModule:
    ring: Ring
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be >= 1")

    def vector(self, entries) -> Vector:
        v = as_vector(self.ring, entries)
        if len(v) != self.rank:
            raise ValueError(f"expected {self.rank} entries, got {len(v)}")
        return v

    def zero(self) -> Vector:
        return (self.ring.zero(),) * self.rank

    def basis(self, i: int) -> Vector:
        return tuple(self.ring.one() if j == i else self.ring.zero() for j in range(self.rank))


def entrywise(X: VectorField, v: Vector) -> Vector:
    return tuple(apply(X, x) for x in v)


def derive_matrix(X: VectorField, A: Matrix) -> Matrix:
    return tuple(tuple(apply(X, a) for a in row) for row in A)


@dataclass(frozen=True)
class CdoOperator:
    """The pair (D, X) with D(v) = A v + X(v)."""

    module: FreeModule
    A: Matrix
    X: VectorField

    def __post_init__(self):
        A = as_matrix(self.module.ring, self.A)
        if len(A) != self.module.rank:
            raise ValueError(f"matrix part must be {self.module.rank}x{self.module.rank}")
        if self.X.ring != self.module.ring:
            raise RingMismatch(f"{self.X.ring} vs {self.module.ring}")
        object.__setattr__(self, "A", A)

    @classmethod
    def zero(cls, module: FreeModule) -> "CdoOperator":
        return cls(module, zeros(module.ring, module.rank), VectorField.zero(module.ring))

    def apply(self, v) -> Vector:
        v = self.module.vector(v)
        return vec_add(mat_vec(self.A, v), entrywise(self.X, v))

    __call__ = apply

    def scaled(self, r: RingElement) -> "CdoOperator":
        r = self.module.ring.coerce(r)
        return CdoOperator(self.module, mat_scale(r, self.A), r * self.X)

    def __add__(self, other: "CdoOperator") -> "CdoOperator":
        _same_module(self, other)
        return CdoOperator(self.module, mat_add(self.A, other.A), self.X + other.X)

    def __sub__(self, other: "CdoOperator") -> "CdoOperator":
        _same_module(self, other)
        return CdoOperator(self.module, mat_sub(self.A, other.A), self.X - other.X)

    def is_zero(self) -> bool:
        return self.X.is_zero() and all(a.is_zero() for row in self.A for a in row)

    def elements(self):
        return tuple(a for row in self.A for a in row) + self.X.coeffs

    def describe(self) -> dict:
        return {"A": [[str(a) for a in row] for row in self.A], "X": self.X.to_strings()}


@dataclass(frozen=True)
class ExtensionalOperator:
    """An arbitrary map on module vectors paired with a claimed derivation part."""

    module: FreeModule
    func: Callable[[Vector], Sequence]
    X: VectorField

    def apply(self, v) -> Vector:
        return self.module.vector(self.func(self.module.vector(v)))

    __call__ = apply


def _same_module(a, b):
    if a.module != b.module:
        raise RingMismatch(f"{a.module} vs {b.module}")


def cdo_apply(op: CdoOperator, v) -> Vector:
    return op.apply(v)


def cdo_check(op, cfg: SamplerConfig | None = None) -> CheckResult:
    """Check D(t_i v) - t_i D(v) == X(t_i) v for every generator t_i and random v.

    Works for :class:`CdoOperator` and :class:`ExtensionalOperator`; a failure
    carries the generator, the vector and both sides.
    """
    cfg = cfg or SamplerConfig(trials=10)
    module = op.module
    ring = module.ring
    precision = None
    for trial in range(cfg.trials):
        rng = cfg.rng("cdo_check", trial)
        v = draw_vector(cfg, ring, rng, module.rank)
        for i, t in enumerate(ring.gens):
            lhs = vec_sub(op.apply(vec_scale(t, v)), vec_scale(t, op.apply(v)))
            rhs = vec_scale(apply(op.X, t), v)
            p = common_precision(lhs, rhs)
            precision = p if precision is None or (p is not None and p < precision) else precision
            if lhs != rhs:
                witness = {"r": str(t), "v": describe(v), "lhs": describe(lhs), "rhs": describe(rhs)}
                return CheckResult("cdo_check", "fail", trial + 1, witness, precision)
    status = "pass" if cfg.trials else "inapplicable"
    return CheckResult("cdo_check", status, cfg.trials, None, precision)


def cdo_bracket(op1: CdoOperator, op2: CdoOperator) -> CdoOperator:
    """Commutator of two CDOs: (A1A2 - A2A1 + X1(A2) - X2(A1), [X1, X2])."""
    _same_module(op1, op2)
    A = mat_sub(mat_mul(op1.A, op2.A), mat_mul(op2.A, op1.A))
    A = mat_add(A, mat_sub(derive_matrix(op1.X, op2.A), derive_matrix(op2.X, op1.A)))
    return CdoOperator(op1.module, A, vf_bracket(op1.X, op2.X))


@dataclass(frozen=True)
class IdempotentPresentation:
    """A projective module realised as the image of P (P P = P) on a free module F."""

    F: FreeModule
    P: Matrix

    def __post_init__(self):
        P = as_matrix(self.F.ring, self.P)
        if len(P) != self.F.rank:
            raise ValueError(f"P must be {self.F.rank}x{self.F.rank}")
        object.__setattr__(self, "P", P)
        if mat_mul(P, P) != P:
            raise NotIdempotent("P*P != P")

    def project(self, f) -> Vector:
        return mat_vec(self.P, self.F.vector(f))

    def contains(self, n) -> bool:
        n = self.F.vector(n)
        return self.project(n) == n


def projective_lift(pres: IdempotentPresentation, X: VectorField) -> CdoOperator:
    """CDO on F with derivation part X that restricts to image(P)."""
    if mat_mul(pres.P, pres.P) != pres.P:
        raise NotIdempotent("P*P != P")
    A = tuple(tuple(-a for a in row) for row in derive_matrix(X, pres.P))
    return CdoOperator(pres.F, A, X)


def summation_lift(pres: IdempotentPresentation, X: VectorField, f) -> Vector:
    """sum_i X(e_i^*(f)) P(e_i), evaluated term by term."""
    F = pres.F
    f = F.vector(f)
    total = F.zero()
    for i in range(F.rank):
        total = vec_add(total, vec_scale(apply(X, f[i]), pres.project(F.basis(i))))
    return total


@dataclass(frozen=True)
class Connection:
    """l -> projective_lift(pres, rho(l)) for an anchored free module L."""

    L: FreeModule
    anchor_fields: tuple[VectorField, ...]
    pres: IdempotentPresentation

    def anchor(self, l) -> VectorField:
        l = self.L.vector(l)
        total = VectorField.zero(self.L.ring)
        for c, Z in zip(l, self.anchor_fields):
            total = total + c * Z
        return total

    def __call__(self, l) -> CdoOperator:
        return projective_lift(self.pres, self.anchor(l))


def connection_from_lift(
    L: FreeModule, anchor_fields: Sequence[VectorField], pres: IdempotentPresentation
) -> Connection:
    """Connection L -> CDO(image P) whose derivation part is the anchor of L.

    ``anchor_fields[k]`` is the image of the k-th basis vector of L.
    """
    anchor_fields = tuple(anchor_fields)
    if len(anchor_fields) != L.rank:
        raise ValueError(f"need {L.rank} anchor fields, got {len(anchor_fields)}")
    for Z in anchor_fields:
        if Z.ring != L.ring:
            raise RingMismatch(f"{Z.ring} vs {L.ring}")
    if pres.F.ring != L.ring:
        raise RingMismatch(f"{pres.F.ring} vs {L.ring}")
    return Connection(L, anchor_fields, pres)


def identity_operator(module: FreeModule) -> CdoOperator:
    return CdoOperator(module, identity(module.ring, module.rank), VectorField.zero(module.ring))
