"""Pre-Lie-Rinehart structures built from a duality pairing.

Data: a pairing <.,.> : L x N -> R given by a Gram matrix G on free modules,
a CDO (D0, X0) on N, a vector y0 in N, and the operator E0 on L dual to D0
in the sense X0(<l, n>) = <E0 l, n> + <l, D0 n>.  Two products are built:

* ``thm1``: l1 . l2 = <l1, y0> E0(l2)
* ``thm2``: l1 . l2 = <l1, y0> E0(l2) - <l1, D0 y0> l2

with anchor rho(l) = <l, y0> X0 in both cases.  Each is left-symmetric as
soon as (l1, l2) -> <l1, y0><l2, w> is symmetric, where w = D0 y0 for thm1 and
w = D0^2 y0 for thm2.  That form is R-bilinear, so checking it on basis
pairs decides it.  The associator is not R-linear in its last slot, so
left-symmetry, Jacobi and flatness are only tested on random samples.

The cotangent instance takes L = one-forms, N = vector fields, G = identity,
D0 = ad X, E0 = L_X and y0 = Y (:func:`standard_omega_instance`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as cartesian

from .calculus import (
    OneForm,
    VectorField,
    ad_matrix,
    d_scalar,
    lie_derivative,
    lie_derivative_matrix,
    pair,
    vf_bracket,
)
from .cdo import CdoOperator, FreeModule, derive_matrix
from .errors import ConditionViolated, PrecisionExhausted, RingMismatch, SingularPairing, ZeroFieldError
from .linalg import (
    Matrix,
    Vector,
    det,
    identity,
    inverse,
    mat_mul,
    mat_scale,
    mat_sub,
    transpose,
    vec_scale,
    vec_sub,
)
from .results import CheckResult, describe
from .rings import Ring, RingElement, common_precision, exact_divide, monomials

VARIANTS = ("thm1", "thm2")


@dataclass(frozen=True)
class PairingSpace:
    """Free modules L, N of equal rank with <e^L_i, e^N_j> = G[i][j]."""

    L: FreeModule
    N: FreeModule
    G: Matrix

    def __post_init__(self):
        if self.L.ring != self.N.ring:
            raise RingMismatch(f"{self.L.ring} vs {self.N.ring}")
        if self.L.rank != self.N.rank:
            raise SingularPairing("L and N must have equal rank")
        G = tuple(tuple(self.L.ring.coerce(x) for x in row) for row in self.G)
        if len(G) != self.L.rank or any(len(row) != self.L.rank for row in G):
            raise ValueError(f"G must be {self.L.rank}x{self.L.rank}")
        if det(G).is_zero():
            raise SingularPairing("det(G) = 0: the pairing is degenerate")
        object.__setattr__(self, "G", G)

    @classmethod
    def standard(cls, ring: Ring, rank: int) -> "PairingSpace":
        return cls(FreeModule(ring, rank), FreeModule(ring, rank), identity(ring, rank))

    @property
    def ring(self) -> Ring:
        return self.L.ring

    def pair(self, l, n) -> RingElement:
        l, n = self.L.vector(l), self.N.vector(n)
        total = self.ring.zero()
        for a, row in zip(l, self.G):
            if not a.is_exact_zero():
                for g, b in zip(row, n):
                    if not g.is_exact_zero():
                        total += a * g * b
        return total


def duality_defects(space: PairingSpace, X0: VectorField, D0: CdoOperator, E0: CdoOperator):
    """Basis pairs (i, j) where X0(G_ij) != <E0 e_i, e_j> + <e_i, D0 e_j>."""
    bad = []
    L, N = space.L, space.N
    for i in range(L.rank):
        Ei = E0.apply(L.basis(i))
        for j in range(N.rank):
            lhs = X0(space.G[i][j])
            rhs = space.pair(Ei, N.basis(j)) + space.pair(L.basis(i), D0.apply(N.basis(j)))
            if lhs != rhs:
                bad.append((i, j, lhs, rhs))
    return bad


@dataclass(frozen=True)
class StructureData:
    space: PairingSpace
    y0: Vector
    X0: VectorField
    D0: CdoOperator
    E0: CdoOperator

    def __post_init__(self):
        object.__setattr__(self, "y0", self.space.N.vector(self.y0))
        if self.D0.module != self.space.N or self.E0.module != self.space.L:
            raise RingMismatch("D0 must act on N and E0 on L")
        if self.D0.X != self.X0 or self.E0.X != self.X0:
            raise ValueError("D0 and E0 must both have derivation part X0")
        bad = duality_defects(self.space, self.X0, self.D0, self.E0)
        if bad:
            i, j, lhs, rhs = bad[0]
            raise ConditionViolated(
                f"E0 and D0 violate the duality relation on basis pair ({i + 1}, {j + 1})",
                {"pair": [i + 1, j + 1], "lhs": str(lhs), "rhs": str(rhs)},
            )


@dataclass(frozen=True)
class PreLieStructure:
    variant: str
    data: StructureData
    labels: tuple[str, ...] = ()
    X: VectorField | None = field(default=None, compare=False)
    Y: VectorField | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"e{i + 1}" for i in range(self.L.rank)))

    @property
    def ring(self) -> Ring:
        return self.data.space.ring

    @property
    def L(self) -> FreeModule:
        return self.data.space.L

    @property
    def is_omega(self) -> bool:
        """True for the cotangent instance (L = one-forms, N = vector fields)."""
        return self.X is not None

    @cached_property
    def D0y0(self) -> Vector:
        return self.data.D0.apply(self.data.y0)

    @cached_property
    def D0sq_y0(self) -> Vector:
        return self.data.D0.apply(self.D0y0)

    @cached_property
    def weight(self) -> Vector:
        """The vector w pairing against l2 in the symmetry condition."""
        return self.D0y0 if self.variant == "thm1" else self.D0sq_y0

    def vector(self, l) -> Vector:
        return self.L.vector(l)

    def describe(self) -> dict:
        return {
            "variant": self.variant,
            "X0": self.data.X0.to_strings(),
            "y0": describe(self.data.y0),
            "G": describe(self.data.space.G),
        }


def build_structure(variant: str, data: StructureData, *, force: bool = False, **kw) -> PreLieStructure:
    """Wrap ``data`` as a structure, refusing (unless ``force``) when the symmetry condition fails."""
    s = PreLieStructure(variant, data, **kw)
    if not force:
        result = symmetry_condition(s)
        if result.status == "fail":
            raise ConditionViolated(
                f"symmetry condition for {variant} fails on {result.witness['pair']}",
                result.witness,
                result,
            )
    return s


def derive_dual_operator(space: PairingSpace, D0: CdoOperator, X0: VectorField) -> CdoOperator:
    """The unique E0 on L, with derivation part X0, dual to D0 under the pairing.

    On basis vectors the relation reads A_E^T G = X0(G) - G A_D, solved with
    G^{-1}; G must be invertible over the carrier.
    """
    if D0.module != space.N:
        raise RingMismatch("D0 must act on N")
    Ginv = inverse(space.G)
    rhs = mat_sub(derive_matrix(X0, space.G), mat_mul(space.G, D0.A))
    return CdoOperator(space.L, transpose(mat_mul(rhs, Ginv)), X0)


def standard_omega_instance(
    X: VectorField, Y: VectorField, variant: str = "thm1", *, force: bool = False
) -> PreLieStructure:
    """Cotangent structure with anchor rho(alpha) = alpha(Y) X."""
    if X.ring != Y.ring:
        raise RingMismatch(f"{X.ring} vs {Y.ring}")
    ring = X.ring
    space = PairingSpace.standard(ring, ring.nvars)
    D0 = CdoOperator(space.N, ad_matrix(X), X)
    E0 = CdoOperator(space.L, lie_derivative_matrix(X), X)
    data = StructureData(space, Y.coeffs, X, D0, E0)
    labels = tuple(f"d{v}" for v in ring.variables)
    return build_structure(variant, data, force=force, labels=labels, X=X, Y=Y)


# -- structure operations -------------------------------------------------------


def pairing(s: PreLieStructure, l, n) -> RingElement:
    return s.data.space.pair(l, n)


def anchor(s: PreLieStructure, l) -> VectorField:
    return pairing(s, s.vector(l), s.data.y0) * s.data.X0


def product(s: PreLieStructure, l1, l2) -> Vector:
    l1, l2 = s.vector(l1), s.vector(l2)
    out = vec_scale(pairing(s, l1, s.data.y0), s.data.E0.apply(l2))
    if s.variant == "thm2":
        out = vec_sub(out, vec_scale(pairing(s, l1, s.D0y0), l2))
    return out


def bracket(s: PreLieStructure, l1, l2) -> Vector:
    return vec_sub(product(s, l1, l2), product(s, l2, l1))


def associator(s: PreLieStructure, l1, l2, l3) -> Vector:
    return vec_sub(product(s, l1, product(s, l2, l3)), product(s, product(s, l1, l2), l3))


def jacobiator(s: PreLieStructure, l1, l2, l3) -> Vector:
    a = bracket(s, l1, bracket(s, l2, l3))
    b = bracket(s, l2, bracket(s, l3, l1))
    c = bracket(s, l3, bracket(s, l1, l2))
    return tuple(x + y + z for x, y, z in zip(a, b, c))


def nabla_operator(s: PreLieStructure, l) -> CdoOperator:
    l = s.vector(l)
    E0 = s.data.E0
    c = pairing(s, l, s.data.y0)
    A = mat_scale(c, E0.A)
    if s.variant == "thm2":
        A = mat_sub(A, mat_scale(pairing(s, l, s.D0y0), identity(s.ring, s.L.rank)))
    return CdoOperator(s.L, A, c * s.data.X0)


def symmetry_condition(s: PreLieStructure) -> CheckResult:
    """Basis check of the symmetry of B(l1, l2) = <l1, y0><l2, w>."""
    name = "symmetry"
    L = s.L
    if L.rank == 1:
        return CheckResult(name, "pass", 0)
    try:
        left = [pairing(s, L.basis(i), s.data.y0) for i in range(L.rank)]
        right = [pairing(s, L.basis(i), s.weight) for i in range(L.rank)]
    except PrecisionExhausted as exc:
        return CheckResult(name, "inapplicable", 0, info={"reason": str(exc)})
    checked = 0
    for i in range(L.rank):
        for j in range(i + 1, L.rank):
            checked += 1
            bij, bji = left[i] * right[j], left[j] * right[i]
            if bij != bji:
                witness = {
                    "pair": [s.labels[i], s.labels[j]],
                    "values": [str(bij), str(bji)],
                }
                return CheckResult(name, "fail", checked, witness, common_precision(bij, bji))
    return CheckResult(name, "pass", checked, None, common_precision(left, right))


def eigen_solve(X: VectorField, Y: VectorField, order: int) -> RingElement | None:
    """c with (ad X)^order Y = c Y, or None when no such c exists in the ring."""
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    if X.ring != Y.ring:
        raise RingMismatch(f"{X.ring} vs {Y.ring}")
    if Y.is_zero():
        raise ZeroFieldError("Y must be nonzero")
    Z = Y
    for _ in range(order):
        Z = vf_bracket(X, Z)
    i = next(k for k, y in enumerate(Y.coeffs) if not y.is_zero())
    c = exact_divide(Z.coeffs[i], Y.coeffs[i])
    if c is None:
        return None
    if all(c * y == z for y, z in zip(Y.coeffs, Z.coeffs)):
        return c
    return None


def omega_bracket(X: VectorField, Y: VectorField, a1: OneForm, a2: OneForm, variant: str) -> OneForm:
    """The cotangent bracket written out with one-form operations.

    thm1: a1(Y) L_X a2 - a2(Y) L_X a1;
    thm2 additionally - a1([X, Y]) a2 + a2([X, Y]) a1.
    """
    out = pair(a1, Y) * lie_derivative(X, a2) - pair(a2, Y) * lie_derivative(X, a1)
    if variant == "thm2":
        XY = vf_bracket(X, Y)
        out = out - pair(a1, XY) * a2 + pair(a2, XY) * a1
    return out


def find_left_symmetry_witness(s: PreLieStructure, max_degree: int = 1) -> dict | None:
    """Search triples of monomial multiples of basis vectors for (l1,l2,l3) != (l2,l1,l3)."""
    L, ring = s.L, s.ring
    candidates = []
    for e in monomials(ring.nvars, max_degree):
        m = ring.from_terms({e: 1})
        for i in range(L.rank):
            candidates.append(vec_scale(m, L.basis(i)))
    for l1, l2, l3 in cartesian(candidates, repeat=3):
        a, b = associator(s, l1, l2, l3), associator(s, l2, l1, l3)
        if a != b:
            return {
                "l1": describe(l1),
                "l2": describe(l2),
                "l3": describe(l3),
                "lhs": describe(a),
                "rhs": describe(b),
            }
    return None


def skew_pairing(s: PreLieStructure, r1: RingElement, r2: RingElement) -> RingElement:
    """<rho(d r1), d r2> for the cotangent instance."""
    if not s.is_omega:
        raise ValueError("skew pairing needs the cotangent instance")
    return pair(d_scalar(r2), anchor(s, d_scalar(r1).coeffs))


def skew_asymmetry_witness(s: PreLieStructure, max_degree: int = 2) -> dict | None:
    """Monomials r1, r2 with Y(r1)X(r2) != -Y(r2)X(r1), if any of degree <= max_degree."""
    if not s.is_omega:
        raise ValueError("skew probe needs the cotangent instance")
    ring = s.ring
    monos = [ring.from_terms({e: 1}) for e in monomials(ring.nvars, max_degree)]
    for r1 in monos:
        for r2 in monos:
            a = s.Y(r1) * s.X(r2)
            b = -(s.Y(r2) * s.X(r1))
            if a != b:
                return {"r1": str(r1), "r2": str(r2), "Y(r1)X(r2)": str(a), "-Y(r2)X(r1)": str(b)}
    return None
