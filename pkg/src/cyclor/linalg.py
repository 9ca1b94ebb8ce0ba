"""Small dense matrix/vector helpers over a carrier ring.

Vectors are tuples of ring elements, matrices are tuples of row tuples.
Ranks here are tiny, so determinants use cofactor expansion.
"""

from __future__ import annotations

from typing import Sequence

from .errors import SingularPairing
from .rings import Ring, RingElement, exact_divide

Vector = tuple[RingElement, ...]
Matrix = tuple[tuple[RingElement, ...], ...]


def as_vector(ring: Ring, v) -> Vector:
    if hasattr(v, "coeffs") and not isinstance(v, RingElement):
        v = v.coeffs
    return tuple(ring.coerce(x) for x in v)


def as_matrix(ring: Ring, rows: Sequence[Sequence]) -> Matrix:
    m = tuple(tuple(ring.coerce(x) for x in row) for row in rows)
    if any(len(row) != len(m) for row in m):
        raise ValueError("matrix must be square")
    return m


def zeros(ring: Ring, n: int) -> Matrix:
    z = ring.zero()
    return tuple((z,) * n for _ in range(n))


def identity(ring: Ring, n: int) -> Matrix:
    z, o = ring.zero(), ring.one()
    return tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A))


def mat_vec(A: Matrix, v: Vector) -> Vector:
    ring = v[0].ring
    out = []
    for row in A:
        acc = ring.zero()
        for a, x in zip(row, v):
            if not (a.is_exact_zero() or x.is_exact_zero()):
                acc = acc + a * x
        out.append(acc)
    return tuple(out)


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    cols = transpose(B)
    return tuple(mat_vec(cols, row) for row in A)


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_scale(r: RingElement, A: Matrix) -> Matrix:
    return tuple(tuple(r * a for a in row) for row in A)


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(r: RingElement, v: Vector) -> Vector:
    return tuple(r * a for a in v)


def is_zero_vector(v: Vector) -> bool:
    return all(x.is_zero() for x in v)


def det(A: Matrix) -> RingElement:
    n = len(A)
    if n == 1:
        return A[0][0]
    total = A[0][0].ring.zero()
    for j in range(n):
        if A[0][j].is_exact_zero():
            continue
        minor = tuple(row[:j] + row[j + 1:] for row in A[1:])
        term = A[0][j] * det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def inverse(A: Matrix) -> Matrix:
    """Inverse over the carrier ring, via adjugate / determinant.

    Raises SingularPairing when the determinant is zero or not a unit.
    """
    n = len(A)
    d = det(A)
    if d.is_zero():
        raise SingularPairing("matrix has zero determinant")
    ring = d.ring
    inv_d = exact_divide(ring.one(), d)
    if inv_d is None:
        raise SingularPairing(f"determinant {d} is not a unit in {ring}")
    if n == 1:
        return ((inv_d,),)
    adj = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = tuple(r[:i] + r[i + 1:] for k, r in enumerate(A) if k != j)
            c = det(minor)
            row.append(inv_d * (c if (i + j) % 2 == 0 else -c))
        adj.append(tuple(row))
    return tuple(adj)
