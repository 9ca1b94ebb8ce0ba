"""Covariant differential operators and the lift through an idempotent."""

from cyclor import (
    CdoOperator,
    FreeModule,
    IdempotentPresentation,
    Ring,
    VectorField,
    cdo_bracket,
    cdo_check,
    projective_lift,
)

R = Ring.poly("t")
t = R.gen(0)
d = VectorField.basis(R, 0)
F = FreeModule(R, 2)

pres = IdempotentPresentation(F, [[1, "t"], [0, 0]])
op = projective_lift(pres, d)
print("lift matrix A =", [[str(a) for a in row] for row in op.A])
print("cdo_check     :", cdo_check(op).status)

n = pres.project([t ** 3, 1])
print("n in image    :", [str(x) for x in n])
print("D n           :", [str(x) for x in op.apply(n)], pres.contains(op.apply(n)))

a = CdoOperator(FreeModule(R, 1), [[0]], d)
b = CdoOperator(FreeModule(R, 1), [["t"]], VectorField.zero(R))
print("[d/dt, t]     =", cdo_bracket(a, b).A[0][0])
