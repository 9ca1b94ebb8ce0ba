"""Exact rings and the Cartan calculus on one-forms and vector fields."""

from cyclor import Ring, VectorField, d_oneform, d_scalar, lie_derivative, pair, vf_bracket
from cyclor.calculus import OneForm

P = Ring.poly("t1", "t2")
Q = Ring.ratfunc("t")
S = Ring.series("t", 8)

f = P.parse("t1^2*t2 - 3*t2 + 1/2")
print("f        =", f)
print("df/dt1   =", f.derive(0))

# rational functions stay reduced with a monic denominator
r = Q.parse("(t^2 - 1)/(2*t - 2)")
print("r        =", r)

# series know how many coefficients they carry; derivation loses one
e = S.series_from([1, 1, "1/2", "1/6", "1/24", "1/120", "1/720", "1/5040"])
print("exp      =", e)
print("exp'     =", e.derive(0), " equal:", e.derive(0) == e)

X = VectorField.parse(P, ["t1", "t2"])
Y = VectorField.parse(P, ["t1*t2", "0"])
print("[X, Y]   =", vf_bracket(X, Y).to_strings())

alpha = OneForm.parse(P, ["t2", "t1^2"])
print("L_X a    =", lie_derivative(X, alpha).to_strings())
print("a(Y)     =", pair(alpha, Y))
print("d(df)=0  :", d_oneform(d_scalar(f)).is_zero())
