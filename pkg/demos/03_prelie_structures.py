"""Cotangent pre-Lie structures: a good one, a refused one and a forced one."""

from cyclor import (
    ConditionViolated,
    Ring,
    SamplerConfig,
    VectorField,
    eigen_solve,
    run_suite,
    standard_omega_instance,
    symmetry_condition,
)

P = Ring.poly("t1", "t2")
X = VectorField.parse(P, ["t1", "t2"])
Y = VectorField.parse(P, ["t1*t2", "0"])
print("eigen [X, Y] = c Y, c =", eigen_solve(X, Y, 1))

s = standard_omega_instance(X, Y, "thm1")
for r in run_suite(s, SamplerConfig(trials=25)):
    print(f"  {r.name:<15} {r.status}")

X = VectorField.parse(P, ["1", "0"])
Y = VectorField.parse(P, ["t1", "1"])
try:
    standard_omega_instance(X, Y, "thm1")
except ConditionViolated as exc:
    print("refused:", exc)

s = standard_omega_instance(X, Y, "thm1", force=True)
print("symmetry witness:", symmetry_condition(s).witness)
bad = [r for r in run_suite(s, SamplerConfig(trials=25)) if r.status == "fail"]
print("failing checks  :", [r.name for r in bad])
w = next(r for r in bad if r.name == "left_symmetry").witness
print("left_symmetry witness inputs:")
for k, v in w["inputs"].items():
    print(f"  {k} = {v}")
