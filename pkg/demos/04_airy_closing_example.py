"""g'' = t g as a truncated series, and the one-form bracket it induces."""

from cyclor import Ring, SamplerConfig, airy_series, hirota, reproduce_closing_example
from cyclor.ode import airy_demo

g = airy_series(12)
print("g =", g)

P = Ring.poly("t")
f, h = P.parse("t^2 + 1"), P.parse("3*t - 2")
print("f'h - fh' =", hirota(f, h))

r = reproduce_closing_example(airy_series(32), f, h)
print("closing identity:", r.status, "precision", r.precision)

for r in airy_demo(32, SamplerConfig(trials=20)):
    print(f"  {r.name:<16} {r.status:<5} trials={r.trials} precision={r.precision}")
