"""One-variable fields D_g = g d/dt, second-order series solutions and the Hirota pairing.

With X = d/dt and Y = D_g the second-order eigen condition [X, [X, Y]] = c Y
is exactly g'' = c g.  Over truncated series that equation is solved by the
coefficient recurrence

    (n + 2)(n + 1) a_{n+2} = sum_{k=0}^{n} c_k a_{n-k},

and for such a g the one-form bracket of the second construction reduces to
[f dt, h dt] = -g (f'h - fh') dt.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Rational

from gmpy2 import mpq

from .calculus import VectorField, vf_bracket
from .errors import NotUnivariate
from .prelie import bracket, eigen_solve, standard_omega_instance
from .results import CheckResult, describe
from .rings import Poly, Ring, RingElement, Series, common_precision, rational
from .sampling import SamplerConfig, draw_element


def _univariate(r: RingElement) -> Ring:
    if r.ring.nvars != 1:
        raise NotUnivariate(f"expected a one-variable ring, got {r.ring}")
    return r.ring


@dataclass(frozen=True)
class SecondOrderOde:
    """g'' = c g with g(0) = a0, g'(0) = a1, solved modulo t^order."""

    c: Poly
    a0: mpq = mpq(1)
    a1: mpq = mpq(0)
    order: int = 32

    def __post_init__(self):
        c = self.c
        if isinstance(c, (str, int, Rational)):
            c = Ring.poly("t").coerce(c)
        if not isinstance(c, Poly) or c.ring.kind != "poly":
            raise TypeError("c must be a polynomial")
        _univariate(c)
        if self.order < 3:
            raise ValueError("order must be >= 3")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "a0", rational(self.a0))
        object.__setattr__(self, "a1", rational(self.a1))

    @property
    def variable(self) -> str:
        return self.c.ring.variables[0]

    @property
    def ring(self) -> Ring:
        return Ring.series(self.variable, self.order)


def series_solve(ode: SecondOrderOde) -> Series:
    """Coefficients a_0 .. a_{N-1} of the solution; all of them are exact."""
    N = ode.order
    c = [mpq(0)] * N
    for (k,), v in ode.c.terms.items():
        if k < N:
            c[k] = v
    a = [ode.a0, ode.a1] + [mpq(0)] * (N - 2)
    for n in range(N - 2):
        acc = sum((c[k] * a[n - k] for k in range(n + 1) if c[k]), mpq(0))
        a[n + 2] = acc / ((n + 2) * (n + 1))
    return ode.ring.series_from(a)


def airy_series(order: int = 32, a0=1, a1=0) -> Series:
    """Solution of g'' = t g (rational initial data, not the classical Ai/Bi normalisation)."""
    return series_solve(SecondOrderOde(Ring.poly("t").gen(0), a0, a1, order))


def dg_field(g: RingElement) -> VectorField:
    return VectorField(_univariate(g), [g])


def hirota(f: RingElement, h: RingElement) -> RingElement:
    """f'h - fh'."""
    _univariate(f)
    if f.ring != h.ring:
        h = f.ring.coerce(h)
    return f.derive(0) * h - f * h.derive(0)


def reproduce_closing_example(g: RingElement, f: RingElement, h: RingElement) -> CheckResult:
    """Check bracket(f dt, h dt) = -g hirota(f, h) dt in the thm2 structure with X = d/dt, Y = D_g."""
    ring = _univariate(g)
    f, h = ring.coerce(f), ring.coerce(h)
    s = standard_omega_instance(VectorField(ring, [1]), dg_field(g), "thm2")
    lhs = bracket(s, (f,), (h,))
    rhs = (-(g * hirota(f, h)),)
    precision = common_precision(lhs, rhs)
    if lhs != rhs:
        witness = {"inputs": {"g": str(g), "f": str(f), "h": str(h)}, "lhs": describe(lhs), "rhs": describe(rhs)}
        return CheckResult("closing_example", "fail", 1, witness, precision)
    return CheckResult("closing_example", "pass", 1, None, precision)


def dg_bracket_check(cfg: SamplerConfig, ring: Ring | None = None) -> CheckResult:
    """[D_f, D_g] = D_{fg' - f'g} on random univariate f, g."""
    ring = ring or Ring.poly("t")
    precision = None
    for trial in range(cfg.trials):
        rng = cfg.rng("dg_bracket", trial)
        f, g = draw_element(cfg, ring, rng), draw_element(cfg, ring, rng)
        lhs = vf_bracket(dg_field(f), dg_field(g))
        rhs = dg_field(f * g.derive(0) - f.derive(0) * g)
        p = common_precision(lhs, rhs)
        precision = p if precision is None else (precision if p is None else min(p, precision))
        if lhs != rhs:
            witness = {"inputs": {"f": str(f), "g": str(g)}, "lhs": describe(lhs), "rhs": describe(rhs)}
            return CheckResult("dg_bracket", "fail", trial + 1, witness, precision)
    return CheckResult("dg_bracket", "pass" if cfg.trials else "inapplicable", cfg.trials, None, precision)


def airy_demo(order: int = 32, cfg: SamplerConfig | None = None) -> list[CheckResult]:
    """Reproduce the closing example with g the Airy-type series of the given order.

    Returns three results: the order-2 eigen condition (expects c = t), the
    bracket identity on ``cfg.trials`` random polynomial pairs, and the D_f
    bracket rule over Q[t].
    """
    cfg = cfg or SamplerConfig()
    g = airy_series(order)
    ring = g.ring
    t = ring.gen(0)
    c = eigen_solve(VectorField(ring, [1]), dg_field(g), 2)
    info = {"c": None if c is None else str(c), "g": str(g)}
    if c is not None and c == t:
        eigen = CheckResult("airy_eigen", "pass", 1, None, c.precision, info)
    else:
        eigen = CheckResult("airy_eigen", "fail", 1, {"expected": str(t), "got": info["c"]}, None, info)

    base = Ring.poly(ring.variables[0])
    closing = CheckResult("closing_example", "pass" if cfg.trials else "inapplicable", cfg.trials)
    for trial in range(cfg.trials):
        rng = cfg.rng("closing_example", trial)
        f, h = draw_element(cfg, base, rng), draw_element(cfg, base, rng)
        r = reproduce_closing_example(g, f, h)
        if r.precision is not None:
            closing.precision = r.precision if closing.precision is None else min(closing.precision, r.precision)
        if r.status == "fail":
            closing = CheckResult("closing_example", "fail", trial + 1, r.witness, r.precision)
            break
    return [eigen, closing, dg_bracket_check(cfg, base)]
