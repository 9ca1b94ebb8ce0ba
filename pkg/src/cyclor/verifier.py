"""Seeded exact verification of the calculus and structure identities.

Each check kind samples its inputs, evaluates both sides of one identity and
compares them exactly.  Trial ``k`` of kind ``name`` draws from the stream
``(name, k)``, so results do not depend on which other checks ran.

Calculus kinds need only a ring; structure kinds need a
:class:`~cyclor.prelie.PreLieStructure`; ``skew_probe`` needs the cotangent
instance.  Witnesses store inputs as canonical strings, and
:func:`reevaluate` parses them back and recomputes both sides.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import prelie
from .calculus import (
    OneForm,
    VectorField,
    apply,
    d_oneform,
    d_scalar,
    lie_derivative,
    pair,
    vf_bracket,
)
from .cdo import cdo_bracket
from .errors import ConfigError, PrecisionExhausted
from .linalg import vec_add, vec_scale
from .prelie import PreLieStructure
from .results import CheckResult, describe, overall_status
from .rings import Ring, common_precision
from .sampling import SamplerConfig, draw_element, draw_field, draw_form, draw_vector

CALCULUS_CHECKS = ("d_leibniz", "ld_module", "ld_field", "ld2", "module_bracket", "vf_jacobi", "dd_zero")
STRUCTURE_CHECKS = ("leibniz", "bracket_jacobi", "left_symmetry", "anchor_hom", "flatness", "duality")
OMEGA_CHECKS = ("skew_probe",)
ALL_CHECKS = CALCULUS_CHECKS + STRUCTURE_CHECKS + OMEGA_CHECKS


@dataclass(frozen=True)
class Check:
    name: str
    needs: str  # "ring" | "structure" | "omega"
    inputs: tuple[tuple[str, str], ...]  # (name, sort); sorts: scalar, field, form, L, N
    evaluate: Callable


def _jacobi_fields(X, Y, Z):
    return vf_bracket(X, vf_bracket(Y, Z)) + vf_bracket(Y, vf_bracket(Z, X)) + vf_bracket(Z, vf_bracket(X, Y))


def _ld2(ring, X, Y, a):
    lhs = pair(lie_derivative(X, a), Y)
    rhs = d_oneform(a)(X, Y) + apply(Y, pair(a, X))
    return lhs, rhs


def _module_bracket(ring, r, s, X, Y):
    lhs = vf_bracket(r * X, s * Y)
    rhs = (r * apply(X, s)) * Y - (s * apply(Y, r)) * X + (r * s) * vf_bracket(X, Y)
    return lhs, rhs


def _leibniz(st, r, l1, l2):
    lhs = prelie.bracket(st, l1, vec_scale(r, l2))
    rhs = vec_add(vec_scale(r, prelie.bracket(st, l1, l2)), vec_scale(apply(prelie.anchor(st, l1), r), l2))
    return lhs, rhs


def _flatness(st, l1, l2):
    lhs = prelie.nabla_operator(st, prelie.bracket(st, l1, l2))
    rhs = cdo_bracket(prelie.nabla_operator(st, l1), prelie.nabla_operator(st, l2))
    return lhs, rhs


def _duality(st, l, n):
    d = st.data
    lhs = d.X0(prelie.pairing(st, l, n))
    rhs = prelie.pairing(st, d.E0.apply(l), n) + prelie.pairing(st, l, d.D0.apply(n))
    return lhs, rhs


def _skew(st, r1, r2):
    return prelie.skew_pairing(st, r1, r2), st.Y(r1) * st.X(r2)


_S, _F, _A, _L, _N = "scalar", "field", "form", "L", "N"

REGISTRY: dict[str, Check] = {
    c.name: c
    for c in (
        Check("d_leibniz", "ring", (("r", _S), ("s", _S)),
              lambda R, r, s: (d_scalar(r * s), s * d_scalar(r) + r * d_scalar(s))),
        Check("ld_module", "ring", (("r", _S), ("X", _F), ("alpha", _A)),
              lambda R, r, X, alpha: (lie_derivative(X, r * alpha),
                                      apply(X, r) * alpha + r * lie_derivative(X, alpha))),
        Check("ld_field", "ring", (("r", _S), ("X", _F), ("alpha", _A)),
              lambda R, r, X, alpha: (lie_derivative(r * X, alpha),
                                      r * lie_derivative(X, alpha) + pair(alpha, X) * d_scalar(r))),
        Check("ld2", "ring", (("X", _F), ("Y", _F), ("alpha", _A)),
              lambda R, X, Y, alpha: _ld2(R, X, Y, alpha)),
        Check("module_bracket", "ring", (("r", _S), ("s", _S), ("X", _F), ("Y", _F)), _module_bracket),
        Check("vf_jacobi", "ring", (("X", _F), ("Y", _F), ("Z", _F)),
              lambda R, X, Y, Z: (_jacobi_fields(X, Y, Z), VectorField.zero(R))),
        Check("dd_zero", "ring", (("r", _S),),
              lambda R, r: (d_oneform(d_scalar(r)), d_oneform(OneForm.zero(R)))),
        Check("leibniz", "structure", (("r", _S), ("l1", _L), ("l2", _L)), _leibniz),
        Check("bracket_jacobi", "structure", (("l1", _L), ("l2", _L), ("l3", _L)),
              lambda st, l1, l2, l3: (prelie.jacobiator(st, l1, l2, l3), st.L.zero())),
        Check("left_symmetry", "structure", (("l1", _L), ("l2", _L), ("l3", _L)),
              lambda st, l1, l2, l3: (prelie.associator(st, l1, l2, l3), prelie.associator(st, l2, l1, l3))),
        Check("anchor_hom", "structure", (("l1", _L), ("l2", _L)),
              lambda st, l1, l2: (prelie.anchor(st, prelie.bracket(st, l1, l2)),
                                  vf_bracket(prelie.anchor(st, l1), prelie.anchor(st, l2)))),
        Check("flatness", "structure", (("l1", _L), ("l2", _L)), _flatness),
        Check("duality", "structure", (("l", _L), ("n", _N)), _duality),
        Check("skew_probe", "omega", (("r1", _S), ("r2", _S)), _skew),
    )
}


def _ring_of(target) -> Ring:
    return target if isinstance(target, Ring) else target.ring


def _subject(target, check: Check):
    """The object a check evaluates against, or ConfigError if the target lacks it."""
    if check.needs == "ring":
        return _ring_of(target)
    if not isinstance(target, PreLieStructure):
        raise ConfigError(f"check {check.name!r} needs a structure target")
    if check.needs == "omega" and not target.is_omega:
        raise ConfigError(f"check {check.name!r} needs the cotangent instance")
    return target


def _draw(sort: str, cfg, ring, rng, target):
    if sort == _S:
        return draw_element(cfg, ring, rng)
    if sort == _F:
        return draw_field(cfg, ring, rng)
    if sort == _A:
        return draw_form(cfg, ring, rng)
    rank = target.L.rank if sort == _L else target.data.space.N.rank
    return draw_vector(cfg, ring, rng, rank)


def _decode(sort: str, ring, value):
    if sort == _S:
        return ring.parse(value)
    if sort == _F:
        return VectorField.parse(ring, value)
    if sort == _A:
        return OneForm.parse(ring, value)
    return tuple(ring.parse(v) for v in value)


def _min(p, q):
    if p is None:
        return q
    if q is None:
        return p
    return min(p, q)


def sample_inputs(target, kind: str, cfg: SamplerConfig, trial: int) -> dict:
    check = REGISTRY[kind]
    subject = _subject(target, check)
    ring = _ring_of(target)
    rng = cfg.rng(kind, trial)
    return {name: _draw(sort, cfg, ring, rng, subject) for name, sort in check.inputs}


def evaluate(target, kind: str, inputs: dict):
    """Both sides of identity ``kind`` at the given inputs."""
    if kind not in REGISTRY:
        raise ConfigError(f"unknown check kind {kind!r}")
    check = REGISTRY[kind]
    return check.evaluate(_subject(target, check), **inputs)


def reevaluate(target, kind: str, witness: dict):
    """Parse a witness's inputs back into ring values and recompute (lhs, rhs)."""
    check = REGISTRY[kind]
    ring = _ring_of(target)
    inputs = {name: _decode(sort, ring, witness["inputs"][name]) for name, sort in check.inputs}
    return evaluate(target, kind, inputs)


def applicable_checks(target) -> tuple[str, ...]:
    if isinstance(target, PreLieStructure):
        return STRUCTURE_CHECKS + (OMEGA_CHECKS if target.is_omega else ())
    return CALCULUS_CHECKS


def run_check(target, kind: str, cfg: SamplerConfig | None = None) -> CheckResult:
    """Evaluate identity ``kind`` on ``cfg.trials`` independent samples.

    Passes iff every trial agrees exactly; series values are compared at the
    smaller of the two precisions and the least precision seen is reported.
    """
    cfg = cfg or SamplerConfig()
    if kind not in REGISTRY:
        raise ConfigError(f"unknown check kind {kind!r}")
    check = REGISTRY[kind]
    subject = _subject(target, check)
    precision = None
    for trial in range(cfg.trials):
        inputs = sample_inputs(target, kind, cfg, trial)
        try:
            lhs, rhs = check.evaluate(subject, **inputs)
        except PrecisionExhausted as exc:
            return CheckResult(kind, "inapplicable", trial, None, precision, {"reason": str(exc)})
        precision = _min(precision, common_precision(lhs, rhs))
        if lhs != rhs:
            witness = {"inputs": describe(inputs), "lhs": describe(lhs), "rhs": describe(rhs)}
            raw = {"inputs": inputs, "lhs": lhs, "rhs": rhs}
            return CheckResult(kind, "fail", trial + 1, witness, precision, raw_witness=raw)
    if not cfg.trials:
        return CheckResult(kind, "inapplicable", 0)
    info = None
    if kind == "skew_probe":
        info = {"asymmetry_witness": prelie.skew_asymmetry_witness(subject)}
    return CheckResult(kind, "pass", cfg.trials, None, precision, info)


def run_suite(target, cfg: SamplerConfig | None = None, kinds=None) -> list[CheckResult]:
    """Run ``kinds`` (default: every applicable check) in registry order."""
    cfg = cfg or SamplerConfig()
    wanted = applicable_checks(target) if kinds is None else tuple(kinds)
    for k in wanted:
        if k not in REGISTRY:
            raise ConfigError(f"unknown check kind {k!r}")
    return [run_check(target, k, cfg) for k in ALL_CHECKS if k in wanted]


def suite_status(results) -> str:
    return overall_status(results)
