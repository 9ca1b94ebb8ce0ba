"""Declarative verification jobs: TOML parsing, execution and report rendering.

A job file has three tables::

    [ring]
    kind = "poly"            # poly | ratfunc | series
    variables = ["t1", "t2"]
    truncation = 32          # series only

    [construction]
    theorem = "thm1"         # thm1 | thm2
    X = ["t1", "t2"]
    Y = ["t1*t2", "0"]

    [construction.ode]       # optional; binds `name` to a series solution of g'' = c g
    name = "airy"
    c = "t"
    a0 = 1
    a1 = 0

    [checks]
    run = "all"              # or a list of check kinds
    trials = 100
    seed = 0
    force = false
"""

from __future__ import annotations

import dataclasses
import io
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import tomli

from .calculus import VectorField
from .errors import ExpressionError, RingMismatch, SchemaError, SpecExpressionError
from .ode import SecondOrderOde, series_solve
from .prelie import eigen_solve, standard_omega_instance, symmetry_condition
from .results import CheckResult, overall_status
from .rings import KINDS, Ring
from .sampling import SamplerConfig
from .verifier import ALL_CHECKS, REGISTRY, run_suite

_SECTIONS = {
    "ring": {"kind", "variables", "truncation"},
    "construction": {"theorem", "X", "Y", "ode"},
    "checks": {"run", "trials", "max_degree", "max_terms", "coeff_bound", "seed", "force"},
}
_ODE_KEYS = {"name", "c", "a0", "a1"}


@dataclass(frozen=True)
class VerificationJob:
    ring: Ring
    variant: str
    X: VectorField
    Y: VectorField
    checks: tuple[str, ...]
    sampler: SamplerConfig = field(default_factory=SamplerConfig)
    force: bool = False
    x_exprs: tuple[str, ...] = ()
    y_exprs: tuple[str, ...] = ()
    ode: dict | None = None

    def with_overrides(self, *, seed=None, trials=None, force=None) -> "VerificationJob":
        sampler = self.sampler
        if seed is not None:
            sampler = dataclasses.replace(sampler, seed=seed)
        if trials is not None:
            sampler = dataclasses.replace(sampler, trials=trials)
        return dataclasses.replace(self, sampler=sampler, force=self.force if force is None else force)

    def to_dict(self) -> dict:
        ring = {"kind": self.ring.kind, "variables": list(self.ring.variables)}
        if self.ring.kind == "series":
            ring["truncation"] = self.ring.truncation
        construction = {"theorem": self.variant, "X": list(self.x_exprs), "Y": list(self.y_exprs)}
        if self.ode is not None:
            construction["ode"] = dict(self.ode)
        return {
            "ring": ring,
            "construction": construction,
            "checks": list(self.checks),
            "sampler": self.sampler.to_dict(),
            "force": self.force,
        }


def _table(doc: dict, name: str) -> dict:
    table = doc.get(name)
    if not isinstance(table, dict):
        raise SchemaError(name, "missing table")
    extra = set(table) - _SECTIONS[name]
    if extra:
        raise SchemaError(f"{name}.{sorted(extra)[0]}", "unknown field")
    return table


def _int(table: dict, key: str, section: str, default):
    value = table.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{section}.{key}", "expected an integer")
    return value


def _rational(value, key: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise SchemaError(key, "expected an integer or a rational string")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(key, f"not a rational: {value!r}") from None


def _parse_ring(table: dict) -> Ring:
    kind = table.get("kind")
    if kind not in KINDS:
        raise SchemaError("ring.kind", f"expected one of {', '.join(KINDS)}")
    variables = table.get("variables")
    if not isinstance(variables, list) or not variables or not all(isinstance(v, str) for v in variables):
        raise SchemaError("ring.variables", "expected a nonempty list of names")
    if kind == "series":
        truncation = _int(table, "truncation", "ring", 16)
    elif "truncation" in table:
        raise SchemaError("ring.truncation", "only series rings are truncated")
    else:
        truncation = None
    try:
        return Ring(kind, tuple(variables), truncation)
    except ValueError as exc:
        raise SchemaError("ring", str(exc)) from None


def _parse_ode(table, ring: Ring, file: str):
    if not isinstance(table, dict):
        raise SchemaError("construction.ode", "expected a table")
    extra = set(table) - _ODE_KEYS
    if extra:
        raise SchemaError(f"construction.ode.{sorted(extra)[0]}", "unknown field")
    if ring.kind != "series":
        raise SchemaError("construction.ode", "needs a one-variable series ring")
    name = table.get("name", "g")
    if not isinstance(name, str) or not name.isidentifier() or name in ring.variables:
        raise SchemaError("construction.ode.name", "expected an identifier distinct from the ring variables")
    c_text = table.get("c", "0")
    if not isinstance(c_text, str):
        raise SchemaError("construction.ode.c", "expected an expression string")
    try:
        c = Ring.poly(*ring.variables).parse(c_text)
    except ExpressionError as exc:
        raise SpecExpressionError(file, "construction.ode.c", exc) from None
    a0 = _rational(table.get("a0", 1), "construction.ode.a0")
    a1 = _rational(table.get("a1", 0), "construction.ode.a1")
    g = series_solve(SecondOrderOde(c, a0, a1, ring.truncation))
    echo = {"name": name, "c": c_text, "a0": str(a0), "a1": str(a1)}
    return {name: g}, echo


def _parse_field(construction: dict, key: str, ring: Ring, bindings, file: str):
    exprs = construction.get(key)
    if not isinstance(exprs, list) or not all(isinstance(e, str) for e in exprs):
        raise SchemaError(key, "expected a list of expression strings")
    if len(exprs) != ring.nvars:
        raise SchemaError(key, "length mismatch")
    coeffs = []
    for i, text in enumerate(exprs):
        try:
            coeffs.append(ring.parse(text, bindings))
        except ExpressionError as exc:
            raise SpecExpressionError(file, f"construction.{key}[{i}]", exc) from None
    return VectorField(ring, coeffs), tuple(exprs)


def _parse_checks(table: dict) -> tuple[tuple[str, ...], SamplerConfig, bool]:
    run = table.get("run", "all")
    if run == "all":
        kinds = ALL_CHECKS
    elif isinstance(run, list) and all(isinstance(k, str) for k in run):
        unknown = [k for k in run if k not in REGISTRY]
        if unknown:
            raise SchemaError("checks", "unknown kind")
        kinds = tuple(k for k in ALL_CHECKS if k in run)
    else:
        raise SchemaError("checks.run", 'expected "all" or a list of check kinds')
    defaults = SamplerConfig()
    values = {k: _int(table, k, "checks", getattr(defaults, k))
              for k in ("seed", "trials", "max_degree", "max_terms", "coeff_bound")}
    try:
        cfg = SamplerConfig(**values)
    except ValueError as exc:
        raise SchemaError("checks", str(exc)) from None
    force = table.get("force", False)
    if not isinstance(force, bool):
        raise SchemaError("checks.force", "expected a boolean")
    return kinds, cfg, force


def parse_spec_text(text: str, file: str = "<string>") -> VerificationJob:
    try:
        doc = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        raise SchemaError(file, f"invalid TOML: {exc}") from None
    extra = set(doc) - set(_SECTIONS)
    if extra:
        raise SchemaError(sorted(extra)[0], "unknown table")
    ring = _parse_ring(_table(doc, "ring"))
    construction = _table(doc, "construction")
    variant = construction.get("theorem")
    if variant not in ("thm1", "thm2"):
        raise SchemaError("construction.theorem", "expected thm1 or thm2")
    bindings, ode_echo = None, None
    if "ode" in construction:
        bindings, ode_echo = _parse_ode(construction["ode"], ring, file)
    X, x_exprs = _parse_field(construction, "X", ring, bindings, file)
    Y, y_exprs = _parse_field(construction, "Y", ring, bindings, file)
    kinds, cfg, force = _parse_checks(_table(doc, "checks") if "checks" in doc else {})
    return VerificationJob(ring, variant, X, Y, kinds, cfg, force, x_exprs, y_exprs, ode_echo)


def parse_spec(path) -> VerificationJob:
    """Read and validate a job file; FileNotFoundError if it does not exist."""
    path = Path(path)
    return parse_spec_text(path.read_text(encoding="utf-8"), path.name)


@dataclass
class Report:
    job: VerificationJob
    conditions: dict
    checks: list[CheckResult]
    overall: str
    elapsed: float = 0.0
    refused: bool = False

    def to_dict(self) -> dict:
        """JSON payload; timing is left out so identical jobs give identical bytes."""
        return {
            "job": self.job.to_dict(),
            "conditions": self.conditions,
            "checks": [c.to_dict() for c in self.checks],
            "overall": self.overall,
        }


def _conditions(job: VerificationJob, symmetry: CheckResult) -> dict:
    order = 1 if job.variant == "thm1" else 2
    c = None if job.Y.is_zero() else eigen_solve(job.X, job.Y, order)
    return {
        "symmetry": symmetry.to_dict(),
        "eigen": {"order": order, "c": None if c is None else str(c)},
    }


def execute(job: VerificationJob) -> Report:
    """Build the cotangent structure and run the requested checks.

    Raises ConditionViolated when the symmetry condition fails and the job is
    not forced; :func:`refusal_report` renders that case.
    """
    start = time.perf_counter()
    if job.X.ring != job.Y.ring:
        raise RingMismatch("X and Y live in different rings")
    structure = standard_omega_instance(job.X, job.Y, job.variant, force=job.force)
    symmetry = symmetry_condition(structure)
    conditions = _conditions(job, symmetry)
    checks = run_suite(structure, job.sampler, job.checks)
    overall = overall_status([symmetry, *checks])
    return Report(job, conditions, checks, overall, time.perf_counter() - start)


def refusal_report(job: VerificationJob) -> Report:
    """Report for a job whose construction was refused: conditions only, overall fail."""
    start = time.perf_counter()
    structure = standard_omega_instance(job.X, job.Y, job.variant, force=True)
    symmetry = symmetry_condition(structure)
    return Report(job, _conditions(job, symmetry), [], "fail", time.perf_counter() - start, refused=True)


def _fmt_value(v, indent: str) -> list[str]:
    if isinstance(v, dict):
        lines = []
        for k, x in v.items():
            sub = _fmt_value(x, indent + "  ")
            if len(sub) == 1:
                lines.append(f"{indent}{k} = {sub[0].strip()}")
            else:
                lines.append(f"{indent}{k}:")
                lines.extend(sub)
        return lines
    if isinstance(v, list):
        return [f"{indent}[{', '.join(str(x) for x in v)}]"]
    return [f"{indent}{v}"]


def render_text(report: Report) -> str:
    d = report.to_dict()
    job = d["job"]
    ring = report.job.ring
    out = [
        f"job: {job['construction']['theorem']} over {ring}",
        f"  X = [{', '.join(job['construction']['X'])}]",
        f"  Y = [{', '.join(job['construction']['Y'])}]",
        f"  seed = {job['sampler']['seed']}, trials = {job['sampler']['trials']}, force = {str(job['force']).lower()}",
        "",
        "conditions:",
    ]
    sym = d["conditions"]["symmetry"]
    out.append(f"  symmetry  {sym['status']}  (basis pairs checked: {sym['trials']})")
    if sym["witness"]:
        out.append(f"    witness pair ({', '.join(sym['witness']['pair'])}): "
                   f"B = {sym['witness']['values'][0]} vs {sym['witness']['values'][1]}")
    eig = d["conditions"]["eigen"]
    out.append(f"  eigen     order {eig['order']}, c = {eig['c'] if eig['c'] is not None else 'none'}")
    out.append("")
    if report.refused:
        out.append("construction refused: symmetry condition fails (rerun with --force to sample checks)")
    else:
        width = max([len("check")] + [len(c["name"]) for c in d["checks"]])
        out.append(f"  {'check'.ljust(width)}  {'status':<12}  {'trials':>6}  precision")
        for c in d["checks"]:
            prec = "-" if c["precision"] is None else str(c["precision"])
            out.append(f"  {c['name'].ljust(width)}  {c['status']:<12}  {c['trials']:>6}  {prec}")
        for c in d["checks"]:
            if c["witness"]:
                out.append("")
                out.append(f"witness for {c['name']}:")
                out.extend(_fmt_value(c["witness"], "  "))
            elif c["info"]:
                out.append("")
                out.append(f"note for {c['name']}:")
                out.extend(_fmt_value(c["info"], "  "))
    out.append("")
    out.append(f"overall: {d['overall']}  ({report.elapsed:.2f}s)")
    return "\n".join(out) + "\n"


def render_json(report: Report) -> str:
    return json.dumps(report.to_dict(), indent=2, ensure_ascii=False) + "\n"


def emit(report: Report, format: str = "text", sink=None) -> str:
    """Render ``report`` and write it to ``sink`` (a path, a text stream, or None)."""
    if format == "json":
        text = render_json(report)
    elif format == "text":
        text = render_text(report)
    else:
        raise ValueError(f"unknown format {format!r}")
    if sink is None:
        return text
    if isinstance(sink, (str, Path)):
        Path(sink).write_text(text, encoding="utf-8")
    elif isinstance(sink, io.TextIOBase) or hasattr(sink, "write"):
        sink.write(text)
    return text
