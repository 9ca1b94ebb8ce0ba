"""Command-line front end.

    cyclor verify JOB.toml [--format text|json] [--out PATH] [--seed N] [--trials N] [--force]
    cyclor airy-demo [--order N] [--trials N] [--seed N] [--format text|json]

Exit codes: 0 when everything passes, 1 when a check or condition fails (the
report is still written), 2 for unreadable or invalid input.  CYCLOR_SEED
sets the seed when --seed is not given.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import ConditionViolated, CyclorError
from .jobs import emit, execute, parse_spec, refusal_report
from .ode import airy_demo
from .results import overall_status
from .sampling import SamplerConfig

EXIT_PASS, EXIT_FAIL, EXIT_INVALID = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cyclor", description="Build and verify cyclic pre-Lie-Rinehart structures exactly.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run a job file")
    v.add_argument("spec")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--out")
    v.add_argument("--seed", type=int)
    v.add_argument("--trials", type=int)
    v.add_argument("--force", action="store_true", default=None)

    a = sub.add_parser("airy-demo", help="reproduce the Airy bracket example")
    a.add_argument("--order", type=int, default=32)
    a.add_argument("--trials", type=int, default=100)
    a.add_argument("--seed", type=int)
    a.add_argument("--format", choices=("text", "json"), default="text")
    return p


def _env_seed() -> int | None:
    raw = os.environ.get("CYCLOR_SEED")
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise CyclorError(f"CYCLOR_SEED must be an integer, got {raw!r}") from None


def _write(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _verify(args) -> int:
    try:
        seed = args.seed if args.seed is not None else _env_seed()
        job = parse_spec(args.spec).with_overrides(seed=seed, trials=args.trials, force=args.force)
    except FileNotFoundError as exc:
        print(f"cyclor: {exc.filename}: no such file", file=sys.stderr)
        return EXIT_INVALID
    except (CyclorError, ValueError) as exc:
        print(f"cyclor: invalid job: {exc}", file=sys.stderr)
        return EXIT_INVALID
    try:
        report = execute(job)
    except ConditionViolated as exc:
        print(f"cyclor: construction refused: {exc}", file=sys.stderr)
        report = refusal_report(job)
    except CyclorError as exc:
        print(f"cyclor: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _write(emit(report, args.format), args.out)
    return EXIT_FAIL if report.overall == "fail" else EXIT_PASS


def _airy(args) -> int:
    try:
        seed = args.seed if args.seed is not None else _env_seed()
        cfg = SamplerConfig(seed=seed or 0, trials=args.trials)
        results = airy_demo(args.order, cfg)
    except (CyclorError, ValueError) as exc:
        print(f"cyclor: {exc}", file=sys.stderr)
        return EXIT_INVALID
    overall = overall_status(results)
    if args.format == "json":
        payload = {"order": args.order, "checks": [r.to_dict() for r in results], "overall": overall}
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = [f"Airy-type series g with g'' = t g, truncated at t^{args.order}"]
        g = results[0].info["g"] if results[0].info else None
        if g:
            lines.append(f"  g = {g}")
        for r in results:
            prec = "-" if r.precision is None else r.precision
            extra = f"  c = {r.info['c']}" if r.info and "c" in r.info else ""
            lines.append(f"  {r.name:<16} {r.status:<6} trials={r.trials:<4} precision={prec}{extra}")
            if r.witness:
                lines.append(f"    witness: {json.dumps(r.witness)}")
        lines.append(f"overall: {overall}")
        text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    return EXIT_FAIL if overall == "fail" else EXIT_PASS


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "verify":
        return _verify(args)
    return _airy(args)


if __name__ == "__main__":
    sys.exit(main())
