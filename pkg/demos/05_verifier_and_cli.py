"""Run a job file through the library and through the command line."""

import json
import subprocess
import sys
from pathlib import Path

import cyclor
from cyclor.jobs import emit, execute, parse_spec

fixtures = Path(cyclor.__file__).parent / "fixtures"

job = parse_spec(fixtures / "pass" / "onevar_thm1.toml").with_overrides(trials=10)
print(emit(execute(job), "text"))

for name in ("pass/euler.toml", "fail/asym.toml", "malformed/bad_theorem.toml"):
    proc = subprocess.run(
        [sys.executable, "-m", "cyclor.cli", "verify", str(fixtures / name), "--trials", "5", "--format", "json"],
        capture_output=True,
        text=True,
    )
    overall = json.loads(proc.stdout)["overall"] if proc.stdout else "-"
    print(f"{name:<28} exit={proc.returncode} overall={overall}")
