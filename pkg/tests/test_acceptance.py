"""End-to-end acceptance criteria 1 to 9, each reported as one pass/fail line."""

import contextlib
import json
import time
from pathlib import Path

import cyclor
from cyclor.calculus import VectorField, ad_matrix, lie_derivative
from cyclor.cdo import CdoOperator, FreeModule, IdempotentPresentation, cdo_check, projective_lift
from cyclor.cli import main
from cyclor.jobs import parse_spec
from cyclor.linalg import vec_add, vec_scale
from cyclor.ode import airy_demo
from cyclor.prelie import (
    PairingSpace,
    derive_dual_operator,
    eigen_solve,
    standard_omega_instance,
    symmetry_condition,
)
from cyclor.sampling import SamplerConfig, draw_element, draw_field, draw_form
from cyclor.verifier import CALCULUS_CHECKS, STRUCTURE_CHECKS, reevaluate, run_check, run_suite

from conftest import ACCEPTANCE_LINES, P1, P2

FIXTURES = Path(cyclor.__file__).parent / "fixtures"


@contextlib.contextmanager
def criterion(n: int, title: str):
    start = time.perf_counter()
    details: list[str] = []
    try:
        yield details
    except BaseException:
        ACCEPTANCE_LINES.append(f"[{n}] FAIL {title} ({time.perf_counter() - start:.1f}s)")
        raise
    extra = f"; {'; '.join(details)}" if details else ""
    ACCEPTANCE_LINES.append(f"[{n}] PASS {title} ({time.perf_counter() - start:.1f}s{extra})")


def vf(ring, *exprs):
    return VectorField.parse(ring, exprs)


def test_1_calculus_suite():
    with criterion(1, "calculus identities, 200 trials over Q[t1,t2], under 10 s") as notes:
        cfg = SamplerConfig(seed=0, trials=200, max_degree=3)
        start = time.perf_counter()
        results = run_suite(P2, cfg, CALCULUS_CHECKS)
        elapsed = time.perf_counter() - start
        assert len(results) == 7
        for r in results:
            assert r.status == "pass" and r.trials == 200, r.to_dict()
        assert elapsed < 10.0
        notes.append(f"suite {elapsed:.2f}s")


def test_2_closing_example():
    with criterion(2, "Airy closing example and D_f bracket rule") as notes:
        eigen, closing, dg = airy_demo(32, SamplerConfig(seed=0, trials=100))
        assert eigen.passed
        assert eigen.info["c"].startswith("t + O(t^")
        assert closing.passed and closing.trials == 100
        assert closing.precision >= 29
        assert dg.passed and dg.trials == 100
        # the construction is accepted without force
        g_job = parse_spec(FIXTURES / "pass" / "airy.toml")
        standard_omega_instance(g_job.X, g_job.Y, "thm2")
        notes.append(f"closing precision {closing.precision}")


def test_3_eigen_asymmetry():
    with criterion(3, "first/second-order eigen values"):
        d, td = vf(P1, "1"), vf(P1, "t")
        assert eigen_solve(d, td, 1) is None
        assert eigen_solve(d, td, 2) == 0
        assert eigen_solve(td, vf(P1, "t^3"), 1) == 2
        assert eigen_solve(vf(P2, "t1", "t2"), vf(P2, "t1*t2", "0"), 1) == 1


NEGATIVE = [("thm1", ("t1", "1"), ["0", "1"]), ("thm2", ("t1^2", "1"), ["0", "2"])]


def test_4_negative_witnesses():
    with criterion(4, "negative witnesses for thm1 and thm2"):
        for variant, y, values in NEGATIVE:
            s = standard_omega_instance(vf(P2, "1", "0"), vf(P2, *y), variant, force=True)
            sym = symmetry_condition(s)
            assert sym.status == "fail"
            assert sym.witness == {"pair": ["dt1", "dt2"], "values": values}
            res = run_check(s, "left_symmetry", SamplerConfig(seed=0, trials=100))
            assert res.status == "fail", variant
            lhs, rhs = reevaluate(s, "left_symmetry", res.witness)
            assert lhs != rhs
            assert [str(x) for x in lhs] == res.witness["lhs"]


def test_5_structure_suite():
    with criterion(5, "structure checks on the four passing fixtures, under 60 s") as notes:
        start = time.perf_counter()
        for name in ("onevar_thm1", "onevar_thm2", "euler", "airy"):
            job = parse_spec(FIXTURES / "pass" / f"{name}.toml")
            s = standard_omega_instance(job.X, job.Y, job.variant)
            for r in run_suite(s, SamplerConfig(seed=0, trials=100), STRUCTURE_CHECKS):
                assert r.status == "pass" and r.trials == 100, (name, r.to_dict())
                if name == "airy":
                    assert r.precision >= 29
        elapsed = time.perf_counter() - start
        assert elapsed < 60.0
        notes.append(f"suite {elapsed:.1f}s")


PROJECTORS = ([[1, 0], [0, 1]], [[1, "t"], [0, 0]], [[0, 0], [0, 1]])


def test_6_projective_lift():
    with criterion(6, "projective lift for 3 projectors x {d/dt, t d/dt}"):
        F = FreeModule(P1, 2)
        cfg = SamplerConfig(seed=0, trials=100)
        for k, P in enumerate(PROJECTORS):
            pres = IdempotentPresentation(F, P)
            for X in (vf(P1, "1"), vf(P1, "t")):
                op = projective_lift(pres, X)
                assert cdo_check(op, cfg).status == "pass"
                for trial in range(cfg.trials):
                    rng = cfg.rng("projective", k, trial)
                    n = pres.project((draw_element(cfg, P1, rng), draw_element(cfg, P1, rng)))
                    r = draw_element(cfg, P1, rng)
                    Dn = op.apply(n)
                    assert pres.contains(Dn)
                    assert op.apply(vec_scale(r, n)) == vec_add(vec_scale(r, Dn), vec_scale(X(r), n))


def test_7_duality_transfer():
    with criterion(7, "dual of ad X is the Lie derivative on 100 one-forms"):
        cfg = SamplerConfig(seed=0, trials=100)
        space = PairingSpace.standard(P2, 2)
        for trial in range(cfg.trials):
            rng = cfg.rng("duality_transfer", trial)
            X = draw_field(cfg, P2, rng)
            alpha = draw_form(cfg, P2, rng)
            E0 = derive_dual_operator(space, CdoOperator(space.N, ad_matrix(X), X), X)
            assert E0.X == X
            assert E0.apply(alpha.coeffs) == lie_derivative(X, alpha).coeffs


def test_8_skew_probe():
    with criterion(8, "non-skewness probe and Euler asymmetry witness") as notes:
        job = parse_spec(FIXTURES / "pass" / "euler.toml")
        s = standard_omega_instance(job.X, job.Y, job.variant)
        res = run_check(s, "skew_probe", SamplerConfig(seed=0, trials=100))
        assert res.status == "pass" and res.trials == 100
        w = res.info["asymmetry_witness"]
        assert w is not None and w["Y(r1)X(r2)"] != w["-Y(r2)X(r1)"]
        notes.append(f"witness r1={w['r1']}, r2={w['r2']}")


def _json_report(path, tmp_path, tag):
    out = tmp_path / f"{path.stem}.{tag}.json"
    code = main(["verify", str(path), "--format", "json", "--out", str(out)])
    return code, out.read_bytes()


def test_9_cli_determinism(tmp_path, capsys):
    with criterion(9, "CLI byte-identical JSON and exit codes over the corpus") as notes:
        expected = {"pass": 0, "fail": 1, "malformed": 2}
        count = 0
        for group, code in expected.items():
            for path in sorted((FIXTURES / group).glob("*.toml")):
                if group == "malformed":
                    assert main(["verify", str(path), "--format", "json"]) == code, path.name
                    count += 1
                    continue
                c1, a = _json_report(path, tmp_path, "a")
                c2, b = _json_report(path, tmp_path, "b")
                assert c1 == c2 == code, path.name
                assert a == b, path.name
                assert json.loads(a)["overall"] == ("pass" if code == 0 else "fail")
                count += 1
        capsys.readouterr()
        notes.append(f"{count} fixtures")
