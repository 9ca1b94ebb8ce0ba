import pytest

from cyclor.calculus import VectorField
from cyclor.errors import ConfigError
from cyclor.ode import airy_series, dg_field
from cyclor.prelie import standard_omega_instance
from cyclor.results import CheckResult, overall_status
from cyclor.rings import Poly, Ring
from cyclor.sampling import SamplerConfig, sample_element
from cyclor.verifier import (
    CALCULUS_CHECKS,
    STRUCTURE_CHECKS,
    reevaluate,
    run_check,
    run_suite,
)

from conftest import P1, P2, Q2, S8


def vf(ring, *exprs):
    return VectorField.parse(ring, exprs)


EULER = standard_omega_instance(vf(P2, "t1", "t2"), vf(P2, "t1*t2", "0"), "thm1")
ASYM = standard_omega_instance(vf(P2, "1", "0"), vf(P2, "t1", "1"), "thm1", force=True)
ASYM2 = standard_omega_instance(vf(P2, "1", "0"), vf(P2, "t1^2", "1"), "thm2", force=True)


def test_sampling_deterministic():
    cfg = SamplerConfig(seed=1)
    for R in (P2, Q2, S8):
        assert sample_element(cfg, R, 0) == sample_element(cfg, R, 0)
    assert sample_element(cfg, P2, 0) != sample_element(cfg, P2, 1)
    assert sample_element(SamplerConfig(seed=2), P2, 0) != sample_element(cfg, P2, 0)


def test_sampling_bounds():
    cfg = SamplerConfig(seed=3, max_degree=3, max_terms=4, coeff_bound=9)
    for i in range(1000):
        p = sample_element(cfg, P2, i)
        assert isinstance(p, Poly)
        assert len(p.terms) <= 4
        assert all(sum(e) <= 3 for e in p.terms)
        assert all(c.denominator == 1 and 1 <= abs(c) <= 9 for c in p.terms.values())
    zero_deg = SamplerConfig(max_degree=0)
    assert all(sample_element(zero_deg, P2, i).is_constant() for i in range(50))
    s = sample_element(cfg, S8, 0)
    assert s.precision == 8


def test_sampler_config_validation():
    with pytest.raises(ValueError):
        SamplerConfig(trials=-1)
    with pytest.raises(ValueError):
        SamplerConfig(coeff_bound=0)
    # seeds beyond 64 bits are reduced, not rejected
    assert sample_element(SamplerConfig(seed=2 ** 70), P1, 0) is not None


def test_vf_jacobi_200_trials():
    res = run_check(P2, "vf_jacobi", SamplerConfig(seed=7, trials=200))
    assert res.status == "pass" and res.trials == 200 and res.witness is None


def test_calculus_suite():
    results = run_suite(P2)
    assert [r.name for r in results] == list(CALCULUS_CHECKS)
    assert all(r.passed for r in results)


def test_structure_suite_on_valid_structure():
    results = run_suite(EULER, SamplerConfig(trials=30))
    assert [r.name for r in results] == list(STRUCTURE_CHECKS) + ["skew_probe"]
    assert all(r.passed for r in results)
    skew = results[-1]
    assert skew.info["asymmetry_witness"] is not None


def test_left_symmetry_failure_witness_reproduces():
    for s in (ASYM, ASYM2):
        res = run_check(s, "left_symmetry", SamplerConfig(trials=50))
        assert res.status == "fail"
        lhs, rhs = reevaluate(s, "left_symmetry", res.witness)
        assert lhs != rhs
        assert [str(x) for x in lhs] == res.witness["lhs"]
        assert [str(x) for x in rhs] == res.witness["rhs"]


def test_every_failure_reproduces():
    results = run_suite(ASYM, SamplerConfig(trials=20))
    failed = [r for r in results if r.status == "fail"]
    assert {r.name for r in failed} >= {"left_symmetry"}
    for r in failed:
        lhs, rhs = reevaluate(ASYM, r.name, r.witness)
        assert lhs != rhs


def test_thm2_anchor_hom_survives_failed_symmetry():
    assert run_check(ASYM2, "anchor_hom", SamplerConfig(trials=30)).passed


def test_airy_precision_recorded():
    g = airy_series(32)
    s = standard_omega_instance(VectorField(g.ring, [1]), dg_field(g), "thm2")
    res = run_check(s, "leibniz", SamplerConfig(trials=20))
    assert res.passed
    assert 29 <= res.precision <= 32
    res = run_check(s, "left_symmetry", SamplerConfig(trials=10))
    assert res.passed and res.precision >= 29


def test_precision_exhaustion_is_inapplicable():
    R = Ring.series("t", 2)
    s = standard_omega_instance(VectorField(R, [1]), VectorField(R, [R.parse("1 + t")]), "thm2")
    res = run_check(s, "left_symmetry", SamplerConfig(trials=5))
    assert res.status == "inapplicable"
    assert "reason" in res.info


def test_zero_trials():
    results = run_suite(EULER, SamplerConfig(trials=0))
    assert all(r.status == "inapplicable" and r.trials == 0 for r in results)
    assert overall_status(results) == "inapplicable"


def test_config_errors():
    with pytest.raises(ConfigError):
        run_check(P2, "leibniz")
    with pytest.raises(ConfigError):
        run_check(P2, "no_such_check")
    from test_prelie import generic_structure

    with pytest.raises(ConfigError):
        run_check(generic_structure("thm1"), "skew_probe")
    assert "skew_probe" not in [r.name for r in run_suite(generic_structure("thm1"), SamplerConfig(trials=2))]
    # calculus checks accept a structure and use its ring
    assert run_check(EULER, "dd_zero", SamplerConfig(trials=3)).passed


def test_reproducible():
    cfg = SamplerConfig(seed=11, trials=15)
    a = [r.to_dict() for r in run_suite(ASYM, cfg)]
    b = [r.to_dict() for r in run_suite(ASYM, cfg)]
    assert a == b


def test_check_result_contract():
    with pytest.raises(ValueError):
        CheckResult("x", "fail")
    with pytest.raises(ValueError):
        CheckResult("x", "maybe")
    assert overall_status([CheckResult("a", "pass"), CheckResult("b", "inapplicable")]) == "pass"
