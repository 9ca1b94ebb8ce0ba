import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclor.calculus import VectorField, vf_bracket
from cyclor.cdo import (
    CdoOperator,
    ExtensionalOperator,
    FreeModule,
    IdempotentPresentation,
    cdo_apply,
    cdo_bracket,
    cdo_check,
    connection_from_lift,
    identity_operator,
    projective_lift,
    summation_lift,
)
from cyclor.errors import NotIdempotent, RingMismatch
from cyclor.linalg import mat_vec, vec_add, vec_scale
from cyclor.rings import Ring
from cyclor.sampling import SamplerConfig

from conftest import P1, P2, elements, fields

t = P1.gen(0)
D = VectorField.basis(P1, 0)
TD = VectorField(P1, [t])
ZERO = VectorField.zero(P1)
F1 = FreeModule(P1, 1)
F2 = FreeModule(P1, 2)
PROJECTORS = {
    "identity": [[1, 0], [0, 1]],
    "corner_t": [[1, "t"], [0, 0]],
    "second": [[0, 0], [0, 1]],
}


def test_apply_examples():
    assert cdo_apply(CdoOperator(F1, [[0]], D), [t ** 2]) == (2 * t,)
    v = (t ** 2 + 1, 3 * t)
    assert cdo_apply(identity_operator(F2), v) == v
    op = CdoOperator(F2, [[0, 1], [0, 0]], D)
    assert cdo_apply(op, [t, t ** 2]) == (t ** 2 + 1, 2 * t)


def test_cdo_check_pass_and_fail():
    op = CdoOperator(F2, [["t", 1], [0, "t^2"]], D)
    assert cdo_check(op).status == "pass"
    assert cdo_check(CdoOperator(F2, [["t", 1], [2, 0]], ZERO)).status == "pass"
    square = ExtensionalOperator(F2, lambda v: tuple(x * x for x in v), D)
    res = cdo_check(square)
    assert res.status == "fail"
    assert res.witness["r"] == "t"
    v = tuple(P1.parse(x) for x in res.witness["v"])
    lhs = tuple(a - b for a, b in zip(square(vec_scale(t, v)), vec_scale(t, square(v))))
    assert lhs != v  # X(t) v = v


def test_cdo_check_wrong_derivation_part():
    # D = d/dt but claimed derivation part 2 d/dt
    op = ExtensionalOperator(F1, lambda v: (v[0].derive(0),), VectorField(P1, [2]))
    assert cdo_check(op).status == "fail"


def test_bracket_examples():
    a = CdoOperator(F1, [[0]], D)
    b = CdoOperator(F1, [["t"]], ZERO)
    assert cdo_bracket(a, b) == CdoOperator(F1, [[1]], ZERO)
    op = CdoOperator(F2, [["t", 1], [0, "t^2"]], TD)
    assert cdo_bracket(op, op).is_zero()


def test_projective_lift_examples():
    op = projective_lift(IdempotentPresentation(F2, PROJECTORS["identity"]), D)
    assert all(a.is_zero() for row in op.A for a in row)
    op = projective_lift(IdempotentPresentation(F2, PROJECTORS["corner_t"]), D)
    assert op.A == ((0, -1), (0, 0))
    s = P1.parse("t^3 + 2")
    assert op.apply([s, 0]) == (s.derive(0), 0)
    op = projective_lift(IdempotentPresentation(F2, PROJECTORS["second"]), TD)
    assert all(a.is_zero() for row in op.A for a in row)
    assert op.apply([0, t ** 2]) == (0, 2 * t ** 2)


def test_not_idempotent():
    with pytest.raises(NotIdempotent):
        IdempotentPresentation(F2, [[1, 1], [0, 1]])


def test_connection_basics():
    L = FreeModule(P1, 1)
    conn = connection_from_lift(L, [D], IdempotentPresentation(F1, [[1]]))
    nab = conn([1])
    assert nab.X == D
    assert nab.apply([t ** 3]) == (3 * t ** 2,)
    with pytest.raises(ValueError):
        connection_from_lift(L, [D, D], IdempotentPresentation(F1, [[1]]))
    with pytest.raises(RingMismatch):
        connection_from_lift(L, [VectorField.basis(P2, 0)], IdempotentPresentation(F1, [[1]]))


def _module_vec(R, data, rank):
    return tuple(data.draw(elements(R, 2)) for _ in range(rank))


@given(st.data())
def test_bracket_is_commutator(data):
    F = FreeModule(P2, 2)
    ops = []
    for _ in range(2):
        A = [[data.draw(elements(P2, 2)) for _ in range(2)] for _ in range(2)]
        ops.append(CdoOperator(F, A, data.draw(fields(P2, 2))))
    a, b = ops
    v = _module_vec(P2, data, 2)
    c = cdo_bracket(a, b)
    assert c.apply(v) == tuple(x - y for x, y in zip(a(b(v)), b(a(v))))
    assert c.X == vf_bracket(a.X, b.X)


@given(st.data())
def test_projective_lift_properties(data):
    name = data.draw(st.sampled_from(sorted(PROJECTORS)))
    pres = IdempotentPresentation(F2, PROJECTORS[name])
    X = data.draw(fields(P1, 2))
    op = projective_lift(pres, X)
    n = pres.project(_module_vec(P1, data, 2))
    r = data.draw(elements(P1, 2))
    Dn = op.apply(n)
    assert pres.contains(Dn)
    assert Dn == mat_vec(pres.P, tuple(X(x) for x in n))
    assert Dn == summation_lift(pres, X, n)
    assert op.apply(vec_scale(r, n)) == vec_add(vec_scale(r, Dn), vec_scale(X(r), n))
    assert cdo_check(op, SamplerConfig(trials=3)).status == "pass"


@given(st.data())
def test_connection_linear_and_anchored(data):
    L = FreeModule(P1, 2)
    anchors = [data.draw(fields(P1, 2)) for _ in range(2)]
    conn = connection_from_lift(L, anchors, IdempotentPresentation(F2, PROJECTORS["corner_t"]))
    l = _module_vec(P1, data, 2)
    r = data.draw(elements(P1, 2))
    assert conn(vec_scale(r, l)) == conn(l).scaled(r)
    assert conn(l).X == conn.anchor(l)


def test_anchor_surjectivity_witness():
    R = Ring.poly("t1", "t2")
    F = FreeModule(R, 2)
    pres = IdempotentPresentation(F, [[1, "t1"], [0, 0]])
    for i in range(2):
        lift = projective_lift(pres, VectorField.basis(R, i))
        assert lift.X == VectorField.basis(R, i)
