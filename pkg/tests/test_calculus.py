import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclor.calculus import (
    OneForm,
    TwoForm,
    VectorField,
    ad_matrix,
    apply,
    d_oneform,
    d_scalar,
    lie_derivative,
    lie_derivative_matrix,
    pair,
    vf_bracket,
)
from cyclor.errors import RingMismatch
from cyclor.rings import exact_divide

from conftest import P1, P2, Q2, S8, elements, fields, forms

t1, t2 = P2.gens
D1 = VectorField.basis(P2, 0)
D2 = VectorField.basis(P2, 1)
EULER = VectorField(P2, [t1, t2])


def vf(ring, *exprs):
    return VectorField.parse(ring, exprs)


def test_apply_examples():
    assert apply(D1, t1 ** 2 * t2) == 2 * t1 * t2
    assert apply(EULER, t1 ** 3) == 3 * t1 ** 3
    r = S8.parse("1 + t")
    out = apply(vf(S8, "t"), r)
    assert out == S8.gen(0)
    assert out.precision == 7


def test_pair_examples():
    assert pair(OneForm.basis(P2, 0), D2) == 0
    assert pair(OneForm(P2, [t2, 0]), VectorField(P2, [t1, 0])) == t1 * t2


def test_bracket_examples():
    assert vf_bracket(D1, vf(P2, "0", "t1")) == D2
    assert vf_bracket(vf(P2, "t2", "0"), vf(P2, "0", "t1")) == vf(P2, "-t1", "t2")
    Y = vf(P2, "t1*t2", "0")
    assert vf_bracket(EULER, Y) == Y


def test_d_scalar_examples():
    assert d_scalar(t1 * t2) == OneForm(P2, [t2, t1])
    assert d_scalar(P2.const(7)).is_zero()


def test_d_oneform_examples():
    w = d_oneform(OneForm(P2, [t2, 0]))
    assert w.coeff(0, 1) == -1
    assert w.coeff(1, 0) == 1
    assert d_oneform(OneForm(P1, [P1.parse("t^3")])).coeffs == ()


def test_two_form_evaluation_is_skew():
    w = TwoForm(P2, {(0, 1): t1})
    assert w(D1, D2) == t1
    assert w(D2, D1) == -t1
    assert w.to_strings() == {"1,2": "t1"}
    with pytest.raises(ValueError):
        TwoForm(P2, {(1, 0): t1})


def test_lie_derivative_examples():
    f = P1.parse("t^3 + 2*t")
    dt = OneForm.basis(P1, 0)
    assert lie_derivative(VectorField.basis(P1, 0), f * dt) == OneForm(P1, [f.derive(0)])
    assert lie_derivative(vf(P1, "t"), dt) == dt


def test_matrices():
    X = vf(P2, "t1^2", "t1*t2")
    L = lie_derivative_matrix(X)
    assert L[0][0] == 2 * t1 and L[0][1] == t2 and L[1][0] == 0 and L[1][1] == t1
    A = ad_matrix(X)
    # column j of A holds the coefficients of [X, d/dt_j]
    for j in range(2):
        col = vf_bracket(X, VectorField.basis(P2, j))
        assert tuple(A[k][j] for k in range(2)) == col.coeffs


def test_mismatch():
    with pytest.raises(RingMismatch):
        vf_bracket(D1, VectorField.basis(Q2, 0))
    with pytest.raises(ValueError):
        VectorField(P2, [t1])


rings = st.sampled_from([P2, Q2, S8])


@given(st.data())
def test_jacobi(data):
    R = data.draw(rings)
    X, Y, Z = (data.draw(fields(R, 2)) for _ in range(3))
    J = vf_bracket(X, vf_bracket(Y, Z)) + vf_bracket(Y, vf_bracket(Z, X)) + vf_bracket(Z, vf_bracket(X, Y))
    assert J.is_zero()


@given(st.data())
def test_module_bracket_formula(data):
    R = data.draw(rings)
    r, s = data.draw(elements(R, 2)), data.draw(elements(R, 2))
    X, Y = data.draw(fields(R, 2)), data.draw(fields(R, 2))
    lhs = vf_bracket(r * X, s * Y)
    rhs = (r * apply(X, s)) * Y - (s * apply(Y, r)) * X + (r * s) * vf_bracket(X, Y)
    assert lhs == rhs


@given(st.data())
def test_lie_derivative_rules(data):
    R = data.draw(rings)
    r = data.draw(elements(R, 2))
    X, Y = data.draw(fields(R, 2)), data.draw(fields(R, 2))
    a = data.draw(forms(R, 2))
    assert lie_derivative(X, r * a) == apply(X, r) * a + r * lie_derivative(X, a)
    assert lie_derivative(r * X, a) == r * lie_derivative(X, a) + pair(a, X) * d_scalar(r)
    assert pair(lie_derivative(X, a), Y) == d_oneform(a)(X, Y) + apply(Y, pair(a, X))
    # defining formula evaluated on an arbitrary field
    assert pair(lie_derivative(X, a), Y) == apply(X, pair(a, Y)) - pair(a, vf_bracket(X, Y))


@given(st.data())
def test_d_rules(data):
    R = data.draw(rings)
    r, s = data.draw(elements(R, 2)), data.draw(elements(R, 2))
    X = data.draw(fields(R, 2))
    assert d_scalar(r * s) == s * d_scalar(r) + r * d_scalar(s)
    assert d_oneform(d_scalar(r)).is_zero()
    assert pair(d_scalar(r), X) == apply(X, r)
    assert lie_derivative(X, d_scalar(r)) == d_scalar(apply(X, r))


@given(elements(P2, 2), elements(P2, 2), fields(P2, 2))
def test_cyclic_submodule_closed(r, s, X):
    B = vf_bracket(r * X, s * X)
    if X.is_zero():
        assert B.is_zero()
        return
    i = next(k for k, c in enumerate(X.coeffs) if not c.is_zero())
    c = exact_divide(B.coeffs[i], X.coeffs[i])
    assert c is not None
    assert B == c * X


@given(elements(P2, 2), elements(P2, 2))
def test_commuting_basis_span(r, s):
    B = vf_bracket(r * D1, s * D2)
    assert B == VectorField(P2, [-s * r.derive(1), r * s.derive(0)])
