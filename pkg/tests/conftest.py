import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cyclor.rings import Ring, monomials

settings.register_profile(
    "default",
    max_examples=int(os.environ.get("CYCLOR_HYPOTHESIS_EXAMPLES", "40")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

P1 = Ring.poly("t")
P2 = Ring.poly("t1", "t2")
Q1 = Ring.ratfunc("t")
Q2 = Ring.ratfunc("t1", "t2")
S8 = Ring.series("t", 8)

small = st.integers(-6, 6)


@st.composite
def polys(draw, ring, max_degree=3, max_terms=4):
    base = ring.base if ring.kind != "series" else Ring.poly(*ring.variables)
    monos = monomials(ring.nvars, max_degree)
    picks = draw(st.lists(st.sampled_from(monos), max_size=max_terms, unique=True))
    terms = {m: draw(small.filter(bool)) for m in picks}
    return base.from_terms(terms)


@st.composite
def elements(draw, ring, max_degree=3):
    if ring.kind == "poly":
        return draw(polys(ring, max_degree))
    if ring.kind == "ratfunc":
        num = draw(polys(ring, max_degree))
        den = draw(polys(ring, 2).filter(lambda p: not p.is_zero()))
        return ring.coerce(num) / ring.coerce(den)
    coeffs = draw(st.lists(small, min_size=ring.truncation, max_size=ring.truncation))
    return ring.series_from(coeffs)


@st.composite
def fields(draw, ring, max_degree=3):
    from cyclor.calculus import VectorField

    return VectorField(ring, [draw(elements(ring, max_degree)) for _ in range(ring.nvars)])


@st.composite
def forms(draw, ring, max_degree=3):
    from cyclor.calculus import OneForm

    return OneForm(ring, [draw(elements(ring, max_degree)) for _ in range(ring.nvars)])


any_ring = st.sampled_from([P1, P2, Q1, S8])


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
