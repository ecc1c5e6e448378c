from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from gerbeforms.crossed import abelian, inner
from gerbeforms.poly import Poly
from gerbeforms.weil import WeilElement

settings.register_profile(
    "exact", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("exact")

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polys(draw, dim: int = 2, max_degree: int = 2, max_terms: int = 4) -> Poly:
    exps = st.tuples(*[st.integers(0, max_degree)] * dim).filter(lambda e: sum(e) <= max_degree)
    terms = draw(st.dictionaries(exps, fractions, max_size=max_terms))
    return Poly(dim, terms)


@st.composite
def weils(draw, n: int = 2, d: int = 2, max_terms: int = 4) -> WeilElement:
    keys = st.sampled_from([key for k in range(0, min(n, d) + 1)
                            for key in WeilElement.basis(n, d, k)])
    terms = draw(st.dictionaries(keys, polys(d, 1, 2), max_size=max_terms))
    return WeilElement(n, d, terms)


@pytest.fixture(params=["INNER", "ABELIAN"])
def cm(request):
    return inner(2) if request.param == "INNER" else abelian()


@pytest.fixture
def cm2():
    return inner(2)


@pytest.fixture
def cm3():
    return inner(3)


def half(x) -> Fraction:
    return Fraction(x, 2)


# acceptance verdicts, repeated in the terminal summary so plain ``pytest -v`` shows them
VERDICTS = pytest.StashKey[list]()


@pytest.fixture
def verdict(request):
    lines = request.config.stash.setdefault(VERDICTS, [])

    def record(number: int, title: str, ok: bool, detail: str = "") -> bool:
        line = f"{'PASS' if ok else 'FAIL'} acceptance {number}: {title}"
        if detail:
            line += f" ({detail})"
        lines.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(VERDICTS, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
