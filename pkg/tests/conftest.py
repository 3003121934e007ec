from fractions import Fraction

from hypothesis import settings, strategies as st

from nonproper.poly import BiPoly

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

small_fractions = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))


@st.composite
def bipolys(draw, max_degree=3, max_terms=5, vars=("x", "y")):
    terms = draw(
        st.dictionaries(
            st.tuples(st.integers(0, max_degree), st.integers(0, max_degree)),
            small_fractions,
            max_size=max_terms,
        )
    )
    return BiPoly(terms, vars)


# (criterion number, passed, detail) rows filled in by test_acceptance.py
ACCEPTANCE: list = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
