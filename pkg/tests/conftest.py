import pytest
from hypothesis import strategies as st

from normone import GroupContext, Poly

CTX22 = GroupContext(2, 2)
CTX32 = GroupContext(3, 2)
CTX23 = GroupContext(2, 3)


def polys(ctx, max_degree=4, max_terms=6, max_coeff=5):
    word = st.lists(st.integers(0, ctx.order - 1), max_size=max_degree).map(tuple)
    coeff = st.integers(-max_coeff, max_coeff)
    return st.dictionaries(word, coeff, max_size=max_terms).map(lambda d: Poly(ctx, d))


def X(ctx, j):
    return Poly.gen(ctx, j)


def W(ctx, *pairs):
    """Poly from (coeff, word) pairs."""
    return Poly.from_words(ctx, pairs)


# acceptance reporting: one PASS/FAIL line per criterion at the end of the run
_acceptance_lines = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and item.module.__name__.endswith("test_acceptance"):
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        _acceptance_lines.append(f"{'PASS' if rep.passed else 'FAIL'}  {doc}")


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
