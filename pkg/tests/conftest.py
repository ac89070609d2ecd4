from hypothesis import strategies as st

from tuttefourier.graph import Multigraph

ACCEPTANCE_LINES: list[str] = []


@st.composite
def multigraphs(draw, max_vertices=5, max_edges=7):
    """Random multigraphs with loops and parallel edges, orientation as drawn."""
    n = draw(st.integers(1, max_vertices))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=max_edges))
    return Multigraph(n, tuple(edges))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
