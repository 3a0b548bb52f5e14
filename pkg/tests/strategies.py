"""Hypothesis strategies for small labelled graphs."""

from hypothesis import strategies as st

from gbs import LabelledGraph


def _labels(allow_one: bool):
    low = 1 if allow_one else 2
    return st.tuples(st.integers(low, 12), st.booleans()).map(
        lambda t: -t[0] if t[1] else t[0])


@st.composite
def connected_graphs(draw, max_vertices=5, max_extra_edges=4):
    """Connected reduced labelled graph: tree plus a few extra edges."""
    n = draw(st.integers(1, max_vertices))
    vertices = [f"v{i}" for i in range(1, n + 1)]
    edges = []
    for i in range(2, n + 1):
        j = draw(st.integers(1, i - 1))
        edges.append((f"e{len(edges) + 1}", f"v{j}", f"v{i}",
                      draw(_labels(False)), draw(_labels(False))))
    for _ in range(draw(st.integers(0, max_extra_edges))):
        a = draw(st.integers(1, n))
        b = draw(st.integers(1, n))
        loop = a == b
        edges.append((f"e{len(edges) + 1}", f"v{a}", f"v{b}",
                      draw(_labels(loop)), draw(_labels(loop))))
    return LabelledGraph.build(vertices, edges)
