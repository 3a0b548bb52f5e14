import pytest

from gbs import AdmissibleMap, GraphMorphism, LabelledGraph


def bs(m: int, n: int) -> LabelledGraph:
    """One vertex with one loop labelled (m, n)."""
    return LabelledGraph.build(["v"], [("e", "v", "v", m, n)])


def circle_graph(pairs) -> LabelledGraph:
    """Circle through u1..uk; edge ci runs ui -> u(i+1) with labels pairs[i]."""
    k = len(pairs)
    vertices = [f"u{i + 1}" for i in range(k)]
    edges = [(f"c{i + 1}", vertices[i], vertices[(i + 1) % k], x, y)
             for i, (x, y) in enumerate(pairs)]
    return LabelledGraph.build(vertices, edges)


def f1(n: int) -> LabelledGraph:
    """Path v_a - v_b - v_c with labels 3,2 then n,5."""
    return LabelledGraph.build(
        ["v_a", "v_b", "v_c"],
        [("e_1", "v_a", "v_b", 3, 2), ("e_2", "v_b", "v_c", n, 5)])


def f2() -> LabelledGraph:
    return LabelledGraph.build(
        ["v_a", "v_b", "v_c", "v_d"],
        [("e_1", "v_a", "v_b", 3, 2), ("e_2", "v_b", "v_c", 3, 7),
         ("e_3", "v_c", "v_d", 10, 5)])


def f3() -> LabelledGraph:
    """Triangle with labels 3,5 / 2,3 / 2,5."""
    return LabelledGraph.build(
        ["v_a", "v_b", "v_c"],
        [("e_1", "v_a", "v_b", 3, 5), ("e_2", "v_b", "v_c", 2, 3),
         ("e_3", "v_a", "v_c", 2, 5)])


def f4_target() -> LabelledGraph:
    return LabelledGraph.build(
        ["u", "w"], [("s", "u", "w", 2, 2), ("l", "w", "w", 3, 5)])


def f4_source() -> LabelledGraph:
    return LabelledGraph.build(
        ["x", "y"],
        [("a", "x", "y", 1, 1), ("b", "x", "y", 1, 1), ("m", "y", "y", 3, 5)])


def f4_map() -> AdmissibleMap:
    morphism = GraphMorphism(
        f4_source(), f4_target(), {"x": "u", "y": "w"},
        {"a": ("s", True), "b": ("s", True), "m": ("l", True)})
    return AdmissibleMap(morphism, {"x": 2, "y": 2}, {"a": 1, "b": 1, "m": 2})


@pytest.fixture
def figures():
    return {"f1_7": f1(7), "f1_6": f1(6), "f2": f2(), "f3": f3(),
            "f4_target": f4_target(), "f4_source": f4_source()}
