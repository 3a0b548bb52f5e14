"""Labelled multigraphs and their elementary transformations.

A labelled graph is a finite multigraph (loops and parallel edges allowed)
in which every oriented edge carries a nonzero integer label near its
origin.  A non-oriented edge is stored once as an :class:`EdgeRecord`; its
two orientations are addressed through :class:`Dart` handles, so the two
labels of an edge live independently at its two ends.

Everything here is immutable: transformations (`reduce`, sign changes,
`normalize_signs`) return new graphs, and all operations are deterministic
in the declaration order of vertices and edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple

from .errors import InputError


class Dart(NamedTuple):
    """One orientation of an edge: the forward dart runs origin -> terminus."""

    edge: str
    forward: bool

    def reverse(self) -> "Dart":
        return Dart(self.edge, not self.forward)

    def render(self) -> str:
        return self.edge if self.forward else "~" + self.edge


class EdgeRecord(NamedTuple):
    name: str
    origin: str
    terminus: str
    label_origin: int
    label_terminus: int

    @property
    def is_loop(self) -> bool:
        return self.origin == self.terminus


class ModulusEntry(NamedTuple):
    loop: tuple[Dart, ...]
    value: Fraction


@dataclass(frozen=True)
class CycleBasisModulus:
    """Label ratios around the fundamental cycles of a spanning tree."""

    entries: tuple[ModulusEntry, ...]

    def values(self) -> list[Fraction]:
        return [entry.value for entry in self.entries]

    def is_unimodular(self) -> bool:
        return all(abs(value) == 1 for value in self.values())

    def is_trivial(self) -> bool:
        return all(value == 1 for value in self.values())

    def takes_negative_value(self) -> bool:
        return any(value < 0 for value in self.values())


def _check_identifier(kind: str, name: str) -> None:
    if not isinstance(name, str) or not name or name.split() != [name]:
        raise InputError(f"bad {kind} identifier {name!r}: must be a nonempty "
                         "string without whitespace")


@dataclass(frozen=True)
class LabelledGraph:
    """Finite multigraph with a nonzero integer label at each edge end."""

    vertices: tuple[str, ...]
    edges: tuple[EdgeRecord, ...]

    def __post_init__(self):
        if not self.vertices:
            raise InputError("a labelled graph needs at least one vertex")
        seen: set[str] = set()
        for v in self.vertices:
            _check_identifier("vertex", v)
            if v in seen:
                raise InputError(f"duplicate vertex {v!r}")
            seen.add(v)
        vset = seen
        enames: set[str] = set()
        for rec in self.edges:
            _check_identifier("edge", rec.name)
            if rec.name in enames:
                raise InputError(f"duplicate edge {rec.name!r}")
            enames.add(rec.name)
            for end in (rec.origin, rec.terminus):
                if end not in vset:
                    raise InputError(f"edge {rec.name!r} uses unknown vertex {end!r}")
            for label in (rec.label_origin, rec.label_terminus):
                if not isinstance(label, int) or label == 0:
                    raise InputError(f"edge {rec.name!r} carries a zero or "
                                     f"non-integer label {label!r}")

    @classmethod
    def build(cls, vertices: Iterable[str],
              edges: Iterable[tuple[str, str, str, int, int]]) -> "LabelledGraph":
        return cls(tuple(vertices), tuple(EdgeRecord(*e) for e in edges))

    # -- indexed access -------------------------------------------------

    @cached_property
    def _edge_by_name(self) -> dict[str, EdgeRecord]:
        return {rec.name: rec for rec in self.edges}

    @cached_property
    def vertex_position(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _darts_at(self) -> dict[str, tuple[Dart, ...]]:
        table: dict[str, list[Dart]] = {v: [] for v in self.vertices}
        for rec in self.edges:
            table[rec.origin].append(Dart(rec.name, True))
            table[rec.terminus].append(Dart(rec.name, False))
        return {v: tuple(ds) for v, ds in table.items()}

    def edge(self, name: str) -> EdgeRecord:
        try:
            return self._edge_by_name[name]
        except KeyError:
            raise InputError(f"unknown edge {name!r}") from None

    def has_vertex(self, v: str) -> bool:
        return v in self.vertex_position

    def has_edge(self, name: str) -> bool:
        return name in self._edge_by_name

    def origin(self, dart: Dart) -> str:
        rec = self.edge(dart.edge)
        return rec.origin if dart.forward else rec.terminus

    def terminus(self, dart: Dart) -> str:
        return self.origin(dart.reverse())

    def label(self, dart: Dart) -> int:
        rec = self.edge(dart.edge)
        return rec.label_origin if dart.forward else rec.label_terminus

    def darts(self) -> tuple[Dart, ...]:
        out: list[Dart] = []
        for rec in self.edges:
            out.append(Dart(rec.name, True))
            out.append(Dart(rec.name, False))
        return tuple(out)

    def darts_at(self, v: str) -> tuple[Dart, ...]:
        """Oriented edges with origin v; a loop at v contributes both darts."""
        try:
            return self._darts_at[v]
        except KeyError:
            raise InputError(f"unknown vertex {v!r}") from None

    def valence(self, v: str) -> int:
        return len(self.darts_at(v))

    def terminal_vertices(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if self.valence(v) == 1)

    # -- connectivity and Betti number ----------------------------------

    def components(self) -> tuple[tuple[str, ...], ...]:
        """Vertex sets of the connected components, each in discovery order."""
        seen: set[str] = set()
        out: list[tuple[str, ...]] = []
        for start in self.vertices:
            if start in seen:
                continue
            comp = [start]
            seen.add(start)
            frontier = [start]
            while frontier:
                v = frontier.pop()
                for dart in self.darts_at(v):
                    w = self.terminus(dart)
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        frontier.append(w)
            out.append(tuple(comp))
        return tuple(out)

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def betti(self) -> int:
        """First Betti number |E| - |V| + number of components."""
        return len(self.edges) - len(self.vertices) + len(self.components())

    def is_reduced(self) -> bool:
        """True when every edge carrying a label +-1 is a loop."""
        return all(rec.is_loop or (abs(rec.label_origin) != 1 and abs(rec.label_terminus) != 1)
                   for rec in self.edges)

    # -- spanning tree and modulus --------------------------------------

    def maximal_subtree(self) -> frozenset[str]:
        """Edge names of a spanning tree, chosen in declaration order."""
        self._require_connected()
        parent: dict[str, str] = {v: v for v in self.vertices}

        def find(v: str) -> str:
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        tree: list[str] = []
        for rec in self.edges:
            if rec.is_loop:
                continue
            a, b = find(rec.origin), find(rec.terminus)
            if a != b:
                parent[a] = b
                tree.append(rec.name)
        return frozenset(tree)

    def _require_connected(self) -> None:
        if not self.is_connected():
            raise InputError("operation requires a connected graph")

    def _tree_structure(self, tree: frozenset[str]):
        """Parent darts and depths of a BFS of the spanning tree."""
        root = self.vertices[0]
        parent_dart: dict[str, Dart] = {}
        depth = {root: 0}
        order = [root]
        frontier = [root]
        while frontier:
            v = frontier.pop(0)
            for dart in self.darts_at(v):
                if dart.edge not in tree:
                    continue
                w = self.terminus(dart)
                if w not in depth:
                    depth[w] = depth[v] + 1
                    parent_dart[w] = dart  # dart runs parent -> child
                    order.append(w)
                    frontier.append(w)
        return order, parent_dart, depth

    def _tree_path(self, a: str, b: str, parent_dart, depth) -> list[Dart]:
        """Darts of the spanning-tree path from a to b."""
        up_a: list[Dart] = []
        up_b: list[Dart] = []
        while depth[a] > depth[b]:
            d = parent_dart[a]
            up_a.append(d.reverse())
            a = self.origin(d)
        while depth[b] > depth[a]:
            d = parent_dart[b]
            up_b.append(d.reverse())
            b = self.origin(d)
        while a != b:
            da, db = parent_dart[a], parent_dart[b]
            up_a.append(da.reverse())
            up_b.append(db.reverse())
            a, b = self.origin(da), self.origin(db)
        return up_a + [d.reverse() for d in reversed(up_b)]

    def modulus(self) -> CycleBasisModulus:
        """Label-ratio products over the fundamental cycles of the chosen tree."""
        tree = self.maximal_subtree()
        _, parent_dart, depth = self._tree_structure(tree)
        entries: list[ModulusEntry] = []
        for rec in self.edges:
            if rec.name in tree:
                continue
            d0 = Dart(rec.name, True)
            loop = [d0] + self._tree_path(rec.terminus, rec.origin, parent_dart, depth)
            value = Fraction(1)
            for dart in loop:
                value *= Fraction(self.label(dart), self.label(dart.reverse()))
            entries.append(ModulusEntry(tuple(loop), value))
        return CycleBasisModulus(tuple(entries))

    def is_unimodular(self) -> bool:
        return self.modulus().is_unimodular()

    def has_nontrivial_center(self) -> bool:
        """True when the modulus is identically 1 on the cycle basis."""
        return self.modulus().is_trivial()

    # -- structural predicates ------------------------------------------

    def is_strongly_slide_free(self) -> bool:
        """No label near a vertex divides another label near the same vertex."""
        for v in self.vertices:
            mags = [abs(self.label(d)) for d in self.darts_at(v)]
            for i, a in enumerate(mags):
                for j, b in enumerate(mags):
                    if i != j and b % a == 0:
                        return False
        return True

    def is_circle(self) -> bool:
        return (self.is_connected() and len(self.edges) >= 1
                and all(self.valence(v) == 2 for v in self.vertices)
                and self.betti() == 1)

    def circle_products(self) -> tuple[int, int]:
        """Products of the co-oriented and counter-oriented labels of a circle."""
        if not self.is_circle():
            raise InputError("circle_products requires a graph homeomorphic to a circle")
        start = self.darts_at(self.vertices[0])[0]
        forward = 1
        backward = 1
        dart = start
        while True:
            forward *= self.label(dart)
            backward *= self.label(dart.reverse())
            w = self.terminus(dart)
            back = dart.reverse()
            nxt = next(d for d in self.darts_at(w) if d != back)
            if nxt == start:
                break
            dart = nxt
        return forward, backward

    # -- sign changes ----------------------------------------------------

    def sign_change_vertex(self, v: str) -> "LabelledGraph":
        """Negate every label near v; the presented group is unchanged."""
        if not self.has_vertex(v):
            raise InputError(f"unknown vertex {v!r}")
        new = []
        for rec in self.edges:
            lo = -rec.label_origin if rec.origin == v else rec.label_origin
            lt = -rec.label_terminus if rec.terminus == v else rec.label_terminus
            new.append(EdgeRecord(rec.name, rec.origin, rec.terminus, lo, lt))
        return LabelledGraph(self.vertices, tuple(new))

    def sign_change_edge(self, name: str) -> "LabelledGraph":
        """Negate both labels carried by one edge."""
        if not self.has_edge(name):
            raise InputError(f"unknown edge {name!r}")
        new = [EdgeRecord(r.name, r.origin, r.terminus, -r.label_origin, -r.label_terminus)
               if r.name == name else r for r in self.edges]
        return LabelledGraph(self.vertices, tuple(new))

    def normalize_signs(self) -> "LabelledGraph":
        """Push negative signs off a spanning tree by admissible sign changes.

        Afterwards every spanning-tree label is positive and each remaining
        edge carries at most one negative label; when the modulus takes only
        positive values this makes every label positive.
        """
        self._require_connected()
        tree = self.maximal_subtree()
        order, parent_dart, _ = self._tree_structure(tree)
        recs = {r.name: [r.origin, r.terminus, r.label_origin, r.label_terminus]
                for r in self.edges}

        def flip_edge(name: str) -> None:
            recs[name][2] = -recs[name][2]
            recs[name][3] = -recs[name][3]

        def flip_vertex(v: str) -> None:
            for fields in recs.values():
                if fields[0] == v:
                    fields[2] = -fields[2]
                if fields[1] == v:
                    fields[3] = -fields[3]

        for v in order[1:]:
            dart = parent_dart[v]  # runs parent -> v
            fields = recs[dart.edge]
            near_parent = fields[2] if dart.forward else fields[3]
            if near_parent < 0:
                flip_edge(dart.edge)
            near_child = fields[3] if dart.forward else fields[2]
            if near_child < 0:
                flip_vertex(v)
        for rec in self.edges:
            if rec.name in tree:
                continue
            fields = recs[rec.name]
            if fields[2] < 0 and fields[3] < 0:
                flip_edge(rec.name)
        return LabelledGraph(self.vertices, tuple(
            EdgeRecord(r.name, *recs[r.name]) for r in self.edges))

    # -- reduction ---------------------------------------------------------

    def reduce(self, _collapse_order: tuple[str, ...] | None = None) -> "LabelledGraph":
        """Collapse non-loop edges with a label +-1 until none remain.

        Collapsing an edge merges its endpoints: the vertex at the +-1 end
        disappears, and each of its remaining edge ends moves to the other
        endpoint with its label multiplied by the product of the collapsed
        edge's two labels.  Collapses happen in declaration order unless a
        different scan order is supplied (used by tests to confirm the
        result is independent of the order, up to isomorphism).
        """
        self._require_connected()
        verts = list(self.vertices)
        recs = {r.name: [r.origin, r.terminus, r.label_origin, r.label_terminus]
                for r in self.edges}
        names = list(_collapse_order) if _collapse_order is not None \
            else [r.name for r in self.edges]
        if set(names) != set(recs):
            raise InputError("collapse order must list every edge exactly once")

        while True:
            target = None
            for name in names:
                if name not in recs:
                    continue
                o, t, lo, lt = recs[name]
                if o != t and (abs(lo) == 1 or abs(lt) == 1):
                    target = name
                    break
            if target is None:
                break
            o, t, lo, lt = recs.pop(target)
            dying, surviving = (o, t) if abs(lo) == 1 else (t, o)
            factor = lo * lt
            for fields in recs.values():
                if fields[0] == dying:
                    fields[0] = surviving
                    fields[2] *= factor
                if fields[1] == dying:
                    fields[1] = surviving
                    fields[3] *= factor
            verts.remove(dying)
        kept = [r.name for r in self.edges if r.name in recs]
        return LabelledGraph(tuple(verts), tuple(
            EdgeRecord(name, *recs[name]) for name in kept))
