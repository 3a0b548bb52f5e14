"""Plateaux of a labelled graph, the rank formula, and generating subsets.

For a prime p, a p-plateau is a nonempty connected subgraph P such that a
label at an origin inside P is divisible by p exactly when its oriented
edge is not contained in P.  The whole graph is a plateau for all large
primes, so any vertex set meeting every plateau is nonempty; the minimum
size of such a set, plus the first Betti number, is the rank of the
presented group.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .graph import Dart, LabelledGraph
from .primes import is_prime, prime_factors


@dataclass(frozen=True)
class Plateau:
    prime: int
    vertices: frozenset[str]
    edges: frozenset[str]
    is_whole_graph: bool = False

    def contains_dart(self, dart: Dart) -> bool:
        return dart.edge in self.edges


@dataclass(frozen=True)
class PlateauCollection:
    """All proper plateaux of a graph; the whole graph is always a plateau."""

    proper_plateaux: tuple[Plateau, ...]
    whole_graph_is_plateau: bool = True

    def primes(self) -> tuple[int, ...]:
        return tuple(sorted({p.prime for p in self.proper_plateaux}))


def label_primes(g: LabelledGraph) -> list[int]:
    """Distinct primes dividing at least one label magnitude."""
    found: set[int] = set()
    for dart in g.darts():
        found.update(prime_factors(g.label(dart)))
    return sorted(found)


def _coprime_components(g: LabelledGraph, p: int):
    """Components of the subgraph keeping only edges with both labels coprime to p."""
    keep = {rec.name for rec in g.edges
            if rec.label_origin % p != 0 and rec.label_terminus % p != 0}
    seen: set[str] = set()
    for start in g.vertices:
        if start in seen:
            continue
        comp_vertices = [start]
        seen.add(start)
        frontier = [start]
        while frontier:
            v = frontier.pop()
            for dart in g.darts_at(v):
                if dart.edge not in keep:
                    continue
                w = g.terminus(dart)
                if w not in seen:
                    seen.add(w)
                    comp_vertices.append(w)
                    frontier.append(w)
        vset = set(comp_vertices)
        comp_edges = frozenset(name for name in keep
                               if g.edge(name).origin in vset)
        yield frozenset(comp_vertices), comp_edges


def plateaux_for_prime(g: LabelledGraph, p: int) -> list[Plateau]:
    """The proper p-plateaux of g (pairwise vertex-disjoint).

    The whole graph qualifies as a p-plateau exactly when p divides no
    label at all; that case is tracked by :func:`all_plateaux` instead of
    being listed here.
    """
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    out: list[Plateau] = []
    n_vertices, n_edges = len(g.vertices), len(g.edges)
    for vset, eset in _coprime_components(g, p):
        if len(vset) == n_vertices and len(eset) == n_edges:
            continue  # whole graph
        ok = True
        for v in vset:
            for dart in g.darts_at(v):
                if dart.edge not in eset and g.label(dart) % p != 0:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(Plateau(p, vset, eset))
    out.sort(key=lambda P: min(g.vertex_position[v] for v in P.vertices))
    return out


def check_plateau(g: LabelledGraph, plateau: Plateau) -> bool:
    """Validate the plateau conditions of `plateau` against g directly."""
    if not plateau.vertices or not plateau.vertices <= set(g.vertices):
        return False
    for name in plateau.edges:
        if not g.has_edge(name):
            return False
        rec = g.edge(name)
        if rec.origin not in plateau.vertices or rec.terminus not in plateau.vertices:
            return False
    # connectivity of the subgraph
    start = next(iter(plateau.vertices))
    seen = {start}
    frontier = [start]
    while frontier:
        v = frontier.pop()
        for dart in g.darts_at(v):
            if dart.edge in plateau.edges:
                w = g.terminus(dart)
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
    if seen != plateau.vertices:
        return False
    # divisibility dichotomy at every origin inside the plateau
    p = plateau.prime
    for v in plateau.vertices:
        for dart in g.darts_at(v):
            divisible = g.label(dart) % p == 0
            if divisible == (dart.edge in plateau.edges):
                return False
    return True


def all_plateaux(g: LabelledGraph) -> PlateauCollection:
    """Every proper plateau of g, over all primes dividing some label."""
    g._require_connected()
    found: list[Plateau] = []
    for p in label_primes(g):
        found.extend(plateaux_for_prime(g, p))
    return PlateauCollection(tuple(found))


def has_proper_plateau(g: LabelledGraph) -> bool:
    return any(plateaux_for_prime(g, p) for p in label_primes(g))


# -- exact minimum hitting set ------------------------------------------------


def minimum_hitting_set(order: tuple[str, ...],
                        constraints: list[frozenset[str]]) -> frozenset[str]:
    """Smallest subset of `order` meeting every constraint (exact search).

    Branch and bound over the constraints: singleton constraints are
    propagated, branching picks a smallest unmet constraint, candidates are
    tried in declaration order, and a set of pairwise disjoint unmet
    constraints provides the lower bound.  Deterministic for fixed input.
    """
    position = {v: i for i, v in enumerate(order)}
    work = sorted({frozenset(c) for c in constraints},
                  key=lambda c: (len(c), sorted(position[v] for v in c)))
    for c in work:
        if not c:
            raise InputError("unsatisfiable empty constraint")
    # drop supersets of other constraints: hitting the subset hits them too
    kept: list[frozenset[str]] = []
    for c in work:
        if not any(other < c for other in kept):
            kept.append(c)

    def greedy(unmet: list[frozenset[str]]) -> set[str]:
        chosen: set[str] = set()
        while unmet:
            counts: dict[str, int] = {}
            for c in unmet:
                for v in c:
                    counts[v] = counts.get(v, 0) + 1
            best = min(counts, key=lambda v: (-counts[v], position[v]))
            chosen.add(best)
            unmet = [c for c in unmet if best not in c]
        return chosen

    def lower_bound(unmet: list[frozenset[str]]) -> int:
        picked: list[frozenset[str]] = []
        for c in unmet:
            if all(c.isdisjoint(d) for d in picked):
                picked.append(c)
        return len(picked)

    best: set[str] = greedy(kept)

    def search(unmet: list[frozenset[str]], chosen: set[str]) -> None:
        nonlocal best
        # propagate forced singletons
        while True:
            units = [c for c in unmet if len(c) == 1]
            if not units:
                break
            for c in units:
                chosen = chosen | c
            unmet = [c for c in unmet if not c & chosen]
        if not unmet:
            if len(chosen) < len(best):
                best = chosen
            return
        if len(chosen) + lower_bound(unmet) >= len(best):
            return
        branch = min(unmet, key=lambda c: (len(c), sorted(position[v] for v in c)))
        for v in sorted(branch, key=position.get):
            search([c for c in unmet if v not in c], chosen | {v})

    search(kept, set())
    return frozenset(best)


# -- plateaunic number, rank, generating subsets ------------------------------


def _constraints(g: LabelledGraph) -> list[frozenset[str]]:
    sets = [P.vertices for P in all_plateaux(g).proper_plateaux]
    sets.append(frozenset(g.vertices))  # the whole graph is a plateau
    return sets


def minimum_generating_vertices(g: LabelledGraph) -> frozenset[str]:
    """A smallest vertex set meeting every plateau (deterministic witness)."""
    return minimum_hitting_set(g.vertices, _constraints(g))


def mu(g: LabelledGraph) -> int:
    """Minimum number of vertices meeting every plateau of g."""
    return len(minimum_generating_vertices(g))


def rank(g: LabelledGraph) -> int:
    """Minimal number of generators of the presented group: Betti number + mu."""
    g._require_connected()
    return g.betti() + mu(g)


def generates(g: LabelledGraph, keep: frozenset[str] | set[str]) -> bool:
    """Do the vertex generators over `keep`, plus all stable letters, generate?

    True exactly when `keep` meets every plateau (the whole graph included,
    so the empty set never generates).
    """
    g._require_connected()
    keep = frozenset(keep)
    for v in keep:
        if not g.has_vertex(v):
            raise InputError(f"unknown vertex {v!r}")
    if not keep:
        return False
    return all(keep & P.vertices for P in all_plateaux(g).proper_plateaux)
