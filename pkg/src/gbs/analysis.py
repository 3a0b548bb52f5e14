"""Structural analysis of admissible maps.

The quantities audited here relate the Betti number, terminal-vertex count
and plateau structure of the two ends of an admissible map.  They hold for
every map produced by the constructions in :mod:`gbs.covering`; a failed
check indicates a bug, not bad input.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import InputError, InternalError
from .covering import AdmissibleMap, verify_admissible
from .graph import LabelledGraph
from .plateau import (Plateau, all_plateaux, check_plateau, label_primes,
                      minimum_hitting_set, plateaux_for_prime)


def doubled_deltas(m: AdmissibleMap) -> dict[str, int]:
    """Per target vertex v: 2 * (sum over preimages x of |d_x/2 - 1|  -  |d_v/2 - 1|).

    Doubling keeps the arithmetic exact; the values sum to
    2*((beta+t of the source) - (beta+t of the target)).
    """
    out = {}
    for v in m.target.vertices:
        total = sum(abs(m.source.valence(x) - 2) for x in m.vertex_preimages[v])
        out[v] = total - abs(m.target.valence(v) - 2)
    return out


def bad_vertices(m: AdmissibleMap) -> frozenset[str]:
    """Terminal target vertices all of whose preimages have valence 2."""
    out = set()
    for v in m.target.vertices:
        if m.target.valence(v) != 1:
            continue
        preimages = m.vertex_preimages[v]
        if preimages and all(m.source.valence(x) == 2 for x in preimages):
            dart = m.target.darts_at(v)[0]
            if m.target.label(dart) % 2 != 0:
                raise InternalError(f"bad vertex {v!r} must carry an even label")
            out.add(v)
    return frozenset(out)


def totally_unfolded(m: AdmissibleMap, plateau: Plateau) -> bool:
    """Does p divide the number of lifts of every oriented edge leaving the plateau?"""
    if not check_plateau(m.target, plateau):
        raise InputError("not a plateau of the target graph")
    p = plateau.prime
    for v in plateau.vertices:
        for dart in m.target.darts_at(v):
            if dart.edge in plateau.edges:
                continue
            for x in m.vertex_preimages[v]:
                if len(m.lifts_at(x, dart)) % p != 0:
                    return False
    return True


def _is_interior(g: LabelledGraph, plateau: Plateau) -> bool:
    if len(plateau.vertices) == len(g.vertices) and len(plateau.edges) == len(g.edges):
        return False
    return all(g.valence(v) != 1 for v in plateau.vertices)


def _strictly_contains(big: Plateau, small: Plateau) -> bool:
    return (small.vertices <= big.vertices and small.edges <= big.edges
            and (small.vertices, small.edges) != (big.vertices, big.edges))


def minimal_plateaux(m: AdmissibleMap) -> list[Plateau]:
    """Interior, totally unfolded plateaux of the target, minimal by inclusion."""
    candidates = [P for P in all_plateaux(m.target).proper_plateaux
                  if _is_interior(m.target, P) and totally_unfolded(m, P)]
    return [P for P in candidates
            if not any(_strictly_contains(P, Q) for Q in candidates if Q is not P)]


def minimal_plateau_hitting_number(m: AdmissibleMap) -> int:
    """Minimum number of target vertices meeting every minimal plateau."""
    plats = minimal_plateaux(m)
    if not plats:
        return 0
    return len(minimum_hitting_set(m.target.vertices,
                                   [P.vertices for P in plats]))


def _boundary_darts(g: LabelledGraph, plateau: Plateau):
    """Oriented edges with origin in the plateau and terminus outside it."""
    for v in plateau.vertices:
        for dart in g.darts_at(v):
            if dart.edge not in plateau.edges and g.terminus(dart) not in plateau.vertices:
                yield dart


def bad_plateaux(m: AdmissibleMap) -> list[Plateau]:
    """Minimal 2-unfolded plateaux whose single boundary edge has exactly 2 lifts."""
    out = []
    for plateau in minimal_plateaux(m):
        if plateau.prime != 2:
            continue
        boundary = list(_boundary_darts(m.target, plateau))
        if len(boundary) != 1:
            continue
        dart = boundary[0]
        lifts = sum(len(m.lifts_at(x, dart))
                    for x in m.vertex_preimages[m.target.origin(dart)])
        if lifts == 2:
            out.append(plateau)
    return out


# -- classification ------------------------------------------------------------


@dataclass(frozen=True)
class MapClassification:
    kind: str  # accordion | branched-2-cover-of-tree | generalized-branched | ordinary
    size: int | None = None
    branching_plateaux: tuple[Plateau, ...] = ()

    @property
    def exceptional(self) -> bool:
        return self.kind != "ordinary"

    def render(self) -> str:
        size = str(self.size) if self.size is not None else "-"
        return (f"kind={self.kind} exceptional={str(self.exceptional).lower()} "
                f"size={size} branching-plateaux={len(self.branching_plateaux)}")


def _is_interval(g: LabelledGraph) -> bool:
    return (g.is_connected() and g.betti() == 0 and len(g.vertices) >= 2
            and sorted(g.valence(v) for v in g.vertices) ==
            [1, 1] + [2] * (len(g.vertices) - 2))


def _collapses_to_tree(g: LabelledGraph, chosen: tuple[Plateau, ...]) -> bool:
    """Is the quotient of g by the chosen (disjoint) plateaux a tree?"""
    node_of = {}
    for i, plateau in enumerate(chosen):
        for v in plateau.vertices:
            node_of[v] = f"P{i}"
    for v in g.vertices:
        node_of.setdefault(v, v)
    collapsed_edges = {name for plateau in chosen for name in plateau.edges}
    nodes = set(node_of.values())
    adjacency: dict[str, set[str]] = {n: set() for n in nodes}
    n_edges = 0
    for rec in g.edges:
        if rec.name in collapsed_edges:
            continue
        a, b = node_of[rec.origin], node_of[rec.terminus]
        if a == b:
            return False  # quotient loop
        n_edges += 1
        adjacency[a].add(b)
        adjacency[b].add(a)
    if n_edges != len(nodes) - 1:
        return False
    seen = set()
    frontier = [next(iter(nodes))]
    while frontier:
        n = frontier.pop()
        if n in seen:
            continue
        seen.add(n)
        frontier.extend(adjacency[n])
    return seen == nodes


def _is_generalized_branched(m: AdmissibleMap, chosen: tuple[Plateau, ...]) -> bool:
    tgt = m.target
    if not _collapses_to_tree(tgt, chosen):
        return False
    in_plateau_vertices = {v for plateau in chosen for v in plateau.vertices}
    in_plateau_edges = {name for plateau in chosen for name in plateau.edges}
    for v in tgt.vertices:
        if tgt.valence(v) == 1:
            if len(m.vertex_preimages[v]) != 1:
                return False
        elif v not in in_plateau_vertices:
            if len(m.vertex_preimages[v]) != 2:
                return False
    for rec in tgt.edges:
        if rec.name not in in_plateau_edges:
            if len(m.edge_preimages[rec.name]) != 2:
                return False
    frontier_points = {tgt.origin(d) for plateau in chosen
                       for d in _boundary_darts(tgt, plateau)}
    return all(len(m.vertex_preimages[v]) == 1 for v in frontier_points)


def classify(m: AdmissibleMap) -> MapClassification:
    """Accordion, (generalized) branched 2-cover of a tree, or ordinary.

    An accordion wraps a circle onto an interval in 2n monotone strands; a
    size-1 accordion is reported as a branched 2-cover.  The generalized
    branched search tries subsets of the minimal 2-plateaux as branching
    loci, smallest subsets first.
    """
    if not verify_admissible(m):
        raise InputError("classify requires an admissible map")
    if not m.source.is_connected():
        raise InputError("classify requires a connected source")
    src, tgt = m.source, m.target

    if src.is_circle() and _is_interval(tgt):
        ends = [v for v in tgt.vertices if tgt.valence(v) == 1]
        counts = [len(m.vertex_preimages[v]) for v in ends]
        if counts[0] != counts[1]:
            raise InternalError("accordion fold counts differ between the two ends")
        size = counts[0]
        if size == 1:
            return MapClassification("branched-2-cover-of-tree")
        return MapClassification("accordion", size=size)

    candidates = [P for P in minimal_plateaux(m) if P.prime == 2]
    for r in range(len(candidates) + 1):
        for chosen in combinations(candidates, r):
            if _is_generalized_branched(m, chosen):
                if chosen:
                    return MapClassification("generalized-branched",
                                             branching_plateaux=chosen)
                return MapClassification("branched-2-cover-of-tree")
    return MapClassification("ordinary")


# -- the audit -----------------------------------------------------------------


@dataclass(frozen=True)
class AuditEntry:
    name: str
    passed: bool
    detail: str

    def render(self) -> str:
        return f"check={self.name} pass={str(self.passed).lower()} detail={self.detail}"


@dataclass(frozen=True)
class AuditReport:
    classification: MapClassification
    quantities: dict[str, int]
    entries: tuple[AuditEntry, ...]

    @property
    def ok(self) -> bool:
        return all(entry.passed for entry in self.entries)

    def render(self) -> str:
        lines = [self.classification.render()]
        lines.append(" ".join(f"{k}={v}" for k, v in sorted(self.quantities.items())))
        lines.extend(entry.render() for entry in self.entries)
        lines.append(f"audit={'pass' if self.ok else 'fail'}")
        return "\n".join(lines)


def _two_plateaux_for_parity(g: LabelledGraph):
    """Proper 2-plateaux, plus the whole graph when no label is even."""
    yield from plateaux_for_prime(g, 2)
    if all(g.label(d) % 2 != 0 for d in g.darts()):
        yield Plateau(2, frozenset(g.vertices),
                      frozenset(r.name for r in g.edges), is_whole_graph=True)


def check_inequalities(m: AdmissibleMap) -> AuditReport:
    """Evaluate the Betti/terminal/plateau inequalities on one admissible map."""
    if not verify_admissible(m):
        raise InputError("audit requires an admissible map")
    if not m.source.is_connected():
        raise InputError("audit requires a connected source")
    if not m.target.is_reduced():
        raise InputError("audit requires a reduced target")
    src, tgt = m.source, m.target

    beta, t = tgt.betti(), len(tgt.terminal_vertices())
    beta_bar, t_bar = src.betti(), len(src.terminal_vertices())
    bad = bad_vertices(m)
    t_good = t - len(bad)
    minimal = minimal_plateaux(m)
    # one subgraph may qualify for several primes; count subgraphs once
    subgraphs = {(P.vertices, P.edges) for P in minimal}
    c = minimal_plateau_hitting_number(m)
    bad_subgraphs = {(P.vertices, P.edges) for P in bad_plateaux(m)}
    good_plateau_count = len(subgraphs) - len(bad_subgraphs)
    classification = classify(m)

    quantities = {
        "beta": beta, "t": t, "beta-source": beta_bar, "t-source": t_bar,
        "t-good": t_good, "c": c, "c-good": good_plateau_count,
        "bad-vertices": len(bad), "minimal-plateaux": len(subgraphs),
        "total-multiplicity": m.total_multiplicity(),
    }
    entries: list[AuditEntry] = []

    delta_sum = sum(doubled_deltas(m).values())
    expected = 2 * ((beta_bar + t_bar) - (beta + t))
    entries.append(AuditEntry("delta-sum", delta_sum == expected,
                              f"sum(2*delta)={delta_sum} expected={expected}"))

    lhs, rhs = beta + t, beta_bar + t_bar
    if classification.kind in ("accordion", "branched-2-cover-of-tree"):
        entries.append(AuditEntry("terminal-betti", lhs == rhs + 1,
                                  f"beta+t={lhs} must equal source value {rhs}+1"))
    else:
        entries.append(AuditEntry("terminal-betti", lhs <= rhs,
                                  f"beta+t={lhs} must not exceed source value {rhs}"))

    entries.append(AuditEntry("good-count-bound", beta + t_good + good_plateau_count <= rhs,
                              f"beta+t_good+c_good={beta + t_good + good_plateau_count} "
                              f"vs {rhs}"))

    slack = 1 if classification.exceptional else 0
    entries.append(AuditEntry("minimal-plateau-bound", beta + t + c <= rhs + slack,
                              f"beta+t+c={beta + t + c} vs {rhs}+{slack}"))

    parity_ok, parity_detail = True, "all 2-plateaux have constant preimage parity"
    for plateau in _two_plateaux_for_parity(tgt):
        parities = {len(m.vertex_preimages[v]) % 2 for v in plateau.vertices}
        parities |= {len(m.edge_preimages[name]) % 2 for name in plateau.edges}
        if len(parities) > 1:
            parity_ok, parity_detail = False, f"parity varies on 2-plateau {sorted(plateau.vertices)}"
            break
    entries.append(AuditEntry("parity-constant", parity_ok, parity_detail))

    even_ok, even_detail = True, "2-unfolded plateaux carry even multiplicities"
    for plateau in plateaux_for_prime(tgt, 2):
        if not totally_unfolded(m, plateau):
            continue
        mults = [m.vertex_multiplicity[x]
                 for v in plateau.vertices for x in m.vertex_preimages[v]]
        mults += [m.edge_multiplicity[name]
                  for ename in plateau.edges for name in m.edge_preimages[ename]]
        mults.append(m.total_multiplicity())
        if any(value % 2 != 0 for value in mults):
            even_ok = False
            even_detail = f"odd multiplicity over 2-plateau {sorted(plateau.vertices)}"
            break
    entries.append(AuditEntry("unfolded-even-multiplicity", even_ok, even_detail))

    unfolded_ok, unfolded_detail = True, "plateaux without plateau preimages are unfolded"
    for prime in label_primes(tgt):
        for plateau in plateaux_for_prime(tgt, prime):
            if _has_plateau_preimage_component(m, plateau):
                continue
            if not totally_unfolded(m, plateau):
                unfolded_ok = False
                unfolded_detail = (f"{prime}-plateau {sorted(plateau.vertices)} has no "
                                   "plateau preimage yet is not totally unfolded")
                break
        if not unfolded_ok:
            break
    entries.append(AuditEntry("unfolded-preimage", unfolded_ok, unfolded_detail))

    return AuditReport(classification, quantities, tuple(entries))


def _has_plateau_preimage_component(m: AdmissibleMap, plateau: Plateau) -> bool:
    """Is some component of the preimage subgraph itself a plateau of the source?"""
    src = m.source
    pre_vertices = [x for v in plateau.vertices for x in m.vertex_preimages[v]]
    pre_edges = {name for ename in plateau.edges for name in m.edge_preimages[ename]}
    seen: set[str] = set()
    for start in pre_vertices:
        if start in seen:
            continue
        comp = {start}
        frontier = [start]
        while frontier:
            x = frontier.pop()
            for dart in src.darts_at(x):
                if dart.edge in pre_edges:
                    y = src.terminus(dart)
                    if y not in comp:
                        comp.add(y)
                        frontier.append(y)
        seen |= comp
        comp_edges = frozenset(name for name in pre_edges
                               if src.edge(name).origin in comp)
        if check_plateau(src, Plateau(plateau.prime, frozenset(comp), comp_edges)):
            return True
    return False
