"""Largeness and commensurability decisions.

A non-cyclic group presented by a labelled graph is large (some finite
index subgroup maps onto a rank-2 free group) unless the graph can be
brought to a circle with coprime label products.  Commensurability is
decided, for strongly slide-free graphs without proper plateaux, by
comparing stable colorings: sharing a color is equivalent to admitting a
common finite label-preserving cover.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations, product

from .coloring import stable_colorings
from .covering import (AdmissibleMap, is_topological_covering,
                       orientation_double_cover, voltage_cover)
from .errors import InputError
from .graph import LabelledGraph
from .isomorphism import are_isomorphic
from .plateau import has_proper_plateau


def is_large(g: LabelledGraph) -> bool:
    """Does some finite-index subgroup of the presented group map onto F2?

    Cyclic presentations (reduced to a bare vertex) are rejected.  The one
    elementary subtlety is the two-ended amalgam over index-2 subgroups,
    i.e. a single edge labelled (+-2, +-2): it presents the Klein bottle
    group, which is virtually abelian, hence not large, even though its
    graph is a tree.
    """
    g._require_connected()
    r = g.reduce()
    if len(r.vertices) == 1 and not r.edges:
        raise InputError("the graph presents a cyclic group; largeness is "
                         "decided for non-cyclic groups only")
    beta = r.betti()
    if beta >= 2:
        return True
    if beta == 0:
        if len(r.edges) == 1:
            rec = r.edges[0]
            if abs(rec.label_origin) == 2 and abs(rec.label_terminus) == 2:
                return False
        return True
    if r.is_circle():
        forward, backward = r.circle_products()
        return math.gcd(forward, backward) != 1
    # a reduced cycle-rank-1 non-circle has a terminal vertex whose label
    # exceeds 1 in magnitude, i.e. a proper plateau; branching over it
    # raises the Betti number past 1
    return True


def universal_cover_coloring(g: LabelledGraph) -> dict[str, str]:
    """Coarsest stable coloring of a positively labelled graph.

    Two vertices share a color exactly when the universal covers rooted
    there are isomorphic as labelled trees.  Color names are canonical for
    a single call; to compare two graphs, color them jointly (as
    :func:`commensurable` does).
    """
    if any(g.label(d) < 0 for d in g.darts()):
        raise InputError("coloring requires positive labels; normalize signs first")
    return stable_colorings([g])[0]


@dataclass(frozen=True)
class CommensurabilityVerdict:
    answer: str  # commensurable | not-commensurable | out-of-scope
    witness: tuple[AdmissibleMap, AdmissibleMap] | None
    certificate: str

    def render(self) -> str:
        return f"answer={self.answer}\ncertificate={self.certificate}"


def _prepared(g: LabelledGraph) -> LabelledGraph:
    """Index-2 cover if the modulus takes a negative value, then positive labels."""
    cover = orientation_double_cover(g)
    graph = cover.source if cover is not None else g
    return graph.normalize_signs()


def _connected_covers(g: LabelledGraph, degree: int) -> list[AdmissibleMap]:
    """Every connected voltage cover of the given degree, in a fixed order."""
    out = []
    perms = list(permutations(range(degree)))
    names = [rec.name for rec in g.edges]
    for choice in product(perms, repeat=len(names)):
        cover = voltage_cover(g, degree, dict(zip(names, choice)))
        if cover.source.is_connected():
            out.append(cover)
    return out


def _witness_search(h1: LabelledGraph, h2: LabelledGraph,
                    max_degree: int) -> tuple[AdmissibleMap, AdmissibleMap] | None:
    covers: dict[tuple[int, int], list[AdmissibleMap]] = {}

    def covers_of(index: int, g: LabelledGraph, d: int) -> list[AdmissibleMap]:
        key = (index, d)
        if key not in covers:
            covers[key] = _connected_covers(g, d)
        return covers[key]

    for total in range(2, 2 * max_degree + 1):
        for d1 in range(1, max_degree + 1):
            d2 = total - d1
            if not 1 <= d2 <= max_degree:
                continue
            if d1 * len(h1.edges) != d2 * len(h2.edges):
                continue
            if d1 * len(h1.vertices) != d2 * len(h2.vertices):
                continue
            for c1 in covers_of(1, h1, d1):
                for c2 in covers_of(2, h2, d2):
                    if are_isomorphic(c1.source, c2.source):
                        return c1, c2
    return None


def commensurable(g1: LabelledGraph, g2: LabelledGraph,
                  witness_max_degree: int | None = None) -> CommensurabilityVerdict:
    """Do the two presented groups share a finite-index subgroup?

    In scope only for graphs that reduce to strongly slide-free graphs
    without proper plateaux.  When asked for a witness, topological covers
    of each graph are enumerated up to the given total multiplicity; a
    verified isomorphic pair may exist only at higher degree, in which case
    the answer stands but no witness is attached.
    """
    for g in (g1, g2):
        g._require_connected()
    r1, r2 = g1.reduce(), g2.reduce()
    violations = []
    for tag, r in (("first", r1), ("second", r2)):
        if not r.is_strongly_slide_free():
            violations.append(f"{tag} graph is not strongly slide-free")
        if has_proper_plateau(r):
            violations.append(f"{tag} graph has a proper plateau")
    if violations:
        return CommensurabilityVerdict("out-of-scope", None, "; ".join(violations))

    h1, h2 = _prepared(r1), _prepared(r2)
    colors1, colors2 = stable_colorings([h1, h2])
    shared = sorted(set(colors1.values()) & set(colors2.values()))
    if not shared:
        return CommensurabilityVerdict(
            "not-commensurable", None,
            f"stable colorings are disjoint: {sorted(set(colors1.values()))} "
            f"vs {sorted(set(colors2.values()))}")

    certificate = f"shared stable colors: {shared}"
    witness = None
    if witness_max_degree is not None:
        if witness_max_degree < 1:
            raise InputError("witness_max_degree must be positive")
        witness = _witness_search(h1, h2, witness_max_degree)
        if witness is None:
            certificate += f"; no witness within total multiplicity {witness_max_degree}"
        else:
            for part in witness:
                if not is_topological_covering(part):
                    raise InputError("witness must be a topological covering")
            certificate += (f"; witness degrees "
                            f"{witness[0].total_multiplicity()} and "
                            f"{witness[1].total_multiplicity()}")
    return CommensurabilityVerdict("commensurable", witness, certificate)
