"""Separations of a graph and the lattice they form.

A separation of a graph is an unordered pair of vertex sides covering all
vertices such that no edge joins the two strict sides; orienting it means
picking one side as "small" and the other as "big".  Oriented separations
are partially ordered (smaller small side, larger big side) and closed
under pointwise meets and joins, which makes any fixed-order slice the
raw material for tangles.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .graphs import Graph, GraphError


@dataclass(frozen=True, order=False)
class OrientedSeparation:
    """An ordered pair (small side, big side) of a separation."""

    small: frozenset
    big: frozenset

    @property
    def separator(self):
        return self.small & self.big

    @property
    def order(self):
        return len(self.small & self.big)

    def inverse(self):
        return OrientedSeparation(self.big, self.small)

    def le(self, other: "OrientedSeparation") -> bool:
        return self.small <= other.small and self.big >= other.big

    def lt(self, other: "OrientedSeparation") -> bool:
        return self.le(other) and self != other

    def meet(self, other: "OrientedSeparation") -> "OrientedSeparation":
        return OrientedSeparation(self.small & other.small, self.big | other.big)

    def join(self, other: "OrientedSeparation") -> "OrientedSeparation":
        return OrientedSeparation(self.small | other.small, self.big & other.big)

    def canonical_key(self):
        """Key identifying the underlying unoriented separation.

        The side holding the smallest label outside the separator comes
        first; if both sides equal the separator, sides are equal anyway.
        Ties (never ambiguous for distinct sides) fall back to sorted-tuple
        comparison.
        """
        a = tuple(sorted(self.small))
        b = tuple(sorted(self.big))
        sep = self.small & self.big
        ax = next((x for x in a if x not in sep), None)
        bx = next((x for x in b if x not in sep), None)
        if ax is None and bx is None:
            return (a, b) if a <= b else (b, a)
        if ax is None:
            return (a, b)
        if bx is None:
            return (b, a)
        return (a, b) if ax < bx else (b, a)

    def is_canonical_orientation(self):
        return self.canonical_key() == (
            tuple(sorted(self.small)),
            tuple(sorted(self.big)),
        )

    def sort_key(self):
        return (self.order, tuple(sorted(self.small)), tuple(sorted(self.big)))

    def __repr__(self):
        return f"({sorted(self.small)}, {sorted(self.big)})"


def sep(small, big) -> OrientedSeparation:
    return OrientedSeparation(frozenset(small), frozenset(big))


def is_separation(g: Graph, s: OrientedSeparation) -> bool:
    """True if the two sides cover V(g) and no edge crosses strictly."""
    if s.small | s.big != g.vertex_set():
        return False
    left = s.small - s.big
    right = s.big - s.small
    return not any((u in left and v in right) or (u in right and v in left)
                   for u, v in g.edges)


def is_nested(s: OrientedSeparation, t: OrientedSeparation) -> bool:
    """Unoriented nestedness: some orientations are comparable."""
    return (
        s.le(t) or t.le(s) or s.inverse().le(t) or t.le(s.inverse())
    )


def are_crossing(s: OrientedSeparation, t: OrientedSeparation) -> bool:
    return not is_nested(s, t)


def check_submodular_equality(s: OrientedSeparation, t: OrientedSeparation) -> bool:
    """Order of meet plus order of join equals the sum of the orders."""
    return s.meet(t).order + s.join(t).order == s.order + t.order


def _frozen_graph_key(g: Graph):
    return (g.vertices, tuple(g.sorted_edges()))


@lru_cache(maxsize=512)
def _enumerate_cached(gkey, k):
    vertices, edges = gkey
    g = Graph(vertices, edges)
    return tuple(_enumerate_separations(g, k))


def enumerate_separations(g: Graph, k: int):
    """All oriented separations of order < k, both orientations.

    Sorted by (order, sorted small side, sorted big side).  Enumeration
    walks candidate separators S with |S| < k and distributes the
    components of g - S over the two sides; keeping only splits whose
    separator is exactly S avoids emitting any separation twice.
    """
    if k < 0:
        raise GraphError("negative order bound")
    return list(_enumerate_cached(_frozen_graph_key(g), k))


def _enumerate_separations(g: Graph, k):
    V = g.vertex_set()
    out = set()
    for size in range(min(k, len(V) + 1)):
        for S in itertools.combinations(g.vertices, size):
            S = frozenset(S)
            comps = Graph(V - S, g.edges_within(V - S)).component_vertex_sets()
            for pick in itertools.product((0, 1), repeat=len(comps)):
                small = set(S)
                big = set(S)
                for side, comp in zip(pick, comps):
                    (small if side == 0 else big).update(comp)
                s = OrientedSeparation(frozenset(small), frozenset(big))
                if s.separator == S:  # exact separator: no duplicates across S
                    out.add(s)
    return sorted(out, key=OrientedSeparation.sort_key)


def enumerate_separations_naive(g: Graph, k: int):
    """Brute-force oracle: try all 3^n side assignments.  Tiny graphs only."""
    V = list(g.vertices)
    if len(V) > 8:
        raise GraphError("naive enumeration limited to 8 vertices")
    out = set()
    for assign in itertools.product((0, 1, 2), repeat=len(V)):
        small = frozenset(v for v, a in zip(V, assign) if a != 1)
        big = frozenset(v for v, a in zip(V, assign) if a != 0)
        s = OrientedSeparation(small, big)
        if s.order < k and is_separation(g, s):
            out.add(s)
    return sorted(out, key=OrientedSeparation.sort_key)


def unoriented_count(seps) -> int:
    return len({s.canonical_key() for s in seps})


def maximal_elements(seps):
    """The <=-maximal members of a collection of oriented separations."""
    seps = list(seps)
    out = []
    for s in seps:
        if not any(s.lt(t) for t in seps):
            out.append(s)
    return sorted(set(out), key=OrientedSeparation.sort_key)


def longest_strict_chain(g: Graph, k: int):
    """A longest strictly increasing chain in the order-< k separation poset.

    Longest-path pass over the comparability DAG; ties broken by sort key
    so the result is deterministic.
    """
    seps = enumerate_separations(g, k)
    # (|small| asc, |big| desc) linearizes <=, so one forward pass suffices
    seps.sort(key=lambda s: (len(s.small), -len(s.big), s.sort_key()))
    best_len = [1] * len(seps)
    best_pred = [None] * len(seps)
    for j, t in enumerate(seps):
        for i in range(j):
            if seps[i].lt(t) and best_len[i] + 1 > best_len[j]:
                best_len[j] = best_len[i] + 1
                best_pred[j] = i
    if not seps:
        return []
    end = max(range(len(seps)), key=lambda j: (best_len[j],))
    chain = []
    j = end
    while j is not None:
        chain.append(seps[j])
        j = best_pred[j]
    return chain[::-1]


def restrict_to_subgraph(s: OrientedSeparation, h: Graph) -> OrientedSeparation:
    """Intersect both sides with V(h)."""
    V = h.vertex_set()
    return OrientedSeparation(s.small & V, s.big & V)


# -- serialization -------------------------------------------------------


def format_separation(s: OrientedSeparation) -> str:
    a = ",".join(str(x) for x in sorted(s.small))
    b = ",".join(str(x) for x in sorted(s.big))
    return f"[{a}] [{b}]"


def parse_separation(line: str) -> OrientedSeparation:
    line = line.strip()
    try:
        left, right = line.split("] [")
        small = left.lstrip("[")
        big = right.rstrip("]")
        parse = lambda part: frozenset(int(x) for x in part.split(",") if x.strip())
        return OrientedSeparation(parse(small), parse(big))
    except ValueError:
        raise GraphError(f"bad separation line: {line!r}")


def format_separations(seps) -> str:
    return "".join(format_separation(s) + "\n" for s in seps)


def parse_separations(text: str):
    return [parse_separation(l) for l in text.splitlines() if l.strip()]
