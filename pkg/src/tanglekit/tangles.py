"""Tangles: consistent orientations of all low-order separations.

A k-tangle orients every separation of order < k so that no three chosen
small sides (repetition allowed) have induced subgraphs covering the whole
graph, vertices and edges alike.  Everything here reduces to bitmask
scans: the vertex cover and the edge cover of each chosen small side are
packed into integers, and the hot triple/maximality scans are delegated to
the kernels module.
"""

from __future__ import annotations

from . import _kernels
from .graphs import Graph, GraphError
from .separations import (
    OrientedSeparation,
    enumerate_separations,
    format_separation,
    parse_separation,
    restrict_to_subgraph,
)


class TangleError(ValueError):
    pass


# -- cover-mask tables ----------------------------------------------------


class CoverTable:
    """Vertex- and edge-cover bitmasks of small sides, plus packed arrays."""

    def __init__(self, g: Graph, seps):
        if len(g.vertices) > 128:
            raise TangleError("graphs are limited to 128 vertices")
        self.graph = g
        self.seps = list(seps)
        edges = g.sorted_edges()
        self.n_edges = len(edges)
        eidx = {e: i for i, e in enumerate(edges)}
        self.vfull = g.full_mask()
        self.efull = (1 << len(edges)) - 1
        self.vcov = []
        self.ecov = []
        self.small = []
        self.big = []
        for s in self.seps:
            vm = g.mask_of(s.small)
            em = 0
            for e in g.edges_within(s.small):
                em |= 1 << eidx[e]
            self.vcov.append(vm)
            self.ecov.append(em)
            self.small.append(vm)
            self.big.append(g.mask_of(s.big))

    def packed(self):
        nv = max(1, len(self.graph.vertices))
        ne = max(1, self.n_edges)
        return (
            _kernels.pack_masks(self.vcov, nv),
            _kernels.pack_masks(self.ecov, ne),
            _kernels.pack_masks([self.vfull], nv)[0],
            _kernels.pack_masks([self.efull], ne)[0],
        )

    def packed_sides(self):
        nv = max(1, len(self.graph.vertices))
        return _kernels.pack_masks(self.small, nv), _kernels.pack_masks(self.big, nv)


def is_forbidden_triple(g: Graph, s1, s2, s3) -> bool:
    """Do the three small-side induced subgraphs cover g entirely?"""
    t = CoverTable(g, [s1, s2, s3])
    return (
        t.vcov[0] | t.vcov[1] | t.vcov[2] == t.vfull
        and t.ecov[0] | t.ecov[1] | t.ecov[2] == t.efull
    )


def maximal_members(g: Graph, seps):
    """<=-maximal members of a collection, via the packed kernel."""
    seps = sorted(set(seps), key=OrientedSeparation.sort_key)
    if not seps:
        return []
    table = CoverTable(g, seps)
    small, big = table.packed_sides()
    mask = _kernels.maximal_mask(small, big)
    return [s for s, keep in zip(seps, mask) if keep]


def find_forbidden_triple(g: Graph, seps, restrict_to_maximal=True):
    """A forbidden triple among seps (repetition allowed), or None.

    Cover is monotone in the small side, so any triple among arbitrary
    members yields one among <=-maximal members; restricting the scan to
    those is an optimization, not an approximation.
    """
    pool = maximal_members(g, seps) if restrict_to_maximal else sorted(
        set(seps), key=OrientedSeparation.sort_key
    )
    if not pool:
        return None
    table = CoverTable(g, pool)
    vcov, ecov, vfull, efull = table.packed()
    i, j, l = _kernels.find_covering_triple(vcov, ecov, vfull, efull)
    if i < 0:
        return None
    return (pool[i], pool[j], pool[l])


# -- the Tangle object ----------------------------------------------------


class Tangle:
    """An orientation of all separations of order < k of a graph.

    Construction does not validate tanglehood; use is_tangle / check_axioms.
    """

    def __init__(self, graph: Graph, k: int, members):
        self.graph = graph
        self.k = k
        self.members = frozenset(members)
        self._by_key = {}
        for s in self.members:
            key = s.canonical_key()
            if key in self._by_key and self._by_key[key] != s:
                raise TangleError(f"both orientations of {s} present")
            self._by_key[key] = s

    def __contains__(self, s: OrientedSeparation):
        return s in self.members

    def __len__(self):
        return len(self.members)

    def __eq__(self, other):
        return (
            isinstance(other, Tangle)
            and self.graph == other.graph
            and self.k == other.k
            and self.members == other.members
        )

    def __hash__(self):
        return hash((self.graph, self.k, self.members))

    def __repr__(self):
        return f"Tangle(k={self.k}, |members|={len(self.members)})"

    def orients(self, s: OrientedSeparation):
        """The orientation this tangle gives s's underlying separation."""
        return self._by_key[s.canonical_key()]

    def sorted_members(self):
        return sorted(self.members, key=OrientedSeparation.sort_key)

    def maximal_members(self):
        return maximal_members(self.graph, self.members)

    def core(self) -> frozenset:
        """Intersection of all big sides.

        For k = 1 this is a component's vertex set, for k = 2 a block's.
        """
        x = self.graph.vertex_set()
        for s in self.members:
            x &= s.big
        return x


def is_orientation(g: Graph, k: int, members) -> bool:
    """Does members pick exactly one orientation of each order-< k separation?"""
    members = set(members)
    want = {}
    for s in enumerate_separations(g, k):
        want.setdefault(s.canonical_key(), []).append(s)
    if len(members) != len(want):
        return False
    seen = set()
    for s in members:
        key = s.canonical_key()
        if key not in want or s not in want[key] or key in seen:
            return False
        seen.add(key)
    return True


def is_tangle(g: Graph, k: int, members, mode: str = "maximal") -> bool:
    """Validate a k-tangle: full orientation, no covering triple.

    mode="maximal" scans only <=-maximal members (sound and complete since
    cover is monotone); mode="full" scans all members.
    """
    if mode not in ("maximal", "full"):
        raise TangleError(f"unknown mode {mode!r}")
    if not is_orientation(g, k, members):
        return False
    return find_forbidden_triple(g, members, mode == "maximal") is None


def check_axioms(tangle: Tangle) -> dict:
    """Report the derived axioms: consistency, regularity, profile property.

    All three hold for every genuine tangle; this checks them directly.
    """
    g, k = tangle.graph, tangle.k
    mem = tangle.sorted_members()
    consistency = not any(s.inverse().le(t) for s in mem for t in mem)
    V = g.vertex_set()
    regularity = all(
        s in tangle.members
        for s in enumerate_separations(g, k)
        if s.big == V and s.small != V
    )
    profile = True
    for s in mem:
        for t in mem:
            j = s.join(t)
            if j.order < k and tangle.orients(j) != j:
                profile = False
                break
        if not profile:
            break
    return {
        "consistency": consistency,
        "regularity": regularity,
        "profile": profile,
    }


# -- enumeration / constrained search -------------------------------------


def _search(g: Graph, k: int, fixed, find_all: bool):
    """Backtracking orientation search avoiding covering triples.

    fixed maps canonical separation keys to a required orientation.
    Yields member-frozensets of valid k-tangles.
    """
    seps = enumerate_separations(g, k)
    keys = []
    options = {}
    for s in seps:
        key = s.canonical_key()
        options.setdefault(key, []).append(s)
        if key not in keys:
            keys.append(key)
    keys.sort(key=lambda key: options[key][0].sort_key())

    table = CoverTable(g, [])
    vfull, efull = table.vfull, table.efull
    edges = g.sorted_edges()
    eidx = {e: i for i, e in enumerate(edges)}

    def masks(s):
        vm = g.mask_of(s.small)
        em = 0
        for e in g.edges_within(s.small):
            em |= 1 << eidx[e]
        return vm, g.mask_of(s.big), em

    info = {
        s: masks(s) for key in keys for s in options[key]
    }

    chosen = []  # (sep, small_mask, big_mask, ecov)
    results = []

    def consistent(sm, bm):
        # reject if some chosen t has inv(t) <= s or inv(s) <= t
        for _, tsm, tbm, _ in chosen:
            if (tbm & ~sm) == 0 and (bm & ~tsm) == 0:
                return False
        return True

    def frontier():
        out = []
        for i, (_, sm, bm, ec) in enumerate(chosen):
            dominated = False
            for j, (_, tsm, tbm, _) in enumerate(chosen):
                if i == j:
                    continue
                if (sm & ~tsm) == 0 and (tbm & ~bm) == 0 and (sm, bm) != (tsm, tbm):
                    dominated = True
                    break
            if not dominated:
                out.append((sm | 0, ec))
        return out

    def breaks(vm, em):
        # covering triple containing the new element (pairs may repeat)
        front = frontier() + [(vm, em)]
        for av, ae in front:
            pv, pe = vm | av, em | ae
            for bv, be in front:
                if (pv | bv) == vfull and (pe | be) == efull:
                    return True
        return False

    def rec(i):
        if i == len(keys):
            results.append(frozenset(s for s, *_ in chosen))
            return not find_all
        key = keys[i]
        cands = [fixed[key]] if key in fixed else options[key]
        for s in cands:
            vm, bm, em = info[s]
            if not consistent(vm, bm):
                continue
            if breaks(vm, em):
                continue
            chosen.append((s, vm, bm, em))
            done = rec(i + 1)
            chosen.pop()
            if done:
                return True
        return False

    rec(0)
    return results


def enumerate_tangles(g: Graph, k: int):
    """All k-tangles of g, deterministically ordered."""
    found = _search(g, k, {}, find_all=True)
    tangles = [Tangle(g, k, m) for m in found]
    tangles.sort(key=lambda t: tuple(s.sort_key() for s in t.sorted_members()))
    return tangles


def search_extension(g2: Graph, k: int, fixed, find_all=False):
    """k-tangles of g2 whose orientation agrees with fixed.

    fixed: iterable of oriented separations of g2 that must be chosen.
    """
    fx = {}
    for s in fixed:
        key = s.canonical_key()
        if key in fx and fx[key] != s:
            return []
        fx[key] = s
    found = _search(g2, k, fx, find_all=find_all)
    tangles = [Tangle(g2, k, m) for m in found]
    tangles.sort(key=lambda t: tuple(s.sort_key() for s in t.sorted_members()))
    return tangles


def extends(tau: Tangle, tau2: Tangle) -> bool:
    """Does tau2 (in a spanning subgraph) orient everything like tau?"""
    return tau.members <= tau2.members


# -- lifts -----------------------------------------------------------------


def lift_subgraph(tau2: Tangle, g: Graph) -> Tangle:
    """Lift a k-tangle from a subgraph back to the host graph.

    A separation of the host joins the lift iff its restriction to the
    subgraph's vertices belongs to the smaller tangle.
    """
    g2 = tau2.graph
    if not (set(g2.vertices) <= set(g.vertices) and g2.edges <= g.edges):
        raise TangleError("lift_subgraph: not a subgraph")
    members = []
    for s in enumerate_separations(g, tau2.k):
        if restrict_to_subgraph(s, g2) in tau2.members:
            members.append(s)
    return Tangle(g, tau2.k, members)


def lift_suppression(tau2: Tangle, g: Graph, v) -> Tangle:
    """Lift a k-tangle (k >= 3) across the suppression of degree-2 vertex v."""
    if tau2.k < 3:
        raise TangleError("suppression lifts need order >= 3")
    if v not in g or g.degree(v) != 2:
        raise TangleError(f"vertex {v} is not suppressible in the host graph")
    u1, u2 = sorted(g.neighbors(v))
    members = []
    for s in enumerate_separations(g, tau2.k):
        A, B = s.small, s.big
        A1, B1 = A - {v}, B - {v}
        if (u1 in A and u2 in A) or (u1 in B and u2 in B):
            if OrientedSeparation(A1, B1) in tau2.members:
                members.append(s)
        else:
            # split endpoints: one u in A\B, the other in B\A; then v
            # separates them, so v lies in A cap B
            ui, uj = (u1, u2) if u1 in A else (u2, u1)
            if (
                OrientedSeparation(A1, B1 | {ui}) in tau2.members
                or OrientedSeparation(A1 | {uj}, B1) in tau2.members
            ):
                members.append(s)
    return Tangle(g, tau2.k, members)


# -- serialization ----------------------------------------------------------


def format_tangle(t: Tangle) -> str:
    lines = [f"order {t.k}"]
    lines.extend(format_separation(s) for s in t.sorted_members())
    return "\n".join(lines) + "\n"


def parse_tangle(text: str, g: Graph) -> Tangle:
    lines = [l for l in text.splitlines() if l.strip()]
    if not lines or not lines[0].startswith("order "):
        raise GraphError("tangle text must start with 'order <k>'")
    try:
        k = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise GraphError("bad order line")
    members = [parse_separation(l) for l in lines[1:]]
    return Tangle(g, k, members)
