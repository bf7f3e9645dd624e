"""Rainbow-cloud decompositions and tangle survival along them.

A rainbow-cloud decomposition splits a graph into a "rainbow" (a long linear
decomposition with full linkages between consecutive bags), a "cloud" glued
to the two end bags, and a "sun" of cloud vertices adjacent to every bag.
Any separation of small order either crosses the rainbow (early bags on one
strict side, late bags on the other) or slices it (a middle bag cut out), and
either pattern pins its separator down.  That rigidity lets a tangle that is
concentrated in the cloud survive the deletion of a carefully chosen edge in
the middle of the rainbow.
"""

from __future__ import annotations

from dataclasses import dataclass

from .decomposition import (
    DecompositionError,
    LinearDecomposition,
    foundational_linkage,
    is_rainbow_decomposition,
    max_linkage_size,
)
from .graphs import Graph, delete_edge
from .separations import OrientedSeparation, enumerate_separations, sep
from .survival import forced_orientation
from .tangles import Tangle, TangleError, extends, is_tangle


class RainbowError(ValueError):
    pass


# -- the decomposition value ---------------------------------------------------


@dataclass(frozen=True)
class RCDecomposition:
    """A rainbow (bags over its vertices), a sun, and a cloud vertex set."""

    graph: Graph
    bags: tuple  # tuple of frozensets, W_0..W_M
    sun: frozenset
    cloud: frozenset  # vertex set of the cloud, sun included

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in self.bags))
        object.__setattr__(self, "sun", frozenset(self.sun))
        object.__setattr__(self, "cloud", frozenset(self.cloud))

    @property
    def length(self):
        return len(self.bags) - 1

    def rainbow_vertices(self) -> frozenset:
        return frozenset().union(*self.bags)

    def rainbow_graph(self) -> Graph:
        return self.graph.induced(self.rainbow_vertices())

    def rainbow_decomposition(self) -> LinearDecomposition:
        return LinearDecomposition(self.rainbow_graph(), self.bags)

    @property
    def adhesion(self):
        if len(self.bags) < 2:
            return len(self.bags[0] & self.cloud)
        return len(self.bags[0] & self.bags[1])

    def overlap_set(self, i) -> frozenset:
        """The i-th adhesion set; 0 and length+1 index the cloud overlaps."""
        if i == 0:
            return self.bags[0] & self.cloud
        if i == self.length + 1:
            return self.bags[-1] & self.cloud
        return self.bags[i - 1] & self.bags[i]

    def bag_union(self, i, j) -> frozenset:
        """Vertices of bags i..j inclusive."""
        return frozenset().union(*self.bags[i : j + 1], frozenset())


def validate_rc(g: Graph, rc: RCDecomposition) -> dict:
    """Per-clause report; every flag is true on a genuine decomposition."""
    M = rc.length
    ell = rc.adhesion
    rv = rc.rainbow_vertices()
    u0, u_end = rc.overlap_set(0), rc.overlap_set(M + 1)
    rainbow_ok = True
    try:
        rainbow_ok = is_rainbow_decomposition(rc.rainbow_decomposition())
    except DecompositionError:
        rainbow_ok = False
    inside = rv | rc.sun
    covered = all(
        (e[0] in inside and e[1] in inside)
        or (e[0] in rc.cloud and e[1] in rc.cloud)
        for e in g.edges
    )
    covered = covered and (rv | rc.cloud) == g.vertex_set()
    report = {
        "rainbow": rainbow_ok,
        "sun_in_cloud": rc.sun <= rc.cloud and rc.sun.isdisjoint(rv),
        "cover": covered,
        "overlap": rv & rc.cloud == u0 | u_end,
        "end_sizes": (
            len(u0) == ell == len(u_end)
            and u0.isdisjoint(rc.overlap_set(1))
            and u_end.isdisjoint(rc.overlap_set(M))
        ),
        "end_linkages": (
            max_linkage_size(g.induced(rc.bags[0]), u0, rc.overlap_set(1)) >= ell
            and max_linkage_size(g.induced(rc.bags[-1]), u_end, rc.overlap_set(M))
            >= ell
        ),
        "sun_adjacency": all(
            any(w in g.neighbors(z) for w in bag) for z in rc.sun for bag in rc.bags
        ),
    }
    return report


def is_rc_decomposition(g: Graph, rc: RCDecomposition) -> bool:
    return all(validate_rc(g, rc).values())


# -- slices and rainbow separations ----------------------------------------------


def slice_rc(rc: RCDecomposition, i: int, j: int) -> RCDecomposition:
    """Keep bags i..j as the rainbow; everything outside joins the cloud."""
    M = rc.length
    if not 0 <= i <= j <= M:
        raise RainbowError(f"slice indices ({i},{j}) out of range 0..{M}")
    cloud = rc.cloud | rc.bag_union(0, i - 1) | rc.bag_union(j + 1, M)
    return RCDecomposition(rc.graph, rc.bags[i : j + 1], rc.sun, cloud)


def rainbow_separation(rc: RCDecomposition, i: int, j: int) -> OrientedSeparation:
    """Bags i..j plus the sun on the small side, the rest on the big side."""
    M = rc.length
    if not 0 <= i <= j <= M:
        raise RainbowError(f"indices ({i},{j}) out of range 0..{M}")
    small = rc.bag_union(i, j) | rc.sun
    big = rc.cloud | rc.bag_union(0, i - 1) | rc.bag_union(j + 1, M)
    return sep(small, big)


# -- crossing and slicing classification ----------------------------------------


@dataclass(frozen=True)
class CrossingInfo:
    direction: str  # "clockwise" | "counterclockwise" | "none"
    i_min: int | None = None
    j_max: int | None = None

    def __bool__(self):
        return self.direction != "none"


def _clockwise_indices(rc: RCDecomposition, s: OrientedSeparation, k: int):
    """Minimal early bag inside A\\B and maximal late bag inside B\\A."""
    M = rc.length
    a_strict = s.small - s.big
    b_strict = s.big - s.small
    i_min = next(
        (i for i in range(0, min(2 * k, M) + 1) if rc.bags[i] <= a_strict), None
    )
    j_max = next(
        (j for j in range(M, max(M - 2 * k, 0) - 1, -1) if rc.bags[j] <= b_strict),
        None,
    )
    if i_min is None or j_max is None:
        return None
    return i_min, j_max


def classify_crossing(rc: RCDecomposition, s: OrientedSeparation, k=None) -> CrossingInfo:
    """Whether s runs across the rainbow, and between which extremal bags.

    "Clockwise" puts an early bag strictly inside the small side and a late
    bag strictly inside the big side; the reverse orientation is
    counterclockwise.  A crossing separation must carry the whole sun in its
    separator, which is asserted.
    """
    if k is None:
        k = s.order
    fwd = _clockwise_indices(rc, s, k)
    if fwd is not None:
        assert rc.sun <= s.small & s.big, "crossing separator misses the sun"
        return CrossingInfo("clockwise", *fwd)
    bwd = _clockwise_indices(rc, s.inverse(), k)
    if bwd is not None:
        assert rc.sun <= s.small & s.big, "crossing separator misses the sun"
        return CrossingInfo("counterclockwise", *bwd)
    return CrossingInfo("none")


def split_crossing(rc: RCDecomposition, s: OrientedSeparation, h: int, k=None):
    """The h-th member of the increasing family refining a clockwise crossing.

    Everything before bag h moves to the small side, bag h onwards to the
    big side; outside the extremal window the crossing separation itself
    decides.  Valid for h in i_min+1 .. j_max.
    """
    info = classify_crossing(rc, s, k)
    if info.direction != "clockwise":
        raise RainbowError("separation does not cross clockwise")
    i, j = info.i_min, info.j_max
    if not i + 1 <= h <= j:
        raise RainbowError(f"split index {h} out of range {i + 1}..{j}")
    M = rc.length
    outer = rc.cloud | rc.bag_union(0, i - 1) | rc.bag_union(j + 1, M)
    small = (s.small & outer) | rc.bag_union(i, h - 1) | rc.sun
    big = rc.bag_union(h, j) | (s.big & outer) | rc.sun
    return sep(small, big)


def split_family(rc: RCDecomposition, s: OrientedSeparation, k=None):
    """All splits of a clockwise crossing, indexed i_min+1 .. j_max."""
    info = classify_crossing(rc, s, k)
    if info.direction != "clockwise":
        raise RainbowError("separation does not cross clockwise")
    return {
        h: split_crossing(rc, s, h, k) for h in range(info.i_min + 1, info.j_max + 1)
    }


def slices_rainbow(rc: RCDecomposition, s: OrientedSeparation, k=None) -> bool:
    """True when an early and a late bag sit strictly on one side while some
    bag between them sits strictly on the other."""
    if k is None:
        k = s.order
    M = rc.length
    for a_strict, b_strict in (
        (s.small - s.big, s.big - s.small),
        (s.big - s.small, s.small - s.big),
    ):
        early = [i for i in range(0, min(2 * k, M) + 1) if rc.bags[i] <= a_strict]
        late = [j for j in range(max(M - 2 * k, 0), M + 1) if rc.bags[j] <= a_strict]
        if not early or not late:
            continue
        i, j = min(early), max(late)
        if any(rc.bags[h] <= b_strict for h in range(i + 1, j)):
            return True
    return False


def classify_cross_or_slice(rc: RCDecomposition, s: OrientedSeparation, k=None) -> str:
    if classify_crossing(rc, s, k):
        return "crossing"
    if slices_rainbow(rc, s, k):
        return "slicing"
    return "neither"


def bags_outside_strict_sides(rc: RCDecomposition, s: OrientedSeparation):
    """Indices of bags contained in neither strict side of s."""
    a_strict = s.small - s.big
    b_strict = s.big - s.small
    return [
        i
        for i, bag in enumerate(rc.bags)
        if not bag <= a_strict and not bag <= b_strict
    ]


# -- where a tangle lives ---------------------------------------------------------


@dataclass(frozen=True)
class LivingVerdict:
    """How (if at all) a tangle leans into the rainbow.

    kind "no": the tangle stays out of the rainbow.  kind "region": some
    member's big strict side sits inside the rainbow away from the cloud
    (that member is the witness).  kind "flip": some crossing separation is
    oriented forward early and backward late; turning_point is the last
    forward split index, shared by every such separation.
    """

    kind: str
    witness: OrientedSeparation | None = None
    turning_point: int | None = None


def _flip_point(rc: RCDecomposition, tau: Tangle, s: OrientedSeparation, k):
    """Last forward-oriented split index h with h+1 oriented backward."""
    fam = split_family(rc, s, k)
    hs = sorted(fam)
    for h in hs[:-1]:
        if fam[h] in tau and fam[h + 1].inverse() in tau:
            return h
    return None


def lives_in_rainbow(rc: RCDecomposition, tau: Tangle) -> LivingVerdict:
    g, k = tau.graph, tau.k
    rv = rc.rainbow_vertices()
    free = rv - rc.cloud
    for s in tau.sorted_members():
        if s.big - s.small <= free:
            return LivingVerdict("region", witness=s)
    for s in enumerate_separations(g, k):
        for cand in (s, s.inverse()):
            if cand not in tau:
                continue
            if classify_crossing(rc, cand, k).direction != "clockwise":
                continue
            h = _flip_point(rc, tau, cand, k)
            if h is not None:
                return LivingVerdict("flip", witness=cand, turning_point=h)
    return LivingVerdict("no")


# -- shortening away from the tangle ----------------------------------------------


def _region_bag_span(rc: RCDecomposition, witness: OrientedSeparation):
    """First and last bag met by the witness's big strict side."""
    inner = witness.big - witness.small
    hit = [i for i, bag in enumerate(rc.bags) if bag & inner]
    if not hit:
        raise RainbowError("witness has an empty big strict side")
    return min(hit), max(hit)


def _settled_bag(rc: RCDecomposition, tau: Tangle):
    """A bag index whose one-bag rainbow separation is oriented big-side-in."""
    for h in range(rc.length + 1):
        if rainbow_separation(rc, h, h).inverse() in tau:
            return h
    return None


def shorten_to_not_living(rc: RCDecomposition, tau: Tangle) -> RCDecomposition:
    """Slice at least the middle half of the rainbow so the tangle no longer
    lives in it; requires length >= 6k."""
    k = tau.k
    M = rc.length
    if M < 6 * k:
        raise RainbowError(f"length {M} below the 6k = {6 * k} threshold")
    verdict = lives_in_rainbow(rc, tau)
    if verdict.kind == "no":
        return rc
    if verdict.kind == "region":
        separator_size = 2 * rc.adhesion + len(rc.sun)
        if separator_size < k:
            h = _settled_bag(rc, tau)
            if h is None:
                raise RainbowError("no bag separation oriented inward")
            r = s = h
        else:
            candidates = [
                m
                for m in tau.sorted_members()
                if m.big - m.small <= rc.rainbow_vertices() - rc.cloud
            ]
            best = [
                m
                for m in candidates
                if not any(m is not o and m.lt(o) for o in candidates)
            ]
            r, s = _region_bag_span(rc, best[0])
        i, j = (0, r - 1) if r > M / 2 - k else (s + 1, M)
    else:  # flip
        h = verdict.turning_point
        i, j = (0, h - 1) if h >= M / 2 else (h + 1, M)
    if j - i < M / 2 - k:
        raise RainbowError("shortening fell below the guaranteed length")
    out = slice_rc(rc, i, j)
    if lives_in_rainbow(out, tau).kind != "no":
        raise RainbowError("tangle still lives in the shortened rainbow")
    return out


# -- edge choice -------------------------------------------------------------------


def _merge_middle_bags(rc: RCDecomposition) -> RCDecomposition:
    """Fuse the three bags around the midpoint of an even-length rainbow."""
    M = rc.length
    if M % 2 or M < 4:
        raise RainbowError("need an even length of at least 4 to merge")
    m = M // 2
    merged = rc.bags[m - 1] | rc.bags[m] | rc.bags[m + 1]
    bags = rc.bags[: m - 1] + (merged,) + rc.bags[m + 2 :]
    return RCDecomposition(rc.graph, bags, rc.sun, rc.cloud)


def _linkage_edges(linkage):
    out = set()
    for p in linkage:
        for u, v in zip(p, p[1:]):
            out.add((min(u, v), max(u, v)))
    return out


def choose_edge(rc: RCDecomposition, tau: Tangle):
    """A deletable edge in the middle of the rainbow, with a decomposition
    that remains valid for both the graph and the graph minus that edge.

    After shortening away from the tangle and evening the length, the three
    middle bags are fused so that every sun vertex keeps spare neighbours
    there.  With a sun, any sun-to-middle-bag edge works; without one, a
    non-linkage edge of the middle part whose removal keeps it connected.
    """
    g = rc.graph
    short = shorten_to_not_living(rc, tau)
    if short.length % 2:
        even = slice_rc(short, 0, short.length - 1)
        if lives_in_rainbow(even, tau).kind != "no":
            even = slice_rc(short, 1, short.length)
            if lives_in_rainbow(even, tau).kind != "no":
                raise RainbowError("no even-length slice avoids the tangle")
    else:
        even = short
    merged = _merge_middle_bags(even)
    mid = merged.bags[merged.length // 2]
    if rc.sun:
        candidates = sorted(
            (min(z, w), max(z, w))
            for z in rc.sun
            for w in g.neighbors(z)
            if w in mid
        )
        if not candidates:
            raise RainbowError("sun has no edge into the middle bag")
        return candidates[0], merged
    linkage_edges = _linkage_edges(foundational_linkage(merged.rainbow_decomposition()))
    part = g.induced(mid)
    for e in part.sorted_edges():
        if e in linkage_edges:
            continue
        if delete_edge(part, e).is_connected():
            return e, merged
    raise RainbowError("middle bag has no spare edge (minimum degree below 3?)")


# -- extending a tangle after the deletion -----------------------------------------


def extend_after_deletion(
    g: Graph, tau: Tangle, rc: RCDecomposition, e, relaxed: bool = False, verify: bool = True
) -> Tangle:
    """The surviving orientation of the graph minus e.

    Separations the tangle forces keep their forced orientation.  Any other
    separation owes its existence to the deleted edge, so its separator
    leaves e's endpoints in two components of the remaining graph; the side
    whose component reaches the cloud is the big side.  Exactly one side may
    do so — anything else is reported as a violation.
    """
    k = tau.k
    if not relaxed:
        # choose_edge fuses the three middle bags, costing two of the
        # original >= 18k bags
        if rc.length < 18 * k - 2:
            raise RainbowError(f"length {rc.length} below 18k-2 = {18 * k - 2}")
        if g.min_degree() < 3:
            raise RainbowError("minimum degree below 3")
    if rc.adhesion + len(rc.sun) < 1:
        raise RainbowError("adhesion and sun cannot both be empty")
    u, v = tuple(e)
    g2 = delete_edge(g, e)
    members = []
    for s in enumerate_separations(g2, k):
        forced = forced_orientation(tau, s)
        if forced is not None:
            members.append(forced)
            continue
        comps = g2.induced(g2.vertex_set() - (s.small & s.big)).component_vertex_sets()
        comp_small = next((c for c in comps if c & {u, v} and c <= s.small), None)
        comp_big = next((c for c in comps if c & {u, v} and c <= s.big), None)
        if comp_small is None or comp_big is None:
            raise RainbowError("unforced separation does not isolate the edge ends")
        small_meets = bool(comp_small & rc.cloud)
        big_meets = bool(comp_big & rc.cloud)
        if small_meets == big_meets:
            raise RainbowError("cloud reachability fails to decide an orientation")
        members.append(s if big_meets else s.inverse())
    out = Tangle(g2, k, members)
    if verify:
        if not is_tangle(g2, k, out.members):
            raise TangleError("extension is not a tangle")
        if not extends(tau, out):
            raise TangleError("extension disagrees with the original tangle")
    return out


# -- clique tangles -----------------------------------------------------------------


def clique_tangle(g: Graph, clique, k: int) -> Tangle:
    """The k-tangle pointing at a clique of at least 3k-2 vertices.

    No separation of order < k can split a clique between its strict sides,
    and 3k-2 vertices cannot hide inside one separator, so every separation
    has exactly one side containing the whole clique; three small sides
    together miss at least one clique vertex, hence no forbidden triple.
    """
    q = frozenset(clique)
    if len(q) < 3 * k - 2:
        raise TangleError(f"need at least 3k-2 = {3 * k - 2} clique vertices")
    if any(not g.has_edge(a, b) for a in q for b in q if a < b):
        raise TangleError("vertex set is not a clique")
    members = []
    for s in enumerate_separations(g, k):
        if q <= s.big:
            members.append(s)
        elif q <= s.small:
            members.append(s.inverse())
        else:
            raise TangleError("clique split by a small-order separation")
    return Tangle(g, k, members)


# -- synthetic instances --------------------------------------------------------------


def synth_rc(M: int, ell: int, z: int, k: int = 3):
    """A graph with a built-in rainbow-cloud decomposition and a cloud clique.

    The rainbow is a grid of ell horizontal paths across M+2 columns (for
    ell = 0, a row of disjoint triangles), bag i spanning columns i and i+1.
    The sun is z apex vertices adjacent to the top of every column, and the
    cloud is a clique of 3k-2 vertices joined completely to both end columns
    and the sun.  Returns (graph, decomposition, clique vertices).
    """
    if M < 1:
        raise RainbowError("need length at least 1")
    if ell == 0 and z == 0:
        raise RainbowError("a sun is required when the adhesion is zero")
    edges = []
    if ell > 0:
        def cell(c, r):
            return c * ell + r

        ncols = M + 2
        for c in range(ncols):
            for r in range(ell - 1):
                edges.append((cell(c, r), cell(c, r + 1)))
            if c + 1 < ncols:
                for r in range(ell):
                    edges.append((cell(c, r), cell(c + 1, r)))
        columns = [frozenset(cell(c, r) for r in range(ell)) for c in range(ncols)]
        bags = tuple(columns[i] | columns[i + 1] for i in range(M + 1))
        tops = [cell(c, 0) for c in range(ncols)]
        base = ncols * ell
        end_cols = columns[0] | columns[-1]
    else:
        def tri(i, t):
            return 3 * i + t

        for i in range(M + 1):
            edges += [(tri(i, 0), tri(i, 1)), (tri(i, 1), tri(i, 2)), (tri(i, 0), tri(i, 2))]
        bags = tuple(frozenset(tri(i, t) for t in range(3)) for i in range(M + 1))
        tops = [tri(i, 0) for i in range(M + 1)]
        base = 3 * (M + 1)
        end_cols = frozenset()
    sun = frozenset(range(base, base + z))
    for s in sun:
        edges += [(s, t) for t in tops]
    qsize = max(3 * k - 2, 1)
    clique = frozenset(range(base + z, base + z + qsize))
    cq = sorted(clique)
    edges += [(a, b) for i, a in enumerate(cq) for b in cq[i + 1 :]]
    edges += [(a, w) for a in cq for w in sorted(end_cols | sun)]
    n = base + z + qsize
    g = Graph(range(n), edges)
    rc = RCDecomposition(g, bags, sun, clique | end_cols | sun)
    return g, rc, clique


# -- file format ------------------------------------------------------------------


def format_rc(rc: RCDecomposition) -> str:
    lines = ["RAINBOW-BAGS"]
    lines += [" ".join(map(str, sorted(b))) for b in rc.bags]
    lines.append("SUN")
    lines.append(" ".join(map(str, sorted(rc.sun))))
    lines.append("CLOUD-VERTICES")
    lines.append(" ".join(map(str, sorted(rc.cloud))))
    try:
        linkage = foundational_linkage(rc.rainbow_decomposition())
    except DecompositionError:
        linkage = []
    if linkage:
        lines.append("LINKAGE")
        lines += [" ".join(map(str, p)) for p in linkage]
    return "\n".join(lines) + "\n"


def parse_rc(text: str, g: Graph) -> RCDecomposition:
    section = None
    bags, sun, cloud = [], frozenset(), frozenset()
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line in ("RAINBOW-BAGS", "SUN", "CLOUD-VERTICES", "LINKAGE"):
            section = line
            continue
        values = frozenset(map(int, line.split()))
        if section == "RAINBOW-BAGS":
            bags.append(values)
        elif section == "SUN":
            sun |= values
        elif section == "CLOUD-VERTICES":
            cloud |= values
        elif section != "LINKAGE":
            raise RainbowError("data before any section header")
    if not bags:
        raise RainbowError("no bags found")
    return RCDecomposition(g, tuple(bags), sun, cloud)
