"""Simple undirected graphs with stable integer vertex labels.

Graphs are immutable after construction.  The three reduction operations
(edge deletion, degree-2 suppression, component extraction) never renumber
vertices, so tangles and weight functions transfer between a graph and its
topological minors by label identity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


class GraphError(ValueError):
    pass


def _norm_edge(e):
    u, v = e
    if u == v:
        raise GraphError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected graph.  No loops, no parallel edges."""

    __slots__ = ("vertices", "edges", "_adj", "_index", "_hash")

    def __init__(self, vertices=(), edges=()):
        es = frozenset(_norm_edge(e) for e in edges)
        vs = set(vertices)
        for u, v in es:
            vs.add(u)
            vs.add(v)
        self.vertices = tuple(sorted(vs))
        self.edges = es
        adj = {v: set() for v in self.vertices}
        for u, v in es:
            adj[u].add(v)
            adj[v].add(u)
        self._adj = {v: frozenset(ns) for v, ns in adj.items()}
        self._index = {v: i for i, v in enumerate(self.vertices)}
        self._hash = hash((self.vertices, self.edges))

    # -- basic queries -------------------------------------------------

    def __contains__(self, v):
        return v in self._adj

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Graph(|V|={len(self.vertices)}, |E|={len(self.edges)})"

    def neighbors(self, v):
        return self._adj[v]

    def degree(self, v):
        return len(self._adj[v])

    def has_edge(self, u, v):
        return _norm_edge((u, v)) in self.edges

    def vertex_set(self):
        return frozenset(self.vertices)

    def sorted_edges(self):
        return sorted(self.edges)

    # -- derived graphs ------------------------------------------------

    def induced(self, vs):
        vs = frozenset(vs)
        unknown = vs - set(self.vertices)
        if unknown:
            raise GraphError(f"vertices not in graph: {sorted(unknown)}")
        return Graph(vs, (e for e in self.edges if e[0] in vs and e[1] in vs))

    def minus_vertex(self, v):
        if v not in self._adj:
            raise GraphError(f"no such vertex {v}")
        return self.induced(set(self.vertices) - {v})

    def plus_edge(self, u, v):
        return Graph(self.vertices, self.edges | {_norm_edge((u, v))})

    def edges_within(self, vs):
        """Edges with both endpoints in vs."""
        vs = frozenset(vs)
        return {e for e in self.edges if e[0] in vs and e[1] in vs}

    def is_connected(self):
        if not self.vertices:
            return False
        return len(self.component_vertex_sets()) == 1

    def component_vertex_sets(self):
        """Vertex sets of components, ordered by smallest contained label."""
        seen = set()
        comps = []
        for root in self.vertices:
            if root in seen:
                continue
            stack = [root]
            comp = {root}
            seen.add(root)
            while stack:
                x = stack.pop()
                for y in self._adj[x]:
                    if y not in comp:
                        comp.add(y)
                        seen.add(y)
                        stack.append(y)
            comps.append(frozenset(comp))
        return comps

    def min_degree(self):
        return min((self.degree(v) for v in self.vertices), default=0)

    # -- bitmask helpers (positions follow sorted label order) ---------

    def mask_of(self, vs):
        idx = self._index
        m = 0
        for v in vs:
            m |= 1 << idx[v]
        return m

    def labels_of(self, mask):
        vs = self.vertices
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(vs[i])
            mask >>= 1
            i += 1
        return frozenset(out)

    def full_mask(self):
        return (1 << len(self.vertices)) - 1

    def edge_masks(self):
        """Per-edge masks of the two endpoint bits, in sorted edge order."""
        idx = self._index
        return [(1 << idx[u]) | (1 << idx[v]) for u, v in self.sorted_edges()]


# -- reduction operations ---------------------------------------------


def delete_edge(g: Graph, e) -> Graph:
    e = _norm_edge(e)
    if e not in g.edges:
        raise GraphError(f"no such edge {e}")
    return Graph(g.vertices, g.edges - {e})


def suppress_vertex(g: Graph, v) -> Graph:
    """Remove a degree-2 vertex and join its neighbours.

    If the neighbours are already adjacent the result is simply g - v
    (simple-graph closure; separations of order < k with k >= 3 are
    unaffected).
    """
    if v not in g:
        raise GraphError(f"no such vertex {v}")
    if g.degree(v) != 2:
        raise GraphError(f"not suppressible: vertex {v} has degree {g.degree(v)}")
    u, w = sorted(g.neighbors(v))
    h = g.minus_vertex(v)
    if not h.has_edge(u, w):
        h = h.plus_edge(u, w)
    return h


def components(g: Graph) -> list:
    """Connected induced subgraphs partitioning the vertices.

    Deterministic order: by smallest contained label.
    """
    return [g.induced(vs) for vs in g.component_vertex_sets()]


# -- topological-minor provenance --------------------------------------


@dataclass(frozen=True)
class MinorProvenance:
    """Tracks how a topological minor sits inside its original graph.

    ``edge_paths`` maps each edge of the current graph to the vertex
    sequence of the path it represents in the original graph.  Paths of
    distinct edges are internally disjoint and their endpoints are branch
    vertices (= vertices of the current graph).
    """

    original: Graph
    current: Graph
    edge_paths: dict = field(compare=False)

    @property
    def branch_vertices(self):
        return frozenset(self.current.vertices)

    def path_of(self, e):
        return self.edge_paths[_norm_edge(e)]

    def validate(self):
        for e in self.current.edges:
            p = self.edge_paths[e]
            if frozenset((p[0], p[-1])) != frozenset(e):
                raise GraphError(f"path endpoints of {e} are not the edge's ends")
            for a, b in zip(p, p[1:]):
                if not self.original.has_edge(a, b):
                    raise GraphError(f"path of {e} uses non-edge ({a},{b})")
        # internal disjointness
        seen = {}
        for e in self.current.edges:
            for x in self.edge_paths[e][1:-1]:
                if x in self.branch_vertices:
                    raise GraphError(f"branch vertex {x} interior to path of {e}")
                if x in seen:
                    raise GraphError(f"paths of {seen[x]} and {e} share vertex {x}")
                seen[x] = e
        return True


def identity_provenance(g: Graph) -> MinorProvenance:
    return MinorProvenance(g, g, {e: (e[0], e[1]) for e in g.edges})


def provenance_delete_edge(g: Graph, e) -> MinorProvenance:
    h = delete_edge(g, e)
    return MinorProvenance(g, h, {f: (f[0], f[1]) for f in h.edges})


def provenance_suppress_vertex(g: Graph, v) -> MinorProvenance:
    h = suppress_vertex(g, v)
    u, w = sorted(g.neighbors(v))
    paths = {f: (f[0], f[1]) for f in h.edges}
    if not g.has_edge(u, w):
        # the joined edge stands for the path u-v-w
        paths[_norm_edge((u, w))] = (u, v, w) if u < w else (w, v, u)
    return MinorProvenance(g, h, paths)


def provenance_component(g: Graph, comp: Graph) -> MinorProvenance:
    return MinorProvenance(g, comp, {e: (e[0], e[1]) for e in comp.edges})


def compose_provenance(outer: MinorProvenance, inner: MinorProvenance) -> MinorProvenance:
    """Provenance of the composed reduction outer-then-inner."""
    if inner.original != outer.current:
        raise GraphError("provenance mismatch: inner.original != outer.current")
    paths = {}
    for e in inner.current.edges:
        expanded = []
        p = inner.edge_paths[e]
        for a, b in zip(p, p[1:]):
            q = outer.edge_paths[_norm_edge((a, b))]
            if q[0] != a:
                q = q[::-1]
            if expanded:
                expanded.extend(q[1:])
            else:
                expanded.extend(q)
        paths[e] = tuple(expanded)
    return MinorProvenance(outer.original, inner.current, paths)


# -- file formats -------------------------------------------------------


def parse_edgelist(text: str) -> Graph:
    """Edge-list text: one "u v" pair per line; a single integer on a line
    declares an isolated vertex.  Blank lines and '#' comments are skipped.
    """
    vertices = []
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise GraphError(f"line {lineno}: expected integers, got {line!r}")
        if any(n < 0 for n in nums):
            raise GraphError(f"line {lineno}: vertices must be nonnegative")
        if len(nums) == 1:
            vertices.append(nums[0])
        elif len(nums) == 2:
            edges.append((nums[0], nums[1]))
        else:
            raise GraphError(f"line {lineno}: expected 1 or 2 integers")
    return Graph(vertices, edges)


def read_edgelist(path) -> Graph:
    with open(path) as f:
        return parse_edgelist(f.read())


def format_edgelist(g: Graph) -> str:
    lines = [f"{u} {v}" for u, v in g.sorted_edges()]
    covered = {x for e in g.edges for x in e}
    lines.extend(str(v) for v in g.vertices if v not in covered)
    return "\n".join(lines) + ("\n" if lines else "")


def graph6_decode(line: str) -> Graph:
    """Decode one graph6 line (6-bit big-endian upper triangle, offset 63)."""
    data = [ord(c) - 63 for c in line.strip()]
    if any(b < 0 or b > 63 for b in data):
        raise GraphError("invalid graph6 characters")
    if not data:
        raise GraphError("empty graph6 line")
    if data[0] == 63:  # N(n) for 63 <= n <= 258047: '~' then 3 bytes
        if len(data) < 4:
            raise GraphError("truncated graph6 header")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    else:
        n = data[0]
        body = data[1:]
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise GraphError("graph6 body length mismatch")
    bits = []
    for b in body:
        for shift in range(5, -1, -1):
            bits.append((b >> shift) & 1)
    edges = []
    i = 0
    for col in range(1, n):
        for row in range(col):
            if bits[i]:
                edges.append((row, col))
            i += 1
    return Graph(range(n), edges)


def graph6_encode(g: Graph) -> str:
    """Encode with vertices relabelled 0..n-1 in sorted label order."""
    n = len(g.vertices)
    idx = {v: i for i, v in enumerate(g.vertices)}
    bits = []
    for col in range(1, n):
        for row in range(col):
            u, v = g.vertices[row], g.vertices[col]
            bits.append(1 if g.has_edge(u, v) else 0)
    while len(bits) % 6:
        bits.append(0)
    if n < 63:
        head = [n]
    elif n <= 258047:
        head = [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    else:
        raise GraphError("graph too large for graph6 encoder")
    out = head + [
        sum(b << (5 - j) for j, b in enumerate(bits[i : i + 6]))
        for i in range(0, len(bits), 6)
    ]
    return "".join(chr(63 + b) for b in out)


def read_graph6_lines(text: str):
    """Yield (lineno, Graph-or-GraphError) for each nonblank line."""
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith(">>graph6<<"):
            line = line.replace(">>graph6<<", "").strip()
            if not line:
                continue
        try:
            yield lineno, graph6_decode(line)
        except GraphError as err:
            yield lineno, err


# -- small constructions used throughout tests and examples ------------


def complete_graph(n, offset=0) -> Graph:
    vs = range(offset, offset + n)
    return Graph(vs, itertools.combinations(vs, 2))


def path_graph(n, offset=0) -> Graph:
    vs = list(range(offset, offset + n))
    return Graph(vs, zip(vs, vs[1:]))


def cycle_graph(n, offset=0) -> Graph:
    vs = list(range(offset, offset + n))
    return Graph(vs, list(zip(vs, vs[1:])) + [(vs[-1], vs[0])])


def subdivide_edge(g: Graph, e, times=1) -> Graph:
    """Replace edge e by a path through `times` fresh vertices."""
    e = _norm_edge(e)
    if e not in g.edges:
        raise GraphError(f"no such edge {e}")
    if times == 0:
        return g
    nxt = max(g.vertices) + 1
    chain = [e[0]] + list(range(nxt, nxt + times)) + [e[1]]
    return Graph(
        list(g.vertices) + chain[1:-1],
        (g.edges - {e}) | set(zip(chain, chain[1:])),
    )
