"""The reduction driver: shrink a graph while its tangle survives.

Each step deletes an edge, suppresses a degree-2 vertex, or restricts to a
component, always carrying the tangle along by one of the survival
constructions and re-verifying the result.  The finished trace supports two
derived artifacts: a weight function pulled back from the terminal graph,
and a small witnessing subgraph assembled from the topological-minor
provenance of the terminal edges.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import graphs as G
from .graphs import Graph, MinorProvenance
from .inducing import transfer_by_zero
from .survival import (
    brute_force_extensions,
    restrict_to_component,
    survive_delete_edge_k1,
    survive_delete_edge_k2,
    survive_delete_pendant_edge,
    survive_edge_deletion_via_supertangle,
    survive_suppress_vertex,
)
from .tangles import (
    Tangle,
    TangleError,
    enumerate_tangles,
    extends,
    format_tangle,
    is_tangle,
    parse_tangle,
)


class PipelineError(ValueError):
    pass


@dataclass(frozen=True)
class ReductionStep:
    kind: str  # "delete_edge" | "suppress_vertex" | "take_component"
    detail: tuple  # the edge, (vertex,), or (smallest component label,)
    rule: str  # which construction fired
    graph: Graph
    tangle: Tangle


@dataclass(frozen=True)
class ReductionTrace:
    root_graph: Graph
    root_tangle: Tangle
    steps: tuple = field(default_factory=tuple)

    @property
    def terminal_graph(self) -> Graph:
        return self.steps[-1].graph if self.steps else self.root_graph

    @property
    def terminal_tangle(self) -> Tangle:
        return self.steps[-1].tangle if self.steps else self.root_tangle


def _verify_step(prev_g, prev_t, step: ReductionStep):
    if not is_tangle(step.graph, prev_t.k, step.tangle.members):
        raise PipelineError(f"step {step.rule!r} produced a non-tangle")
    if step.kind == "delete_edge" and not extends(prev_t, step.tangle):
        raise PipelineError(f"step {step.rule!r} lost the tangle")


def _next_step(g: Graph, t: Tangle):
    """One reduction step, or None when the driver is finished.

    Case order: disconnected graph, small k edge deletion, pendant edge,
    degree-2 suppression, a higher-order tangle above t, and finally a
    brute-force search over all edges.
    """
    k = t.k
    if not g.is_connected() and len(g.vertices) > 1:
        comp, t2 = restrict_to_component(g, t)
        label = min(comp.vertices)
        return ReductionStep("take_component", (label,), "component restriction", comp, t2)
    if k == 1 and g.edges:
        e = g.sorted_edges()[0]
        t2 = survive_delete_edge_k1(g, t, e)
        return ReductionStep("delete_edge", e, "order-1 deletion", G.delete_edge(g, e), t2)
    if k == 2 and len(g.edges) >= 2:
        e, t2 = survive_delete_edge_k2(g, t)
        return ReductionStep("delete_edge", e, "order-2 deletion", G.delete_edge(g, e), t2)
    if k >= 3:
        pendant = next((v for v in g.vertices if g.degree(v) == 1), None)
        if pendant is not None:
            e = tuple(sorted((pendant, next(iter(g.neighbors(pendant))))))
            t2 = survive_delete_pendant_edge(g, t, pendant)
            return ReductionStep(
                "delete_edge", e, "pendant deletion", G.delete_edge(g, e), t2
            )
        deg2 = next((v for v in g.vertices if g.degree(v) == 2), None)
        if deg2 is not None:
            t2 = survive_suppress_vertex(g, t, deg2)
            return ReductionStep(
                "suppress_vertex", (deg2,), "degree-2 suppression",
                G.suppress_vertex(g, deg2), t2,
            )
        if enumerate_tangles(g, k + 1):
            try:
                e, t2 = survive_edge_deletion_via_supertangle(g, t)
                return ReductionStep(
                    "delete_edge", e, "higher-order tangle", G.delete_edge(g, e), t2
                )
            except (TangleError, ValueError):
                pass
        for e in g.sorted_edges():
            found = brute_force_extensions(g, t, e, find_all=False)
            if found:
                return ReductionStep(
                    "delete_edge", e, "edge search", G.delete_edge(g, e), found[0]
                )
    return None


def reduce(g: Graph, t: Tangle, max_steps: int = 10_000) -> ReductionTrace:
    """Run the driver until no step succeeds; every step is re-verified."""
    if not is_tangle(g, t.k, t.members):
        raise PipelineError("input is not a tangle")
    steps = []
    cur_g, cur_t = g, t
    for _ in range(max_steps):
        step = _next_step(cur_g, cur_t)
        if step is None:
            break
        _verify_step(cur_g, cur_t, step)
        steps.append(step)
        cur_g, cur_t = step.graph, step.tangle
    else:
        raise PipelineError("step limit exceeded")
    return ReductionTrace(g, t, tuple(steps))


def transfer_terminal_weights(trace: ReductionTrace, w_terminal):
    """Pull the terminal inducing weights back to the root graph."""
    return transfer_by_zero(trace, w_terminal)


# -- witnessing subgraph -----------------------------------------------------------


def trace_provenance(trace: ReductionTrace) -> MinorProvenance:
    prov = G.identity_provenance(trace.root_graph)
    cur = trace.root_graph
    for step in trace.steps:
        if step.kind == "delete_edge":
            inner = G.provenance_delete_edge(cur, step.detail)
        elif step.kind == "suppress_vertex":
            inner = G.provenance_suppress_vertex(cur, step.detail[0])
        else:
            inner = G.provenance_component(cur, step.graph)
        prov = G.compose_provenance(prov, inner)
        cur = step.graph
    return prov


def is_witness(g: Graph, tau: Tangle, h: Graph) -> bool:
    """No three members' small-side subgraphs jointly contain h.

    Scanning maximal members suffices: coverage only grows upward.
    """
    hv = h.vertex_set()
    pool = tau.maximal_members()
    subs = [(s.small, g.edges_within(s.small)) for s in pool]
    m = len(subs)
    for i in range(m):
        for j in range(i, m):
            for l in range(j, m):
                vs = subs[i][0] | subs[j][0] | subs[l][0]
                if not hv <= vs:
                    continue
                es = subs[i][1] | subs[j][1] | subs[l][1]
                if h.edges <= es:
                    return False
    return True


def witness_subgraph(trace: ReductionTrace) -> Graph:
    """A small subgraph of the root graph certifying the root tangle.

    Branch vertices of the terminal graph plus, per terminal edge, the end
    edge of its subdivision path; at most one edge per terminal edge.
    """
    prov = trace_provenance(trace)
    vertices = set(prov.branch_vertices)
    edges = []
    for e in sorted(trace.terminal_graph.edges, key=lambda e: tuple(sorted(e))):
        path = prov.path_of(e)
        edges.append(tuple(sorted(path[:2])))
        vertices.update(path[:2])
    h = Graph(sorted(vertices), edges)
    if not is_witness(trace.root_graph, trace.root_tangle, h):
        raise PipelineError("assembled subgraph fails the witness scan")
    return h


# -- trace serialization --------------------------------------------------------------


def format_trace(trace: ReductionTrace) -> str:
    def block(title, body):
        return f"{title}\n{body.rstrip()}\n"

    out = [
        block("ROOT-GRAPH", G.format_edgelist(trace.root_graph)),
        block("ROOT-TANGLE", format_tangle(trace.root_tangle)),
    ]
    for n, s in enumerate(trace.steps, start=1):
        out.append(f"STEP {n}\n")
        out.append(f"RULE {s.rule}\n")
        out.append(f"KIND {s.kind} {' '.join(map(str, s.detail))}\n")
        out.append(block("GRAPH", G.format_edgelist(s.graph)))
        out.append(block("TANGLE", format_tangle(s.tangle)))
    return "".join(out)


def parse_trace(text: str) -> ReductionTrace:
    sections = []
    current = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        head = line.split()[0]
        if head in ("ROOT-GRAPH", "ROOT-TANGLE", "STEP", "RULE", "KIND", "GRAPH", "TANGLE"):
            current = [line, []]
            sections.append(current)
        elif current is None:
            raise PipelineError("trace data before any section")
        else:
            current[1].append(line)
    blocks = {"steps": []}
    pending = {}
    for header, body in sections:
        words = header.split()
        key, text_body = words[0], "\n".join(body)
        if key == "ROOT-GRAPH":
            blocks["root_graph"] = G.parse_edgelist(text_body)
        elif key == "ROOT-TANGLE":
            blocks["root_tangle_text"] = text_body
        elif key == "STEP":
            if pending:
                blocks["steps"].append(pending)
            pending = {}
        elif key == "RULE":
            pending["rule"] = header[len("RULE ") :]
        elif key == "KIND":
            pending["kind"] = words[1]
            pending["detail"] = tuple(int(x) for x in words[2:])
        elif key == "GRAPH":
            pending["graph"] = G.parse_edgelist(text_body)
        elif key == "TANGLE":
            pending["tangle_text"] = text_body
    if pending:
        blocks["steps"].append(pending)
    root_graph = blocks["root_graph"]
    root_tangle = parse_tangle(blocks["root_tangle_text"], root_graph)
    steps = tuple(
        ReductionStep(
            kind=p["kind"],
            detail=p["detail"],
            rule=p["rule"],
            graph=p["graph"],
            tangle=parse_tangle(p["tangle_text"], p["graph"]),
        )
        for p in blocks["steps"]
    )
    return ReductionTrace(root_graph, root_tangle, steps)
