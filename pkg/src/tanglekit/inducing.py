"""Vertex sets and weight functions that pin down a tangle by majority.

A vertex set X induces a tangle when every member (A, B) satisfies
|X cap A| < |X cap B|; a weight function does the same with weighted sums.
Weights survive graph reductions by extension with zeros, which lets a
small terminal certificate be pulled back to the original graph.
"""

from __future__ import annotations

import json
from itertools import combinations

from .graphs import Graph
from .tangles import Tangle, enumerate_tangles


class InducingError(ValueError):
    pass


class WeightFunction:
    """Nonnegative integer vertex weights; zero entries are implicit."""

    def __init__(self, weights):
        if isinstance(weights, WeightFunction):
            weights = weights.weights
        self.weights = {v: int(w) for v, w in dict(weights).items() if int(w) != 0}
        if any(w < 0 for w in self.weights.values()):
            raise InducingError("weights must be nonnegative")

    @classmethod
    def indicator(cls, vertices):
        return cls({v: 1 for v in vertices})

    @property
    def total(self):
        return sum(self.weights.values())

    @property
    def support(self):
        return frozenset(self.weights)

    def side(self, vertices) -> int:
        return sum(w for v, w in self.weights.items() if v in vertices)

    def __eq__(self, other):
        return isinstance(other, WeightFunction) and self.weights == other.weights

    def __hash__(self):
        return hash(frozenset(self.weights.items()))

    def __repr__(self):
        return f"WeightFunction({self.weights!r}, total={self.total})"


def induces_weight(tau: Tangle, w) -> bool:
    """Every member's big side strictly outweighs its small side."""
    w = WeightFunction(w)
    return all(w.side(s.small) < w.side(s.big) for s in tau.members)


def induces_set(tau: Tangle, x) -> bool:
    x = frozenset(x)
    return all(len(x & s.small) < len(x & s.big) for s in tau.members)


def find_inducing_set(tau: Tangle, max_size=None):
    """Smallest inducing vertex set, lexicographic tiebreak, else None.

    Vertices of the core (intersection of big sides) are tried first within
    each size: a member never outvotes itself there, so they prune fastest.
    """
    g = tau.graph
    if max_size is None:
        max_size = len(g.vertices)
    core = tau.core()
    order = sorted(core) + sorted(g.vertex_set() - core)
    members = tau.sorted_members()
    for size in range(1, max_size + 1):
        best = None
        for combo in combinations(order, size):
            x = frozenset(combo)
            if all(len(x & s.small) < len(x & s.big) for s in members):
                if best is None or tuple(sorted(x)) < best:
                    best = tuple(sorted(x))
        if best is not None:
            return frozenset(best)
    return None


def find_inducing_weights(tau: Tangle, budget):
    """A minimum-total weight function inducing tau with total <= budget.

    Exact search: totals ascending, weight vectors by depth-first
    composition with per-constraint feasibility pruning (a partial
    assignment is dropped when no distribution of the remaining budget can
    tip every member toward its big side).
    """
    g = tau.graph
    verts = list(g.vertices)
    # per member: vertices that push the wrong way / the right way
    cons = [(s.small - s.big, s.big - s.small) for s in tau.sorted_members()]

    def feasible(assigned, idx, remaining):
        rest = verts[idx:]
        for neg, pos in cons:
            got = sum(w for v, w in assigned.items() if v in pos) - sum(
                w for v, w in assigned.items() if v in neg
            )
            slack = remaining if any(v in pos for v in rest) else 0
            if got + slack < 1:
                return False
        return True

    def dfs(assigned, idx, remaining):
        if not feasible(assigned, idx, remaining):
            return None
        if idx == len(verts):
            return dict(assigned) if remaining == 0 else None
        v = verts[idx]
        for w in range(remaining + 1):
            if w:
                assigned[v] = w
            got = dfs(assigned, idx + 1, remaining - w)
            assigned.pop(v, None)
            if got is not None:
                return got
        return None

    for total in range(budget + 1):
        got = dfs({}, 0, total)
        if got is not None:
            return WeightFunction(got)
    return None


# -- transfer along a reduction trace -------------------------------------------


def transfer_by_zero(trace, w_terminal) -> WeightFunction:
    """Pull a terminal inducing weight back to the trace's root graph.

    Every reduction step preserves vertex labels, so extending by zero is
    the identity on the stored weights; each intermediate tangle is checked
    to be induced on the way back.
    """
    w = WeightFunction(w_terminal)
    if not w.support <= trace.terminal_graph.vertex_set():
        raise InducingError("weight support leaves the terminal graph")
    if not induces_weight(trace.terminal_tangle, w):
        raise InducingError("weights do not induce the terminal tangle")
    for step in reversed(trace.steps[:-1]):
        if not induces_weight(step.tangle, w):
            raise InducingError(f"transfer broke at step {step.rule!r}")
    if not induces_weight(trace.root_tangle, w):
        raise InducingError("transfer failed to induce the root tangle")
    return w


# -- batch verification ------------------------------------------------------------


def verify_p11_batch(
    graphs,
    k: int,
    max_set_size=None,
    compute_weights: bool = False,
    weight_budget: int = 32,
    checkpoint_path=None,
):
    """Per-graph inducing-set verdicts over a stream of (id, Graph) pairs.

    Returns {"rows": [...], "summary": {...}}.  With a checkpoint path,
    finished rows are appended as JSON lines and skipped on rerun.
    """
    done = {}
    if checkpoint_path is not None:
        try:
            with open(checkpoint_path) as fh:
                for line in fh:
                    row = json.loads(line)
                    done[row["id"]] = row
        except FileNotFoundError:
            pass
    rows = []
    for gid, g in graphs:
        gid = str(gid)
        if gid in done:
            rows.append(done[gid])
            continue
        if not isinstance(g, Graph) or not g.vertices:
            rows.append({"id": gid, "error": "malformed entry"})
            continue
        tangles = enumerate_tangles(g, k)
        set_sizes, weight_totals, failures = [], [], 0
        for tau in tangles:
            x = find_inducing_set(tau, max_set_size)
            if x is None:
                failures += 1
                continue
            set_sizes.append(len(x))
            if compute_weights:
                w = find_inducing_weights(tau, weight_budget)
                weight_totals.append(w.total if w is not None else None)
        row = {
            "id": gid,
            "tangles": len(tangles),
            "failures": failures,
            "max_set_size": max(set_sizes, default=0),
            "max_weight_total": max(
                (t for t in weight_totals if t is not None), default=None
            ),
        }
        rows.append(row)
        if checkpoint_path is not None:
            with open(checkpoint_path, "a") as fh:
                fh.write(json.dumps(row) + "\n")
    good = [r for r in rows if "error" not in r]
    summary = {
        "k": k,
        "graphs": len(rows),
        "malformed": len(rows) - len(good),
        "tangles": sum(r["tangles"] for r in good),
        "failures": sum(r["failures"] for r in good),
        "max_set_size": max((r["max_set_size"] for r in good), default=0),
    }
    return {"rows": rows, "summary": summary}


def format_p11_report(report) -> str:
    lines = [f"{'graph':<24} {'tangles':>8} {'failures':>9} {'max set':>8} {'max wt':>7}"]
    for r in report["rows"]:
        if "error" in r:
            lines.append(f"{r['id']:<24} {r['error']}")
            continue
        wt = r.get("max_weight_total")
        lines.append(
            f"{r['id']:<24} {r['tangles']:>8} {r['failures']:>9}"
            f" {r['max_set_size']:>8} {wt if wt is not None else '-':>7}"
        )
    lines.append("SUMMARY " + json.dumps(report["summary"], sort_keys=True))
    return "\n".join(lines) + "\n"
