"""Finite approximation graph G_F of a quotient ultragraph.

Given a finite F consisting of singular quotient vertices (F0) and kept edge
classes (F1), G_F has vertices F0 + F1 + Gamma, where Gamma collects the
nonzero bit vectors over F1 whose residual range R(omega) is nonempty and not
fully absorbed by F1-sourced regular vertices.  The bit vector omega selects
which F1 ranges a vertex lies in: r(omega) is the intersection of the chosen
ranges minus the union of the others, and R(omega) strips the F0 vertices.
F0 and Gamma vertices are sinks; every edge starts at some e in F1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import ValidationError
from .presentation import UltragraphPresentation
from .quotient import QuotientUltragraph


@dataclass(frozen=True)
class GFEdge:
    source: str  # an F1 edge id
    kind: str  # "edge" | "vertex" | "omega"
    target: object  # edge id | vertex label | bit tuple

    def to_dict(self):
        value = list(self.target) if self.kind == "omega" else self.target
        return {"from": self.source, "to": {"kind": self.kind, "value": value}}


@dataclass(frozen=True)
class GFGraph:
    f0: tuple  # vertex labels, sorted
    f1: tuple  # edge ids, sorted; bit vectors are indexed by this order
    gamma: tuple  # bit tuples, sorted
    residual: dict  # bit tuple -> frozenset, R(omega) for every nonzero omega
    edges: tuple  # of GFEdge

    @property
    def vertex_count(self):
        return len(self.f0) + len(self.f1) + len(self.gamma)

    def out_edges(self, e):
        return [x for x in self.edges if x.source == e]

    def to_dict(self):
        return {
            "F0": list(self.f0),
            "F1": list(self.f1),
            "Gamma": [list(w) for w in self.gamma],
            "edges": [x.to_dict() for x in self.edges],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2) + "\n"


def _omega_vectors(n):
    for mask in range(1, 1 << n):
        yield tuple(mask >> (n - 1 - i) & 1 for i in range(n))


def build_GF(Q, F):
    """Build G_F from a finite set F of singular vertices and edge ids.

    A vector omega lands in Gamma_0, and is dropped, when R(omega) is covered
    by vertices that emit at least one class, none of infinite multiplicity,
    all inside F1: the projection onto R(omega) is then already a sum of the
    F1 range projections.  Regularity is required because a vertex with an
    omega class keeps infinitely many edges outside any finite F1.
    """
    from .quotient import singular_vertices

    f0 = []
    f1 = []
    for item in F:
        if item in Q.edges:
            f1.append(item)
        elif item in Q.vertices:
            if item not in singular_vertices(Q):
                raise ValidationError(f"vertex {item!r} is not singular")
            f0.append(item)
        else:
            raise ValidationError(f"{item!r} is neither a kept edge class "
                                  "nor a quotient vertex")
    f0 = tuple(sorted(set(f0)))
    f1 = tuple(sorted(set(f1)))
    f0set = frozenset(f0)
    f1set = frozenset(f1)
    n = len(f1)

    residual = {}
    gamma = []
    for w in _omega_vectors(n):
        r = None
        for i, eid in enumerate(f1):
            if w[i]:
                r = Q.rng[eid] if r is None else r & Q.rng[eid]
        for i, eid in enumerate(f1):
            if not w[i]:
                r = r - Q.rng[eid]
        R = r - f0set
        residual[w] = R
        if not R:
            continue
        absorbed = all(
            Q.is_regular(x) and set(Q.out_classes(x)) <= f1set for x in R)
        if not absorbed:
            gamma.append(w)
    gamma = tuple(gamma)

    edges = []
    for e in f1:
        rng = Q.rng[e]
        for f in f1:
            if Q.src[f] in rng:
                edges.append(GFEdge(source=e, kind="edge", target=f))
        for v in f0:
            if v in rng:
                edges.append(GFEdge(source=e, kind="vertex", target=v))
        i = f1.index(e)
        for w in gamma:
            if w[i]:
                edges.append(GFEdge(source=e, kind="omega", target=w))
    return GFGraph(f0=f0, f1=f1, gamma=gamma, residual=residual,
                   edges=tuple(edges))


def graph_condition_L(G):
    """Every cycle of the finite graph has an exit edge."""
    succ = {}
    out = {e: G.out_edges(e) for e in G.f1}
    for e in G.f1:
        if len(out[e]) == 1 and out[e][0].kind == "edge":
            succ[e] = out[e][0].target
    # cycles of the out-degree-1 subgraph are exactly the inexitable loops
    for start in succ:
        seen = set()
        x = start
        while x in succ and x not in seen:
            seen.add(x)
            x = succ[x]
            if x == start:
                return False
    return True


# -- DOT export --------------------------------------------------------------

def _omega_label(w):
    return "(" + ",".join(str(b) for b in w) + ")"


def export_dot(obj):
    """Deterministic DOT text for a presentation, quotient, or G_F graph."""
    if isinstance(obj, GFGraph):
        lines = ["digraph G_F {"]
        names = {}
        for v in obj.f0:
            names[("vertex", v)] = f"v_{v}"
            lines.append(f'  v_{v} [label="[{v}]" shape=box];')
        for e in obj.f1:
            names[("edge", e)] = f"e_{e}"
            lines.append(f'  e_{e} [label="{e}"];')
        for i, w in enumerate(obj.gamma):
            names[("omega", w)] = f"g_{i}"
            lines.append(f'  g_{i} [label="{_omega_label(w)}" shape=diamond];')
        for x in obj.edges:
            lines.append(f"  {names[('edge', x.source)]} -> "
                         f"{names[(x.kind, x.target)]};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    if isinstance(obj, QuotientUltragraph):
        lines = ["digraph quotient {"]
        ids = {v: f"n{i}" for i, v in enumerate(obj.sorted_vertices)}
        for v in obj.sorted_vertices:
            lines.append(f'  {ids[v]} [label="[{v}]"];')
        for eid in obj.edges:
            mark = " (∞)" if obj.is_omega(eid) else ""
            rng = "{%s}" % ",".join(sorted(obj.rng[eid]))
            src = ids[obj.src[eid]]
            for y in sorted(obj.rng[eid]):
                lines.append(f'  {src} -> {ids[y]} '
                             f'[label="{eid}:{rng}{mark}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"
    if isinstance(obj, UltragraphPresentation):
        lines = ["digraph ultragraph {"]
        ids = {v: f"n{i}" for i, v in enumerate(obj.sorted_vertices)}
        for v in obj.sorted_vertices:
            lines.append(f'  {ids[v]} [label="{v}"];')
        for c in obj.edges.values():
            mark = " (∞)" if c.omega else ""
            for y in sorted(c.range):
                lines.append(f'  {ids[c.source]} -> {ids[y]} '
                             f'[label="{c.id}{mark}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise TypeError(f"cannot export {type(obj).__name__} as DOT")
