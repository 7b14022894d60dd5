"""Saturated hereditary sets, breaking vertices, admissible pairs.

For a finite vertex set, a hereditary family of vertex sets that is closed
under unions and subsets is the full power set of W, the union of its
singleton members.  We therefore store a saturated hereditary set as the bare
vertex set W.  A pair (W, B) with B a subset of the breaking vertices of W
indexes a gauge-invariant ideal; the containment order used by the lattice is
the graph-algebra one, (W,B) <= (W',B') iff W <= W' and B <= W' | B', which
is folklore for ultragraphs rather than a proved result (flagged in output
metadata).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import CapExceeded, NotAdmissible, ValidationError
from .presentation import canonical_subsets

DEFAULT_CAP = 20


def is_saturated_hereditary(P, W):
    """Check both closure rules; returns (ok, witness).

    The witness names the violating edge class ("hereditary", edge id) or the
    vertex forced by saturation ("saturation", vertex).
    """
    W = frozenset(W)
    if not W <= P.vertices:
        raise ValidationError("W contains unknown vertices")
    for c in P.edges.values():
        if c.source in W and not c.range <= W:
            return False, ("hereditary", c.id)
    for v in sorted(P.vertices - W):
        if P.is_regular(v) and all(c.range <= W for c in P.out_classes(v)):
            return False, ("saturation", v)
    return True, None


def hereditary_saturated_closure(P, seeds):
    """Least saturated hereditary W containing the union of the seed sets."""
    W = set()
    for s in seeds:
        s = frozenset(s)
        if not s <= P.vertices:
            raise ValidationError("unknown vertex in a seed")
        W |= s
    changed = True
    while changed:
        changed = False
        for c in P.edges.values():
            if c.source in W and not c.range <= W:
                W |= c.range
                changed = True
        for v in P.vertices - W:
            if P.is_regular(v) and all(c.range <= W for c in P.out_classes(v)):
                W.add(v)
                changed = True
    return frozenset(W)


def breaking_vertices(P, W):
    """Vertices w with infinitely many edges but 0 < finitely many leaving W.

    The count is edge-level: an omega class whose range escapes W would
    contribute infinitely many such edges, so it disqualifies w.
    """
    W = frozenset(W)
    ok, witness = is_saturated_hereditary(P, W)
    if not ok:
        raise ValidationError(f"W is not saturated hereditary: {witness}")
    out = set()
    for w in P.vertices - W:
        classes = P.out_classes(w)
        omegas = [c for c in classes if c.omega]
        if not omegas:
            continue
        if any(not c.range <= W for c in omegas):
            continue
        escaping = [c for c in classes if not c.omega and not c.range <= W]
        if escaping:
            out.add(w)
    return frozenset(out)


def gap_projection_support(P, W, w):
    """Edge instances from a breaking vertex whose ranges escape W.

    All are multiplicity-one by the definition of a breaking vertex; the
    symbolic module turns this set into p_w minus the sum of s_e s_e*.
    """
    if w not in breaking_vertices(P, W):
        raise ValidationError(f"{w!r} is not a breaking vertex for this W")
    return tuple((c.id, 0) for c in P.out_classes(w)
                 if not c.omega and not c.range <= frozenset(W))


def enumerate_saturated_hereditary(P, cap=DEFAULT_CAP):
    if len(P.vertices) > cap:
        raise CapExceeded(f"{len(P.vertices)} vertices exceeds cap {cap}")
    return [W for W in canonical_subsets(P.vertices)
            if is_saturated_hereditary(P, W)[0]]


@dataclass(frozen=True)
class AdmissiblePair:
    W: frozenset
    B: frozenset

    def to_dict(self):
        return {"W": sorted(self.W), "B": sorted(self.B)}

    def to_json(self):
        return json.dumps(self.to_dict(), ensure_ascii=False)


def make_pair(P, W, B=()):
    """Validate and build an admissible pair for P."""
    W = frozenset(W)
    B = frozenset(B)
    ok, witness = is_saturated_hereditary(P, W)
    if not ok:
        raise NotAdmissible(f"W is not saturated hereditary: {witness}")
    if not B <= breaking_vertices(P, W):
        raise NotAdmissible("B is not a subset of the breaking vertices of W")
    return AdmissiblePair(W=W, B=B)


def pair_from_dict(P, doc):
    try:
        return make_pair(P, doc["W"], doc.get("B", ()))
    except TypeError:
        raise NotAdmissible("pair document must have string lists W and B") from None


def enumerate_admissible_pairs(P, cap=DEFAULT_CAP):
    pairs = []
    for W in enumerate_saturated_hereditary(P, cap=cap):
        bh = breaking_vertices(P, W)
        for B in canonical_subsets(bh):
            pairs.append(AdmissiblePair(W=W, B=frozenset(B)))
    return pairs


def pair_leq(a, b):
    """The folklore containment order on admissible pairs."""
    return a.W <= b.W and a.B <= (b.W | b.B)


@dataclass(frozen=True)
class IdealLattice:
    nodes: tuple  # of AdmissiblePair
    covers: tuple  # of (i, j) index pairs, transitive reduction of <

    def to_dict(self):
        return {
            "nodes": [p.to_dict() for p in self.nodes],
            "covers": [list(c) for c in self.covers],
            "order": "graph-algebra analogue; unverified against this theory",
        }

    def to_json(self):
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2) + "\n"

    def to_dot(self):
        lines = ["digraph ideal_lattice {"]
        for i, p in enumerate(self.nodes):
            label = "({%s},{%s})" % (",".join(sorted(p.W)), ",".join(sorted(p.B)))
            lines.append(f'  n{i} [label="{label}"];')
        for i, j in self.covers:
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def ideal_lattice(P, cap=DEFAULT_CAP):
    nodes = enumerate_admissible_pairs(P, cap=cap)
    n = len(nodes)
    less = [[i != j and pair_leq(nodes[i], nodes[j]) for j in range(n)]
            for i in range(n)]
    covers = []
    for i in range(n):
        for j in range(n):
            if less[i][j] and not any(less[i][k] and less[k][j] for k in range(n)):
                covers.append((i, j))
    return IdealLattice(nodes=tuple(nodes), covers=tuple(covers))
