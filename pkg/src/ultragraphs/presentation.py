"""Finitely presented ultragraphs: data model, JSON parsing, paths.

An ultragraph here is a finite vertex set together with *edge classes*.  An
edge class has one source vertex, a nonempty set of range vertices, and a
multiplicity: ``"1"`` for a single edge, ``"omega"`` for a countable family of
parallel edges sharing the same source and range.  Individual edges inside an
omega family are addressed as (class id, index) pairs; path enumeration only
ever materializes indices 0 and 1, which is enough for every "at least two
parallel edges" argument downstream.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .errors import DocumentError, ValidationError

TOKEN_RE = re.compile(r"[A-Za-z0-9_']+\Z")

ONE = "1"
OMEGA = "omega"

# An edge instance is a (class id, index) pair; index 0 is the canonical
# representative, omega classes additionally expose index 1.
EdgeInstance = tuple


def is_token(name):
    return isinstance(name, str) and bool(TOKEN_RE.match(name))


@dataclass(frozen=True)
class EdgeClass:
    id: str
    source: str
    range: frozenset
    mult: str = ONE

    @property
    def omega(self):
        return self.mult == OMEGA


class UltragraphPresentation:
    """An immutable, validated finite ultragraph presentation."""

    def __init__(self, vertices, edges):
        vertices = frozenset(vertices)
        for v in vertices:
            if not is_token(v):
                raise ValidationError(f"invalid vertex name {v!r}")
            if v.endswith("'"):
                raise ValidationError(f"reserved primed name {v!r}")
        seen = {}
        for c in edges:
            if not is_token(c.id):
                raise ValidationError(f"invalid edge id {c.id!r}")
            if c.id in seen:
                raise ValidationError(f"duplicate id {c.id!r}")
            if not c.range:
                raise ValidationError(f"empty range on edge {c.id!r}")
            if c.source not in vertices:
                raise ValidationError(f"unknown vertex {c.source!r} as source of {c.id!r}")
            for v in c.range:
                if v not in vertices:
                    raise ValidationError(f"unknown vertex {v!r} in range of {c.id!r}")
            if c.mult not in (ONE, OMEGA):
                raise ValidationError(f"bad multiplicity {c.mult!r} on edge {c.id!r}")
            seen[c.id] = c
        self.vertices = vertices
        self.edges = dict(sorted(seen.items()))

    # -- basic accessors ---------------------------------------------------

    @property
    def sorted_vertices(self):
        return sorted(self.vertices)

    @property
    def edge_ids(self):
        return list(self.edges)

    def edge(self, eid):
        try:
            return self.edges[eid]
        except KeyError:
            raise ValidationError(f"unknown edge {eid!r}") from None

    def out_classes(self, v):
        """Edge classes sourced at ``v``, in id order."""
        if v not in self.vertices:
            raise ValidationError(f"unknown vertex {v!r}")
        return [c for c in self.edges.values() if c.source == v]

    def is_sink(self, v):
        return not self.out_classes(v)

    def is_regular(self, v):
        """Emits at least one edge and only finitely many (no omega class)."""
        out = self.out_classes(v)
        return bool(out) and not any(c.omega for c in out)

    def is_singular(self, v):
        return not self.is_regular(v)

    def __eq__(self, other):
        if not isinstance(other, UltragraphPresentation):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, tuple(self.edges.values())))

    def __repr__(self):
        return (f"UltragraphPresentation({len(self.vertices)} vertices, "
                f"{len(self.edges)} edge classes)")

    # -- serialization -----------------------------------------------------

    def to_dict(self):
        return {
            "vertices": self.sorted_vertices,
            "edges": [
                {"id": c.id, "source": c.source, "range": sorted(c.range),
                 "mult": c.mult}
                for c in self.edges.values()
            ],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2) + "\n"


def parse_ultragraph(text):
    """Parse the JSON ultragraph document format into a presentation."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"syntax error: {exc.msg}", position=exc.pos) from None
    if not isinstance(doc, dict):
        raise DocumentError("top-level value must be an object")
    try:
        vertices = doc["vertices"]
        raw_edges = doc["edges"]
    except KeyError as exc:
        raise DocumentError(f"missing key {exc.args[0]!r}") from None
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise DocumentError('"vertices" must be an array of strings')
    if len(set(vertices)) != len(vertices):
        raise ValidationError("duplicate id in vertex list")
    edges = []
    for entry in raw_edges:
        if not isinstance(entry, dict):
            raise DocumentError("each edge must be an object")
        try:
            edges.append(EdgeClass(id=entry["id"], source=entry["source"],
                                   range=frozenset(entry["range"]),
                                   mult=entry.get("mult", ONE)))
        except KeyError as exc:
            raise DocumentError(f"edge missing key {exc.args[0]!r}") from None
        if not entry["range"]:
            raise ValidationError(f"empty range on edge {entry['id']!r}")
    return UltragraphPresentation(vertices, edges)


# -- canonical subset order ------------------------------------------------

def canonical_subsets(names):
    """All subsets of ``names`` in the canonical deterministic order.

    Subsets are counted in binary with the alphabetically first name as the
    most significant bit, so for {u, v, w, a}: {}, {w}, {v}, {v,w}, ... {a},
    ... {a,u,v,w}.
    """
    order = sorted(names)
    n = len(order)
    for mask in range(1 << n):
        yield frozenset(order[i] for i in range(n) if mask >> (n - 1 - i) & 1)


def subset_sort_key(names, subset):
    order = sorted(names)
    n = len(order)
    return sum(1 << (n - 1 - i) for i, name in enumerate(order) if name in subset)


# -- paths -----------------------------------------------------------------

def instances_of(cls):
    """Representative edge instances of a class (two for omega families)."""
    if cls.omega:
        return [(cls.id, 0), (cls.id, 1)]
    return [(cls.id, 0)]


def path_classes(P, path):
    return [P.edge(eid) for eid, _ in path]

def path_source(P, path):
    return P.edge(path[0][0]).source

def path_range(P, path):
    return P.edge(path[-1][0]).range

def path_vertices(P, path):
    """The set of source vertices visited along a path."""
    return frozenset(P.edge(eid).source for eid, _ in path)


def is_valid_path(P, path):
    if not path:
        return False
    classes = path_classes(P, path)
    for eid, idx in path:
        if idx != 0 and not P.edge(eid).omega:
            return False
    return all(classes[i + 1].source in classes[i].range
               for i in range(len(classes) - 1))


def is_loop(P, path):
    return is_valid_path(P, path) and path_source(P, path) in path_range(P, path)


def enumerate_paths(P, frm, max_len):
    """All paths of length <= max_len starting at ``frm``, DFS preorder.

    Omega classes contribute their index-0 and index-1 representatives.
    """
    if frm not in P.vertices:
        raise ValidationError(f"unknown vertex {frm!r}")
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    out = []

    # A path continues from any vertex of the last range; branch over the
    # classes sourced anywhere in that range.
    def walk_targets(prefix, rng):
        for v in sorted(rng):
            for c in P.out_classes(v):
                for inst in instances_of(c):
                    path = prefix + (inst,)
                    out.append(path)
                    if len(path) < max_len:
                        walk_targets(path, c.range)

    for c in P.out_classes(frm):
        for inst in instances_of(c):
            path = (inst,)
            out.append(path)
            if max_len > 1:
                walk_targets(path, c.range)
    return out


def reachable_classes(P, starts):
    """Least fixed point of edge classes lying on paths starting in ``starts``."""
    for v in starts:
        if v not in P.vertices:
            raise ValidationError(f"unknown vertex {v!r}")
    reached = set()
    frontier = set(starts)
    seen_vertices = set()
    while frontier:
        v = frontier.pop()
        if v in seen_vertices:
            continue
        seen_vertices.add(v)
        for c in P.out_classes(v):
            if c.id not in reached:
                reached.add(c.id)
                frontier.update(c.range)
    return reached


def reachable_ranges(P, frm):
    """Ranges of all edge classes on some path starting at ``frm``."""
    return {P.edge(eid).range for eid in reachable_classes(P, [frm])}
