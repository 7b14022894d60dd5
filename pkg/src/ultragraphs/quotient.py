"""Extended ultragraphs and quotients by an admissible pair.

The extension step adds a doubled vertex w' for every breaking vertex of W
outside B and re-sources onto w' the edges from w whose range lies inside W.
The quotient then identifies vertex sets whose symmetric difference lies in
the power set of W; since that makes A \\ W a complete invariant of the class
of A, classes are stored as their canonical representative, a plain set of
labels in which primed vertices never belong to W.  Class arithmetic is then
ordinary set arithmetic on representatives.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import ValidationError
from .presentation import EdgeClass, UltragraphPresentation
from .ideals import breaking_vertices, make_pair


def prime(v):
    return v + "'"


def is_prime_label(v):
    return v.endswith("'")


def unprime(v):
    return v[:-1] if is_prime_label(v) else v


@dataclass(frozen=True)
class ExtendedUltragraph:
    base: UltragraphPresentation
    pair: object  # AdmissiblePair
    b_h: frozenset
    primes: frozenset  # primed labels w'
    resourced: dict  # edge id -> bool
    extended_ranges: dict  # edge id -> frozenset of labels

    def source(self, eid):
        c = self.base.edge(eid)
        return prime(c.source) if self.resourced[eid] else c.source

    @property
    def vertices(self):
        return self.base.vertices | self.primes

    def as_presentation(self):
        """The extension as a plain presentation (primed names allowed)."""
        p = object.__new__(UltragraphPresentation)
        p.vertices = self.vertices
        p.edges = {
            eid: EdgeClass(id=eid, source=self.source(eid),
                           range=self.extended_ranges[eid], mult=c.mult)
            for eid, c in self.base.edges.items()
        }
        return p


def extend(P, pair):
    """Build the extended ultragraph for an admissible pair."""
    pair = make_pair(P, pair.W, pair.B)  # re-validates admissibility
    bh = breaking_vertices(P, pair.W)
    doubled = bh - pair.B
    resourced = {}
    ranges = {}
    for eid, c in P.edges.items():
        resourced[eid] = c.source in doubled and c.range <= pair.W
        ranges[eid] = c.range | frozenset(prime(w) for w in c.range & doubled)
    return ExtendedUltragraph(base=P, pair=pair, b_h=bh,
                              primes=frozenset(prime(w) for w in doubled),
                              resourced=resourced, extended_ranges=ranges)


class QuotientUltragraph:
    """Quotient of an ultragraph by an admissible pair.

    Vertices are labels: base vertex names outside W plus primed names for
    breaking vertices outside B.  Classes are canonical representatives
    (frozensets of labels).
    """

    def __init__(self, P, pair):
        ext = extend(P, pair)
        self.presentation = P
        self.pair = ext.pair
        self.extended = ext
        W = ext.pair.W
        self.vertices = frozenset(P.vertices - W) | ext.primes
        kept = [eid for eid, c in P.edges.items() if not c.range <= W]
        self.edges = tuple(sorted(kept))
        self.src = {eid: ext.source(eid) for eid in self.edges}
        self.rng = {eid: self.class_of(ext.extended_ranges[eid])
                    for eid in self.edges}
        # sanity check: the breaking vertices of W inside the extension are B
        ext_bh = breaking_vertices(ext.as_presentation(), W)
        if ext_bh != ext.pair.B:
            raise AssertionError(
                f"breaking vertices of the extension are {sorted(ext_bh)}, "
                f"expected B = {sorted(ext.pair.B)}")

    # -- class calculus ----------------------------------------------------

    def class_of(self, A):
        """Canonical representative of the class of a set of labels."""
        W = self.pair.W
        A = frozenset(A)
        for x in A:
            if x not in self.extended.vertices:
                raise ValidationError(f"unknown vertex {x!r}")
        return A - W

    def class_union(self, x, y):
        return frozenset(x) | frozenset(y)

    def class_intersection(self, x, y):
        return frozenset(x) & frozenset(y)

    def class_difference(self, x, y):
        return frozenset(x) - frozenset(y)

    # -- structure ---------------------------------------------------------

    def mult(self, eid):
        return self.presentation.edge(eid).mult

    def is_omega(self, eid):
        return self.presentation.edge(eid).omega

    def out_classes(self, v):
        if v not in self.vertices:
            raise ValidationError(f"unknown vertex {v!r}")
        return [eid for eid in self.edges if self.src[eid] == v]

    def is_sink(self, v):
        return not self.out_classes(v)

    def is_regular(self, v):
        out = self.out_classes(v)
        return bool(out) and not any(self.is_omega(e) for e in out)

    @property
    def sorted_vertices(self):
        return sorted(self.vertices)

    def to_dict(self):
        return {
            "vertices": self.sorted_vertices,
            "edges": [
                {"id": eid, "src": self.src[eid], "rng": sorted(self.rng[eid]),
                 "mult": self.mult(eid)}
                for eid in self.edges
            ],
            "pair": self.pair.to_dict(),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2) + "\n"


def build_quotient(P, pair):
    return QuotientUltragraph(P, pair)


def singular_vertices(Q):
    """Sinks plus infinite emitters of the quotient."""
    return frozenset(v for v in Q.vertices if not Q.is_regular(v))
