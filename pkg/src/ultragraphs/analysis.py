"""Decision procedures: Conditions (L) and (K), primitivity, pure infiniteness.

The loop searches exploit a restriction argument: a loop that defeats both
clauses of Condition (L) must run through vertices that emit exactly one kept
edge class, that class must have multiplicity one (a parallel edge is an
exit), and its range must contain exactly one vertex outside the ideal part.
Those constraints define a partial successor function on vertices, and the
offending loops are exactly the cycles of that function.  The same argument
drives the "every loop has an exit outside W" check on the base ultragraph.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ValidationError
from .ideals import (breaking_vertices, enumerate_admissible_pairs,
                     enumerate_saturated_hereditary, is_saturated_hereditary,
                     DEFAULT_CAP)
from .presentation import (is_loop, path_vertices, reachable_classes,
                           reachable_ranges)
from .quotient import build_quotient


@dataclass(frozen=True)
class LoopWitness:
    edges: tuple  # of EdgeInstance
    based_at: str

    def to_dict(self):
        return {"edges": [f"{e}.{i}" if i else e for e, i in self.edges],
                "based_at": self.based_at}


@dataclass(frozen=True)
class KWitness:
    vertex: str
    loop: LoopWitness

    def to_dict(self):
        return {"vertex": self.vertex, "loop": self.loop.to_dict()}


def _functional_cycle(succ):
    """Minimal cycle of a partial successor map ``v -> (edge id, v')``.

    Returns the witness cycle as a list of (vertex, edge id) pairs, rotated
    to start at its smallest vertex, or None.  Among several cycles the
    shortest wins, ties broken by the rotated vertex sequence.
    """
    cycles = []
    done = set()
    for start in sorted(succ):
        if start in done:
            continue
        trail = []
        index = {}
        v = start
        while v in succ and v not in index and v not in done:
            index[v] = len(trail)
            trail.append(v)
            v = succ[v][1]
        if v in index:
            cycles.append(trail[index[v]:])
        done.update(trail)
    if not cycles:
        return None

    def key(cycle):
        base = min(cycle)
        k = cycle.index(base)
        rotated = cycle[k:] + cycle[:k]
        return (len(cycle), rotated)

    best = min(cycles, key=key)
    base = min(best)
    k = best.index(base)
    rotated = best[k:] + best[:k]
    return [(v, succ[v][0]) for v in rotated]


def check_condition_L(Q):
    """None if the quotient satisfies Condition (L), else a loop witness.

    A witness loop has range equal to the next source at every step and no
    exit anywhere along it.
    """
    succ = {}
    for v in Q.sorted_vertices:
        out = Q.out_classes(v)
        if len(out) != 1 or Q.is_omega(out[0]):
            continue
        rep = Q.rng[out[0]]
        if len(rep) == 1:
            succ[v] = (out[0], next(iter(rep)))
    cycle = _functional_cycle(succ)
    if cycle is None:
        return None
    return LoopWitness(edges=tuple((eid, 0) for _, eid in cycle),
                       based_at=cycle[0][0])


def simple_first_returns(P, v):
    """Simple first-return class sequences at ``v``.

    Sequences e1..en with source(e1) = v, v in range(en), and intermediate
    sources distinct and different from v.
    """
    out = []

    def walk(seq, sources, rng):
        if v in rng:
            out.append(tuple(seq))
        for u in sorted(rng):
            if u == v or u in sources:
                continue
            for c in P.out_classes(u):
                walk(seq + [c.id], sources | {u}, c.range)

    for c in P.out_classes(v):
        walk([c.id], set(), c.range)
    return out


def _has_loop_at(P, u, banned=frozenset()):
    """Does some loop based at ``u`` avoid the banned sources?"""
    if u in banned:
        return False
    frontier = {t for c in P.out_classes(u) for t in c.range}
    seen = set()
    while frontier:
        x = frontier.pop()
        if x == u:
            return True
        if x in seen or x in banned:
            continue
        seen.add(x)
        for c in P.out_classes(x):
            frontier.update(c.range)
    return False


def condition_K_fails_at(P, v):
    """The unique return path if ``v`` is the base of exactly one loop."""
    returns = simple_first_returns(P, v)
    if len(returns) != 1:
        return None
    path = returns[0]
    if any(P.edge(eid).omega for eid in path):
        # two parallel instances already give two incomparable loops
        return None
    intermediates = {P.edge(eid).source for eid in path[1:]}
    for u in sorted(intermediates):
        if _has_loop_at(P, u, banned=frozenset([v])):
            # pump the side loop to get a second incomparable loop at v
            return None
    return path


def check_condition_K(P):
    """None if Condition (K) holds, else the first failing vertex + loop."""
    for v in P.sorted_vertices:
        path = condition_K_fails_at(P, v)
        if path is not None:
            loop = LoopWitness(edges=tuple((eid, 0) for eid in path), based_at=v)
            return KWitness(vertex=v, loop=loop)
    return None


def check_condition_K_via_quotients(P, cap=DEFAULT_CAP):
    """Independent oracle: (K) holds iff every quotient satisfies (L)."""
    for pair in enumerate_admissible_pairs(P, cap=cap):
        if check_condition_L(build_quotient(P, pair)) is not None:
            return False
    return True


def kill_loop_ideal(P, witness):
    """The saturated hereditary set that isolates a unique loop.

    Given a loop with no second incomparable loop at its base, collect the
    ranges of all paths leaving the loop's vertex set, strip the loop's
    vertices, and close under saturation.  The result is saturated hereditary
    and disjoint from the loop, and the quotient by (W, B_W) fails Condition
    (L) with this very loop.
    """
    gamma = witness.edges
    if not is_loop(P, gamma):
        raise ValidationError("witness is not a loop")
    base = P.edge(gamma[0][0]).source
    unique = condition_K_fails_at(P, base)
    if unique is None or unique != tuple(eid for eid, _ in gamma):
        raise ValidationError(
            "loop is not the unique incomparable loop at its base")
    gamma0 = path_vertices(P, gamma)
    W = set()
    for eid in reachable_classes(P, gamma0):
        W |= P.edge(eid).range - gamma0
    changed = True
    while changed:
        changed = False
        for v in P.vertices - W:
            if P.is_regular(v) and all(c.range <= W for c in P.out_classes(v)):
                W.add(v)
                changed = True
    W = frozenset(W)
    ok, reason = is_saturated_hereditary(P, W)
    assert ok, f"construction not saturated hereditary: {reason}"
    assert not (W & gamma0), "construction meets the loop"
    return W


def ge(P, A, B):
    """A >= B: containment, or some path from A covers B with its range."""
    A = frozenset(A)
    B = frozenset(B)
    if not B:
        raise ValueError("B must be nonempty")
    if B <= A:
        return True
    return any(B <= R for v in sorted(A & P.vertices)
               for R in reachable_ranges(P, v))


@dataclass(frozen=True)
class DirectednessReport:
    holds: bool
    witness: tuple = None  # failing (u, v) pair
    vacuous: bool = False

    def to_dict(self):
        d = {"holds": self.holds}
        if self.witness:
            d["witness"] = list(self.witness)
        if self.vacuous:
            d["note"] = "empty collection; vacuously directed"
        return d


def is_downward_directed(P, W):
    """Is the collection of vertex sets outside W downward directed?

    Reduced to singleton pairs: u, v outside W must admit reachable ranges
    (or the singletons themselves) meeting outside W.
    """
    W = frozenset(W)
    ok, reason = is_saturated_hereditary(P, W)
    if not ok:
        raise ValidationError(f"W is not saturated hereditary: {reason}")
    M = sorted(P.vertices - W)
    if not M:
        return DirectednessReport(holds=True, vacuous=True)
    choices = {u: [frozenset([u])] + sorted(reachable_ranges(P, u), key=sorted)
               for u in M}
    for u in M:
        for v in M:
            if not any((X & Y) - W for X in choices[u] for Y in choices[v]):
                return DirectednessReport(holds=False, witness=(u, v))
    return DirectednessReport(holds=True)


def loops_have_exits_outside(P, W):
    """None if every loop leaving W-territory has an exit there, else a loop."""
    W = frozenset(W)
    ok, reason = is_saturated_hereditary(P, W)
    if not ok:
        raise ValidationError(f"W is not saturated hereditary: {reason}")
    kept = [c for c in P.edges.values() if not c.range <= W]
    succ = {}
    for v in P.sorted_vertices:
        out = [c for c in kept if c.source == v]
        if len(out) != 1 or out[0].omega:
            continue
        escape = out[0].range - W
        if len(escape) == 1:
            succ[v] = (out[0].id, next(iter(escape)))
    cycle = _functional_cycle(succ)
    if cycle is None:
        return None
    return LoopWitness(edges=tuple((eid, 0) for _, eid in cycle),
                       based_at=cycle[0][0])


def _loop_bases_outside(P, W):
    """Vertices that base a loop whose classes all have range escaping W."""
    kept = [c for c in P.edges.values() if not c.range <= W]
    arcs = {}
    for c in kept:
        arcs.setdefault(c.source, set()).update(c.range)
    bases = set()
    for u in arcs:
        frontier = set(arcs[u])
        seen = set()
        while frontier:
            x = frontier.pop()
            if x == u:
                bases.add(u)
                break
            if x in seen:
                continue
            seen.add(x)
            frontier.update(arcs.get(x, ()))
    return bases


@dataclass(frozen=True)
class PrimitivityReport:
    pair: object
    primitive: bool
    case: str  # "FullB" | "MissingOne" | "Neither"
    missing_vertex: str = None
    evidence: dict = field(default_factory=dict)

    def to_dict(self):
        d = {"pair": self.pair.to_dict(), "primitive": self.primitive,
             "case": self.case}
        if self.missing_vertex is not None:
            d["missing_vertex"] = self.missing_vertex
        if self.evidence:
            d["evidence"] = self.evidence
        return d


def classify_primitive_ideals(P, cap=DEFAULT_CAP):
    """One primitivity report per proper admissible pair."""
    reports = []
    for pair in enumerate_admissible_pairs(P, cap=cap):
        if pair.W == P.vertices:
            continue  # improper ideal, not a primitivity candidate
        gap = breaking_vertices(P, pair.W) - pair.B
        if not gap:
            dd = is_downward_directed(P, pair.W)
            exits = loops_have_exits_outside(P, pair.W)
            evidence = {"downward_directed": dd.to_dict(),
                        "loops_have_exits": exits is None}
            if exits is not None:
                evidence["inexitable_loop"] = exits.to_dict()
            reports.append(PrimitivityReport(
                pair=pair, primitive=dd.holds and exits is None,
                case="FullB", evidence=evidence))
        elif len(gap) == 1:
            (w,) = gap
            failing = [u for u in sorted(P.vertices - pair.W)
                       if not ge(P, {u}, {w})]
            evidence = {"target": w}
            if failing:
                evidence["unconnected"] = failing
            reports.append(PrimitivityReport(
                pair=pair, primitive=not failing, case="MissingOne",
                missing_vertex=w, evidence=evidence))
        else:
            reports.append(PrimitivityReport(
                pair=pair, primitive=False, case="Neither",
                evidence={"gap": sorted(gap)}))
    return reports


@dataclass(frozen=True)
class PureInfinitenessReport:
    purely_infinite: bool
    failing_clause: str = None  # "ConditionK" | "BreakingVertex" | "NoLoopConnection"
    failing_W: frozenset = None
    witness: object = None

    def to_dict(self):
        d = {"purely_infinite": self.purely_infinite}
        if self.failing_clause:
            d["failing_clause"] = self.failing_clause
        if self.failing_W is not None:
            d["failing_W"] = sorted(self.failing_W)
        if self.witness is not None:
            w = self.witness
            d["witness"] = w.to_dict() if hasattr(w, "to_dict") else w
        return d


def is_purely_infinite(P, cap=DEFAULT_CAP):
    """Combinatorial pure infiniteness test.

    Requires Condition (K), plus for every proper saturated hereditary W:
    no breaking vertices, and every vertex outside W connects to a loop
    whose ranges escape W.
    """
    kw = check_condition_K(P)
    if kw is not None:
        return PureInfinitenessReport(False, failing_clause="ConditionK",
                                      witness=kw)
    for W in enumerate_saturated_hereditary(P, cap=cap):
        if W == P.vertices:
            continue
        bh = breaking_vertices(P, W)
        if bh:
            return PureInfinitenessReport(False, failing_clause="BreakingVertex",
                                          failing_W=W, witness=min(bh))
        bases = _loop_bases_outside(P, W)
        for v in sorted(P.vertices - W):
            if not any(ge(P, {v}, {b}) for b in sorted(bases)):
                return PureInfinitenessReport(
                    False, failing_clause="NoLoopConnection",
                    failing_W=W, witness=v)
    return PureInfinitenessReport(True)
