"""Exact computation in the *-algebra spanned by Cuntz-Krieger words.

Elements are finite linear combinations of basis words (alpha, x, beta),
meaning t_alpha q_x t_beta* with a single-vertex middle.  Projections over
larger vertex sets are always expanded into their atoms, which makes word
multiplication a three-way case analysis on how beta and mu overlap and makes
sums canonical on the nose.  Equality modulo the regular-vertex summation
relation (the only relation not already baked into the basis) is decided by
expanding both sides to a uniform word depth; an independent matrix
representation over acyclic presentations double-checks the procedure.
"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass

from .errors import ContextMismatch, ValidationError
from .ideals import breaking_vertices, gap_projection_support, make_pair
from .quotient import QuotientUltragraph, build_quotient, extend, prime
from .scalars import ONE_SCALAR, Scalar

EdgeData = namedtuple("EdgeData", "src rng omega")

BasisWord = namedtuple("BasisWord", "alpha atom beta")


class SymContext:
    """The generator universe an element lives over.

    ``atoms`` are the surviving vertex labels, ``drop`` the labels silently
    removed by projections (the W of a quotient; empty for a base context).
    Edge ranges are stored already reduced to atoms.
    """

    def __init__(self, kind, atoms, edges, drop=frozenset()):
        self.kind = kind
        self.atoms = frozenset(atoms)
        self.drop = frozenset(drop)
        self.edges = dict(edges)
        self._out = {}
        for eid, d in self.edges.items():
            self._out.setdefault(d.src, []).append(eid)
        for v in self._out:
            self._out[v].sort()
        self._key = (kind, self.atoms, self.drop,
                     tuple(sorted(self.edges.items())))

    def __eq__(self, other):
        return isinstance(other, SymContext) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def out(self, v):
        return self._out.get(v, [])

    def is_regular(self, v):
        out = self.out(v)
        return bool(out) and not any(self.edges[e].omega for e in out)

    def source(self, inst):
        return self.edges[inst[0]].src

    def check_instance(self, inst):
        eid, idx = inst
        if eid not in self.edges:
            raise ValidationError(f"unknown edge {eid!r}")
        if idx not in (0, 1) or (idx == 1 and not self.edges[eid].omega):
            raise ValidationError(f"bad instance index {idx} on {eid!r}")


def base_context(P):
    return SymContext("base", P.vertices,
                      {c.id: EdgeData(c.source, c.range, c.omega)
                       for c in P.edges.values()})


def quotient_context(Q):
    return SymContext("quotient", Q.vertices,
                      {eid: EdgeData(Q.src[eid], Q.rng[eid], Q.is_omega(eid))
                       for eid in Q.edges},
                      drop=Q.pair.W)


def extended_context(P, pair):
    ext = extend(P, pair)
    edges = {eid: EdgeData(ext.source(eid), ext.extended_ranges[eid], c.omega)
             for eid, c in P.edges.items()}
    return SymContext("extended", ext.vertices, edges)


class SymbolicElement:
    """Finite linear combination of basis words with exact coefficients."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms=()):
        self.ctx = ctx
        self.terms = {w: c for w, c in dict(terms).items() if c}

    # -- ring structure ----------------------------------------------------

    def _require_same(self, other):
        if not isinstance(other, SymbolicElement):
            raise TypeError(f"cannot combine with {type(other).__name__}")
        if other.ctx != self.ctx:
            raise ContextMismatch("elements live over different contexts")

    def __add__(self, other):
        self._require_same(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, Scalar()) + c
        return SymbolicElement(self.ctx, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return SymbolicElement(self.ctx,
                               {w: -c for w, c in self.terms.items()})

    def scale(self, s):
        s = Scalar.of(s)
        return SymbolicElement(self.ctx,
                               {w: c * s for w, c in self.terms.items()})

    def __mul__(self, other):
        self._require_same(other)
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                prod = _mul_words(self.ctx, w1, w2)
                if prod is None:
                    continue
                terms[prod] = terms.get(prod, Scalar()) + c1 * c2
        return SymbolicElement(self.ctx, terms)

    def adjoint(self):
        return SymbolicElement(
            self.ctx,
            {BasisWord(w.beta, w.atom, w.alpha): c.conjugate()
             for w, c in self.terms.items()})

    @property
    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, SymbolicElement):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    def __repr__(self):
        return f"SymbolicElement({len(self.terms)} terms)"

    def pretty(self):
        if not self.terms:
            return "0"

        def fmt_path(path):
            return "".join(
                f"t_{e}" + (f".{i}" if i else "") for e, i in path)

        bits = []
        for w in sorted(self.terms):
            c = self.terms[w]
            body = fmt_path(w.alpha) + f"q_{w.atom}"
            if w.beta:
                body += "(" + fmt_path(w.beta) + ")*"
            coeff = "" if c == ONE_SCALAR else f"({c})"
            bits.append(coeff + body)
        return " + ".join(bits)

    def to_dict(self):
        def enc(path):
            return [[e, i] for e, i in path]

        return {"terms": [
            {"alpha": enc(w.alpha), "atom": w.atom, "beta": enc(w.beta),
             "coeff": str(self.terms[w])}
            for w in sorted(self.terms)
        ]}


def _mul_words(ctx, w1, w2):
    """(a,x,b)(m,y,n): resolved by how b and m overlap as paths."""
    b, m = w1.beta, w2.alpha
    if len(m) >= len(b):
        if m[:len(b)] != b:
            return None
        gamma = m[len(b):]
        if not gamma:
            if w1.atom != w2.atom:
                return None
            return BasisWord(w1.alpha, w1.atom, w2.beta)
        if ctx.source(gamma[0]) != w1.atom:
            return None
        return BasisWord(w1.alpha + gamma, w2.atom, w2.beta)
    if b[:len(m)] != m:
        return None
    gamma = b[len(m):]
    if ctx.source(gamma[0]) != w2.atom:
        return None
    return BasisWord(w1.alpha, w1.atom, w2.beta + gamma)


# -- constructors ------------------------------------------------------------

def zero(ctx):
    return SymbolicElement(ctx)


def projection(ctx, labels):
    """q over a set of labels, expanded into single-vertex atoms.

    Labels in the context's dropped set contribute nothing (their class is
    the empty class).
    """
    labels = frozenset(labels)
    unknown = labels - ctx.atoms - ctx.drop
    if unknown:
        raise ValidationError(f"unknown vertices {sorted(unknown)}")
    return SymbolicElement(
        ctx, {BasisWord((), x, ()): ONE_SCALAR for x in labels - ctx.drop})


def edge_gen(ctx, inst):
    """t_e as an element: the sum of t_e q_y over the range atoms y."""
    inst = tuple(inst)
    ctx.check_instance(inst)
    rng = ctx.edges[inst[0]].rng
    return SymbolicElement(
        ctx, {BasisWord((inst,), y, ()): ONE_SCALAR for y in rng})


def path_isometry(ctx, path):
    """t_alpha for a nonempty sequence of edge instances."""
    path = [tuple(inst) for inst in path]
    if not path:
        raise ValidationError("empty path has no isometry; use a projection")
    out = edge_gen(ctx, path[0])
    for inst in path[1:]:
        out = out * edge_gen(ctx, inst)
    if out.is_zero:
        raise ValidationError("instances do not form a path")
    return out


# -- rewriting ---------------------------------------------------------------

def normalize(x):
    """Canonical form; elements are built normalized, so this just reprunes."""
    return SymbolicElement(x.ctx, x.terms)


def expand_regular(x, depth):
    """Rewrite with q_v = sum of t_e t_e* at regular middles, up to depth.

    Words whose two legs both reach ``depth``, and words with a singular
    middle, are left alone; each rewrite strictly grows the shorter leg, so
    this terminates.
    """
    ctx = x.ctx
    terms = dict(x.terms)
    changed = True
    while changed:
        changed = False
        new = {}

        def put(w, c):
            new[w] = new.get(w, Scalar()) + c

        for w, c in terms.items():
            if (ctx.is_regular(w.atom)
                    and max(len(w.alpha), len(w.beta)) < depth):
                changed = True
                for eid in ctx.out(w.atom):
                    inst = (eid, 0)
                    for y in ctx.edges[eid].rng:
                        put(BasisWord(w.alpha + (inst,), y,
                                      w.beta + (inst,)), c)
            else:
                put(w, c)
        terms = {w: c for w, c in new.items() if c}
    return SymbolicElement(ctx, terms)


def ck_equal(x, y):
    """Equality modulo the regular-vertex summation relation."""
    if not isinstance(y, SymbolicElement):
        raise TypeError("both arguments must be elements")
    d = x - y
    if d.is_zero:
        return True
    depth = 1 + max(max(len(w.alpha), len(w.beta)) for w in d.terms)
    return expand_regular(d, depth).is_zero


def grade(x):
    """Partition of the terms by degree |alpha| - |beta|."""
    parts = {}
    for w, c in x.terms.items():
        parts.setdefault(len(w.alpha) - len(w.beta), {})[w] = c
    return {n: SymbolicElement(x.ctx, t) for n, t in sorted(parts.items())}


# -- ideal-related elements --------------------------------------------------

def gap_projection(P, W, w):
    """p_w minus the finite sum of escaping edge projections at w."""
    ctx = base_context(P)
    out = projection(ctx, [w])
    for inst in gap_projection_support(P, W, w):
        t = edge_gen(ctx, inst)
        out = out - t * t.adjoint()
    return out


def embed_extended(P, pair, x):
    """Translate an element over the base into the extended ultragraph.

    Edges map to themselves; the projection at a vertex doubled by the
    extension splits into the two halves q_w + q_w'.
    """
    if x.ctx != base_context(P):
        raise ContextMismatch("element is not over the base context of P")
    pair = make_pair(P, pair.W, pair.B)
    ctx = extended_context(P, pair)
    doubled = breaking_vertices(P, pair.W) - pair.B
    out = zero(ctx)
    for w, c in x.terms.items():
        labels = {w.atom} | ({prime(w.atom)} if w.atom in doubled else set())
        mid = projection(ctx, labels)
        term = path_isometry(ctx, w.alpha) * mid if w.alpha else mid
        if w.beta:
            term = term * path_isometry(ctx, w.beta).adjoint()
        out = out + term.scale(c)
    return out


def quotient_map(P, pair, x):
    """Translate an element over the base into the quotient.

    Edges whose range falls into W map to zero, vertices in W map to the
    empty class, and a doubled breaking vertex maps to q_w + q_w'.
    """
    if x.ctx != base_context(P):
        raise ContextMismatch("element is not over the base context of P")
    Q = build_quotient(P, pair)
    ctx = quotient_context(Q)
    doubled = breaking_vertices(P, Q.pair.W) - Q.pair.B
    kept = set(Q.edges)
    out = zero(ctx)
    for w, c in x.terms.items():
        if any(eid not in kept for eid, _ in w.alpha + w.beta):
            continue
        labels = {w.atom} | ({prime(w.atom)} if w.atom in doubled else set())
        mid = projection(ctx, labels)
        if mid.is_zero:
            continue
        term = path_isometry(ctx, w.alpha) * mid if w.alpha else mid
        if w.beta:
            term = term * path_isometry(ctx, w.beta).adjoint()
        out = out + term.scale(c)
    return out


# -- the finite-graph family -------------------------------------------------

@dataclass(frozen=True)
class FamilyReport:
    checks: tuple  # of (name, bool)

    @property
    def passed(self):
        return all(ok for _, ok in self.checks)

    def failures(self):
        return [name for name, ok in self.checks if not ok]

    def to_dict(self):
        return {"passed": self.passed,
                "checks": [{"identity": n, "ok": ok} for n, ok in self.checks]}


def verify_ck_family(Q, F):
    """Check that the finite-graph elements form a Cuntz-Krieger family.

    Builds Q_e = t_e t_e*, Q_[v] and Q_omega as range projections cut down by
    1 - sum of t_e t_e* (distributed, no unit), and T_x = t_e Q_target, then
    verifies mutual orthogonality of the vertex projections, the partial
    isometry relations, the summation relation at non-sinks, and the
    reconstruction of each t_e from the T's leaving it.
    """
    from .gf import build_GF

    if not isinstance(Q, QuotientUltragraph):
        raise TypeError("expected a quotient ultragraph")
    G = build_GF(Q, F)
    ctx = quotient_context(Q)

    tgen = {e: edge_gen(ctx, (e, 0)) for e in G.f1}
    tt = {e: tgen[e] * tgen[e].adjoint() for e in G.f1}
    sum_tt = zero(ctx)
    for e in G.f1:
        sum_tt = sum_tt + tt[e]

    def cut(proj):
        return proj - proj * sum_tt

    qvert = {}
    for e in G.f1:
        qvert[("edge", e)] = tt[e]
    for v in G.f0:
        qvert[("vertex", v)] = cut(projection(ctx, [v]))
    for w in G.gamma:
        qvert[("omega", w)] = cut(projection(ctx, G.residual[w]))

    tedge = {}
    for x in G.edges:
        tedge[x] = tgen[x.source] * qvert[(x.kind, x.target)]

    checks = []
    keys = sorted(qvert, key=str)
    for i, a in enumerate(keys):
        for b in keys[i + 1:]:
            checks.append((f"orthogonality {a} {b}",
                           ck_equal(qvert[a] * qvert[b], zero(ctx))))
    for x in G.edges:
        name = f"({x.source},{x.target})"
        T = tedge[x]
        checks.append((f"GA1 {name}",
                       ck_equal(T.adjoint() * T, qvert[(x.kind, x.target)])))
        TTs = T * T.adjoint()
        checks.append((f"GA2 {name}",
                       ck_equal(qvert[("edge", x.source)] * TTs, TTs)))
    for e in G.f1:
        out = G.out_edges(e)
        if out:
            total = zero(ctx)
            for x in out:
                total = total + tedge[x] * tedge[x].adjoint()
            checks.append((f"GA3 {e}", ck_equal(total, qvert[("edge", e)])))
        recon = zero(ctx)
        for x in out:
            recon = recon + tedge[x]
        checks.append((f"reconstruction {e}", ck_equal(recon, tgen[e])))
    return FamilyReport(checks=tuple(checks))


# -- matrix oracle -----------------------------------------------------------

class PathSpaceRepresentation:
    """Finite-dimensional representation of a loop-free presentation.

    The basis is indexed by pairs (path, sink) where the path (possibly
    empty) ends in a range containing the sink.  An edge prepends itself, a
    vertex projection keeps the basis vectors starting at it.  Matrices are
    sparse maps (row, col) -> Scalar.
    """

    def __init__(self, P):
        from .analysis import _has_loop_at

        for c in P.edges.values():
            if c.omega:
                raise ValidationError("omega classes are not representable")
        for v in P.sorted_vertices:
            if _has_loop_at(P, v):
                raise ValidationError("presentation has loops")
        self.P = P
        sinks = [v for v in P.sorted_vertices if P.is_sink(v)]
        basis = [((), v) for v in sinks]
        from .presentation import enumerate_paths
        for v in P.sorted_vertices:
            for path in enumerate_paths(P, v, max_len=len(P.vertices)):
                rng = P.edge(path[-1][0]).range
                for s in sinks:
                    if s in rng:
                        basis.append((path, s))
        self.basis = sorted(basis)
        self.index = {b: i for i, b in enumerate(self.basis)}
        self._starts = {}
        for b in self.basis:
            path, v = b
            start = P.edge(path[0][0]).source if path else v
            self._starts.setdefault(start, []).append(b)

    @property
    def dimension(self):
        return len(self.basis)

    def evaluate(self, x):
        """Sparse matrix of an element; entries are exact scalars."""
        mat = {}
        for w, c in x.terms.items():
            for tail, v in self._starts.get(w.atom, []):
                row = self.index.get((w.alpha + tail, v))
                col = self.index.get((w.beta + tail, v))
                if row is None or col is None:
                    continue
                key = (row, col)
                mat[key] = mat.get(key, Scalar()) + c
        return {k: c for k, c in mat.items() if c}


def path_space_representation(P):
    return PathSpaceRepresentation(P)
