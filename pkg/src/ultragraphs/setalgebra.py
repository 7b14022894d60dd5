"""Smallest algebra of sets closed under intersection, union, difference.

For a finite family of generators the closure is determined by its atoms: the
nonempty cells of the membership-signature partition of the union of the
generators.  Every member of the closure is a union of atoms, and every union
of atoms is reachable (each cell is an intersection of generators minus the
union of the others).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations


def _generator_order(generators):
    return sorted(generators, key=lambda g: (len(g), sorted(g)))


@dataclass(frozen=True)
class SetAlgebra:
    universe: frozenset
    atoms: tuple  # of frozensets, pairwise disjoint, sorted

    @property
    def atom_count(self):
        return len(self.atoms)

    @property
    def member_count(self):
        return 1 << len(self.atoms)

    def members(self):
        """All members, smallest first: the empty set plus unions of atoms."""
        for k in range(len(self.atoms) + 1):
            for combo in combinations(self.atoms, k):
                yield frozenset().union(*combo) if combo else frozenset()

    def __contains__(self, s):
        s = frozenset(s)
        support = frozenset().union(*self.atoms) if self.atoms else frozenset()
        if not s <= support:
            return False
        return all(a <= s or not (a & s) for a in self.atoms)


def generate_algebra(universe, generators):
    universe = frozenset(universe)
    gens = [frozenset(g) for g in generators]
    for g in gens:
        if not g <= universe:
            raise ValueError("generator not contained in universe")
    ordered = _generator_order(gens)
    cells = {}
    for x in sorted(frozenset().union(*gens) if gens else ()):
        sig = tuple(x in g for g in ordered)
        cells.setdefault(sig, set()).add(x)
    atoms = tuple(sorted((frozenset(c) for c in cells.values()),
                         key=lambda a: sorted(a)))
    return SetAlgebra(universe=universe, atoms=atoms)


def brute_force_closure(generators):
    """Fixed-point closure under intersection, union, difference.

    Independent oracle for ``generate_algebra``; exponential, test sizes only.
    """
    members = {frozenset(g) for g in generators}
    members.add(frozenset())
    while True:
        new = set()
        for a in members:
            for b in members:
                for c in (a & b, a | b, a - b):
                    if c not in members:
                        new.add(c)
        if not new:
            return members
        members |= new
