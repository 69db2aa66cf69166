"""The based algebra of H = (X*X)/G, stored as structure constants on the orbit basis."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping

from .category import Arrow, structure_tensor
from .gspace import MeasuredGSpace, orbit_space, point_orbits

Pair = tuple[str, str]


@dataclass(frozen=True, eq=False)
class HypergroupoidTable:
    base: MeasuredGSpace
    orbits: tuple[Pair, ...]
    # sparse: (O, O′, O″) -> c with δ_O ∗ δ_O′ = Σ c δ_O″; zeros omitted
    constants: Mapping[tuple[Pair, Pair, Pair], Fraction]
    star: Mapping[Pair, Pair]

    def c(self, a: Pair, b: Pair, c: Pair) -> Fraction:
        return self.constants.get((a, b, c), Fraction(0))

    @cached_property
    def _products(self) -> dict[tuple[Pair, Pair], dict[Pair, Fraction]]:
        out: dict = {}
        for (a, b, c), v in self.constants.items():
            out.setdefault((a, b), {})[c] = v
        return out

    def product(self, a: Pair, b: Pair) -> dict[Pair, Fraction]:
        """δ_a ∗ δ_b as {orbit: coefficient}."""
        return dict(self._products.get((a, b), {}))

    def expand(self, f: Arrow, g: Arrow) -> Arrow:
        """f ∗ g computed through the tensor alone."""
        out: dict[Pair, object] = {}
        for (a, b, c), v in self.constants.items():
            fa, gb = f.values.get(a), g.values.get(b)
            if fa and gb:
                out[c] = out.get(c, 0) + fa * gb * v
        return Arrow.build(self.base, self.base, out)


def build_hypergroupoid(alpha: MeasuredGSpace) -> HypergroupoidTable:
    basis, constants = structure_tensor(alpha)
    orbits = orbit_space(alpha.space, alpha.space)
    star = {o: orbits.canonical(o[1], o[0]) for o in basis}
    return HypergroupoidTable(alpha, basis, constants, star)


def groupoid_like_witness(t: HypergroupoidTable):
    """First (O, O′) whose product is supported on two or more orbits, else None."""
    for a, b in itertools.product(t.orbits, repeat=2):
        if len(t.product(a, b)) > 1:
            return (a, b)
    return None


def is_groupoid_like(t: HypergroupoidTable) -> bool:
    return groupoid_like_witness(t) is None


def detect_hypergroup(t: HypergroupoidTable) -> bool:
    """True when G acts transitively on X (one object in the table)."""
    return len(set(point_orbits(t.base.space).values())) == 1


def invariant_violations(t: HypergroupoidTable) -> list[tuple[str, tuple]]:
    """Nonnegativity, star involution, star compatibility and associativity."""
    bad = []
    for key, v in t.constants.items():
        if v < 0:
            bad.append(("nonnegativity", key))
    for o in t.orbits:
        if t.star[t.star[o]] != o:
            bad.append(("star involution", (o,)))
    for a, b, c in itertools.product(t.orbits, repeat=3):
        if t.c(t.star[b], t.star[a], t.star[c]) != t.c(a, b, c):
            bad.append(("star compatibility", (a, b, c)))
    prod = {(a, b): t.product(a, b) for a, b in itertools.product(t.orbits, repeat=2)}

    def times(left: dict, c: Pair, on_left: bool) -> dict:
        out: dict[Pair, Fraction] = {}
        for e, v in left.items():
            term = prod[e, c] if on_left else prod[c, e]
            for d, w in term.items():
                out[d] = out.get(d, Fraction(0)) + v * w
        return {d: v for d, v in out.items() if v}

    for a, b, c in itertools.product(t.orbits, repeat=3):
        if times(prod[a, b], c, True) != times(prod[b, c], a, False):
            bad.append(("associativity", (a, b, c)))
    return bad
