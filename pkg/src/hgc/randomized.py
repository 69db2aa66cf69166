"""Seeded random groupoids, measured spaces, arrows and vectors.

Scalars have numerators in [-5, 5] and denominators in {1, ..., 4}.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .category import Arrow
from .examples import subgroupoid_quotient, swap_groupoid
from .groupoid import (
    FiniteGroupoid,
    cyclic_group,
    generated_subgroupoid,
    group_as_groupoid,
    klein_group,
    pair_groupoid,
    symmetric_group,
    transformation_groupoid,
)
from .gspace import FiniteGSpace, MeasuredGSpace, checked_measure, disjoint_union, point_orbits
from .representations import GroupoidFunction, SectionVector
from .scalar import GaussQ

MAX_POINTS = 12


def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-5, 5), rng.randint(1, 4))


def random_scalar(rng: random.Random, complex_values: bool = True) -> GaussQ:
    im = random_rational(rng) if complex_values else 0
    return GaussQ(random_rational(rng), im)


def _z3_on_four() -> FiniteGroupoid:
    t = cyclic_group(3)
    pts = ["p", "q", "r", "s"]
    cyc = {"p": "q", "q": "r", "r": "p", "s": "s"}
    action = {}
    for k in range(3):
        for y in pts:
            z = y
            for _ in range(k):
                z = cyc[z]
            action[str(k), y] = z
    return transformation_groupoid(t, pts, action)


def _s3_on_three() -> FiniteGroupoid:
    t = symmetric_group(3)
    pts = ["1", "2", "3"]
    # (ab)(i) = a(b(i)); recover each permutation from its cycle name
    action = {}
    for g in t.elements:
        perm = {i: i for i in pts}
        for cyc in g.strip("()").split(")(") if g != "e" else []:
            for i, c in enumerate(cyc):
                perm[c] = cyc[(i + 1) % len(cyc)]
        for y in pts:
            action[g, y] = perm[y]
    return transformation_groupoid(t, pts, action)


CATALOG = {
    "trivial": lambda: group_as_groupoid(cyclic_group(1)),
    "z2": lambda: group_as_groupoid(cyclic_group(2)),
    "z3": lambda: group_as_groupoid(cyclic_group(3)),
    "z4": lambda: group_as_groupoid(cyclic_group(4)),
    "klein": lambda: group_as_groupoid(klein_group()),
    "s3": lambda: group_as_groupoid(symmetric_group(3)),
    "pair2": lambda: pair_groupoid(["p", "q"]),
    "pair3": lambda: pair_groupoid(["p", "q", "r"]),
    "z2-swap": swap_groupoid,
    "z3-on-4": _z3_on_four,
    "s3-on-3": _s3_on_three,
}

_CACHE: dict[str, FiniteGroupoid] = {}


def catalog_groupoid(name: str) -> FiniteGroupoid:
    if name not in _CACHE:
        _CACHE[name] = CATALOG[name]()
    return _CACHE[name]


def with_haar(g: FiniteGroupoid, per_unit: dict[str, Fraction]) -> FiniteGroupoid:
    """Same groupoid with Haar weight λ(γ) = per_unit[s(γ)] (left invariant)."""
    return FiniteGroupoid.build(
        g.arrows, g.units, g.range, g.source, g.table, g.inverse,
        haar={a: per_unit[g.s(a)] for a in g.arrows},
    )


def random_groupoid(rng: random.Random, haar: bool = True) -> FiniteGroupoid:
    g = catalog_groupoid(rng.choice(sorted(CATALOG)))
    if haar and rng.random() < 0.3:
        g = with_haar(g, {u: Fraction(rng.randint(1, 4), rng.randint(1, 3)) for u in g.units})
    return g


def random_wide_subgroupoid(rng: random.Random, g: FiniteGroupoid) -> frozenset[str]:
    k = rng.choice([0, 0, 1, 1, 2])
    gens = rng.sample(list(g.arrows), min(k, len(g.arrows)))
    return generated_subgroupoid(g, gens)


def random_weights(rng: random.Random, space: FiniteGSpace) -> dict[str, Fraction]:
    orbit = point_orbits(space)
    per_orbit = {r: Fraction(rng.randint(1, 5), rng.randint(1, 4)) for r in set(orbit.values())}
    return {x: per_orbit[orbit[x]] for x in space.points}


def random_space(rng: random.Random, g: FiniteGroupoid, max_points: int = MAX_POINTS,
                 weighted: bool = True) -> MeasuredGSpace:
    """Disjoint union of one or two quotients G/K, with orbit-constant weights."""
    for _ in range(50):
        parts = []
        for _ in range(rng.choice([1, 1, 2])):
            sub = random_wide_subgroupoid(rng, g)
            parts.append(subgroupoid_quotient(g, sub).space.space)
        space = parts[0] if len(parts) == 1 else disjoint_union(*parts)
        if len(space.points) <= max_points:
            break
    else:
        space = subgroupoid_quotient(g, g.arrows).space.space
    weights = random_weights(rng, space) if weighted and rng.random() < 0.6 else {}
    return checked_measure(MeasuredGSpace.build(space, weights))


def random_arrow(rng: random.Random, dst: MeasuredGSpace, src: MeasuredGSpace,
                 density: float = 0.7, complex_values: bool = True) -> Arrow:
    orbits = Arrow.zero(dst, src).orbits
    values = {
        o: random_scalar(rng, complex_values) for o in orbits.orbits if rng.random() < density
    }
    return Arrow.build(dst, src, values)


def random_section(rng: random.Random, space: MeasuredGSpace, complex_values: bool = True) -> SectionVector:
    return SectionVector.build(space, {x: random_scalar(rng, complex_values) for x in space.points})


def random_groupoid_function(rng: random.Random, g: FiniteGroupoid) -> GroupoidFunction:
    return GroupoidFunction.build(g, {a: random_scalar(rng) for a in g.arrows})


def random_instance(rng: random.Random, n_spaces: int = 3):
    """A groupoid and ``n_spaces`` measured spaces over it."""
    g = random_groupoid(rng)
    return g, [random_space(rng, g) for _ in range(n_spaces)]
