"""Finite G-spaces with invariant weights, and the orbit spaces of their fibered products."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Mapping

from .groupoid import FiniteGroupoid, ValidationError, ValidationReport, _Collector, validate_groupoid


class UnionFind:
    def __init__(self, items: Iterable):
        self.parent = {x: x for x in items}
        self.rank = {x: 0 for x in self.parent}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y) -> None:
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x

    def classes(self) -> list[list]:
        groups: dict = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return list(groups.values())


@dataclass(frozen=True, eq=False)
class FiniteGSpace:
    """A finite left G-space: anchor map to the units and a partial action.

    ``action[(γ, x)]`` is meant to be defined exactly when
    ``source(γ) == anchor(x)``.
    """

    groupoid: FiniteGroupoid
    points: tuple[str, ...]
    anchor: Mapping[str, str]
    action: Mapping[tuple[str, str], str]

    @classmethod
    def build(
        cls,
        groupoid: FiniteGroupoid,
        points: Iterable[str],
        anchor: Mapping[str, str],
        action: Mapping[tuple[str, str], str] | Iterable[tuple[str, str, str]],
    ) -> FiniteGSpace:
        points = tuple(sorted(set(points)))
        if not points:
            raise ValueError("empty G-space")
        if not isinstance(action, Mapping):
            action = {(g, x): y for g, x, y in action}
        return cls(groupoid, points, dict(anchor), dict(action))

    @cached_property
    def _key(self):
        return (
            self.groupoid,
            self.points,
            tuple(sorted(self.anchor.items())),
            tuple(sorted(self.action.items())),
        )

    def __eq__(self, other):
        if not isinstance(other, FiniteGSpace):
            return NotImplemented
        return self is other or self._key == other._key

    @cached_property
    def _hash(self) -> int:
        return hash(self._key)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FiniteGSpace({len(self.points)} points over {self.groupoid!r})"

    def act(self, g: str, x: str) -> str:
        return self.action[g, x]

    @cached_property
    def _fibers(self) -> dict[str, tuple[str, ...]]:
        fib: dict[str, list[str]] = {u: [] for u in self.groupoid.units}
        for x in self.points:
            fib.setdefault(self.anchor[x], []).append(x)
        return {u: tuple(v) for u, v in fib.items()}

    def fiber(self, u: str) -> tuple[str, ...]:
        """Points anchored at ``u``, sorted."""
        return self._fibers.get(u, ())

    def movers(self, x: str) -> tuple[str, ...]:
        """Arrows that can act on ``x``."""
        return self.groupoid.source_fiber(self.anchor[x])


@dataclass(frozen=True, eq=False)
class MeasuredGSpace:
    """A G-space with positive point weights forming an invariant system."""

    space: FiniteGSpace
    weights: Mapping[str, Fraction]

    @classmethod
    def build(cls, space: FiniteGSpace, weights: Mapping[str, Fraction | int | str] | None = None):
        weights = weights or {}
        return cls(space, {x: Fraction(weights.get(x, 1)) for x in space.points})

    @classmethod
    def counting(cls, space: FiniteGSpace) -> MeasuredGSpace:
        return cls.build(space)

    @property
    def groupoid(self) -> FiniteGroupoid:
        return self.space.groupoid

    @property
    def points(self) -> tuple[str, ...]:
        return self.space.points

    def w(self, x: str) -> Fraction:
        return self.weights[x]

    @cached_property
    def _key(self):
        return (self.space, tuple(sorted(self.weights.items())))

    def __eq__(self, other):
        if not isinstance(other, MeasuredGSpace):
            return NotImplemented
        return self is other or self._key == other._key

    @cached_property
    def _hash(self) -> int:
        return hash(self._key)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"MeasuredGSpace({len(self.points)} points)"


def is_proper(space: FiniteGSpace) -> bool:
    """Always true: (γ, x) ↦ (γx, x) is a map between finite sets."""
    return True


def validate_gspace(space: FiniteGSpace) -> ValidationReport:
    g = space.groupoid
    greport = validate_groupoid(g)
    if not greport.ok:
        return ValidationReport(tuple((f"groupoid: {n}", w) for n, w in greport.violations))
    v = _Collector()
    pts = set(space.points)
    arrows = set(g.arrows)
    units = set(g.units)

    for x in space.points:
        if x not in space.anchor:
            v.add("missing anchor", x)
        elif space.anchor[x] not in units:
            v.add("anchor not a unit", x, space.anchor[x])
    for x in space.anchor:
        if x not in pts:
            v.add("dangling identifier", "anchor", x)
    for (a, x), y in space.action.items():
        if a not in arrows or x not in pts or y not in pts:
            v.add("dangling identifier", "action", a, x, y)
    if v.items:
        return v.report()

    missing_units = units - set(space.anchor.values())
    for u in sorted(missing_units):
        v.add("anchor onto units", u)

    act = space.action
    for a in g.arrows:
        for x in space.points:
            composable = g.s(a) == space.anchor[x]
            defined = (a, x) in act
            if composable and not defined:
                v.add("action missing", a, x)
            elif defined and not composable:
                v.add("action on non-composable pair", a, x)
    if v.items:
        return v.report()

    for (a, x), y in act.items():
        if space.anchor[y] != g.r(a):
            v.add("anchor equivariance", a, x)
    for x in space.points:
        u = space.anchor[x]
        if act[u, x] != x:
            v.add("unit acts trivially", u, x)
    for (a, b), c in g.table.items():
        for x in space.fiber(g.s(b)):
            if act[c, x] != act[a, act[b, x]]:
                v.add("action compatibility", a, b, x)
    for a in g.arrows:
        image = [act[a, x] for x in space.fiber(g.s(a))]
        if sorted(image) != list(space.fiber(g.r(a))):
            v.add("action bijective on fibers", a)
    return v.report()


def validate_measure(m: MeasuredGSpace) -> ValidationReport:
    """Positivity and invariance ``w(γx) = w(x)`` of the weight system."""
    v = _Collector()
    for x in m.points:
        w = m.weights.get(x)
        if w is None:
            v.add("missing weight", x)
        elif w <= 0:
            v.add("weight positivity", x, w)
    if v.items:
        return v.report()
    for (a, x), y in m.space.action.items():
        if m.weights[y] != m.weights[x]:
            v.add("weight invariance", a, x)
    return v.report()


def checked_space(space: FiniteGSpace) -> FiniteGSpace:
    report = validate_gspace(space)
    if not report.ok:
        raise ValidationError("G-space", report)
    return space


def checked_measure(m: MeasuredGSpace) -> MeasuredGSpace:
    checked_space(m.space)
    report = validate_measure(m)
    if not report.ok:
        raise ValidationError("measure", report)
    return m


def freeness_witness(space: FiniteGSpace):
    """``(γ, u, x)`` with γ ≠ u a non-unit fixing x (u = anchor(x)), or None if free.

    Any collision γx = γ′x yields the stabilizer element γ′⁻¹γ, so searching
    stabilizers is enough.
    """
    for x in space.points:
        u = space.anchor[x]
        for a in space.movers(x):
            if a != u and space.act(a, x) == x:
                return (a, u, x)
    return None


def is_free(space: FiniteGSpace) -> bool:
    return freeness_witness(space) is None


def point_orbits(space: FiniteGSpace) -> dict[str, str]:
    """Each point mapped to the least point of its G-orbit."""
    uf = UnionFind(space.points)
    for (_, x), y in space.action.items():
        uf.union(x, y)
    out = {}
    for cls in uf.classes():
        rep = min(cls)
        for x in cls:
            out[x] = rep
    return out


@dataclass(frozen=True, eq=False)
class OrbitSpace:
    """The quotient (X*Y)/G under the diagonal action."""

    left: FiniteGSpace
    right: FiniteGSpace
    pairs: tuple[tuple[str, str], ...]
    orbit_of: Mapping[tuple[str, str], tuple[str, str]]
    members: Mapping[tuple[str, str], tuple[tuple[str, str], ...]]

    @property
    def orbits(self) -> tuple[tuple[str, str], ...]:
        """Canonical representatives, sorted."""
        return tuple(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, pair):
        return pair in self.orbit_of

    def canonical(self, x: str, y: str) -> tuple[str, str]:
        """Representative of the orbit of ``(x, y)``; KeyError off the fibered product."""
        return self.orbit_of[x, y]


@lru_cache(maxsize=512)
def orbit_space(left: FiniteGSpace, right: FiniteGSpace) -> OrbitSpace:
    if left.groupoid != right.groupoid:
        raise ValueError("spaces over different groupoids")
    g = left.groupoid
    pairs = tuple(
        (x, y) for u in g.units for x in left.fiber(u) for y in right.fiber(u)
    )
    pairs = tuple(sorted(pairs))
    uf = UnionFind(pairs)
    for x, y in pairs:
        for a in left.movers(x):
            uf.union((x, y), (left.act(a, x), right.act(a, y)))
    orbit_of = {}
    members = {}
    for cls in uf.classes():
        cls.sort()
        rep = cls[0]
        members[rep] = tuple(cls)
        for p in cls:
            orbit_of[p] = rep
    members = dict(sorted(members.items()))
    return OrbitSpace(left, right, pairs, orbit_of, members)


def translation_space(g: FiniteGroupoid) -> FiniteGSpace:
    """G acting on itself by left translation, anchored by the range map."""
    action = {(a, b): g.mul(a, b) for a in g.arrows for b in g.range_fiber(g.s(a))}
    return FiniteGSpace.build(g, g.arrows, dict(g.range), action)


@dataclass(frozen=True)
class SelfIdentification:
    orbits: OrbitSpace
    to_point: Mapping[tuple[str, str], str]
    to_orbit: Mapping[str, tuple[str, str]]


def self_identification(space: FiniteGSpace) -> SelfIdentification:
    """The bijection (G*X)/G ≅ X, ``[γ, x] ↦ γ⁻¹x``, and its inverse ``x ↦ [u, x]``."""
    g = space.groupoid
    orbits = orbit_space(translation_space(g), space)
    to_point = {}
    for rep in orbits.orbits:
        a, x = rep
        to_point[rep] = space.act(g.inv(a), x)
    to_orbit = {x: orbits.canonical(space.anchor[x], x) for x in space.points}
    return SelfIdentification(orbits, to_point, to_orbit)


def disjoint_union(*spaces: FiniteGSpace) -> FiniteGSpace:
    """Disjoint union; point ``x`` of the i-th space becomes ``"i.x"``."""
    if not spaces:
        raise ValueError("disjoint union of nothing")
    g = spaces[0].groupoid
    points, anchor, action = [], {}, {}
    for i, sp in enumerate(spaces):
        if sp.groupoid != g:
            raise ValueError("spaces over different groupoids")
        for x in sp.points:
            points.append(f"{i}.{x}")
            anchor[f"{i}.{x}"] = sp.anchor[x]
        for (a, x), y in sp.action.items():
            action[a, f"{i}.{x}"] = f"{i}.{y}"
    return FiniteGSpace.build(g, points, anchor, action)


def orbit_fiber_pairs(space: FiniteGSpace) -> int:
    """Number of pairs (y, x) with y in the G-orbit of x."""
    orb = point_orbits(space)
    sizes: dict[str, int] = {}
    for x in space.points:
        sizes[orb[x]] = sizes.get(orb[x], 0) + 1
    return sum(n * n for n in sizes.values())


def composable_count(space: FiniteGSpace) -> int:
    """|G*X|."""
    return sum(len(space.movers(x)) for x in space.points)
