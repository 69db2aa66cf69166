"""Finite groupoids with Haar systems, plus the group tables they are built from.

Arrows are opaque strings. Every ordered output (arrow lists, canonical
representatives, files) uses plain ``str`` ordering.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[tuple[str, tuple], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def names(self) -> set[str]:
        return {name for name, _ in self.violations}

    def lines(self) -> list[str]:
        return [f"{name}: {', '.join(map(str, witness))}" for name, witness in self.violations]


class ValidationError(ValueError):
    """Raised by constructors that refuse an invalid structure."""

    def __init__(self, what: str, report: ValidationReport):
        self.what = what
        self.report = report
        detail = "; ".join(report.lines()[:5])
        more = len(report.violations) - 5
        if more > 0:
            detail += f"; ... ({more} more)"
        super().__init__(f"invalid {what}: {detail}")


class _Collector:
    def __init__(self):
        self.items: list[tuple[str, tuple]] = []

    def add(self, name: str, *witness) -> None:
        self.items.append((name, tuple(witness)))

    def report(self) -> ValidationReport:
        return ValidationReport(tuple(self.items))


# --------------------------------------------------------------------------
# groups given by multiplication tables


class GroupTableError(ValueError):
    def __init__(self, message: str, witness: tuple = ()):
        self.witness = witness
        super().__init__(f"{message}: {witness}" if witness else message)


@dataclass(frozen=True)
class GroupTable:
    """A finite group as an explicit multiplication table."""

    elements: tuple[str, ...]
    mul: Mapping[tuple[str, str], str]
    identity: str
    inverse: Mapping[str, str]

    @classmethod
    def from_mapping(cls, mul: Mapping[tuple[str, str], str]) -> GroupTable:
        elements = sorted({a for a, _ in mul} | {b for _, b in mul})
        if not elements:
            raise GroupTableError("empty multiplication table")
        for a, b in itertools.product(elements, repeat=2):
            if (a, b) not in mul:
                raise GroupTableError("table is not total", (a, b))
            if mul[a, b] not in elements:
                raise GroupTableError("product outside the table", (a, b, mul[a, b]))
        for a, b, c in itertools.product(elements, repeat=3):
            if mul[mul[a, b], c] != mul[a, mul[b, c]]:
                raise GroupTableError("associativity fails", (a, b, c))
        identity = next(
            (e for e in elements if all(mul[e, a] == a == mul[a, e] for a in elements)),
            None,
        )
        if identity is None:
            raise GroupTableError("no identity element")
        inverse = {}
        for a in elements:
            inv = next((b for b in elements if mul[a, b] == identity == mul[b, a]), None)
            if inv is None:
                raise GroupTableError("element without inverse", (a,))
            inverse[a] = inv
        return cls(tuple(elements), dict(mul), identity, inverse)

    def __len__(self):
        return len(self.elements)

    def __call__(self, a: str, b: str) -> str:
        return self.mul[a, b]

    def generated(self, gens: Iterable[str]) -> frozenset[str]:
        """Subgroup generated by ``gens``."""
        sub = {self.identity} | set(gens)
        frontier = list(sub)
        while frontier:
            a = frontier.pop()
            for b in list(sub):
                for c in (self.mul[a, b], self.mul[b, a]):
                    if c not in sub:
                        sub.add(c)
                        frontier.append(c)
        return frozenset(sub)

    def is_subgroup(self, subset: Iterable[str]) -> bool:
        return self.subgroup_witness(subset) is None

    def subgroup_witness(self, subset: Iterable[str]):
        """None when ``subset`` is a subgroup, else a witness tuple."""
        sub = set(subset)
        unknown = sub - set(self.elements)
        if unknown:
            return ("unknown element", min(unknown))
        if self.identity not in sub:
            return ("missing identity", self.identity)
        for a in sorted(sub):
            if self.inverse[a] not in sub:
                return ("missing inverse", a, self.inverse[a])
            for b in sorted(sub):
                if self.mul[a, b] not in sub:
                    return ("not closed", a, b, self.mul[a, b])
        return None


def cyclic_group(n: int) -> GroupTable:
    """Z/n with elements named ``"0"`` .. ``"n-1"``."""
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    return GroupTable.from_mapping(
        {(str(a), str(b)): str((a + b) % n) for a in range(n) for b in range(n)}
    )


def _cycle_name(perm: tuple[int, ...]) -> str:
    seen = set()
    parts = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        nxt = perm[start]
        while nxt != start:
            cycle.append(nxt)
            seen.add(nxt)
            nxt = perm[nxt]
        parts.append("(" + "".join(str(i + 1) for i in cycle) + ")")
    return "".join(parts) or "e"


def symmetric_group(n: int) -> GroupTable:
    """S_n in cycle notation, identity ``"e"``; ``(ab)(i) = a(b(i))``."""
    if not 1 <= n <= 9:
        raise ValueError("symmetric_group supports 1 <= n <= 9")
    perms = list(itertools.permutations(range(n)))
    name = {p: _cycle_name(p) for p in perms}
    mul = {}
    for p in perms:
        for q in perms:
            pq = tuple(p[q[i]] for i in range(n))
            mul[name[p], name[q]] = name[pq]
    return GroupTable.from_mapping(mul)


def klein_group() -> GroupTable:
    names = ["e", "a", "b", "c"]
    mul = {}
    for i, x in enumerate(names):
        for j, y in enumerate(names):
            mul[x, y] = names[i ^ j]
    return GroupTable.from_mapping(mul)


def _as_table(table) -> GroupTable:
    if isinstance(table, GroupTable):
        return table
    return GroupTable.from_mapping(table)


# --------------------------------------------------------------------------
# groupoids


def _canonical_haar(arrows: Iterable[str], haar: Mapping[str, Fraction | int | str] | None):
    out = {}
    haar = haar or {}
    for a in arrows:
        w = haar.get(a, 1)
        out[a] = Fraction(w)
    return out


@dataclass(frozen=True, eq=False)
class FiniteGroupoid:
    """Explicit finite groupoid with a Haar system given by arrow weights.

    The composition table maps ``(a, b)`` to ``a∘b`` and is meant to be
    defined exactly when ``source(a) == range(b)``. Construction only
    normalizes the data; :func:`validate_groupoid` decides whether it is
    actually a groupoid.
    """

    arrows: tuple[str, ...]
    units: tuple[str, ...]
    range: Mapping[str, str]
    source: Mapping[str, str]
    table: Mapping[tuple[str, str], str]
    inverse: Mapping[str, str]
    haar: Mapping[str, Fraction] = field(default_factory=dict)

    @classmethod
    def build(
        cls,
        arrows: Iterable[str],
        units: Iterable[str],
        range: Mapping[str, str],
        source: Mapping[str, str],
        compose: Mapping[tuple[str, str], str] | Iterable[tuple[str, str, str]],
        inverse: Mapping[str, str],
        haar: Mapping[str, Fraction | int | str] | None = None,
    ) -> FiniteGroupoid:
        arrows = tuple(sorted(set(arrows)))
        if not arrows:
            raise ValueError("empty groupoid")
        if not isinstance(compose, Mapping):
            compose = {(a, b): c for a, b, c in compose}
        return cls(
            arrows=arrows,
            units=tuple(sorted(set(units))),
            range=dict(range),
            source=dict(source),
            table=dict(compose),
            inverse=dict(inverse),
            haar=_canonical_haar(arrows, haar),
        )

    @cached_property
    def _key(self):
        return (
            self.arrows,
            self.units,
            tuple(sorted(self.range.items())),
            tuple(sorted(self.source.items())),
            tuple(sorted(self.table.items())),
            tuple(sorted(self.inverse.items())),
            tuple(sorted(self.haar.items())),
        )

    def __eq__(self, other):
        if not isinstance(other, FiniteGroupoid):
            return NotImplemented
        return self is other or self._key == other._key

    @cached_property
    def _hash(self) -> int:
        return hash(self._key)

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.arrows)

    def __repr__(self):
        return f"FiniteGroupoid({len(self.arrows)} arrows, {len(self.units)} units)"

    def r(self, a: str) -> str:
        return self.range[a]

    def s(self, a: str) -> str:
        return self.source[a]

    def composable(self, a: str, b: str) -> bool:
        return self.source[a] == self.range[b]

    def mul(self, a: str, b: str) -> str:
        """``a∘b``; KeyError when the pair is not composable."""
        return self.table[a, b]

    def inv(self, a: str) -> str:
        return self.inverse[a]

    @cached_property
    def _range_fibers(self) -> dict[str, tuple[str, ...]]:
        fib: dict[str, list[str]] = {u: [] for u in self.units}
        for a in self.arrows:
            fib.setdefault(self.range[a], []).append(a)
        return {u: tuple(v) for u, v in fib.items()}

    @cached_property
    def _source_fibers(self) -> dict[str, tuple[str, ...]]:
        fib: dict[str, list[str]] = {u: [] for u in self.units}
        for a in self.arrows:
            fib.setdefault(self.source[a], []).append(a)
        return {u: tuple(v) for u, v in fib.items()}

    def range_fiber(self, u: str) -> tuple[str, ...]:
        """Arrows with range ``u``, sorted."""
        return self._range_fibers.get(u, ())

    def source_fiber(self, u: str) -> tuple[str, ...]:
        return self._source_fibers.get(u, ())


def validate_groupoid(g: FiniteGroupoid) -> ValidationReport:
    """Check every groupoid axiom and Haar left invariance.

    Malformed data (unknown identifiers, missing map entries, table entries on
    non-composable pairs) is reported as violations instead of raising.
    """
    v = _Collector()
    arrows = set(g.arrows)

    for u in g.units:
        if u not in arrows:
            v.add("dangling identifier", "units", u)
    for name, mapping in (("range", g.range), ("source", g.source), ("inverse", g.inverse)):
        for a in g.arrows:
            if a not in mapping:
                v.add(f"missing {name}", a)
        for a, b in mapping.items():
            if a not in arrows:
                v.add("dangling identifier", name, a)
            elif b not in arrows:
                v.add("dangling identifier", name, a, b)
    for (a, b), c in g.table.items():
        if a not in arrows or b not in arrows or c not in arrows:
            v.add("dangling identifier", "compose", a, b, c)

    units = set(g.units)
    rng = {a: g.range[a] for a in g.arrows if g.range.get(a) in arrows}
    src = {a: g.source[a] for a in g.arrows if g.source.get(a) in arrows}
    for a in g.arrows:
        for name, m in (("range", rng), ("source", src)):
            if a in m and m[a] not in units:
                v.add(f"{name} not a unit", a, m[a])
    for u in g.units:
        if u in arrows and (rng.get(u) != u or src.get(u) != u):
            v.add("unit fixed by range/source", u)

    def comp(a, b):
        c = g.table.get((a, b))
        return c if c in arrows else None

    have_maps = len(rng) == len(src) == len(arrows)
    if have_maps:
        for a, b in itertools.product(g.arrows, repeat=2):
            composable = src[a] == rng[b]
            defined = (a, b) in g.table
            if composable and not defined:
                v.add("composition missing", a, b)
            elif defined and not composable:
                v.add("composition on non-composable pair", a, b)
            elif defined:
                c = comp(a, b)
                if c is not None and (rng[c] != rng[a] or src[c] != src[b]):
                    v.add("composition range/source", a, b, c)

        for a in g.arrows:
            ra, sa = rng[a], src[a]
            if ra in arrows and comp(ra, a) != a:
                v.add("unit law", ra, a)
            if sa in arrows and comp(a, sa) != a:
                v.add("unit law", a, sa)

        for a, b in itertools.product(g.arrows, repeat=2):
            ab = comp(a, b)
            if ab is None:
                continue
            for c in g.range_fiber(src[b]) if src[b] in units else ():
                bc = comp(b, c)
                if bc is None:
                    continue
                left, right = comp(ab, c), comp(a, bc)
                if left != right:
                    v.add("associativity", a, b, c)

        for a in g.arrows:
            ia = g.inverse.get(a)
            if ia not in arrows:
                continue
            if comp(a, ia) != rng[a] or comp(ia, a) != src[a]:
                v.add("inverse law", a)
            if g.inverse.get(ia) != a:
                v.add("inverse involution", a)

    for a in g.arrows:
        if g.haar.get(a, 1) <= 0:
            v.add("haar positivity", a)
    for (a, b), c in g.table.items():
        if c in arrows and b in arrows and have_maps and src[a] == rng[b]:
            if g.haar.get(c, 1) != g.haar.get(b, 1):
                v.add("haar invariance", a, b)

    return v.report()


def _checked(g: FiniteGroupoid) -> FiniteGroupoid:
    report = validate_groupoid(g)
    if not report.ok:
        raise ValidationError("groupoid", report)
    return g


def group_as_groupoid(table) -> FiniteGroupoid:
    """A group as a one-unit groupoid with counting Haar measure."""
    t = _as_table(table)
    e = t.identity
    return _checked(
        FiniteGroupoid.build(
            arrows=t.elements,
            units=[e],
            range={a: e for a in t.elements},
            source={a: e for a in t.elements},
            compose=dict(t.mul),
            inverse=dict(t.inverse),
        )
    )


def pair_groupoid(points: Iterable[str]) -> FiniteGroupoid:
    """Arrows ``(a,b)`` from b to a; ``(a,b)∘(b,c) = (a,c)``."""
    pts = sorted(set(points))
    if not pts:
        raise ValueError("pair groupoid of the empty set")

    def name(a, b):
        return f"({a},{b})"

    arrows = [name(a, b) for a in pts for b in pts]
    return _checked(
        FiniteGroupoid.build(
            arrows=arrows,
            units=[name(a, a) for a in pts],
            range={name(a, b): name(a, a) for a in pts for b in pts},
            source={name(a, b): name(b, b) for a in pts for b in pts},
            compose={
                (name(a, b), name(b, c)): name(a, c) for a in pts for b in pts for c in pts
            },
            inverse={name(a, b): name(b, a) for a in pts for b in pts},
        )
    )


def transformation_groupoid(
    table, space: Sequence[str], action: Mapping[tuple[str, str], str]
) -> FiniteGroupoid:
    """The semi-direct groupoid of a group acting on a finite set.

    The arrow for ``(g, y)`` goes from ``y`` to ``g·y``; it is named ``y``
    when ``g`` is the identity (so units are the points) and ``"g:y"``
    otherwise.
    """
    t = _as_table(table)
    ys = sorted(set(space))
    if not ys:
        raise ValueError("transformation groupoid over the empty set")
    for g in t.elements:
        for y in ys:
            if action.get((g, y)) not in ys:
                raise GroupTableError("action is not total on the space", (g, y))
    for y in ys:
        if action[t.identity, y] != y:
            raise GroupTableError("identity does not act trivially", (y,))
    for g, h in itertools.product(t.elements, repeat=2):
        for y in ys:
            if action[t.mul[g, h], y] != action[g, action[h, y]]:
                raise GroupTableError("action is not compatible with the product", (g, h, y))

    def name(g, y):
        return y if g == t.identity else f"{g}:{y}"

    names = {(g, y): name(g, y) for g in t.elements for y in ys}
    if len(set(names.values())) != len(names):
        raise ValueError("arrow names collide; rename the group elements or points")

    compose = {}
    for g, h in itertools.product(t.elements, repeat=2):
        for y in ys:
            compose[names[g, action[h, y]], names[h, y]] = names[t.mul[g, h], y]
    return _checked(
        FiniteGroupoid.build(
            arrows=names.values(),
            units=ys,
            range={names[g, y]: action[g, y] for g, y in names},
            source={names[g, y]: y for g, y in names},
            compose=compose,
            inverse={names[g, y]: names[t.inverse[g], action[g, y]] for g, y in names},
        )
    )


def wide_subgroupoid_check(g: FiniteGroupoid, subset: Iterable[str]) -> bool:
    """True iff ``subset`` holds every unit and is closed under ∘ and inverse."""
    sub = set(subset)
    if not sub <= set(g.arrows) or not set(g.units) <= sub:
        return False
    for a in sub:
        if g.inv(a) not in sub:
            return False
        for b in sub:
            if g.composable(a, b) and g.mul(a, b) not in sub:
                return False
    return True


def generated_subgroupoid(g: FiniteGroupoid, gens: Iterable[str]) -> frozenset[str]:
    """Smallest wide subgroupoid containing ``gens``."""
    sub = set(g.units)
    frontier = [a for a in gens if a not in sub]
    while frontier:
        a = frontier.pop()
        if a in sub:
            continue
        sub.add(a)
        new = [g.inv(a)]
        for b in list(sub):
            if g.composable(a, b):
                new.append(g.mul(a, b))
            if g.composable(b, a):
                new.append(g.mul(b, a))
        frontier.extend(c for c in new if c not in sub)
    return frozenset(sub)


def is_principal(g: FiniteGroupoid, subset: Iterable[str] | None = None) -> bool:
    """No non-unit arrow of ``subset`` (default: all arrows) is a loop."""
    units = set(g.units)
    arrows = g.arrows if subset is None else subset
    return all(a in units or g.r(a) != g.s(a) for a in arrows)
