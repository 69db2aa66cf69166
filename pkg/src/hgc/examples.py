"""Builders for homogeneous spaces G/K, over groups and over groupoids.

Coset labels are the least member (in ``str`` order) of each coset.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Iterable

from .groupoid import (
    FiniteGroupoid,
    GroupTable,
    GroupTableError,
    _as_table,
    cyclic_group,
    group_as_groupoid,
    symmetric_group,
    transformation_groupoid,
    wide_subgroupoid_check,
)
from .gspace import FiniteGSpace, MeasuredGSpace, checked_measure, orbit_space

SHIPPED = ("point", "z2-free", "z2-swap", "s3-dcoset", "z4-normal")


@dataclass(frozen=True)
class NamedExample:
    name: str
    groupoid: FiniteGroupoid
    space: MeasuredGSpace
    expected: dict | None = None


def _double_cosets(t: GroupTable, sub: frozenset[str]) -> set[frozenset[str]]:
    return {
        frozenset(t.mul[t.mul[k1, g], k2] for k1 in sub for k2 in sub) for g in t.elements
    }


def double_coset_space(table, subgroup: Iterable[str], name: str = "coset-space") -> NamedExample:
    """X = G/K with left translation and counting weights."""
    t = _as_table(table)
    sub = frozenset(subgroup)
    witness = t.subgroup_witness(sub)
    if witness is not None:
        raise GroupTableError("not a subgroup", witness)
    g = group_as_groupoid(t)
    cosets = {a: frozenset(t.mul[a, k] for k in sub) for a in t.elements}
    label = {a: min(c) for a, c in cosets.items()}
    points = sorted(set(label.values()))
    action = {(a, p): label[t.mul[a, p]] for a in t.elements for p in points}
    space = FiniteGSpace.build(g, points, {p: t.identity for p in points}, action)
    alpha = checked_measure(MeasuredGSpace.counting(space))
    n_orbits = len(orbit_space(space, space))
    n_double = len(_double_cosets(t, sub))
    if n_orbits != n_double:
        raise AssertionError(f"{n_orbits} orbits but {n_double} double cosets")
    return NamedExample(name, g, alpha)


def hecke_pair(table, subgroup: Iterable[str], name: str = "coset-space") -> NamedExample:
    """Coset space Γ/Γ₀ of a finite pair, every point weighted 1.

    For finite Γ every subgroup is almost normal, so this is the double coset
    construction; its algebra is the Hecke algebra of the pair.
    """
    return double_coset_space(_as_table(table), subgroup, name=name)


def subgroupoid_quotient(g: FiniteGroupoid, subset: Iterable[str], name: str = "quotient") -> NamedExample:
    """X = G/K for a wide subgroupoid K: classes γK, anchored by the range map."""
    sub = frozenset(subset)
    if not wide_subgroupoid_check(g, sub):
        raise ValueError("not a wide subgroupoid")
    label = {}
    for a in g.arrows:
        cls = {g.mul(a, k) for k in sub if g.composable(a, k)}
        label[a] = min(cls)
    points = sorted(set(label.values()))
    anchor = {p: g.r(p) for p in points}
    action = {}
    for a in g.arrows:
        for p in points:
            if g.s(a) == anchor[p]:
                action[a, p] = label[g.mul(a, p)]
    space = FiniteGSpace.build(g, points, anchor, action)
    return NamedExample(name, g, checked_measure(MeasuredGSpace.counting(space)))


# --------------------------------------------------------------------------
# shipped examples


def swap_groupoid() -> FiniteGroupoid:
    """Z/2 acting on {a, b} by the swap."""
    t = cyclic_group(2)
    action = {("0", "a"): "a", ("0", "b"): "b", ("1", "a"): "b", ("1", "b"): "a"}
    return transformation_groupoid(t, ["a", "b"], action)


def s3_transposition() -> frozenset[str]:
    return frozenset({"e", "(12)"})


def build_named(name: str) -> NamedExample:
    """Live construction of a shipped example (no fixture attached)."""
    if name == "point":
        ex = double_coset_space(cyclic_group(1), {"0"})
    elif name == "z2-free":
        ex = double_coset_space(cyclic_group(2), {"0"})
    elif name == "z2-swap":
        g = swap_groupoid()
        ex = subgroupoid_quotient(g, g.units)
    elif name == "s3-dcoset":
        ex = double_coset_space(symmetric_group(3), s3_transposition())
    elif name == "z4-normal":
        ex = hecke_pair(cyclic_group(4), {"0", "2"})
    else:
        raise KeyError(f"unknown example {name!r}; shipped: {', '.join(SHIPPED)}")
    return NamedExample(name, ex.groupoid, ex.space)


def load_fixture(name: str) -> dict:
    text = resources.files("hgc.fixtures").joinpath(f"{name}.json").read_text(encoding="utf-8")
    return json.loads(text)


def named_example(name: str) -> NamedExample:
    ex = build_named(name)
    return NamedExample(name, ex.groupoid, ex.space, load_fixture(name))
