"""Comparisons shared by the module tests and the acceptance suite."""

from __future__ import annotations

from hgc.gspace import MeasuredGSpace, orbit_space, self_identification, translation_space
from hgc.hypergroupoid import build_hypergroupoid, is_groupoid_like

from oracles import brute_structure_constants, group_algebra_double_coset_constants


def table_by_members(t) -> dict:
    """Table constants re-keyed by orbits as frozensets of pairs."""
    X = t.base.space
    members = {rep: frozenset(m) for rep, m in orbit_space(X, X).members.items()}
    return {(members[a], members[b], members[c]): v for (a, b, c), v in t.constants.items()}


def double_coset_of(table, subgroup, pair) -> frozenset:
    """Orbit of (xK, yK) as the double coset K x⁻¹y K."""
    x, y = pair
    g = table.mul[table.inverse[x], y]
    return frozenset(table.mul[table.mul[k1, g], k2] for k1 in subgroup for k2 in subgroup)


def matches_oracles(example, table, subgroup) -> tuple[bool, bool]:
    """(agrees with brute force, agrees with the group-algebra product)."""
    t = build_hypergroupoid(example.space)
    ours = table_by_members(t)
    brute = brute_structure_constants(example.space)
    dc = {
        tuple(double_coset_of(table, subgroup, rep) for rep in key): v
        for key, v in t.constants.items()
    }
    algebra = group_algebra_double_coset_constants(table, subgroup)
    return ours == brute, dc == algebra


def free_case_matches(g) -> tuple[bool, str]:
    """X = G by left translation: tensor is the composition table under [γ, x] ↦ γ⁻¹x."""
    t = build_hypergroupoid(MeasuredGSpace.counting(translation_space(g)))
    if not all(v in (0, 1) for v in t.constants.values()):
        return False, "non 0/1 constant"
    if not is_groupoid_like(t):
        return False, "not groupoid-like"
    point = self_identification(t.base.space).to_point
    if sorted(point.values()) != sorted(g.arrows):
        return False, "self identification not a bijection"
    expected = {}
    for a in t.orbits:
        for b in t.orbits:
            p, q = point[a], point[b]
            if g.composable(p, q):
                expected[a, b] = g.mul(p, q)
    got = {(a, b): point[c] for (a, b, c) in t.constants}
    if got != expected:
        return False, "tensor differs from composition table"
    return True, f"{len(t.orbits)} orbits"
