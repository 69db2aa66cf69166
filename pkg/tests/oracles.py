"""Independent reference computations.

Nothing here calls the library's orbit, convolution or norm code; inputs
are read straight off the raw tables.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def reachability_orbits(groupoid, left, right) -> list[frozenset]:
    """Orbits of X*Y by breadth-first closure, one search per unvisited pair."""
    pairs = [
        (x, y) for x in left.points for y in right.points
        if left.anchor[x] == right.anchor[y]
    ]
    seen = set()
    out = []
    for start in pairs:
        if start in seen:
            continue
        orbit = {start}
        queue = [start]
        while queue:
            x, y = queue.pop()
            for a in groupoid.arrows:
                if groupoid.source[a] == left.anchor[x]:
                    nxt = (left.action[a, x], right.action[a, y])
                    if nxt not in orbit:
                        orbit.add(nxt)
                        queue.append(nxt)
        seen |= orbit
        out.append(frozenset(orbit))
    return out


def brute_structure_constants(measured) -> dict[tuple[frozenset, frozenset, frozenset], Fraction]:
    """Sum the convolution over every fibered triple (x, y, z).

    Returns constants keyed by orbits (as frozensets of pairs) and checks on
    the way that the value at (x, z) does not depend on the member chosen.
    """
    X = measured.space
    g = X.groupoid
    orbits = reachability_orbits(g, X, X)
    orbit_of = {p: o for o in orbits for p in o}
    consts: dict = {}
    for target in orbits:
        per_member = []
        for x, z in sorted(target):
            acc: dict = {}
            for y in X.points:
                if X.anchor[y] != X.anchor[x]:
                    continue
                key = (orbit_of[x, y], orbit_of[y, z])
                acc[key] = acc.get(key, Fraction(0)) + measured.weights[y]
            per_member.append(acc)
        assert all(m == per_member[0] for m in per_member), "value depends on representative"
        for (a, b), v in per_member[0].items():
            consts[a, b, target] = v
    return consts


def group_algebra_double_coset_constants(table, subgroup) -> dict[tuple[frozenset, frozenset, frozenset], Fraction]:
    """Products of double-coset indicators in the group algebra, divided by |K|.

    Keys are double cosets as frozensets of group elements.
    """
    K = frozenset(subgroup)
    els = table.elements
    mul, inv = table.mul, table.inverse
    doubles = {frozenset(mul[mul[k1, g], k2] for k1 in K for k2 in K) for g in els}

    def conv(a: dict, b: dict) -> dict:
        out = {g: Fraction(0) for g in els}
        for h, av in a.items():
            for g in els:
                out[g] += av * b.get(mul[inv[h], g], 0)
        return out

    consts = {}
    for d1 in doubles:
        for d2 in doubles:
            prod = conv({g: Fraction(1) for g in d1}, {g: Fraction(1) for g in d2})
            for d3 in doubles:
                vals = {prod[g] for g in d3}
                assert len(vals) == 1, "product is not K-biinvariant"
                v = vals.pop() / len(K)
                if v:
                    consts[d1, d2, d3] = v
    return consts


def power_iteration_norm(b: np.ndarray, iters: int = 5000, tol: float = 1e-13) -> float:
    """Largest singular value of ``b`` by power iteration on bᴴb."""
    if not b.any():
        return 0.0
    rng = np.random.default_rng(0)
    v = rng.standard_normal(b.shape[1]) + 1j * rng.standard_normal(b.shape[1])
    v /= np.linalg.norm(v)
    sigma = 0.0
    for _ in range(iters):
        w = b.conj().T @ (b @ v)
        n = np.linalg.norm(w)
        if n == 0:
            return 0.0
        v = w / n
        new = float(np.sqrt(n))
        if abs(new - sigma) <= tol * max(new, 1.0):
            sigma = new
            break
        sigma = new
    return float(np.linalg.norm(b @ v))
