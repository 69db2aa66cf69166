"""Module actions and inner products on C_c(X), and the regular representation.

With ξ, η functions on X, h a function on G and f, g arrows:

    (ξ f)(y)       = Σ_x ξ(x) f[x, y] α(x)
    (h ξ)(x)       = Σ_γ h(γ) ξ(γ⁻¹x) λ(γ)
    ⟨ξ, η⟩[x, y]   = Σ_γ conj(ξ(γ⁻¹x)) η(γ⁻¹y) λ(γ)
    ⟨⟨ξ, η⟩⟩(γ)    = Σ_x ξ(x) conj(η(γ⁻¹x)) α(x)

Every γ sum runs over arrows with range equal to the anchor of the point
being evaluated. Everything is exact except the spectral quantities
(:func:`reduced_norm`, :func:`is_positive`), which use numpy in float64.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import numpy as np

from . import linalg
from .category import Arrow, _same_object, involute
from .groupoid import FiniteGroupoid
from .gspace import MeasuredGSpace, orbit_space
from .scalar import ONE, ZERO, GaussQ

POSITIVITY_SLACK = 1e-9


class SpaceMismatchError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SectionVector:
    """A function on the points of a measured space."""

    space: MeasuredGSpace
    entries: Mapping[str, GaussQ]

    @classmethod
    def build(cls, space: MeasuredGSpace, values: Mapping[str, object] = ()) -> SectionVector:
        values = dict(values)
        unknown = set(values) - set(space.points)
        if unknown:
            raise KeyError(f"unknown points {sorted(unknown)}")
        return cls(space, {x: GaussQ.coerce(values.get(x, ZERO)) for x in space.points})

    @classmethod
    def delta(cls, space: MeasuredGSpace, x: str) -> SectionVector:
        return cls.build(space, {x: ONE})

    def __call__(self, x: str) -> GaussQ:
        return self.entries[x]

    def __eq__(self, other):
        if not isinstance(other, SectionVector):
            return NotImplemented
        return self.space == other.space and dict(self.entries) == dict(other.entries)

    def __repr__(self):
        return "SectionVector({" + ", ".join(f"{x}: {v}" for x, v in self.entries.items() if v) + "})"


@dataclass(frozen=True, eq=False)
class GroupoidFunction:
    """A function on the arrows of a groupoid."""

    groupoid: FiniteGroupoid
    entries: Mapping[str, GaussQ]

    @classmethod
    def build(cls, groupoid: FiniteGroupoid, values: Mapping[str, object] = ()) -> GroupoidFunction:
        values = dict(values)
        unknown = set(values) - set(groupoid.arrows)
        if unknown:
            raise KeyError(f"unknown arrows {sorted(unknown)}")
        return cls(groupoid, {a: GaussQ.coerce(values.get(a, ZERO)) for a in groupoid.arrows})

    @classmethod
    def delta(cls, groupoid: FiniteGroupoid, a: str) -> GroupoidFunction:
        return cls.build(groupoid, {a: ONE})

    def __call__(self, a: str) -> GaussQ:
        return self.entries[a]

    def vector(self) -> list[GaussQ]:
        return [self.entries[a] for a in self.groupoid.arrows]

    def __eq__(self, other):
        if not isinstance(other, GroupoidFunction):
            return NotImplemented
        return self.groupoid == other.groupoid and dict(self.entries) == dict(other.entries)

    def __repr__(self):
        return "GroupoidFunction({" + ", ".join(f"{a}: {v}" for a, v in self.entries.items() if v) + "})"


@dataclass(frozen=True)
class WeightedMatrix:
    """A matrix between weighted sequence spaces; absent entries are zero."""

    rows: tuple[str, ...]
    cols: tuple[str, ...]
    row_weights: Mapping[str, Fraction]
    col_weights: Mapping[str, Fraction]
    entries: Mapping[tuple[str, str], GaussQ]

    def __getitem__(self, key: tuple[str, str]) -> GaussQ:
        return self.entries.get(key, ZERO)

    def __matmul__(self, other: WeightedMatrix) -> WeightedMatrix:
        if self.cols != other.rows:
            raise SpaceMismatchError("inner dimensions differ")
        out: dict[tuple[str, str], GaussQ] = {}
        right: dict[str, list[tuple[str, GaussQ]]] = {}
        for (k, j), v in other.entries.items():
            right.setdefault(k, []).append((j, v))
        for (i, k), a in self.entries.items():
            for j, b in right.get(k, ()):
                out[i, j] = out.get((i, j), ZERO) + a * b
        return WeightedMatrix(
            self.rows, other.cols, self.row_weights, other.col_weights,
            {k: v for k, v in sorted(out.items()) if v},
        )

    def is_zero(self) -> bool:
        return not self.entries

    def to_numpy(self) -> np.ndarray:
        ri = {r: i for i, r in enumerate(self.rows)}
        ci = {c: j for j, c in enumerate(self.cols)}
        m = np.zeros((len(self.rows), len(self.cols)), dtype=complex)
        for (r, c), v in self.entries.items():
            m[ri[r], ci[c]] = complex(v)
        return m

    def unitary_form(self) -> np.ndarray:
        """D_rows^{1/2} M D_cols^{-1/2}: the same operator between unweighted ℓ² spaces."""
        m = self.to_numpy()
        dr = np.sqrt([float(self.row_weights[r]) for r in self.rows])
        dc = np.sqrt([float(self.col_weights[c]) for c in self.cols])
        return dr[:, None] * m / dc[None, :]


def weighted_inner(xi: SectionVector, eta: SectionVector) -> GaussQ:
    """Σ_x conj(ξ(x)) η(x) α(x)."""
    if not _same_object(xi.space, eta.space):
        raise SpaceMismatchError("vectors over different spaces")
    total = ZERO
    for x in xi.space.points:
        a, b = xi.entries[x], eta.entries[x]
        if a and b:
            total = total + a.conjugate() * b * xi.space.w(x)
    return total


def right_action(xi: SectionVector, f: Arrow) -> SectionVector:
    if not _same_object(xi.space, f.dst):
        raise SpaceMismatchError("vector space is not the target of the arrow")
    alpha, beta = f.dst, f.src
    out = {}
    for y in beta.points:
        total = ZERO
        for x in alpha.space.fiber(beta.space.anchor[y]):
            a = xi.entries[x]
            if a:
                v = f(x, y)
                if v:
                    total = total + a * v * alpha.w(x)
        out[y] = total
    return SectionVector(beta, out)


def left_action(h: GroupoidFunction, xi: SectionVector) -> SectionVector:
    g = h.groupoid
    X = xi.space.space
    if X.groupoid != g:
        raise SpaceMismatchError("function and vector over different groupoids")
    out = {}
    for x in X.points:
        total = ZERO
        for gamma in g.range_fiber(X.anchor[x]):
            c = h.entries[gamma]
            if c:
                v = xi.entries[X.act(g.inv(gamma), x)]
                if v:
                    total = total + c * v * g.haar[gamma]
        out[x] = total
    return SectionVector(xi.space, out)


def inner_space(xi: SectionVector, eta: SectionVector) -> Arrow:
    """⟨ξ, η⟩ as an arrow from η's space to ξ's space."""
    alpha, beta = xi.space, eta.space
    if alpha.groupoid != beta.groupoid:
        raise SpaceMismatchError("vectors over different groupoids")
    g = alpha.groupoid
    X, Y = alpha.space, beta.space
    out = {}
    for x, y in orbit_space(X, Y).orbits:
        total = ZERO
        for gamma in g.range_fiber(X.anchor[x]):
            gi = g.inv(gamma)
            a = xi.entries[X.act(gi, x)]
            if a:
                b = eta.entries[Y.act(gi, y)]
                if b:
                    total = total + a.conjugate() * b * g.haar[gamma]
        if total:
            out[x, y] = total
    return Arrow(alpha, beta, out)


def inner_groupoid(xi: SectionVector, eta: SectionVector) -> GroupoidFunction:
    if not _same_object(xi.space, eta.space):
        raise SpaceMismatchError("vectors over different spaces")
    alpha = xi.space
    X = alpha.space
    g = X.groupoid
    out = {}
    for gamma in g.arrows:
        gi = g.inv(gamma)
        total = ZERO
        for x in X.fiber(g.r(gamma)):
            a = xi.entries[x]
            if a:
                b = eta.entries[X.act(gi, x)]
                if b:
                    total = total + a * b.conjugate() * alpha.w(x)
        out[gamma] = total
    return GroupoidFunction(g, out)


def groupoid_convolve(h1: GroupoidFunction, h2: GroupoidFunction) -> GroupoidFunction:
    """(h₁ ∗ h₂)(γ) = Σ_{γ′: r(γ′) = r(γ)} h₁(γ′) h₂(γ′⁻¹γ) λ(γ′)."""
    g = h1.groupoid
    if h2.groupoid != g:
        raise SpaceMismatchError("functions over different groupoids")
    out = {}
    for gamma in g.arrows:
        total = ZERO
        for other in g.range_fiber(g.r(gamma)):
            a = h1.entries[other]
            if a:
                b = h2.entries[g.mul(g.inv(other), gamma)]
                if b:
                    total = total + a * b * g.haar[other]
        out[gamma] = total
    return GroupoidFunction(g, out)


def rep_matrix(f: Arrow) -> WeightedMatrix:
    """Matrix of ξ ↦ ξf in the point bases: entry (y, x) = f[x, y] α(x)."""
    alpha, beta = f.dst, f.src
    entries = {}
    for x, y in f.orbits.pairs:
        v = f(x, y)
        if v:
            entries[y, x] = v * alpha.w(x)
    return WeightedMatrix(
        beta.points, alpha.points, dict(beta.weights), dict(alpha.weights),
        dict(sorted(entries.items())),
    )


def operator_norm(m: WeightedMatrix) -> float:
    """Largest singular value between the weighted ℓ² spaces."""
    b = m.unitary_form()
    if b.size == 0:
        return 0.0
    gram = b.conj().T @ b
    top = float(np.linalg.eigvalsh(gram)[-1])
    return float(np.sqrt(max(top, 0.0)))


def reduced_norm(f: Arrow) -> float:
    return operator_norm(rep_matrix(f))


def is_positive(f: Arrow) -> bool:
    """Positive semidefinite in the regular representation (requires f* = f)."""
    if not _same_object(f.dst, f.src) or involute(f) != f:
        return False
    b = rep_matrix(f).unitary_form()
    b = (b + b.conj().T) / 2
    return bool(np.linalg.eigvalsh(b)[0] >= -POSITIVITY_SLACK)


def _coordinates(f: Arrow, basis) -> list[GaussQ]:
    return [f.values.get(o, ZERO) for o in basis]


def fullness_rank(alpha: MeasuredGSpace) -> tuple[int, int]:
    """(rank of span{⟨δ_x, δ_y⟩}, dimension of the algebra on (X*X)/G)."""
    basis = orbit_space(alpha.space, alpha.space).orbits
    deltas = {x: SectionVector.delta(alpha, x) for x in alpha.points}
    rows = [
        _coordinates(inner_space(deltas[x], deltas[y]), basis)
        for x, y in orbit_space(alpha.space, alpha.space).pairs
    ]
    return linalg.rank(rows, len(basis)), len(basis)


def ideal_check(alpha: MeasuredGSpace) -> bool:
    """Whether span{⟨⟨δ_x, δ_y⟩⟩} is a two-sided ideal of the groupoid algebra."""
    g = alpha.groupoid
    deltas = {x: SectionVector.delta(alpha, x) for x in alpha.points}
    span = [
        inner_groupoid(deltas[x], deltas[y]).vector()
        for x in alpha.points for y in alpha.points
    ]
    echelon, pivots = linalg.row_echelon(span, len(g.arrows))
    basis = [
        GroupoidFunction(g, dict(zip(g.arrows, row))) for row in echelon[: len(pivots)]
    ]
    products = []
    for a in g.arrows:
        d = GroupoidFunction.delta(g, a)
        for b in basis:
            products.append(groupoid_convolve(d, b).vector())
            products.append(groupoid_convolve(b, d).vector())
    return linalg.rank(echelon[: len(pivots)] + products, len(g.arrows)) == len(pivots)
