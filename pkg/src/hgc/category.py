"""The *-category of finitely supported functions on (X*Y)/G.

An :class:`Arrow` from (Y, β) to (X, α) is a function on the orbits of the
fibered product X*Y, stored sparsely on canonical representatives.
Composition is the β-weighted convolution

    (f ∗ g)[x, z] = Σ_{y : r(y) = r(x)} f[x, y] g[y, z] β(y)

and the involution is ``f*[y, x] = conj(f[x, y])``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Mapping

from . import linalg
from .gspace import MeasuredGSpace, OrbitSpace, orbit_space
from .scalar import ONE, ZERO, GaussQ

Pair = tuple[str, str]


class NonComposableError(ValueError):
    """The middle objects of a product (or the objects of a sum) differ."""


@dataclass(frozen=True, eq=False)
class Arrow:
    dst: MeasuredGSpace
    src: MeasuredGSpace
    values: Mapping[Pair, GaussQ]

    @classmethod
    def build(cls, dst: MeasuredGSpace, src: MeasuredGSpace, values: Mapping[Pair, object] = ()):
        """Normalize keys to canonical representatives and drop zeros.

        Keys may be any member of an orbit; two keys naming the same orbit
        must carry the same value.
        """
        if dst.groupoid != src.groupoid:
            raise ValueError("objects over different groupoids")
        orbits = orbit_space(dst.space, src.space)
        out: dict[Pair, GaussQ] = {}
        for pair, value in dict(values).items():
            pair = tuple(pair)
            if pair not in orbits:
                raise KeyError(f"{pair} is not a fibered pair of X*Y")
            rep = orbits.canonical(*pair)
            value = GaussQ.coerce(value)
            if rep in out and out[rep] != value:
                raise ValueError(f"conflicting values on the orbit of {rep}")
            out[rep] = value
        return cls(dst, src, {k: v for k, v in sorted(out.items()) if v})

    @classmethod
    def zero(cls, dst: MeasuredGSpace, src: MeasuredGSpace) -> Arrow:
        return cls.build(dst, src)

    @classmethod
    def delta(cls, dst: MeasuredGSpace, src: MeasuredGSpace, pair: Pair, value=ONE) -> Arrow:
        """Indicator of the orbit containing ``pair``."""
        return cls.build(dst, src, {pair: value})

    @classmethod
    def from_function(cls, dst, src, fn: Callable[[str, str], object]) -> Arrow:
        orbits = orbit_space(dst.space, src.space)
        return cls.build(dst, src, {rep: fn(*rep) for rep in orbits.orbits})

    @cached_property
    def orbits(self) -> OrbitSpace:
        return orbit_space(self.dst.space, self.src.space)

    def __call__(self, x: str, y: str) -> GaussQ:
        rep = self.orbits.orbit_of.get((x, y))
        if rep is None:
            return ZERO
        return self.values.get(rep, ZERO)

    def is_real(self) -> bool:
        return all(v.is_real for v in self.values.values())

    def __eq__(self, other):
        if not isinstance(other, Arrow):
            return NotImplemented
        return self.dst == other.dst and self.src == other.src and dict(self.values) == dict(other.values)

    def __repr__(self):
        body = ", ".join(f"[{x}|{y}]: {v}" for (x, y), v in self.values.items())
        return f"Arrow({{{body}}})"

    # linear structure

    def __add__(self, other: Arrow) -> Arrow:
        return linear_combine(ONE, self, ONE, other)

    def __sub__(self, other: Arrow) -> Arrow:
        return linear_combine(ONE, self, -ONE, other)

    def __neg__(self) -> Arrow:
        return scale(-ONE, self)

    def __rmul__(self, c) -> Arrow:
        return scale(c, self)

    def __matmul__(self, other: Arrow) -> Arrow:
        return convolve(self, other)

    @property
    def star(self) -> Arrow:
        return involute(self)


def _same_object(a: MeasuredGSpace, b: MeasuredGSpace) -> bool:
    return a is b or a == b


def scale(c, f: Arrow) -> Arrow:
    c = GaussQ.coerce(c)
    return Arrow(f.dst, f.src, {k: c * v for k, v in f.values.items() if c * v})


def linear_combine(c1, f1: Arrow, c2, f2: Arrow) -> Arrow:
    if not (_same_object(f1.dst, f2.dst) and _same_object(f1.src, f2.src)):
        raise NonComposableError("linear combination of arrows between different objects")
    c1, c2 = GaussQ.coerce(c1), GaussQ.coerce(c2)
    out = {}
    for k in set(f1.values) | set(f2.values):
        v = c1 * f1.values.get(k, ZERO) + c2 * f2.values.get(k, ZERO)
        if v:
            out[k] = v
    return Arrow(f1.dst, f1.src, dict(sorted(out.items())))


def convolve_at(f: Arrow, g: Arrow, x: str, z: str) -> GaussQ:
    """The convolution sum evaluated at one (not necessarily canonical) pair."""
    beta = f.src
    middle = beta.space
    total = ZERO
    for y in middle.fiber(f.dst.space.anchor[x]):
        a = f(x, y)
        if not a:
            continue
        b = g(y, z)
        if b:
            total = total + a * b * beta.w(y)
    return total


def convolve(f: Arrow, g: Arrow) -> Arrow:
    if not _same_object(f.src, g.dst):
        raise NonComposableError("non-composable arrows")
    out = {}
    for x, z in orbit_space(f.dst.space, g.src.space).orbits:
        v = convolve_at(f, g, x, z)
        if v:
            out[x, z] = v
    return Arrow(f.dst, g.src, out)


def involute(f: Arrow) -> Arrow:
    back = orbit_space(f.src.space, f.dst.space)
    out = {back.canonical(y, x): v.conjugate() for (x, y), v in f.values.items()}
    return Arrow(f.src, f.dst, dict(sorted(out.items())))


def fiber_sum(f: Arrow, x: str) -> GaussQ:
    """Σ_y f[x, y] β(y) over the anchor fiber of ``x``: the induced system applied to f."""
    X = f.dst.space
    if x not in X.anchor:
        raise KeyError(f"unknown point {x!r}")
    total = ZERO
    for y in f.src.space.fiber(X.anchor[x]):
        v = f(x, y)
        if v:
            total = total + v * f.src.w(y)
    return total


def _abs_sum(terms) -> float:
    """Σ |v|·w, exact for real values."""
    terms = list(terms)
    if all(v.is_real for v, _ in terms):
        return float(sum((abs(v.re) * w for v, w in terms), Fraction(0)))
    return sum(abs(v) * float(w) for v, w in terms)


def i_norm(f: Arrow) -> float:
    """max(sup_x Σ_y |f[x,y]| β(y), sup_y Σ_x |f[x,y]| α(x))."""
    X, Y = f.dst.space, f.src.space
    rows = [
        _abs_sum((f(x, y), f.src.w(y)) for y in Y.fiber(X.anchor[x]))
        for x in X.points
    ]
    cols = [
        _abs_sum((f(x, y), f.dst.w(x)) for x in X.fiber(Y.anchor[y]))
        for y in Y.points
    ]
    return max(rows + cols + [0.0])


def structure_tensor(alpha: MeasuredGSpace):
    """Orbit basis of (X*X)/G and the nonzero constants c with δ_O ∗ δ_O′ = Σ c δ_O″.

    Returns ``(basis, constants)`` where ``constants[O, O′, O″]`` is a
    Fraction. Each constant is the convolution sum at the representative of
    O″, so one pass over (x, y, z) with (x, z) canonical suffices.
    """
    X = alpha.space
    orbits = orbit_space(X, X)
    constants: dict[tuple[Pair, Pair, Pair], Fraction] = {}
    for x, z in orbits.orbits:
        for y in X.fiber(X.anchor[x]):
            key = (orbits.canonical(x, y), orbits.canonical(y, z), (x, z))
            constants[key] = constants.get(key, Fraction(0)) + alpha.w(y)
    return orbits.orbits, dict(sorted(constants.items()))


def find_unit(alpha: MeasuredGSpace) -> Arrow | None:
    """The two-sided unit of the algebra on (X*X)/G, or None.

    Solves e ∗ δ_O = δ_O exactly for all basis orbits; a left unit that is
    also a right unit is the only candidate, since any two-sided unit equals
    every left unit.
    """
    basis, t = structure_tensor(alpha)
    n = len(basis)
    index = {o: i for i, o in enumerate(basis)}
    # unknown e = Σ_i c_i δ_i; equation (j, k): Σ_i c_i t[i, j, k] = [j == k]
    rows = [[Fraction(0)] * n for _ in range(n * n)]
    for (a, b, c), v in t.items():
        rows[index[b] * n + index[c]][index[a]] = v
    rhs = [Fraction(int(j == k)) for j in range(n) for k in range(n)]
    sol = linalg.solve(rows, rhs, zero=Fraction(0))
    if sol is None:
        return None
    e = Arrow.build(alpha, alpha, {basis[i]: c for i, c in enumerate(sol)})
    for o in basis:
        d = Arrow.delta(alpha, alpha, o)
        if convolve(d, e) != d:
            return None
    return e
