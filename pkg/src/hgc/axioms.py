"""Randomized checks of the algebraic identities and of the norm inequalities."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterator

from .category import convolve, i_norm, involute
from .gspace import MeasuredGSpace
from .randomized import random_arrow, random_groupoid_function, random_instance, random_section
from .representations import (
    groupoid_convolve,
    inner_groupoid,
    inner_space,
    is_positive,
    left_action,
    reduced_norm,
    right_action,
    weighted_inner,
)

NORM_SLACK = 1e-9
CSTAR_RTOL = 1e-6


@dataclass(frozen=True)
class Outcome:
    trial: int
    name: str
    passed: bool
    detail: str = ""


def _checks(rng: random.Random, spaces: list[MeasuredGSpace]) -> dict[str, Callable[[], tuple[bool, str]]]:
    a, b, c = spaces
    f = random_arrow(rng, a, b)
    g = random_arrow(rng, b, c)
    k = random_arrow(rng, c, a)
    xi, eta, zeta = (random_section(rng, a) for _ in range(3))
    nu = random_section(rng, b)
    h1, h2 = random_groupoid_function(rng, a.groupoid), random_groupoid_function(rng, a.groupoid)

    def associativity():
        return convolve(convolve(f, g), k) == convolve(f, convolve(g, k)), ""

    def anti_multiplicativity():
        return involute(convolve(f, g)) == convolve(involute(g), involute(f)), ""

    def module_identity():
        return inner_space(xi, right_action(eta, f)) == convolve(inner_space(xi, eta), f), ""

    def linking_identity():
        return left_action(inner_groupoid(xi, eta), zeta) == right_action(xi, inner_space(eta, zeta)), ""

    def adjoint_identity():
        return weighted_inner(right_action(xi, f), nu) == weighted_inner(xi, right_action(nu, involute(f))), ""

    def groupoid_module_law():
        return left_action(h1, left_action(h2, xi)) == left_action(groupoid_convolve(h1, h2), xi), ""

    def norm_bound():
        r, i = reduced_norm(f), i_norm(f)
        return r <= i + NORM_SLACK, f"reduced={r:.12g} i={i:.12g}"

    def cstar_identity():
        n = reduced_norm(f)
        m = reduced_norm(convolve(involute(f), f))
        return abs(m - n * n) <= CSTAR_RTOL * max(1.0, n * n), f"|f*f|={m:.12g} |f|^2={n * n:.12g}"

    def involution_isometry():
        d = abs(reduced_norm(involute(f)) - reduced_norm(f))
        return d <= NORM_SLACK, f"diff={d:.3g}"

    def inner_positivity():
        return is_positive(inner_space(xi, xi)), ""

    return {
        "associativity": associativity,
        "anti-multiplicativity": anti_multiplicativity,
        "module identity": module_identity,
        "linking identity": linking_identity,
        "adjoint identity": adjoint_identity,
        "groupoid module law": groupoid_module_law,
        "norm bound": norm_bound,
        "C*-identity": cstar_identity,
        "involution isometry": involution_isometry,
        "inner positivity": inner_positivity,
    }


def run_trials(trials: int, seed: int, spaces: list[MeasuredGSpace] | None = None) -> Iterator[Outcome]:
    """Yield one Outcome per (trial, check); deterministic in ``(trials, seed)``.

    With ``spaces`` given (one to three objects over one groupoid) every trial
    reuses them; otherwise each trial draws a fresh random instance.
    """
    rng = random.Random(seed)
    for t in range(trials):
        if spaces is None:
            _, objs = random_instance(rng)
        else:
            objs = (list(spaces) * 3)[:3]
        for name, check in _checks(rng, objs).items():
            passed, detail = check()
            yield Outcome(t, name, bool(passed), detail)
