"""Acceptance criteria, one test each; every test records a PASS/FAIL line."""

import random
import subprocess
import sys
import time
from contextlib import contextmanager

from checks import free_case_matches, matches_oracles
from conftest import ACCEPTANCE_LINES
from hgc.category import Arrow, convolve, find_unit, i_norm, involute
from hgc.examples import SHIPPED, build_named, s3_transposition, swap_groupoid
from hgc.groupoid import cyclic_group, group_as_groupoid, symmetric_group
from hgc.hypergroupoid import build_hypergroupoid
from hgc.randomized import random_arrow, random_groupoid_function, random_instance, random_section
from hgc.representations import (
    fullness_rank,
    groupoid_convolve,
    ideal_check,
    inner_groupoid,
    inner_space,
    is_positive,
    left_action,
    reduced_norm,
    right_action,
    weighted_inner,
)

TIME_LIMIT = 5.0
N_RANDOM = 200

@contextmanager
def criterion(number, title):
    """Times the block and records one line; the block sets ``state['ok']`` and ``state['detail']``."""
    state = {"ok": False, "detail": ""}
    start = time.perf_counter()
    try:
        yield state
    finally:
        elapsed = time.perf_counter() - start
        ok = state["ok"] and elapsed < TIME_LIMIT
        detail = state["detail"] + ("" if elapsed < TIME_LIMIT else " (over time limit)")
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} [{elapsed:.2f}s] {detail}".rstrip()
        ACCEPTANCE_LINES.append(line)
        print(line)
        state["ok"] = ok

def test_criterion_1_s3_structure_constants():
    with criterion(1, "S3 double-coset structure constants") as st:
        table, K = symmetric_group(3), s3_transposition()
        ex = build_named("s3-dcoset")
        t = build_hypergroupoid(ex.space)
        E, A = t.orbits
        values = t.c(A, A, E) == 2 and t.c(A, A, A) == 1
        unit = Arrow.delta(ex.space, ex.space, E)
        units = all(
            convolve(unit, d) == d and convolve(d, unit) == d
            for d in (Arrow.delta(ex.space, ex.space, o) for o in t.orbits)
        )
        brute, algebra = matches_oracles(ex, table, K)
        st["ok"] = values and units and brute and algebra
        st["detail"] = f"c[a][a][e]={t.c(A, A, E)} c[a][a][a]={t.c(A, A, A)} brute={brute} group-algebra={algebra}"
    assert st["ok"], st["detail"]

def test_criterion_2_free_case():
    with criterion(2, "free-case equivalence for Z/2, S3, Z/2 swap") as st:
        results = {
            "Z/2": free_case_matches(group_as_groupoid(cyclic_group(2))),
            "S3": free_case_matches(group_as_groupoid(symmetric_group(3))),
            "swap": free_case_matches(swap_groupoid()),
        }
        st["ok"] = all(ok for ok, _ in results.values())
        st["detail"] = ", ".join(f"{k}: {d}" for k, (_, d) in results.items())
    assert st["ok"], st["detail"]

def test_criterion_3_star_category_laws():
    with criterion(3, "associativity and anti-multiplicativity") as st:
        rng = random.Random(3)
        bad = 0
        for _ in range(N_RANDOM):
            _, (a, b, c) = random_instance(rng)
            f, g, h = random_arrow(rng, a, b), random_arrow(rng, b, c), random_arrow(rng, c, a)
            bad += convolve(convolve(f, g), h) != convolve(f, convolve(g, h))
            bad += involute(convolve(f, g)) != convolve(involute(g), involute(f))
        st["ok"] = bad == 0
        st["detail"] = f"{N_RANDOM} triples, {bad} failures"
    assert st["ok"], st["detail"]

def test_criterion_4_module_identities():
    with criterion(4, "C*-module identities") as st:
        rng = random.Random(4)
        counts = {"module": 0, "linking": 0, "adjoint": 0, "groupoid module": 0}
        for _ in range(N_RANDOM):
            _, (a, b) = random_instance(rng, 2)
            f = random_arrow(rng, a, b)
            xi, eta, zeta = (random_section(rng, a) for _ in range(3))
            nu = random_section(rng, b)
            counts["module"] += inner_space(xi, right_action(eta, f)) != convolve(inner_space(xi, eta), f)
            counts["linking"] += (
                left_action(inner_groupoid(xi, eta), zeta) != right_action(xi, inner_space(eta, zeta))
            )
            counts["adjoint"] += (
                weighted_inner(right_action(xi, f), nu) != weighted_inner(xi, right_action(nu, involute(f)))
            )
            h1, h2 = random_groupoid_function(rng, a.groupoid), random_groupoid_function(rng, a.groupoid)
            counts["groupoid module"] += (
                left_action(h1, left_action(h2, xi)) != left_action(groupoid_convolve(h1, h2), xi)
            )
        st["ok"] = not any(counts.values())
        st["detail"] = f"{N_RANDOM} instances, failures {counts}"
    assert st["ok"], st["detail"]

def test_criterion_5_norms():
    with criterion(5, "norm bound, C*-identity, isometry, fixture norms") as st:
        rng = random.Random(5)
        worst = {"bound": float("-inf"), "cstar": 0.0, "isometry": 0.0}
        ok = True
        for _ in range(N_RANDOM):
            _, (a, b) = random_instance(rng, 2)
            f = random_arrow(rng, a, b)
            r = reduced_norm(f)
            gap = r - i_norm(f)
            cstar = abs(reduced_norm(convolve(involute(f), f)) - r * r) / max(1.0, r * r)
            iso = abs(reduced_norm(involute(f)) - r)
            worst["bound"] = max(worst["bound"], gap)
            worst["cstar"] = max(worst["cstar"], cstar)
            worst["isometry"] = max(worst["isometry"], iso)
            ok &= gap <= 1e-9 and cstar <= 1e-6 and iso <= 1e-9
        s3 = build_named("s3-dcoset").space
        d = Arrow.delta(s3, s3, ("(12)", "(123)"))
        fixture = abs(i_norm(d) - 2) <= 1e-9 and abs(reduced_norm(d) - 2) <= 1e-9
        st["ok"] = ok and fixture
        st["detail"] = (
            f"max(reduced-i)={worst['bound']:.2e} max C* rel err={worst['cstar']:.2e} "
            f"max isometry err={worst['isometry']:.2e} fixture i={i_norm(d):.9f} reduced={reduced_norm(d):.9f}"
        )
    assert st["ok"], st["detail"]

def test_criterion_6_positivity():
    with criterion(6, "positivity of inner products, -unit not positive") as st:
        rng = random.Random(6)
        positive = negated_unit_rejected = 0
        for _ in range(N_RANDOM):
            _, (a,) = random_instance(rng, 1)
            xi = random_section(rng, a)
            positive += is_positive(inner_space(xi, xi))
            e = find_unit(a)
            negated_unit_rejected += e is not None and not is_positive(-e)
        st["ok"] = positive == N_RANDOM and negated_unit_rejected == N_RANDOM
        st["detail"] = f"{positive}/{N_RANDOM} positive, -unit rejected {negated_unit_rejected}/{N_RANDOM}"
    assert st["ok"], st["detail"]

def test_criterion_7_fullness_and_ideal():
    with criterion(7, "fullness and ideal on shipped examples") as st:
        rows = []
        for name in SHIPPED:
            alpha = build_named(name).space
            rank, dim = fullness_rank(alpha)
            rows.append((name, rank, dim, ideal_check(alpha)))
        st["ok"] = all(r == d and ideal for _, r, d, ideal in rows)
        st["detail"] = ", ".join(f"{n}: {r}/{d} ideal={i}" for n, r, d, i in rows)
    assert st["ok"], st["detail"]

def test_criterion_8_determinism(tmp_path):
    with criterion(8, "byte-identical hyper and axioms output") as st:
        base = [sys.executable, "-m", "hgc"]
        subprocess.run(base + ["example", "s3-dcoset", "--out", str(tmp_path)], check=True, capture_output=True)
        hyper = base + ["hyper", "--groupoid", str(tmp_path / "groupoid.json"), "--space", str(tmp_path / "space.json")]
        axioms = base + ["axioms", "--trials", "20", "--seed", "42"]
        outs = {}
        for label, cmd in (("hyper", hyper), ("axioms", axioms)):
            runs = [subprocess.run(cmd, capture_output=True) for _ in range(2)]
            outs[label] = (
                runs[0].returncode == runs[1].returncode == 0
                and runs[0].stdout == runs[1].stdout
                and len(runs[0].stdout) > 0
            )
        st["ok"] = all(outs.values())
        st["detail"] = ", ".join(f"{k}: {'identical' if v else 'differs'}" for k, v in outs.items())
    assert st["ok"], st["detail"]
