"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines as they are
produced; they are also collected into a summary section at the end of any
pytest run, and ``python tests/test_acceptance.py`` prints them standalone.
"""

import random
import sys
import time
from collections import Counter
from pathlib import Path

import numpy as np
import pytest
from scipy.stats import chisquare

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES  # noqa: E402
from oracles import apply_pair, class_key, closure, core_ints, cyclic_words, reduced_words, to_ints, to_str  # noqa: E402

from freeaut.automorphisms import Relabeling, enumerate_automorphisms, length_change, whitehead_graph  # noqa: E402
from freeaut.classify import are_aut_equivalent, default_epsilon, frequency_criterion, is_strictly_minimal  # noqa: E402
from freeaut.experiments import ExperimentConfig, genericity_experiment, orbit_growth_experiment  # noqa: E402
from freeaut.onerelator import classify_relator, count_relator_classes, isomorphic_generic  # noqa: E402
from freeaut.sampling import SamplerConfig, rate_function, sample_batch, sample_cyclically_reduced  # noqa: E402
from freeaut.words import count_words, free_reduce, inverse, is_conjugate, rotate  # noqa: E402

SEED = 20261015


def report(number: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def test_criterion_01_counting():
    start = time.perf_counter()
    ok = count_words(3, 2, "reduced") == 36 and count_words(2, 2, "ball") == 17
    for k in (2, 3):
        ball = 0
        for n in range(9):
            reduced = reduced_words(n, k)
            ball += len(reduced)
            cyclic = sum(1 for w in reduced if n <= 1 or w[0] != -w[-1])
            ok &= count_words(n, k, "reduced") == len(reduced)
            ok &= count_words(n, k, "ball") == ball
            ok &= count_words(n, k, "cyclic") == cyclic
    elapsed = time.perf_counter() - start
    ok &= elapsed < 60
    report(1, ok, f"counts exact for n<=8, k in {{2,3}}, all modes ({elapsed:.1f}s < 60s)")
    assert ok


def test_criterion_02_length_change():
    rng = random.Random(SEED)
    bad = 0
    for i in range(10_000):
        k = rng.choice((2, 3, 4))
        w = sample_cyclically_reduced(SamplerConfig(k, rng.randint(1, 200), SEED, i))
        tau = rng.choice(enumerate_automorphisms(k, "second_kind"))
        direct = core_ints(apply_pair(frozenset(to_ints(tau.letters)), to_ints(tau.multiplier)[0], to_ints(w)))
        bad += length_change(whitehead_graph(w, k), tau) != len(direct) - len(w)
    report(2, bad == 0, f"length_change exact on 10^4 pairs, {bad} exceptions")
    assert bad == 0


def test_criterion_03_criterion_soundness():
    violations = hits = 0
    for k in (2, 3):
        eps = default_epsilon(k)
        for n in (100, 400):
            for i in range(1000):
                w = sample_cyclically_reduced(SamplerConfig(k, n, SEED, i))
                if frequency_criterion(w, k, eps):
                    hits += 1
                    violations += not is_strictly_minimal(w, k)
    report(3, violations == 0, f"L(eps) => SM on 4000 samples, {hits} in L(eps), {violations} violations")
    assert violations == 0


def test_criterion_04_whitehead_soundness():
    rng = random.Random(SEED)
    autos = enumerate_automorphisms(2, "all")
    start = time.perf_counter()
    good = 0
    for _ in range(500):
        u = ""
        while not u:
            u = free_reduce("".join(rng.choice("aAbB") for _ in range(rng.randint(1, 30))))
        v = u
        for _ in range(rng.randint(0, 10)):
            v = rng.choice(autos).apply(v)
        d = are_aut_equivalent(u, v, 2, budget=10**6)
        good += d.verdict == "equivalent" and d.witness.source == u and d.witness.target == v and d.witness.verify()
    elapsed = time.perf_counter() - start
    ok = good == 500 and elapsed < 300
    report(4, ok, f"{good}/500 planted pairs equivalent with verified witness ({elapsed:.1f}s < 300s)")
    assert ok


def test_criterion_05_whitehead_completeness():
    ws = [to_str(w) for n in range(1, 5) for w in cyclic_words(n, 2)]
    # peak reduction: a path exists through lengths <= max(|u|, |v|) <= 4
    reach = {w: closure(to_ints(w), 2, 4) for w in ws}
    mismatches = 0
    for u in ws:
        for v in ws:
            expected = "equivalent" if class_key(to_ints(v)) in reach[u] else "inequivalent"
            mismatches += are_aut_equivalent(u, v, 2).verdict != expected
    report(5, mismatches == 0, f"all {len(ws)}^2 pairs of length <= 4 match the closure oracle, {mismatches} mismatches")
    assert mismatches == 0


def test_criterion_06_genericity_trend():
    rows = genericity_experiment(ExperimentConfig(2, (50, 100, 200, 400), 300, SEED))
    first, last = rows[0].fraction("sm"), rows[-1].fraction("sm")
    nested = all(r.leps <= r.sm and r.z <= r.ts <= r.sm for r in rows)
    ok = last > first and nested and last >= 0.9
    fracs = ", ".join(f"n={r.n}: {r.fraction('sm'):.3f}" for r in rows)
    report(6, ok, f"SM fractions {fracs}; nesting {'holds' if nested else 'broken'}")
    assert ok


def test_criterion_07_uniformity():
    free = Counter(sample_batch(2, 3, SEED, 100_000))
    cyc = Counter(sample_batch(2, 2, SEED, 100_000, cyclic=True))
    p_free = chisquare([free[to_str(w)] for w in reduced_words(3, 2)]).pvalue
    p_cyc = chisquare([cyc[to_str(w)] for w in cyclic_words(2, 2)]).pvalue
    ok = p_free > 0.001 and p_cyc > 0.001 and len(free) == 36 and len(cyc) == 12
    report(7, ok, f"chi-square p = {p_free:.3f} (36 cells), {p_cyc:.3f} (12 cells), threshold 0.001")
    assert ok


def test_criterion_08_rate_function():
    ok = True
    notes = []
    grid = np.linspace(0.05, 0.5, 11)
    for k in (2, 3):
        x0 = 1 / (2 * k)
        at_x0 = rate_function(x0, k)
        values = np.array([rate_function(x, k) for x in grid])
        convex = all(values[i - 1] + values[i + 1] >= 2 * values[i] for i in range(1, 10))
        argmin_ok = int(np.argmin(values)) == int(np.argmin(np.abs(grid - x0)))
        ok &= abs(at_x0) <= 1e-6 and bool((values >= 0).all()) and convex and argmin_ok
        notes.append(f"k={k}: |I(1/2k)|={abs(at_x0):.1e}")
    report(8, ok, f"{'; '.join(notes)}; non-negative, convex, grid minimum nearest 1/2k")
    assert ok


def _best_time(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def test_criterion_09_fast_path_performance():
    n = 10**6
    times = {}
    for size in (n, 2 * n):
        u = sample_cyclically_reduced(SamplerConfig(2, size, SEED, 0))
        v = rotate(Relabeling(("B", "a")).apply(u), size // 3)
        r = rotate(u, size // 3)
        d = are_aut_equivalent(u, v, 2)
        assert d.verdict == "equivalent" and d.fast_path
        times[size] = (_best_time(lambda: is_conjugate(u, r)), _best_time(lambda: are_aut_equivalent(u, v, 2), 3))
    conj, fast = times[n]
    # doubling the length of a linear-time input doubles the time; we bound
    # the per-letter cost growth t(2n) / (2 t(n)) by 1.5
    growth = [times[2 * n][i] / (2 * times[n][i]) for i in (0, 1)]
    ok = conj < 1 and fast < 1 and max(growth) <= 1.5
    report(
        9,
        ok,
        f"10^6 letters: is_conjugate {conj:.3f}s, fast path {fast:.3f}s; "
        f"per-letter growth on doubling {growth[0]:.2f}x / {growth[1]:.2f}x (raw {2 * growth[0]:.2f}x / {2 * growth[1]:.2f}x)",
    )
    assert ok


def test_criterion_10_one_relator():
    c1, c2 = count_relator_classes(1, 2), count_relator_classes(2, 2)
    ok = c1.count == 1 and c2.count == 2 and c1.exact and c2.exact
    rng = random.Random(SEED)
    relabelings = enumerate_automorphisms(2, "relabelings")
    recovered = planted = 0
    index = 0
    while planted < 100:
        u = sample_cyclically_reduced(SamplerConfig(2, 100, SEED, index))
        index += 1
        if classify_relator(u, 2).rigidity_status != "generic_conditional":
            continue
        planted += 1
        tau = rng.choice(relabelings)
        inverted = rng.random() < 0.5
        offset = rng.randrange(100)
        v = rotate(tau.apply(inverse(u) if inverted else u), offset)
        d = isomorphic_generic(u, v, 2)
        if d.verdict != "isomorphic":
            continue
        image = rotate(d.relabeling.apply(u), d.offset)
        exact = image == (inverse(d.target) if d.inverted else d.target)
        same_tau = d.relabeling == tau or canonical_match(tau, d.relabeling, u)
        recovered += exact and same_tau and d.inverted == inverted
    ok &= recovered == 100
    report(10, ok, f"classes(1,2)={c1.count}, classes(2,2)={c2.count}, exact; {recovered}/100 planted isomorphisms recovered")
    assert ok


def canonical_match(tau, found, u):
    """tau and found differ by a symmetry of u up to rotation."""
    return is_conjugate(tau.apply(u), found.apply(u)) and len(tau.apply(u)) == len(u)


@pytest.mark.xfail(strict=True, reason="count(6)/3^6 == count(7)/3^7 exactly; see README")
def test_criterion_11_orbit_negligibility():
    g = orbit_growth_experiment("a", 2, 8)
    ratios = [g.counts[n] / 3**n for n in range(2, 9)]
    ties = [n for n in range(2, 8) if not ratios[n - 2] > ratios[n - 1]]
    ok = g.saturated and not ties
    detail = ", ".join(f"{g.counts[n]}/3^{n}" for n in range(2, 9))
    report(11, ok, f"count(n)/3^n for n=2..8: {detail}; not strictly decreasing at n={ties}")
    assert ok


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
