"""Uniform random reduced words, letter/digram frequencies, and the rate
function of the letter-count large deviation principle.

Randomness contract: sample ``index`` under master seed ``seed`` is drawn from
``numpy.random.default_rng(SeedSequence(seed, spawn_key=(index,)))``, so a
sample never depends on which other samples were drawn or in what order.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .automorphisms import whitehead_graph
from .words import check_word, code_letter, is_cyclically_reduced, letter_code, letter_order


@dataclass(frozen=True)
class SamplerConfig:
    k: int
    n: int
    seed: int = 0
    index: int = 0

    def rng(self) -> np.random.Generator:
        return make_rng(self.seed, self.index)


def make_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def _draw_reduced(rng: np.random.Generator, k: int, n: int) -> str:
    if n == 0:
        return ""
    size = 2 * k
    first = int(rng.integers(size))
    steps = rng.integers(size - 1, size=n - 1).tolist()
    codes = [first]
    prev = first
    for r in steps:
        # uniform over the 2k-1 letters other than the inverse of prev
        prev = ((prev ^ 1) + 1 + r) % size
        codes.append(prev)
    return "".join(map(code_letter, codes))


def sample_freely_reduced(cfg: SamplerConfig) -> str:
    """Uniform freely reduced word of length cfg.n via the non-backtracking chain."""
    if cfg.n < 0:
        raise ValueError("length must be non-negative")
    return _draw_reduced(cfg.rng(), cfg.k, cfg.n)


def sample_cyclically_reduced(cfg: SamplerConfig, stats: dict | None = None) -> str:
    """Uniform cyclically reduced word of length cfg.n, by rejection.

    If ``stats`` is given, ``stats["draws"]`` is incremented per attempt.
    """
    if cfg.n < 1:
        raise ValueError("cyclically reduced sampling needs n >= 1")
    rng = cfg.rng()
    while True:
        w = _draw_reduced(rng, cfg.k, cfg.n)
        if stats is not None:
            stats["draws"] = stats.get("draws", 0) + 1
        if is_cyclically_reduced(w):
            return w


def sample_batch(k: int, n: int, seed: int, count: int, cyclic: bool = False, start: int = 0) -> Iterator[str]:
    sampler = sample_cyclically_reduced if cyclic else sample_freely_reduced
    for i in range(start, start + count):
        yield sampler(SamplerConfig(k, n, seed, i))


@dataclass
class FrequencyProfile:
    letter_freq: dict[str, Fraction]
    digram_freq: dict[tuple[str, str], Fraction]  # Whitehead-graph edges

    def to_json(self) -> dict:
        return {
            "letter_freq": {x: str(f) for x, f in self.letter_freq.items()},
            "digram_freq": {x + y: str(f) for (x, y), f in self.digram_freq.items()},
        }


def empirical_frequencies(w: str, k: int) -> FrequencyProfile:
    """Exact letter frequencies and cyclic digram (edge) frequencies of w."""
    check_word(w, k)
    if not w:
        raise ValueError("frequencies need a nonempty word")
    if not is_cyclically_reduced(w):
        raise ValueError(f"{w!r} is not cyclically reduced")
    n = len(w)
    counts = Counter(w)
    letters = {x: Fraction(counts[x], n) for x in letter_order(k)}
    g = whitehead_graph(w, k)
    digrams = {edge: Fraction(c, n) for edge, c in g.edges().items()}
    return FrequencyProfile(letters, digrams)


def transition_matrix(k: int) -> np.ndarray:
    """Row-stochastic non-backtracking chain on the 2k letters."""
    size = 2 * k
    p = np.full((size, size), 1.0 / (size - 1))
    for i in range(size):
        p[i, i ^ 1] = 0.0
    return p


class ConvergenceError(RuntimeError):
    pass


def perron_eigenvalue(m: np.ndarray, tol: float = 1e-12, max_iter: int = 100_000) -> float:
    """Perron-Frobenius eigenvalue of a nonnegative primitive matrix by power iteration."""
    v = np.full(m.shape[0], 1.0 / m.shape[0])
    lam = 0.0
    for _ in range(max_iter):
        w = m @ v
        new = w.sum()
        w /= new
        if abs(new - lam) <= tol * abs(new) and np.abs(w - v).max() <= tol:
            return float(new)
        v, lam = w, new
    raise ConvergenceError("power iteration did not converge")


def _golden_max(f, lo: float, hi: float, tol: float) -> tuple[float, float]:
    invphi = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    candidates = [(fc, c), (fd, d), (f(lo), lo), (f(hi), hi)]
    best = max(candidates)
    return best[1], best[0]


def log_spectral_radius(theta: float, k: int, target: str = "a", tol: float = 1e-12) -> float:
    """log rho(Pi_theta), Pi_theta[i, j] = Pi[i, j] * exp(theta * [j == target])."""
    p = transition_matrix(k)
    p[:, letter_code(target)] *= math.exp(theta)
    return math.log(perron_eigenvalue(p, tol))


def rate_function(x: float, k: int, target: str = "a", theta_range=(-20.0, 20.0), tol: float = 1e-9) -> float:
    """I(x) = sup_theta theta*x - log rho(Pi_theta) for the count of ``target``."""
    if not 0 <= x <= 1:
        raise ValueError("x must lie in [0, 1]")
    if tol <= 0:
        raise ValueError("tol must be positive")
    check_word(target, k)
    if len(target) != 1:
        raise ValueError("target must be a single letter")
    inner_tol = min(tol * 1e-3, 1e-12)
    _, value = _golden_max(
        lambda t: t * x - log_spectral_radius(t, k, target, inner_tol),
        theta_range[0],
        theta_range[1],
        tol,
    )
    return value
