"""Monte Carlo genericity scans and orbit growth counts, with CSV/JSON reports."""

from __future__ import annotations

import json
import math
import os
import sys
import tempfile
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .automorphisms import enumerate_automorphisms, whitehead_graph
from .classify import DEFAULT_BUDGET, frequency_criterion, is_strictly_minimal, is_ts, is_z, minimize
from .sampling import SamplerConfig, sample_cyclically_reduced
from .words import canonical_rotation, check_word, cyclic_reduce

FIELDS = ["n", "samples", "frac_leps", "frac_sm", "frac_ts", "frac_z", "se_leps", "se_sm", "se_ts", "se_z"]
CLASSES = ["leps", "sm", "ts", "z"]


@dataclass(frozen=True)
class ExperimentConfig:
    k: int
    lengths: tuple[int, ...]
    samples: int
    seed: int = 0
    eps: Optional[Fraction] = None
    fmt: str = "json"

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if not self.lengths or any(b <= a for a, b in zip(self.lengths, self.lengths[1:])):
            raise ValueError("lengths must be nonempty and strictly increasing")
        if self.lengths[0] < 1:
            raise ValueError("lengths must be positive")


@dataclass(frozen=True)
class GenericityRow:
    n: int
    samples: int
    leps: int
    sm: int
    ts: int
    z: int

    def fraction(self, cls: str) -> float:
        return getattr(self, cls) / self.samples

    def stderr(self, cls: str) -> float:
        p = self.fraction(cls)
        return math.sqrt(p * (1 - p) / self.samples)

    def as_dict(self) -> dict:
        d = {"n": self.n, "samples": self.samples}
        for c in CLASSES:
            d[f"frac_{c}"] = self.fraction(c)
        for c in CLASSES:
            d[f"se_{c}"] = self.stderr(c)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "GenericityRow":
        samples = int(d["samples"])
        counts = {c: round(float(d[f"frac_{c}"]) * samples) for c in CLASSES}
        return cls(int(d["n"]), samples, **counts)


def classify_sample(w: str, k: int, eps=None) -> dict[str, bool]:
    """Class memberships of one cyclically reduced word, sharing the graph."""
    g = whitehead_graph(w, k)
    sm = is_strictly_minimal(w, k, graph=g)
    ts = sm and is_ts(w, k)
    return {
        "leps": frequency_criterion(w, k, eps, graph=g),
        "sm": sm,
        "ts": ts,
        "z": ts and is_z(w, k),
    }


def genericity_experiment(cfg: ExperimentConfig) -> list[GenericityRow]:
    """Fractions of sampled cyclically reduced words in L(eps), SM, TS and Z.

    Sample i at length n uses seed stream (cfg.seed, n * 2**32 + i), so rows
    are independent of the other lengths requested.
    """
    rows = []
    for n in cfg.lengths:
        counts = dict.fromkeys(CLASSES, 0)
        for i in range(cfg.samples):
            w = sample_cyclically_reduced(SamplerConfig(cfg.k, n, cfg.seed, (n << 32) + i))
            for c, member in classify_sample(w, cfg.k, cfg.eps).items():
                counts[c] += member
        rows.append(GenericityRow(n, cfg.samples, **counts))
    return rows


def _fmt(x) -> str:
    if isinstance(x, int):
        return str(x)
    if x == 0:
        return "0"
    return f"{x:.6g}"


def render_report(rows: Sequence[GenericityRow], fmt: str = "json") -> str:
    if not rows:
        raise ValueError("no rows to report")
    dicts = [r.as_dict() for r in rows]
    if fmt == "csv":
        lines = [",".join(FIELDS)]
        lines += [",".join(_fmt(d[f]) for f in FIELDS) for d in dicts]
        return "\n".join(lines) + "\n"
    if fmt == "json":
        body = ",\n".join(
            "  {" + ", ".join(f'"{f}": {_fmt(d[f])}' for f in FIELDS) + "}" for d in dicts
        )
        return "[\n" + body + "\n]\n"
    raise ValueError(f"unknown format {fmt!r}")


def parse_report(text: str, fmt: str = "json") -> list[GenericityRow]:
    if fmt == "json":
        return [GenericityRow.from_dict(d) for d in json.loads(text)]
    lines = text.strip().splitlines()
    header = lines[0].split(",")
    return [GenericityRow.from_dict(dict(zip(header, line.split(",")))) for line in lines[1:]]


def write_atomic(text: str, destination) -> None:
    """Write to a path via temp file + rename; ``None`` or "-" means stdout."""
    if destination in (None, "-"):
        sys.stdout.write(text)
        return
    if hasattr(destination, "write"):
        destination.write(text)
        return
    path = os.fspath(destination)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-report-")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit_report(rows: Sequence[GenericityRow], fmt: str = "json", destination=None) -> None:
    write_atomic(render_report(rows, fmt), destination)


@dataclass
class OrbitGrowth:
    word: str
    minimal: str
    counts: dict[int, int]  # cyclic length -> number of conjugacy classes
    saturated: bool
    entropy_estimate: Optional[float]

    def to_json(self) -> dict:
        return {
            "word": self.word,
            "minimal": self.minimal,
            "counts": {str(n): c for n, c in sorted(self.counts.items())},
            "saturated": self.saturated,
            "entropy_estimate": self.entropy_estimate,
            "entropy_note": "desk-scale estimate: exp of least-squares slope of log counts over the top half of lengths",
        }


def orbit_ball(w: str, k: int, max_length: int, budget: int = DEFAULT_BUDGET) -> tuple[set[str], bool]:
    """Canonical rotations of cyclic words of length <= max_length in Aut(F_k)w."""
    m, _ = minimize(w, k)
    if len(m) > max_length:
        return set(), True
    root = canonical_rotation(m)
    seen = {root}
    if not root:
        return seen, True
    moves = enumerate_automorphisms(k, "all")
    queue = deque([root])
    while queue:
        c = queue.popleft()
        for tau in moves:
            core, _ = cyclic_reduce(tau.apply(c))
            if len(core) > max_length or not core:
                continue
            child = canonical_rotation(core)
            if child in seen:
                continue
            if len(seen) >= budget:
                return seen, False
            seen.add(child)
            queue.append(child)
    return seen, True


def entropy_estimate(counts: dict[int, int]) -> Optional[float]:
    """exp(slope) of log count against length, fitted on the top half of lengths."""
    pts = sorted((n, c) for n, c in counts.items() if c > 0)
    top = pts[len(pts) // 2 :]
    if len(top) < 2:
        return None
    x = np.array([n for n, _ in top], dtype=float)
    y = np.log([c for _, c in top])
    slope = np.polyfit(x, y, 1)[0]
    return float(math.exp(slope))


def orbit_growth_experiment(w: str, k: int, max_length: int, budget: int = DEFAULT_BUDGET) -> OrbitGrowth:
    """Count orbit elements (up to conjugacy) at each cyclic length <= max_length."""
    check_word(w, k)
    if max_length < len(w):
        raise ValueError("max_length must be at least |w|")
    m, _ = minimize(w, k)
    ball, saturated = orbit_ball(w, k, max_length, budget)
    counts = {n: 0 for n in range(1, max_length + 1)}
    for c in ball:
        if c:
            counts[len(c)] += 1
    return OrbitGrowth(w, m, counts, saturated, entropy_estimate(counts))
