"""One-relator groups G_u = <a_1..a_k | u>: generic rigidity checks and
relator class counts.

Isomorphism conclusions for generic relators also need u in a further generic
set P_k, which is not decided here; every report says so explicitly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .automorphisms import Relabeling, enumerate_automorphisms
from .classify import DEFAULT_BUDGET, are_aut_equivalent, is_strictly_minimal, is_ts, is_z, minimize
from .words import (
    canonical_rotation,
    check_word,
    cyclic_reduce,
    free_reduce,
    inverse,
    is_cyclically_reduced,
    is_proper_power,
    letter_order,
    rotation_offset,
)

PK_NOTE = (
    "rigidity and completeness conclusions additionally assume the relator lies "
    "in the generic set P_k, which is not checked"
)


@dataclass
class RelatorReport:
    relator: str
    core: str
    flags: dict
    rigidity_status: str  # generic_conditional | non_generic

    def to_json(self) -> dict:
        return {
            "relator": self.relator,
            "core": self.core,
            "flags": self.flags,
            "rigidity_status": self.rigidity_status,
            "conditional_on_Pk": self.rigidity_status == "generic_conditional",
            "note": PK_NOTE if self.rigidity_status == "generic_conditional" else "",
        }


def _core(u: str, k: int) -> str:
    check_word(u, k)
    core, _ = cyclic_reduce(free_reduce(u))
    if not core:
        raise ValueError("relator must be nontrivial")
    return core


def classify_relator(u: str, k: int) -> RelatorReport:
    core = _core(u, k)
    minimal, _ = minimize(core, k)
    sm = is_strictly_minimal(core, k)
    ts = sm and is_ts(core, k)
    z = ts and is_z(core, k)
    flags = {
        "SM": sm,
        "TS": ts,
        "Z": z,
        "proper_power": is_proper_power(core),
        "primitive": len(minimal) == 1,
    }
    return RelatorReport(u, core, flags, "generic_conditional" if z else "non_generic")


@dataclass
class IsoDecision:
    verdict: str  # isomorphic | not_isomorphic | undecided
    relabeling: Optional[Relabeling] = None
    offset: int = 0
    inverted: bool = False
    target: str = ""  # the minimized v the offset refers to
    note: str = PK_NOTE

    def to_json(self) -> dict:
        d = {"verdict": self.verdict, "conditional_on_Pk": self.verdict != "undecided", "note": self.note}
        if self.verdict == "isomorphic":
            d.update(relabeling=self.relabeling.to_json(), offset=self.offset, inverted=self.inverted, target=self.target)
        return d


def isomorphic_generic(u: str, v: str, k: int) -> IsoDecision:
    """Decide G_u = G_v for a generic relator u.

    Isomorphic means rotate(tau(core u), offset) equals the minimized v, or its
    inverse when ``inverted``.  If u is not generic the verdict is undecided.
    """
    core = _core(u, k)
    _core(v, k)
    if classify_relator(core, k).rigidity_status != "generic_conditional":
        return IsoDecision("undecided", note="relator u is not in Z; rigidity test does not apply")
    mv, _ = minimize(v, k)
    n = len(core)
    if len(mv) != n:
        return IsoDecision("not_isomorphic")
    mv_inv = inverse(mv)
    for tau in enumerate_automorphisms(k, "relabelings"):
        image = tau.apply(core)
        for inverted, target in ((False, mv), (True, mv_inv)):
            i = rotation_offset(image, target)  # image == rotate(target, i)
            if i >= 0:
                return IsoDecision("isomorphic", tau, (n - i) % n, inverted, mv)
    return IsoDecision("not_isomorphic")


class DisjointSet:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True


@dataclass
class RelatorClassCount:
    n: int
    k: int
    count: int
    exact: bool
    classes: list[list[str]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "count": self.count,
            "exact": self.exact,
            "semantics": "classes of relators under u ~ v iff v or v^-1 is in Aut(F_k)u; "
            "equals the isomorphism-type count only for generic relators",
        }


def cyclic_words(n: int, k: int) -> list[str]:
    """All cyclically reduced words of length n."""
    return ["".join(p) for p in itertools.product(letter_order(k), repeat=n) if is_cyclically_reduced("".join(p))]


def count_relator_classes(n: int, k: int, budget: int = DEFAULT_BUDGET, words=None) -> RelatorClassCount:
    """Partition the cyclically reduced words of length n by Aut-equivalence up to inversion."""
    if n < 1:
        raise ValueError("length must be at least 1")
    pool = cyclic_words(n, k) if words is None else list(words)
    reps = sorted({canonical_rotation(w) for w in pool})
    minimal = {w: len(minimize(w, k)[0]) for w in reps}
    ds = DisjointSet(reps)
    exact = True
    for i, u in enumerate(reps):
        for v in reps[i + 1 :]:
            if minimal[u] != minimal[v] or ds.find(u) == ds.find(v):
                continue
            for target in (v, inverse(v)):
                d = are_aut_equivalent(u, target, k, budget)
                if d.verdict == "equivalent":
                    ds.union(u, v)
                    break
                if d.verdict == "undecided":
                    exact = False
    groups: dict[str, list[str]] = {}
    for w in reps:
        groups.setdefault(ds.find(w), []).append(w)
    classes = sorted(groups.values())
    return RelatorClassCount(n, k, len(classes), exact, classes)
