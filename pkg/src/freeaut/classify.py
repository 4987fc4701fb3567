"""Whitehead's algorithm and the generic classes SM, L(eps), TS and Z."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .automorphisms import (
    Conjugation,
    Relabeling,
    SecondKind,
    Step,
    WhiteheadGraph,
    enumerate_automorphisms,
    length_change,
    step_from_json,
    whitehead_graph,
)
from .words import (
    canonical_rotation,
    check_word,
    cyclic_reduce,
    free_reduce,
    inverse,
    is_cyclically_reduced,
    is_proper_power,
    least_rotation_index,
    letter_order,
    rotation_offset,
)

DEFAULT_BUDGET = 1_000_000


@dataclass
class WitnessChain:
    """Steps taking ``source`` to ``target``, freely reducing after each."""

    source: str
    target: str
    steps: list[Step] = field(default_factory=list)

    def replay(self) -> str:
        w = free_reduce(self.source)
        for step in self.steps:
            w = step.apply(w)
        return w

    def verify(self) -> bool:
        return self.replay() == self.target

    def inverse(self) -> "WitnessChain":
        return WitnessChain(self.target, self.source, [s.inverse() for s in reversed(self.steps)])

    def then(self, other: "WitnessChain") -> "WitnessChain":
        if other.source != self.target:
            raise ValueError("chains do not compose")
        return WitnessChain(self.source, other.target, self.steps + other.steps)

    def to_json(self) -> list[dict]:
        return [s.to_json() for s in self.steps]

    @classmethod
    def from_json(cls, source: str, target: str, steps: list[dict], k: int) -> "WitnessChain":
        return cls(source, target, [step_from_json(s, k) for s in steps])


@dataclass
class EquivalenceDecision:
    verdict: str  # "equivalent" | "inequivalent" | "undecided"
    witness: Optional[WitnessChain] = None
    nodes_explored: int = 0
    fast_path: bool = False

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness": self.witness.to_json() if self.witness else [],
            "nodes_explored": self.nodes_explored,
            "fast_path": self.fast_path,
        }


def _conjugation(conj: str, k: int) -> list[Step]:
    return [Conjugation(k, conj)] if conj else []


def _rotation_steps(w: str, i: int, k: int) -> list[Step]:
    """Steps turning the cyclic word w into w[i:] + w[:i]."""
    n = len(w)
    i %= n if n else 1
    if i == 0:
        return []
    if i <= n - i:
        return [Conjugation(k, w[:i])]
    return [Conjugation(k, inverse(w[i:]))]


def _as_cyclic(w: str, k: int) -> str:
    check_word(w, k)
    if not is_cyclically_reduced(w):
        raise ValueError(f"{w!r} is not cyclically reduced")
    return w


def _best_move(g: WhiteheadGraph, k: int) -> tuple[int, Optional[SecondKind]]:
    best, best_tau = 0, None
    for tau in enumerate_automorphisms(k, "second_kind"):
        d = length_change(g, tau)
        if d < best:
            best, best_tau = d, tau
    return best, best_tau


def minimize(w: str, k: int) -> tuple[str, WitnessChain]:
    """A shortest element of the Aut(F_k)-orbit of ``w``, up to conjugacy.

    Steepest descent over second-kind automorphisms, ties broken by
    enumeration order.  Returns the cyclically reduced minimal word and a
    chain from ``free_reduce(w)`` to it.
    """
    check_word(w, k)
    source = free_reduce(w)
    current, conj = cyclic_reduce(source)
    steps = _conjugation(conj, k)
    while current:
        change, tau = _best_move(whitehead_graph(current, k), k)
        if tau is None:
            break
        image = tau.apply(current)
        core, conj = cyclic_reduce(image)
        assert len(core) == len(current) + change
        steps.append(tau)
        steps.extend(_conjugation(conj, k))
        current = core
    return current, WitnessChain(source, current, steps)


def is_strictly_minimal(w: str, k: int, graph: Optional[WhiteheadGraph] = None) -> bool:
    """Every non-inner second-kind automorphism strictly lengthens ``w``."""
    w = _as_cyclic(w, k)
    if not w:
        raise ValueError("strict minimality needs a nonempty word")
    g = graph or whitehead_graph(w, k)
    return all(length_change(g, tau) > 0 for tau in enumerate_automorphisms(k, "second_kind_noninner"))


def epsilon_bound(k: int) -> Fraction:
    """Supremum of admissible eps for the frequency criterion."""
    return Fraction(2 * k - 3, k * (2 * k - 1) * (4 * k - 3))


def default_epsilon(k: int) -> Fraction:
    return Fraction(2 * k - 3, 2 * k * (2 * k - 1) * (4 * k - 3))


def frequency_criterion(w: str, k: int, eps=None, graph: Optional[WhiteheadGraph] = None) -> bool:
    """Membership in L(eps): letter and edge frequencies near uniform.

    Sufficient for strict minimality when 0 < eps < epsilon_bound(k).
    """
    eps = default_epsilon(k) if eps is None else Fraction(eps)
    if not 0 < eps < epsilon_bound(k):
        raise ValueError(f"eps must lie in (0, {epsilon_bound(k)}), got {eps}")
    w = _as_cyclic(w, k)
    if not w:
        raise ValueError("frequency criterion needs a nonempty word")
    n = len(w)
    letter_mid = Fraction(1, 2 * k)
    for x in letter_order(k):
        if abs(Fraction(w.count(x), n) - letter_mid) >= eps / 2:
            return False
    g = graph or whitehead_graph(w, k)
    edge_mid = Fraction(1, k * (2 * k - 1))
    size = 2 * k
    for i in range(size):
        for j in range(i + 1, size):
            if abs(Fraction(g.labels[i][j], n) - edge_mid) >= eps:
                return False
    return True


def relabeling_symmetries(w: str, k: int) -> list[Relabeling]:
    """Relabelings tau with tau(w) a rotation of w, identity included."""
    return [t for t in enumerate_automorphisms(k, "relabelings") if rotation_offset(t.apply(w), w) >= 0]


def is_ts(w: str, k: int) -> bool:
    """Trivial-stabilizer class: SM, not a proper power, no relabeling symmetry."""
    w = _as_cyclic(w, k)
    if not w:
        raise ValueError("TS membership needs a nonempty word")
    if not is_strictly_minimal(w, k) or is_proper_power(w):
        return False
    return all(
        t.is_identity() or rotation_offset(t.apply(w), w) < 0
        for t in enumerate_automorphisms(k, "relabelings")
    )


def is_z(w: str, k: int) -> bool:
    """TS words with no relabeling carrying them to a rotation of their inverse."""
    w = _as_cyclic(w, k)
    if not w:
        raise ValueError("Z membership needs a nonempty word")
    if not is_ts(w, k):
        return False
    w_inv = inverse(w)
    return all(rotation_offset(t.apply(w), w_inv) < 0 for t in enumerate_automorphisms(k, "relabelings"))


@dataclass
class LevelSearch:
    parents: dict  # canonical word -> (parent canonical word, automorphism) or None
    saturated: bool
    found: Optional[str] = None

    @property
    def words(self) -> set[str]:
        return set(self.parents)


def _neighbours(c: str, k: int):
    """Whitehead moves that keep the cyclic length of c."""
    g = whitehead_graph(c, k)
    for tau in enumerate_automorphisms(k, "relabelings"):
        yield tau
    for tau in enumerate_automorphisms(k, "second_kind_noninner"):
        if length_change(g, tau) == 0:
            yield tau


def _level_search(start: str, k: int, budget: int, target: Optional[str] = None) -> LevelSearch:
    """Breadth-first closure of a minimal cyclic word at constant length.

    Nodes are canonical rotations; inner automorphisms only rotate, so they
    are skipped.  Stops early when ``target`` (canonical) is reached.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    root = canonical_rotation(start)
    parents = {root: None}
    if root == target:
        return LevelSearch(parents, True, root)
    queue = deque([root])
    n = len(root)
    while queue:
        c = queue.popleft()
        for tau in _neighbours(c, k):
            core, _ = cyclic_reduce(tau.apply(c))
            if len(core) != n:
                continue
            child = canonical_rotation(core)
            if child in parents:
                continue
            if len(parents) >= budget:
                return LevelSearch(parents, False)
            parents[child] = (c, tau)
            if child == target:
                return LevelSearch(parents, True, child)
            queue.append(child)
    return LevelSearch(parents, True)


def _path_chain(search: LevelSearch, node: str, k: int) -> WitnessChain:
    """Chain from the search root to ``node`` (both canonical rotations)."""
    edges = []
    while search.parents[node] is not None:
        parent, tau = search.parents[node]
        edges.append((parent, tau, node))
        node = parent
    root = node
    steps: list[Step] = []
    for parent, tau, child in reversed(edges):
        image = tau.apply(parent)
        core, conj = cyclic_reduce(image)
        r = least_rotation_index(core)
        steps.append(tau)
        steps.extend(_conjugation(conj + core[:r], k))
    return WitnessChain(root, edges[0][2] if edges else root, steps)


def orbit_level_set(w: str, k: int, budget: int = DEFAULT_BUDGET) -> tuple[set[str], bool]:
    """Canonical rotations of all words of length |w| in the orbit of a minimal w.

    Returns the set and a saturation flag (False when the budget cut the
    search short).
    """
    w = _as_cyclic(w, k)
    if not w:
        return {""}, True
    search = _level_search(w, k, budget)
    return search.words, search.saturated


def _to_rotation(src: str, dst: str, k: int) -> list[Step]:
    """Steps turning ``src`` into its rotation ``dst``."""
    i = rotation_offset(dst, src)
    assert i >= 0
    return _rotation_steps(src, i, k)


def are_aut_equivalent(u: str, v: str, k: int, budget: int = DEFAULT_BUDGET, fast_path: bool = True) -> EquivalenceDecision:
    """Decide whether some automorphism of F_k carries u to v."""
    if budget < 1:
        raise ValueError("budget must be at least 1")
    mu, chain_u = minimize(u, k)
    mv, chain_v = minimize(v, k)
    if len(mu) != len(mv):
        return EquivalenceDecision("inequivalent")

    if not mu:
        return EquivalenceDecision("equivalent", chain_u.then(chain_v.inverse()), 1)

    if fast_path and (is_strictly_minimal(mu, k) or is_strictly_minimal(mv, k)):
        for tau in enumerate_automorphisms(k, "relabelings"):
            image = tau.apply(mu)
            i = rotation_offset(image, mv)
            if i < 0:
                continue
            # image == mv[i:] + mv[:i]; conjugate back to mv
            middle = WitnessChain(mu, mv, [tau] + _to_rotation(image, mv, k))
            witness = chain_u.then(middle).then(chain_v.inverse())
            return EquivalenceDecision("equivalent", witness, 1, fast_path=True)
        return EquivalenceDecision("inequivalent", nodes_explored=1, fast_path=True)

    target = canonical_rotation(mv)
    search = _level_search(mu, k, budget, target)
    explored = len(search.parents)
    if search.found is None:
        verdict = "inequivalent" if search.saturated else "undecided"
        return EquivalenceDecision(verdict, nodes_explored=explored)
    root = canonical_rotation(mu)
    path = _path_chain(search, target, k)
    middle = WitnessChain(mu, root, _to_rotation(mu, root, k)).then(path)
    middle = middle.then(WitnessChain(target, mv, _to_rotation(target, mv, k)))
    witness = chain_u.then(middle).then(chain_v.inverse())
    return EquivalenceDecision("equivalent", witness, explored)


@dataclass
class StabilizerReport:
    word: str
    core: str
    flags: dict
    conclusion: str  # cyclic_generated_by_ad_w | finite_extension | unknown
    symmetries: list[Relabeling] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "word": self.word,
            "core": self.core,
            "flags": self.flags,
            "conclusion": self.conclusion,
            "symmetries": [t.to_json() for t in self.symmetries],
        }


def stabilizer_report(w: str, k: int) -> StabilizerReport:
    """What the generic theory says about the stabilizer of ``w`` in Aut(F_k).

    TS' words have stabilizer <ad(w)>.  For other SM' words only the visible
    finite group of relabeling symmetries is listed.
    """
    check_word(w, k)
    w = free_reduce(w)
    if not w:
        raise ValueError("stabilizer report needs a nontrivial word")
    core, _ = cyclic_reduce(w)
    sm = is_strictly_minimal(core, k)
    ts = sm and is_ts(core, k)
    z = ts and is_z(core, k)
    reduced = core == w
    flags = {"SM": sm and reduced, "SM'": sm, "TS": ts and reduced, "TS'": ts, "Z": z}
    if ts:
        return StabilizerReport(w, core, flags, "cyclic_generated_by_ad_w")
    if sm:
        return StabilizerReport(w, core, flags, "finite_extension", relabeling_symmetries(core, k))
    return StabilizerReport(w, core, flags, "unknown")
