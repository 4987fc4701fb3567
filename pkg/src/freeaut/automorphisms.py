"""Whitehead automorphisms of F_k and weighted Whitehead graphs.

Letters are indexed by their code in the order a, A, b, B, ... (see
``words.letter_code``), so the inverse of code ``i`` is ``i ^ 1`` and a
letter set is an integer bitmask over the 2k codes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Union

import numpy as np

from .words import (
    check_word,
    code_letter,
    free_reduce,
    inverse,
    letter_code,
    letter_codes,
    letter_order,
)


@dataclass(frozen=True)
class Relabeling:
    """Signed permutation of the generators; ``images[i]`` is the image of a_(i+1)."""

    images: tuple[str, ...]

    @property
    def rank(self) -> int:
        return len(self.images)

    @cached_property
    def table(self) -> dict[int, int]:
        t = {}
        for i, img in enumerate(self.images):
            gen = chr(ord("a") + i)
            t[ord(gen)] = ord(img)
            t[ord(gen.upper())] = ord(img.swapcase())
        return t

    def image(self, x: str) -> str:
        return x.translate(self.table)

    def apply(self, w: str) -> str:
        check_word(w, self.rank)
        return w.translate(self.table)

    def inverse(self) -> "Relabeling":
        inv = [""] * self.rank
        for i, img in enumerate(self.images):
            gen = chr(ord("a") + i)
            j = ord(img.lower()) - ord("a")
            inv[j] = gen if img.islower() else gen.upper()
        return Relabeling(tuple(inv))

    def is_identity(self) -> bool:
        return all(img == chr(ord("a") + i) for i, img in enumerate(self.images))

    def to_json(self) -> dict:
        return {chr(ord("a") + i): img for i, img in enumerate(self.images)}

    @classmethod
    def identity(cls, k: int) -> "Relabeling":
        return cls(tuple(chr(ord("a") + i) for i in range(k)))

    @classmethod
    def from_mapping(cls, mapping: dict[str, str], k: int) -> "Relabeling":
        images = []
        for i in range(k):
            gen = chr(ord("a") + i)
            if gen in mapping:
                images.append(mapping[gen])
            elif gen.upper() in mapping:
                images.append(mapping[gen.upper()].swapcase())
            else:
                images.append(gen)
        images = tuple(images)
        if sorted(x.lower() for x in images) != [chr(ord("a") + i) for i in range(k)]:
            raise ValueError(f"not a signed permutation: {mapping}")
        return cls(images)


@dataclass(frozen=True)
class SecondKind:
    """Second-kind Whitehead automorphism with characteristic pair (A, a).

    ``mask`` has bit ``letter_code(x)`` set for every x in A.
    """

    rank: int
    multiplier: str
    mask: int

    def __post_init__(self):
        a = letter_code(self.multiplier)
        if a >= 2 * self.rank or self.mask >> (2 * self.rank):
            raise ValueError("characteristic pair outside the alphabet")
        if not self.mask >> a & 1 or self.mask >> (a ^ 1) & 1:
            raise ValueError("need multiplier in A and its inverse outside A")

    @classmethod
    def from_set(cls, letters, multiplier: str, k: int) -> "SecondKind":
        mask = 0
        for x in letters:
            mask |= 1 << letter_code(x)
        return cls(k, multiplier, mask)

    @property
    def letters(self) -> str:
        """The set A, in letter order."""
        return "".join(x for x in letter_order(self.rank) if self.mask >> letter_code(x) & 1)

    def contains(self, x: str) -> bool:
        return bool(self.mask >> letter_code(x) & 1)

    @cached_property
    def table(self) -> dict[int, str]:
        a = self.multiplier
        a_inv = a.swapcase()
        t = {}
        for x in letter_order(self.rank):
            if x in (a, a_inv):
                continue
            in_a, inv_in_a = self.contains(x), self.contains(x.swapcase())
            if in_a and inv_in_a:
                t[ord(x)] = a_inv + x + a
            elif in_a:
                t[ord(x)] = x + a
            elif inv_in_a:
                t[ord(x)] = a_inv + x
        return t

    def image(self, x: str) -> str:
        return x.translate(self.table)

    def apply(self, w: str) -> str:
        check_word(w, self.rank)
        return free_reduce(w.translate(self.table))

    def inverse(self) -> "SecondKind":
        a = letter_code(self.multiplier)
        mask = (self.mask & ~(1 << a)) | (1 << (a ^ 1))
        return SecondKind(self.rank, self.multiplier.swapcase(), mask)

    def is_trivial(self) -> bool:
        return self.mask == 1 << letter_code(self.multiplier)

    def to_json(self) -> dict:
        return {"multiplier": self.multiplier, "A": list(self.letters)}


@dataclass(frozen=True)
class Conjugation:
    """Inner automorphism x -> c^-1 x c, recorded as one witness step.

    Equal to the chain of inner Whitehead automorphisms with multipliers
    c[0], c[1], ... (see ``expand``).
    """

    rank: int
    conjugator: str

    def apply(self, w: str) -> str:
        check_word(w, self.rank)
        return free_reduce(inverse(self.conjugator) + w + self.conjugator)

    def inverse(self) -> "Conjugation":
        return Conjugation(self.rank, inverse(self.conjugator))

    def expand(self) -> list[SecondKind]:
        return [inner(c, self.rank) for c in self.conjugator]

    def to_json(self) -> dict:
        return {"conjugator": self.conjugator}


WhiteheadAutomorphism = Union[Relabeling, SecondKind]
Step = Union[Relabeling, SecondKind, Conjugation]


def inner(a: str, k: int) -> SecondKind:
    """Pair (Sigma - {a^-1}, a): the inner automorphism x -> a^-1 x a."""
    full = (1 << 2 * k) - 1
    return SecondKind(k, a, full & ~(1 << (letter_code(a) ^ 1)))


def is_inner(tau: Step) -> bool:
    """True only for second-kind pairs with A = Sigma - {a^-1}.

    The identity pair A = {a} is trivial rather than inner, and relabelings
    are never classified as inner.
    """
    if not isinstance(tau, SecondKind):
        return False
    a = letter_code(tau.multiplier)
    return tau.mask == ((1 << 2 * tau.rank) - 1) & ~(1 << (a ^ 1))


def step_from_json(obj: dict, k: int) -> Step:
    if "conjugator" in obj:
        return Conjugation(k, obj["conjugator"])
    if "multiplier" in obj:
        return SecondKind.from_set(obj["A"], obj["multiplier"], k)
    return Relabeling.from_mapping(obj, k)


@lru_cache(maxsize=None)
def _relabelings(k: int) -> tuple[Relabeling, ...]:
    out = []
    for perm in itertools.permutations(range(k)):
        for signs in itertools.product((1, -1), repeat=k):
            out.append(
                Relabeling(
                    tuple(
                        chr(ord("a") + p) if s > 0 else chr(ord("A") + p)
                        for p, s in zip(perm, signs)
                    )
                )
            )
    return tuple(out)


@lru_cache(maxsize=None)
def _second_kind(k: int) -> tuple[SecondKind, ...]:
    out = []
    for a in range(2 * k):
        for mask in range(1 << 2 * k):
            if mask >> a & 1 and not mask >> (a ^ 1) & 1:
                out.append(SecondKind(k, code_letter(a), mask))
    return tuple(out)


def enumerate_automorphisms(k: int, kind: str = "all") -> list[WhiteheadAutomorphism]:
    """All Whitehead automorphisms of F_k of the requested kind.

    Order: relabelings by generator permutation then sign pattern (positive
    first); second-kind pairs multiplier-major in letter order, then by the
    bitmask of A ascending.  ``second_kind_noninner`` drops the identity
    pairs A = {a} and the inner pairs A = Sigma - {a^-1}.
    """
    if k < 2:
        raise ValueError("rank must be at least 2")
    if kind == "relabelings":
        return list(_relabelings(k))
    if kind == "second_kind":
        return list(_second_kind(k))
    if kind == "second_kind_noninner":
        return list(_noninner(k))
    if kind == "all":
        return list(_relabelings(k)) + list(_second_kind(k))
    raise ValueError(f"unknown automorphism filter {kind!r}")


@lru_cache(maxsize=None)
def _noninner(k: int) -> tuple[SecondKind, ...]:
    return tuple(t for t in _second_kind(k) if not t.is_trivial() and not is_inner(t))


def apply_automorphism(tau: Step, w: str) -> str:
    """Image of the freely reduced word ``w``, freely reduced."""
    return tau.apply(w)


@dataclass(frozen=True, eq=False)
class WhiteheadGraph:
    """Weighted Whitehead graph of a nonempty cyclically reduced word.

    ``labels[i][j]`` (codes i != j) counts the cyclic digrams xy with
    {x, y^-1} = {i, j}; the table is symmetric with a zero diagonal.  This
    orientation is the one for which ``length_change`` is exact under the
    x -> xa convention of ``SecondKind``; inverting every vertex gives the
    other common orientation {x^-1, y}.
    """

    rank: int
    n: int
    labels: tuple[tuple[int, ...], ...]

    def __eq__(self, other):
        if not isinstance(other, WhiteheadGraph):
            return NotImplemented
        return (self.rank, self.n, self.labels) == (other.rank, other.n, other.labels)

    def __hash__(self):
        return hash((self.rank, self.n, self.labels))

    def label(self, x: str, y: str) -> int:
        return self.labels[letter_code(x)][letter_code(y)]

    def edges(self) -> dict[tuple[str, str], int]:
        """All k(2k-1) edges keyed by letter pairs in letter order."""
        size = 2 * self.rank
        return {
            (code_letter(i), code_letter(j)): self.labels[i][j]
            for i in range(size)
            for j in range(i + 1, size)
        }

    def degree(self, x: str) -> int:
        """x.Sigma: the number of occurrences of x and x^-1."""
        return sum(self.labels[letter_code(x)])

    @cached_property
    def _degrees(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.labels)


def whitehead_graph(w: str, k: int) -> WhiteheadGraph:
    """Weighted Whitehead graph of a nonempty cyclically reduced word."""
    if not w:
        raise ValueError("Whitehead graph needs a nonempty word")
    check_word(w, k)
    size = 2 * k
    codes = letter_codes(w).astype(np.int64)
    y_inv = np.roll(codes, -1) ^ 1
    counts = np.bincount(codes * size + y_inv, minlength=size * size).reshape(size, size)
    table = counts + counts.T
    if np.any(np.diag(table)):
        raise ValueError(f"{w!r} is not cyclically reduced")
    return WhiteheadGraph(k, len(w), tuple(tuple(int(v) for v in row) for row in table.tolist()))


def length_change(g: WhiteheadGraph, tau: SecondKind) -> int:
    """||tau(w)|| - ||w|| = A.A' - a.Sigma, read off the graph of w."""
    size = 2 * g.rank
    inside = [i for i in range(size) if tau.mask >> i & 1]
    outside = [j for j in range(size) if not tau.mask >> j & 1]
    cut = 0
    for i in inside:
        row = g.labels[i]
        cut += sum(row[j] for j in outside)
    return cut - g._degrees[letter_code(tau.multiplier)]
