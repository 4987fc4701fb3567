"""Words in a free group F_k.

Words are plain strings: generator a_i is the i-th lowercase letter and its
inverse is the matching uppercase letter, so ``"abAB"`` is the commutator
a_1 a_2 a_1^-1 a_2^-1.  Inversion is ``w[::-1].swapcase()``.

Letters are ordered a < A < b < B < ...; this order fixes the canonical
(least) rotation of a cyclic word.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

import numpy as np

MAX_RANK = 26


class WordError(ValueError):
    """Raised for text that is not a word over the requested alphabet."""


class Letter(NamedTuple):
    index: int  # 1..k
    sign: int  # +1 or -1

    def inverse(self) -> "Letter":
        return Letter(self.index, -self.sign)

    @property
    def char(self) -> str:
        c = string.ascii_lowercase[self.index - 1]
        return c if self.sign > 0 else c.upper()

    @classmethod
    def from_char(cls, c: str) -> "Letter":
        if c in string.ascii_lowercase:
            return cls(ord(c) - ord("a") + 1, 1)
        if c in string.ascii_uppercase:
            return cls(ord(c) - ord("A") + 1, -1)
        raise WordError(f"unknown character {c!r}")


@dataclass(frozen=True)
class Alphabet:
    rank: int

    def __post_init__(self):
        if not 2 <= self.rank <= MAX_RANK:
            raise ValueError(f"rank must be in 2..{MAX_RANK}, got {self.rank}")

    @property
    def letters(self) -> str:
        """All 2k letters in the fixed order a, A, b, B, ..."""
        return letter_order(self.rank)

    @property
    def generators(self) -> str:
        return string.ascii_lowercase[: self.rank]

    def validate(self, text: str) -> str:
        check_word(text, self.rank)
        return text


@lru_cache(maxsize=None)
def letter_order(k: int) -> str:
    return "".join(c + c.upper() for c in string.ascii_lowercase[:k])


def letter_code(c: str) -> int:
    """Position of a letter in the order a, A, b, B, ...; inverse is ``code ^ 1``."""
    if c.islower():
        return 2 * (ord(c) - ord("a"))
    return 2 * (ord(c) - ord("A")) + 1


def code_letter(i: int) -> str:
    c = chr(ord("a") + (i >> 1))
    return c.upper() if i & 1 else c


@lru_cache(maxsize=None)
def _word_pattern(k: int) -> re.Pattern:
    gens = string.ascii_lowercase[:k]
    return re.compile(f"[{gens}{gens.upper()}]*")


def check_word(text: str, k: int) -> None:
    """Raise WordError unless every character of ``text`` is a letter of F_k."""
    if _word_pattern(k).fullmatch(text):
        return
    for c in text:
        letter = Letter.from_char(c)  # raises on non-letters
        if letter.index > k:
            raise WordError(f"letter {c!r} outside the alphabet of rank {k}")
    raise WordError(f"invalid word {text!r}")  # pragma: no cover


def parse_word(text: str, alphabet: Alphabet | int) -> list[Letter]:
    """Transliterate ``text`` into letters, without any reduction."""
    k = alphabet.rank if isinstance(alphabet, Alphabet) else alphabet
    check_word(text, k)
    return [Letter.from_char(c) for c in text]


def format_word(letters: Iterable[Letter]) -> str:
    return "".join(x.char for x in letters)


def inverse(w: str) -> str:
    return w[::-1].swapcase()


_CANCELLING = re.compile("|".join(c + c.upper() + "|" + c.upper() + c for c in string.ascii_lowercase))
_CODE_BYTES = bytes.maketrans(
    string.ascii_lowercase.encode() + string.ascii_uppercase.encode(),
    bytes(range(0, 52, 2)) + bytes(range(1, 52, 2)),
)


def letter_codes(w: str) -> np.ndarray:
    """Letter codes of ``w`` as a uint8 array (a=0, A=1, b=2, ...)."""
    return np.frombuffer(w.encode("ascii").translate(_CODE_BYTES), dtype=np.uint8)


def _has_cancellation(w: str) -> bool:
    if len(w) < 256:
        return _CANCELLING.search(w) is not None
    codes = letter_codes(w)
    return bool(np.any((codes[:-1] ^ 1) == codes[1:]))


def free_reduce(letters: str | Sequence[Letter]) -> str:
    """Freely reduce a word given as text or as a letter sequence."""
    w = letters if isinstance(letters, str) else format_word(letters)
    if not _has_cancellation(w):
        return w
    out: list[str] = []
    for c in w:
        if out and out[-1] == c.swapcase():
            out.pop()
        else:
            out.append(c)
    return "".join(out)


def is_reduced(w: str) -> bool:
    return not _has_cancellation(w)


def is_cyclically_reduced(w: str) -> bool:
    return is_reduced(w) and not (len(w) > 1 and w[0] == w[-1].swapcase())


def cyclic_reduce(w: str) -> tuple[str, str]:
    """Split a freely reduced ``w`` as conjugator . core . conjugator^-1.

    Returns ``(core, conjugator)`` with ``core`` cyclically reduced.
    """
    n = len(w)
    t = 0
    while 2 * t + 1 < n and w[t] == w[n - 1 - t].swapcase():
        t += 1
    return w[t : n - t], w[:t]


def cyclic_length(w: str) -> int:
    return len(cyclic_reduce(free_reduce(w))[0])


def rotate(w: str, i: int) -> str:
    if not w:
        return w
    i %= len(w)
    return w[i:] + w[:i]


_ORDER_KEYS = str.maketrans(
    {c: chr(letter_code(c)) for c in string.ascii_letters}
)


def least_rotation_index(w: str) -> int:
    """Booth's algorithm: start of the least rotation under a < A < b < B ..."""
    s = w.translate(_ORDER_KEYS)
    s += s
    n = len(s)
    f = [-1] * n
    k = 0
    for j in range(1, n):
        c = s[j]
        i = f[j - k - 1]
        while i != -1 and c != s[k + i + 1]:
            if c < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if i == -1 and c != s[k + i + 1]:
            if c < s[k + i + 1]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k


def canonical_rotation(w: str) -> str:
    """Least rotation of a cyclically reduced word; used as its class key."""
    if not w:
        return w
    return rotate(w, least_rotation_index(w))


def prefix_function(s: str) -> list[int]:
    """KMP failure function: pi[i] is the longest proper border of s[:i+1]."""
    pi = [0] * len(s)
    j = 0
    for i in range(1, len(s)):
        while j and s[i] != s[j]:
            j = pi[j - 1]
        if s[i] == s[j]:
            j += 1
        pi[i] = j
    return pi


def kmp_find(pattern: str, text: str) -> int:
    """Index of the first occurrence of ``pattern`` in ``text``, or -1."""
    if not pattern:
        return 0
    pi = prefix_function(pattern)
    j = 0
    m = len(pattern)
    for i, c in enumerate(text):
        while j and c != pattern[j]:
            j = pi[j - 1]
        if c == pattern[j]:
            j += 1
            if j == m:
                return i - m + 1
    return -1


_HASH_BASE = np.uint64(0x9E3779B97F4A7C15)  # odd, so invertible mod 2**64
_HASH_MIN_LENGTH = 1 << 15
_HASH_MAX_MISSES = 4


def _hash_rotation_offset(u: str, v: str) -> int | None:
    """Rotation offset via polynomial hashes of all rotations of v at once.

    Arithmetic is mod 2**64 through uint64 wraparound.  With h(s) = sum s_j B^j
    and P[i] the hash of v[:i], rotation i of v hashes to B^-i (S + (B^n - 1) P[i]),
    so candidates solve S + (B^n - 1) P[i] == h(u) B^i.  Every candidate is
    verified by direct comparison; None means too many collisions and the
    caller should fall back.
    """
    n = len(v)
    with np.errstate(over="ignore"):
        pw = np.full(n + 1, _HASH_BASE, dtype=np.uint64)
        pw[0] = 1
        np.cumprod(pw, out=pw)
        cu = letter_codes(u).astype(np.uint64) + np.uint64(1)
        cv = letter_codes(v).astype(np.uint64) + np.uint64(1)
        hu = np.sum(cu * pw[:n], dtype=np.uint64)
        prefix = np.empty(n + 1, dtype=np.uint64)
        prefix[0] = 0
        np.cumsum(cv * pw[:n], out=prefix[1:])
        lhs = prefix[:n] * (pw[n] - np.uint64(1)) + prefix[n]
        rhs = pw[:n] * hu
    misses = 0
    for i in np.flatnonzero(lhs == rhs).tolist():
        if v[i:] == u[: n - i] and v[:i] == u[n - i :]:
            return i
        misses += 1
        if misses >= _HASH_MAX_MISSES:
            return None
    return -1


def rotation_offset(u: str, v: str) -> int:
    """Return the least i with ``rotate(v, i) == u``, or -1 if there is none.

    Short words use substring search of u in vv, which CPython runs with a
    linear-time two-way matcher.  Its constant factor varies about fourfold
    with the input, so long words go through ``_hash_rotation_offset``, whose
    cost is a fixed number of numpy passes; it falls back to the search if
    hash collisions pile up.
    """
    if len(u) != len(v):
        return -1
    if not u:
        return 0
    if len(u) >= _HASH_MIN_LENGTH:
        i = _hash_rotation_offset(u, v)
        if i is not None:
            return i
    i = (v + v).find(u)
    return -1 if i < 0 else i % len(v)


def is_rotation(u: str, v: str) -> bool:
    return rotation_offset(u, v) >= 0


def is_conjugate(u: str, v: str) -> bool:
    """Conjugacy in F_k: equal cyclic cores up to rotation."""
    cu, _ = cyclic_reduce(free_reduce(u))
    cv, _ = cyclic_reduce(free_reduce(v))
    return is_rotation(cu, cv)


def smallest_period(w: str) -> int:
    if not w:
        raise ValueError("empty word has no period")
    return len(w) - prefix_function(w)[-1]


def is_proper_power(w: str) -> bool:
    """True iff the cyclically reduced ``w`` equals u^m for some m >= 2."""
    if not w:
        raise ValueError("proper-power test needs a nonempty word")
    p = smallest_period(w)
    return p < len(w) and len(w) % p == 0


def _cyclic_count(n: int, k: int) -> int:
    # trace of T^n, T = 2k x 2k all-ones with zeros on inverse pairs
    size = 2 * k

    def mul(x, y):
        return [
            [sum(x[i][t] * y[t][j] for t in range(size)) for j in range(size)]
            for i in range(size)
        ]

    t = [[0 if j == i ^ 1 else 1 for j in range(size)] for i in range(size)]
    result = [[int(i == j) for j in range(size)] for i in range(size)]
    e = n
    while e:
        if e & 1:
            result = mul(result, t)
        t = mul(t, t)
        e >>= 1
    return sum(result[i][i] for i in range(size))


def count_words(n: int, k: int, mode: str = "reduced") -> int:
    """Exact counts: freely reduced words of length n ("reduced"), of length
    at most n ("ball"), or cyclically reduced words of length n ("cyclic")."""
    if n < 0:
        raise ValueError("length must be non-negative")
    if k < 2:
        raise ValueError("rank must be at least 2")
    if mode == "reduced":
        return 1 if n == 0 else 2 * k * (2 * k - 1) ** (n - 1)
    if mode == "ball":
        return 1 + k * ((2 * k - 1) ** n - 1) // (k - 1)
    if mode == "cyclic":
        return 1 if n == 0 else _cyclic_count(n, k)
    raise ValueError(f"unknown counting mode {mode!r}")
