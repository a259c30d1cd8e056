"""q-ary strongly separable codes and their link to binary matrices.

A code is an ordered list of words over ``{0..q-1}``; word indices are
1-based in every report.  Descendant sets are kept per coordinate and never
expanded into the product set.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from itertools import combinations
from math import prod
from typing import Iterable, Sequence

from .errors import CodeNotReducedError, ParameterError, ParseError, ScaleError, SupportError
from .matrix import BinaryMatrix
from .properties import PropertyReport

__all__ = [
    "QaryCode",
    "DescendantCode",
    "FrameSet",
    "descendant",
    "is_frame",
    "is_ssc",
    "minimal_frames",
    "columns_as_code",
    "concatenate",
    "read_code",
    "write_code",
    "code_to_json",
    "code_from_json",
]

BRUTEFORCE_MAX_N = 20
MAX_FRAME_POOL = 40


@dataclass(frozen=True)
class QaryCode:
    t: int
    n: int
    q: int
    words: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.t < 1 or self.n < 1:
            raise ParameterError(f"code needs t >= 1 and n >= 1, got t={self.t}, n={self.n}")
        if self.q < 2:
            raise ParameterError(f"alphabet size must be >= 2, got q={self.q}")
        if len(self.words) != self.n:
            raise ParameterError(f"expected {self.n} words, got {len(self.words)}")
        for j, w in enumerate(self.words, 1):
            if len(w) != self.t:
                raise ParameterError(f"word {j} has length {len(w)}, expected {self.t}")
            if any(not 0 <= x < self.q for x in w):
                raise ParameterError(f"word {j} has a symbol outside 0..{self.q - 1}")

    @classmethod
    def from_words(cls, words: Sequence[Sequence[int]], q: int) -> QaryCode:
        words = tuple(tuple(int(x) for x in w) for w in words)
        if not words:
            raise ParameterError("code needs at least one word")
        return cls(len(words[0]), len(words), q, words)

    def is_reduced(self) -> bool:
        return len(set(self.words)) == self.n

    def subcode(self, indices: Iterable[int]) -> QaryCode:
        return QaryCode.from_words([self.words[j - 1] for j in indices], self.q)

    def symbol_masks(self) -> list[list[int]]:
        """``masks[i][v]`` has bit ``j`` set when word ``j + 1`` holds ``v`` at coordinate ``i + 1``."""
        masks = [[0] * self.q for _ in range(self.t)]
        for j, w in enumerate(self.words):
            for i, v in enumerate(w):
                masks[i][v] |= 1 << j
        return masks


@dataclass(frozen=True)
class DescendantCode:
    """Per-coordinate symbol sets ``C(1), ..., C(t)``."""

    sets: tuple[frozenset[int], ...]

    @property
    def size(self) -> int:
        return prod(len(s) for s in self.sets)

    def __contains__(self, word) -> bool:
        return len(word) == len(self.sets) and all(v in s for v, s in zip(word, self.sets))


@dataclass(frozen=True)
class FrameSet:
    base: tuple[int, ...]
    frames: tuple[tuple[int, ...], ...]
    minimal_only: bool = True


def _check_support(code: QaryCode, s: Iterable[int]) -> tuple[int, ...]:
    idx = tuple(sorted(set(s)))
    if not idx:
        raise SupportError("empty support")
    if idx[0] < 1 or idx[-1] > code.n:
        raise SupportError(f"bad index (n={code.n})")
    return idx


def descendant(code: QaryCode, s: Iterable[int]) -> DescendantCode:
    idx = _check_support(code, s)
    return DescendantCode(tuple(
        frozenset(code.words[j - 1][i] for j in idx) for i in range(code.t)
    ))


def is_frame(code: QaryCode, base: Iterable[int], candidate: Iterable[int], method: str = "descendant") -> bool:
    """Does ``candidate`` have the same descendant code as ``base``?

    ``method="or_and"`` uses the binary-only test: equal coordinate-wise OR
    and equal coordinate-wise AND.
    """
    base = _check_support(code, base)
    candidate = _check_support(code, candidate)
    if method == "descendant":
        return descendant(code, base) == descendant(code, candidate)
    if method == "or_and":
        if code.q != 2:
            raise ParameterError("the OR/AND frame test needs a binary code")

        def fold(idx):
            ws = [code.words[j - 1] for j in idx]
            return (
                tuple(max(col) for col in zip(*ws)),
                tuple(min(col) for col in zip(*ws)),
            )

        return fold(base) == fold(candidate)
    raise ParameterError(f"unknown frame test {method!r}")


def _bits(mask: int) -> list[int]:
    out, j = [], 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out


def is_ssc(code: QaryCode, d: int, method: str = "fast") -> PropertyReport:
    """Strong d-bar-separability of a q-ary code.

    The fast method collects, for each set ``C0`` of at most ``d`` words, all
    words whose every symbol already occurs in ``C0`` at that coordinate.
    Every member of ``C0`` must hold some symbol that no other collected word
    shares at the same coordinate; otherwise the collected words minus that
    member still have the descendant code of ``C0``.  ``method="bruteforce"``
    enumerates all subsets of the code instead (``n <= 20``).
    """
    if not code.is_reduced():
        raise CodeNotReducedError("code not reduced: repeated words")
    if not 1 <= d <= code.n:
        raise ParameterError(f"need 1 <= d <= n, got d={d}, n={code.n}")
    if method == "fast":
        return _ssc_fast(code, d)
    if method == "bruteforce":
        return _ssc_bruteforce(code, d)
    raise ParameterError(f"unknown method {method!r}")


def _ssc_fast(code: QaryCode, d: int) -> PropertyReport:
    masks = code.symbol_masks()
    words = code.words
    t = code.t
    everyone = (1 << code.n) - 1
    for k in range(1, d + 1):
        for s in combinations(range(code.n), k):
            pool = everyone
            for i in range(t):
                allowed = 0
                for j in s:
                    allowed |= masks[i][words[j][i]]
                pool &= allowed
            for j in s:
                me = 1 << j
                if pool == me:
                    continue
                if not any(masks[i][words[j][i]] & pool == me for i in range(t)):
                    return PropertyReport("ssc", d, False, {
                        "subset": [x + 1 for x in s],
                        "frame": _bits(pool & ~me),
                        "member": j + 1,
                    })
    return PropertyReport("ssc", d, True)


def _ssc_bruteforce(code: QaryCode, d: int) -> PropertyReport:
    if code.n > BRUTEFORCE_MAX_N:
        raise ScaleError(f"oracle scale exceeded: n={code.n} > {BRUTEFORCE_MAX_N}")
    n, t = code.n, code.t
    singles = [tuple(1 << v for v in w) for w in code.words]
    full = 1 << n
    keys: list[tuple[int, ...]] = [(0,) * t] * full
    meet: dict[tuple[int, ...], int] = {}
    for mask in range(1, full):
        low = mask & -mask
        prev = keys[mask ^ low]
        one = singles[low.bit_length() - 1]
        key = tuple(a | b for a, b in zip(prev, one))
        keys[mask] = key
        meet[key] = meet.get(key, mask) & mask
    for k in range(1, d + 1):
        for s in combinations(range(n), k):
            f0 = sum(1 << j for j in s)
            key = keys[f0]
            if meet[key] != f0:
                frame = next(x for x in range(1, full) if keys[x] == key and f0 & ~x)
                miss = f0 & ~frame
                return PropertyReport("ssc", d, False, {
                    "subset": [j + 1 for j in s],
                    "frame": _bits(frame),
                    "member": (miss & -miss).bit_length(),
                })
    return PropertyReport("ssc", d, True)


def minimal_frames(code: QaryCode, s: Iterable[int], prune: bool = True) -> FrameSet:
    """All minimal frames of the words ``s``.

    A frame must realise every symbol of ``desc(C0)`` at every coordinate
    using only words inside ``desc(C0)``, so minimal frames are the minimal
    covers of those (coordinate, symbol) pairs.  The search always extends
    by a word that covers the first uncovered pair (coordinates in order)
    and abandons branches containing a word made redundant by later picks.
    With ``prune=True`` it also stops at ``t*|s| - t + 1`` words, the
    largest size a minimal frame can reach.
    """
    base = _check_support(code, s)
    desc = descendant(code, base)
    q = code.q
    pool = [j for j in range(1, code.n + 1) if code.words[j - 1] in desc]
    if len(pool) > MAX_FRAME_POOL:
        raise ScaleError(f"{len(pool)} candidate words exceed the frame-search limit {MAX_FRAME_POOL}")
    target = 0
    for i, syms in enumerate(desc.sets):
        for v in syms:
            target |= 1 << (i * q + v)
    cover = {j: sum(1 << (i * q + v) for i, v in enumerate(code.words[j - 1])) for j in pool}
    limit = code.t * len(base) - code.t + 1 if prune else len(pool)
    found: set[tuple[int, ...]] = set()

    def redundant(chosen: list[int]) -> bool:
        for j in chosen:
            rest = 0
            for l in chosen:
                if l != j:
                    rest |= cover[l]
            if cover[j] & ~rest == 0:
                return True
        return False

    def extend(chosen: list[int], covered: int) -> None:
        if covered == target:
            found.add(tuple(sorted(chosen)))
            return
        if len(chosen) >= limit:
            return
        missing = target & ~covered
        e = missing & -missing
        for j in pool:
            if j in chosen or not cover[j] & e:
                continue
            nxt = chosen + [j]
            if redundant(nxt):
                continue
            extend(nxt, covered | cover[j])

    extend([], 0)
    frames = tuple(sorted(found, key=lambda f: (len(f), f)))
    return FrameSet(base, frames, True)


def columns_as_code(m: BinaryMatrix) -> QaryCode:
    """The columns of a binary matrix, read as a ``(t, n, 2)`` code."""
    words = tuple(tuple((c >> i) & 1 for i in range(m.t)) for c in m.columns)
    if len(set(words)) != len(words):
        raise CodeNotReducedError("matrix has duplicate columns")
    return QaryCode(m.t, m.n, 2, words)


def concatenate(code: QaryCode) -> BinaryMatrix:
    """One-hot expansion: coordinate ``i`` becomes a block of ``q`` rows.

    Row ``(i - 1) * q + v + 1`` of column ``j`` is 1 iff word ``j`` has
    symbol ``v`` at coordinate ``i``.
    """
    if not code.is_reduced():
        raise CodeNotReducedError("code not reduced: repeated words")
    q = code.q
    cols = tuple(
        sum(1 << (i * q + v) for i, v in enumerate(w)) for w in code.words
    )
    return BinaryMatrix(code.t * q, code.n, cols)


_HEADER = re.compile(r"([1-9][0-9]*) ([1-9][0-9]*) ([1-9][0-9]*)")


def read_code(text: str) -> QaryCode:
    """Parse ``"<t> <n> <q>"`` followed by ``n`` lines of ``t`` symbols."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParseError("empty input", 1)
    header = _HEADER.fullmatch(lines[0])
    if header is None:
        raise ParseError(f"bad header {lines[0]!r}, expected '<t> <n> <q>'", 1)
    t, n, q = (int(g) for g in header.groups())
    if q < 2:
        raise ParseError("alphabet size must be >= 2", 1)
    if len(lines) - 1 < n:
        raise ParseError(f"header says {n} words, found {len(lines) - 1}", len(lines) + 1)
    if len(lines) - 1 > n:
        raise ParseError(f"header says {n} words, found {len(lines) - 1}", n + 2)
    words = []
    for k, line in enumerate(lines[1:], 2):
        parts = line.split(" ")
        if len(parts) != t or not all(p.isdigit() for p in parts):
            raise ParseError(f"expected {t} space-separated symbols", k)
        w = tuple(int(p) for p in parts)
        if any(v >= q for v in w):
            raise ParseError(f"symbol outside 0..{q - 1}", k)
        words.append(w)
    return QaryCode(t, n, q, tuple(words))


def write_code(code: QaryCode) -> str:
    body = "".join(" ".join(str(v) for v in w) + "\n" for w in code.words)
    return f"{code.t} {code.n} {code.q}\n" + body


def code_to_json(code: QaryCode) -> dict:
    return {"t": code.t, "n": code.n, "q": code.q, "words": [list(w) for w in code.words]}


def code_from_json(obj: dict | str) -> QaryCode:
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    try:
        t, n, q, words = obj["t"], obj["n"], obj["q"], obj["words"]
    except (KeyError, TypeError):
        raise ParseError("JSON code needs keys 't', 'n', 'q', 'words'") from None
    try:
        return QaryCode(t, n, q, tuple(tuple(w) for w in words))
    except (ParameterError, TypeError) as exc:
        raise ParseError(str(exc)) from None
