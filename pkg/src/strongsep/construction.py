"""Random codes with expurgation, and the rate lower bound they give for 2-SSMs.

Pipeline: draw a random ``(t, n, q)`` code, delete words until what is left
is a strongly 2-bar-separable code, then expand it one-hot into a
``tq x n'`` binary matrix, which is a 2-SSM.

Words are deleted by following concrete violations: the first set ``C0``
(by size, then lexicographically) that has a frame missing one of its words
loses that word.  The resulting code is re-verified before it is returned.

Randomness comes from ``numpy.random.default_rng(seed)`` (PCG64 seeded via
``SeedSequence``), which gives the same stream on every platform.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations, product

import numpy as np

from .codes import QaryCode, concatenate, is_ssc
from .errors import ParameterError
from .matrix import BinaryMatrix

__all__ = [
    "ExpurgationLog",
    "RateBoundReport",
    "random_code",
    "expurgate_to_ssc",
    "build_2ssm",
    "matrix_rate",
    "rate_bound",
    "rate_term",
    "kernel_case1",
    "kernel_case2",
    "coordinate_match_probability",
    "known_bounds",
]


@dataclass
class ExpurgationLog:
    t: int
    q: int
    initial_n: int
    final_n: int
    seed: int | None = None
    d: int = 2
    removed: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)


def random_code(t: int, n: int, q: int, seed: int) -> QaryCode:
    """``n`` words of length ``t`` with i.i.d. uniform symbols; repeats are possible."""
    if t < 1 or n < 1:
        raise ParameterError(f"need t >= 1 and n >= 1, got t={t}, n={n}")
    if q < 2:
        raise ParameterError(f"need q >= 2, got q={q}")
    rng = np.random.default_rng(seed)
    table = rng.integers(0, q, size=(n, t))
    return QaryCode(t, n, q, tuple(tuple(int(x) for x in row) for row in table))


def expurgate_to_ssc(code: QaryCode, d: int = 2, seed: int | None = None) -> tuple[QaryCode, ExpurgationLog]:
    """Delete words until the code is strongly d-bar-separable.

    Repeated words are dropped first (later copies go).  Then sets of at most
    ``d`` surviving words are scanned by size and lexicographically; when a
    set has a frame that misses one of its words, the smallest such word is
    deleted and the scan moves on.  Deleting a word only removes frames, so
    sets already passed stay valid and a single pass suffices.  Indices in
    the log refer to the input code.
    """
    if d < 1:
        raise ParameterError("d must be >= 1")
    log = ExpurgationLog(t=code.t, q=code.q, initial_n=code.n, final_n=code.n, seed=seed, d=d)
    first_seen: dict[tuple[int, ...], int] = {}
    alive = 0
    for j, w in enumerate(code.words):
        if w in first_seen:
            log.removed.append({"index": j + 1, "reason": "duplicate", "duplicate_of": first_seen[w] + 1})
        else:
            first_seen[w] = j
            alive |= 1 << j

    masks = code.symbol_masks()
    words = code.words
    for k in range(2, d + 1):
        for s in combinations(range(code.n), k):
            if any(not (alive >> j) & 1 for j in s):
                continue
            pool = alive
            for i in range(code.t):
                allowed = 0
                for j in s:
                    allowed |= masks[i][words[j][i]]
                pool &= allowed
            for j in s:
                me = 1 << j
                if any(masks[i][words[j][i]] & pool == me for i in range(code.t)):
                    continue
                frame = pool & ~me
                log.removed.append({
                    "index": j + 1,
                    "reason": "frame-without-word",
                    "subset": [x + 1 for x in s],
                    "frame": [x + 1 for x in range(code.n) if (frame >> x) & 1],
                })
                alive &= ~me
                for i in range(code.t):
                    masks[i][words[j][i]] &= ~me
                break

    kept = [w for j, w in enumerate(words) if (alive >> j) & 1]
    result = QaryCode(code.t, len(kept), code.q, tuple(kept))
    log.final_n = result.n
    if result.n >= d and not is_ssc(result, d).holds:
        raise AssertionError("expurgation left a code that fails the SSC check")
    return result, log


def build_2ssm(t: int, n: int, q: int, seed: int) -> tuple[BinaryMatrix, ExpurgationLog]:
    """Random code, expurgation to a 2-bar-SSC, one-hot expansion to a ``tq``-row 2-SSM."""
    code = random_code(t, n, q, seed)
    reduced, log = expurgate_to_ssc(code, 2, seed=seed)
    return concatenate(reduced), log


def matrix_rate(m: BinaryMatrix) -> float:
    return math.log2(m.n) / m.t


def kernel_case1(m: int, q: int) -> int:
    """``q**(m+1)`` times the per-coordinate probability that ``m+1`` random
    words containing ``c_i`` show exactly the symbols of ``{c, c_i}``."""
    return (2**m - 1) * q - (2**m - 2)


def kernel_case2(m: int, q: int) -> int:
    """Same as :func:`kernel_case1` with ``c_i`` excluded from the symbol set."""
    return (2**m - 2) * q - (2**m - 3)


def coordinate_match_probability(m: int, q: int, case: int) -> Fraction:
    """Exact per-coordinate probability, by enumerating all symbol assignments.

    Words ``c`` and ``c_0 .. c_m`` get independent uniform symbols.  Case 1:
    the symbols of ``{c_0..c_m}`` equal those of ``{c, c_0}``.  Case 2: the
    symbols of ``{c_1..c_m}`` equal those of ``{c, c_0}``.  Cost ``q**(m+2)``.
    """
    if case not in (1, 2):
        raise ParameterError("case must be 1 or 2")
    hits = 0
    for c, *others in product(range(q), repeat=m + 2):
        target = {c, others[0]}
        seen = set(others) if case == 1 else set(others[1:])
        hits += seen == target
    return Fraction(hits, q ** (m + 2))


def rate_term(m: int, q: int) -> float:
    return math.log2(kernel_case1(m, q)) / ((m + 1) * q)


@dataclass(frozen=True)
class RateBoundReport:
    """``bound = log2(q)/q - max(max_{m<=m_cap} term(m), 1/q)``.

    ``m_star`` is None when no finite ``m`` up to the cap beats the
    ``m -> infinity`` limit ``1/q`` of the penalty term.
    """

    q: int
    m_cap: int
    m_star: int | None
    term: float
    bound: float
    asymptotic_term: float
    terms: tuple[float, ...]

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "m_cap": self.m_cap,
            "m_star": self.m_star,
            "term": self.term,
            "bound": self.bound,
            "rounded": round(self.bound, 4),
            "asymptotic_term": self.asymptotic_term,
        }


def rate_bound(q: int = 4, m_cap: int = 64) -> RateBoundReport:
    """Lower bound on the rate of 2-SSMs from random ``q``-ary codes.

    The penalty ``term(m)`` comes from the union/Markov bound on bad words;
    the case-2 kernel is always smaller than the case-1 kernel, so only the
    latter enters.  For ``q >= 4`` the terms peak at small ``m`` and then
    decrease towards ``1/q``; for ``q <= 3`` they increase towards ``1/q``
    and the limit is the supremum.
    """
    if q < 2:
        raise ParameterError(f"need q >= 2, got q={q}")
    if m_cap < 1:
        raise ParameterError(f"need m_cap >= 1, got m_cap={m_cap}")
    terms = tuple(rate_term(m, q) for m in range(1, m_cap + 1))
    best = max(range(m_cap), key=lambda k: terms[k])
    tail = 1 / q
    if terms[best] > tail:
        m_star, worst = best + 1, terms[best]
    else:
        m_star, worst = None, tail
    return RateBoundReport(
        q=q,
        m_cap=m_cap,
        m_star=m_star,
        term=worst,
        bound=math.log2(q) / q - worst,
        asymptotic_term=tail,
        terms=terms,
    )


# Published constants; the improved 2-SSM lower bound is recomputed below.
_KNOWN = {
    "R_D(2)": {"lower": 0.1814, "upper": 0.3219, "family": "2-disjunct"},
    "R_S(2bar)": {"lower": 0.3135, "upper": 0.4998, "family": "2-bar-separable"},
    "R(2)": {"lower": 0.1814, "upper": 0.4998, "family": "2-strongly-separable", "improved_lower": 0.2213},
}


def known_bounds() -> dict[str, dict]:
    """Known rate intervals for d = 2, plus this package's computed 2-SSM bound."""
    table = {k: dict(v) for k, v in _KNOWN.items()}
    table["R(2)"]["computed_lower"] = rate_bound(4).bound
    return table
