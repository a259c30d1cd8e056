"""Identification of positives from a noiseless outcome vector.

``decode_ssm`` is the two-phase elimination/private-row decoder that runs in
O(t*n) on a strongly d-separable matrix.  ``decode_dm`` is the classic cover
decoder for disjunct matrices and ``decode_sm_table`` the exhaustive lookup
for separable matrices; both serve as references.

Outcome vectors whose length differs from the number of tests are rejected.
Inputs that are not Boolean sums of at most ``d`` columns are still decoded
by the letter of each algorithm, but the answer is then not meaningful.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import NotSeparableError, ParameterError, ScaleError
from .matrix import BinaryMatrix, BooleanVector

__all__ = [
    "DecodeResult",
    "CampaignReport",
    "decode_ssm",
    "decode_dm",
    "decode_sm_table",
    "run_campaign",
    "TABLE_LIMIT",
]

TABLE_LIMIT = 10**7


@dataclass(frozen=True)
class DecodeResult:
    """``positives`` is None when the decoder reports more than ``d`` positives."""

    positives: tuple[int, ...] | None
    ops_counted: int = 0

    @property
    def too_many(self) -> bool:
        return self.positives is None

    def to_json(self) -> dict:
        if self.positives is None:
            return {"outcome": "too_many", "positives": None, "ops": self.ops_counted}
        return {"outcome": "identified", "positives": list(self.positives), "ops": self.ops_counted}


def _as_vector(m: BinaryMatrix, r) -> BooleanVector:
    if isinstance(r, str):
        r = BooleanVector.from_string(r)
    elif not isinstance(r, BooleanVector):
        r = BooleanVector.from_seq(r)
    if r.length != m.t:
        raise ValueError(f"length mismatch: outcome has {r.length} entries, matrix has {m.t} tests")
    return r


def _indices(mask: int) -> tuple[int, ...]:
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return tuple(out)


def decode_ssm(m: BinaryMatrix, r, d: int) -> DecodeResult:
    """Identify up to ``d`` positives on a strongly d-separable matrix.

    Phase one walks the negative tests and drops every item that appears in
    one; the survivors are exactly the columns covered by ``r``.  Phase two
    walks the positive tests and marks an item positive when it is the only
    survivor in that test.  Each row scan is a word-parallel AND over the
    row mask; ``ops_counted`` is the number of matrix entries those scans
    examine (``n`` per negative test, ``|S|`` per positive test), so it never
    exceeds ``t * n``.
    """
    r = _as_vector(m, r)
    rows = m.rows
    n = m.n
    survivors = (1 << n) - 1
    ops = 0
    positive_tests = []
    for i in range(m.t):
        if (r.bits >> i) & 1:
            positive_tests.append(i)
        else:
            survivors &= ~rows[i]
            ops += n
    alive = survivors.bit_count()
    found = 0
    for i in positive_tests:
        hits = rows[i] & survivors
        ops += alive
        if hits and hits & (hits - 1) == 0:
            found |= hits
    positives = _indices(found)
    if len(positives) > d:
        return DecodeResult(None, ops)
    return DecodeResult(positives, ops)


def decode_dm(m: BinaryMatrix, r, d: int) -> DecodeResult:
    """Cover decoder: every item whose column ``r`` covers is declared positive.

    All-zero columns are covered by every outcome and so always decode as
    positive.
    """
    r = _as_vector(m, r)
    found = tuple(j for j, c in enumerate(m.columns, 1) if c & ~r.bits == 0)
    ops = m.t * m.n
    if len(found) > d:
        return DecodeResult(None, ops)
    return DecodeResult(found, ops)


def decode_sm_table(m: BinaryMatrix, r, d: int) -> DecodeResult:
    """Find the unique nonempty set of at most ``d`` items whose Boolean sum is ``r``."""
    r = _as_vector(m, r)
    if d < 1:
        raise ParameterError("d must be >= 1")
    work = sum(math.comb(m.n, k) for k in range(1, min(d, m.n) + 1))
    if work > TABLE_LIMIT:
        raise ScaleError(f"table decode would enumerate {work} subsets (limit {TABLE_LIMIT})")
    cols = m.columns
    match = None
    ops = 0
    for k in range(1, min(d, m.n) + 1):
        for s in combinations(range(m.n), k):
            acc = 0
            for j in s:
                acc |= cols[j]
            ops += k * m.t
            if acc == r.bits:
                if match is not None:
                    raise NotSeparableError(
                        f"not separable: items {[j + 1 for j in match]} and "
                        f"{[j + 1 for j in s]} give the same outcome"
                    )
                match = s
    if match is None:
        return DecodeResult(None, ops)
    return DecodeResult(tuple(j + 1 for j in match), ops)


@dataclass
class CampaignReport:
    trials: int
    successes: int
    failure_examples: list[tuple[tuple[int, ...], tuple[int, ...] | None]] = field(default_factory=list)
    mean_ops: float = 0.0
    exhaustive: bool = False

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "successes": self.successes,
            "exhaustive": self.exhaustive,
            "mean_ops": self.mean_ops,
            "failure_examples": [
                {"planted": list(p), "decoded": None if got is None else list(got)}
                for p, got in self.failure_examples
            ],
        }


def _sizes(n: int, d: int, sampler) -> list[int]:
    if sampler in ("uniform", "size-uniform"):
        return list(range(1, min(d, n) + 1))
    k = int(sampler)
    if not 1 <= k <= min(d, n):
        raise ParameterError(f"fixed positive-set size {k} outside 1..{min(d, n)}")
    return [k]


def _draw(rng: np.random.Generator, n: int, sizes: list[int], sampler) -> tuple[int, ...]:
    if sampler == "uniform":
        weights = np.array([math.comb(n, k) for k in sizes], dtype=float)
        k = sizes[int(rng.choice(len(sizes), p=weights / weights.sum()))]
    else:
        k = sizes[int(rng.integers(len(sizes)))]
    picked = rng.choice(n, size=k, replace=False)
    return tuple(sorted(int(x) + 1 for x in picked))


def _trial(m: BinaryMatrix, d: int, planted: tuple[int, ...]):
    r = 0
    for j in planted:
        r |= m.columns[j - 1]
    res = decode_ssm(m, BooleanVector(r, m.t), d)
    return planted, res.positives, res.ops_counted


def _batch(args):
    m, d, seed, sampler, sizes, start, stop = args
    out = []
    for k in range(start, stop):
        rng = np.random.default_rng([seed, k])
        out.append(_trial(m, d, _draw(rng, m.n, sizes, sampler)))
    return out


MAX_FAILURE_EXAMPLES = 20
PARALLEL_MIN_TRIALS = 2000


def run_campaign(
    m: BinaryMatrix,
    d: int,
    trials: int,
    seed: int = 0,
    sampler="uniform",
    exhaustive: bool | None = None,
    workers: int = 1,
) -> CampaignReport:
    """Plant positive sets, form their outcomes and decode them with ``decode_ssm``.

    ``sampler`` is ``"uniform"`` (uniform over all nonempty sets of at most
    ``d`` items), ``"size-uniform"`` (size uniform in ``1..d``, then a uniform
    set of that size) or an int fixing the set size.  Trial ``k`` draws from
    ``numpy.random.default_rng([seed, k])`` (PCG64), so results do not depend
    on ``workers``.  ``exhaustive=None`` enumerates every admissible set when
    there are at most ``trials`` of them; ``True`` always enumerates.
    """
    if trials < 0:
        raise ParameterError("trials must be >= 0")
    if d < 1:
        raise ParameterError("d must be >= 1")
    sizes = _sizes(m.n, d, sampler)
    total = sum(math.comb(m.n, k) for k in sizes)
    if exhaustive is None:
        exhaustive = trials > 0 and total <= trials
    if exhaustive:
        results = [
            _trial(m, d, tuple(j + 1 for j in s))
            for k in sizes
            for s in combinations(range(m.n), k)
        ]
    elif workers > 1 and trials >= PARALLEL_MIN_TRIALS:
        step = math.ceil(trials / workers)
        jobs = [(m, d, seed, sampler, sizes, a, min(a + step, trials)) for a in range(0, trials, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = [x for chunk in pool.map(_batch, jobs) for x in chunk]
    else:
        results = _batch((m, d, seed, sampler, sizes, 0, trials))

    report = CampaignReport(trials=len(results), successes=0, exhaustive=bool(exhaustive))
    ops_total = 0
    for planted, got, ops in results:
        ops_total += ops
        if got == planted:
            report.successes += 1
        elif len(report.failure_examples) < MAX_FAILURE_EXAMPLES:
            report.failure_examples.append((planted, got))
    report.mean_ops = ops_total / len(results) if results else 0.0
    return report
