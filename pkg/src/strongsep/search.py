"""Largest matrices with a given property for small numbers of tests.

The search picks columns from the ``2**t - 1`` nonzero vectors in
lexicographic order (as row tuples), always extending with a column later
than the last one picked.  Properties are tested in their hereditary form so
that a failing set can be pruned with all its supersets:

* ``dm``: no column is covered by the Boolean sum of ``<= d`` others;
* ``sm``: the sums of all nonempty sets of ``<= d`` columns are distinct;
* ``ssm``: the private-row condition for every set of ``<= d`` columns.

For ``n > d`` these coincide with the usual fixed-``d`` definitions.  Adding
a column re-tests only the subsets it can affect.  The budget counts subset
tests, so it does not depend on the machine.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations, product

from .errors import ParameterError
from .matrix import BinaryMatrix, write_matrix
from .properties import check_property

__all__ = ["SearchResult", "search_max", "verify_certificate", "rate_table", "rate_entry", "PROPERTIES"]

PROPERTIES = ("ssm", "dm", "sm")
EXHAUSTIVE_MAX_T = 8


@dataclass(frozen=True)
class SearchResult:
    property: str
    d: int
    t: int
    max_n: int
    certificate: BinaryMatrix
    exhaustive: bool
    checks: int = 0

    def to_json(self) -> dict:
        return {
            "property": self.property,
            "d": self.d,
            "t": self.t,
            "max_n": self.max_n,
            "exhaustive": self.exhaustive,
            "checks": self.checks,
            "rate": rate_entry(self.t, self.max_n),
            "certificate": write_matrix(self.certificate),
        }


class _BudgetExhausted(Exception):
    pass


class _Checker:
    def __init__(self, prop: str, d: int, budget: int | None):
        self.prop = prop
        self.d = d
        self.budget = budget
        self.used = 0

    def tick(self, k: int = 1) -> None:
        self.used += k
        if self.budget is not None and self.used > self.budget:
            raise _BudgetExhausted

    def can_add(self, chosen: list[int], x: int) -> bool:
        if self.prop == "dm":
            return self._dm(chosen, x)
        if self.prop == "sm":
            return self._sm(chosen, x)
        return self._ssm(chosen, x)

    def _dm(self, chosen, x) -> bool:
        d = self.d
        for k in range(0, min(d, len(chosen)) + 1):
            for s in combinations(chosen, k):
                self.tick()
                r = 0
                for c in s:
                    r |= c
                # x covered by up to d old columns
                if k >= 1 and x & ~r == 0:
                    return False
                # an old column covered by x plus up to d-1 others
                if k < d:
                    rx = r | x
                    for c in chosen:
                        if c not in s and c & ~rx == 0:
                            return False
        return True

    def _sm(self, chosen, x) -> bool:
        d = self.d
        old: set[int] = set()
        for k in range(1, min(d, len(chosen)) + 1):
            for s in combinations(chosen, k):
                self.tick()
                r = 0
                for c in s:
                    r |= c
                old.add(r)
        new: set[int] = set()
        for k in range(0, min(d - 1, len(chosen)) + 1):
            for s in combinations(chosen, k):
                self.tick()
                r = x
                for c in s:
                    r |= c
                if r in old or r in new:
                    return False
                new.add(r)
        return True

    def _ssm(self, chosen, x) -> bool:
        cols = chosen + [x]
        n = len(cols)
        last = n - 1
        for k in range(1, min(self.d, n) + 1):
            for s in combinations(range(n), k):
                r = 0
                for j in s:
                    r |= cols[j]
                if s[-1] != last and x & ~r:
                    continue
                self.tick()
                covered = [j for j in range(n) if cols[j] & ~r == 0]
                for j in s:
                    others = 0
                    for l in covered:
                        if l != j:
                            others |= cols[l]
                    if len(covered) > 1 and cols[j] & ~others == 0:
                        return False
        return True


def _candidates(t: int) -> list[int]:
    out = []
    for bits in product((0, 1), repeat=t):
        if any(bits):
            out.append(sum(b << i for i, b in enumerate(bits)))
    return out


def _counting_cap(d: int, t: int) -> int:
    """Largest n with sum_{k<=d} C(n, k) <= 2**t - 1 (distinct nonzero sums)."""
    limit = 2**t - 1
    n = 1
    while sum(math.comb(n + 1, k) for k in range(1, d + 1)) <= limit:
        n += 1
    return min(n, limit)


def search_max(
    prop: str,
    d: int,
    t: int,
    budget: int | None = None,
    seed: int = 0,
    restarts: int = 0,
    initial: BinaryMatrix | None = None,
) -> SearchResult:
    """Largest number of columns of a ``t``-row matrix with the property.

    ``budget`` caps the number of subset tests (None = unlimited).  Before the
    exact search, ``restarts`` seeded greedy passes (random order, lighter
    columns first) and the
    optional ``initial`` matrix supply a starting incumbent; they only speed
    up pruning.  Absorbing ``initial`` is not charged to the budget.  ``exhaustive`` is true iff the whole canonical tree was
    explored (or the counting cap was reached), i.e. ``max_n`` is proven.
    """
    if prop not in PROPERTIES:
        raise ParameterError(f"unknown property {prop!r}; expected one of {PROPERTIES}")
    if d < 2:
        raise ParameterError("d must be >= 2")
    if t < 1:
        raise ParameterError("t must be >= 1")
    if budget is None and t > EXHAUSTIVE_MAX_T:
        raise ParameterError(f"exhaustive search supports t <= {EXHAUSTIVE_MAX_T}; pass a budget")

    checker = _Checker(prop, d, budget)
    pool = _candidates(t)
    pool.sort(key=lambda c: tuple((c >> i) & 1 for i in range(t)))
    cap = _counting_cap(d, t)
    best: list[int] = [pool[0]]

    if initial is not None and initial.t != t:
        raise ParameterError("initial matrix has the wrong number of rows")

    rng = random.Random(seed)
    exhaustive = False
    if initial is not None:
        # absorbing a supplied incumbent is not charged to the budget
        free = _Checker(prop, d, None)
        grown: list[int] = []
        for c in sorted(initial.columns, key=lambda c: tuple((c >> i) & 1 for i in range(t))):
            if c and c not in grown and free.can_add(grown, c):
                grown.append(c)
        if len(grown) > len(best):
            best = grown

    try:
        for _ in range(restarts):
            order = pool[:]
            rng.shuffle(order)
            # light columns of weight >= 2 first; unit vectors block the most
            order.sort(key=lambda c: c.bit_count() if c & (c - 1) else t + 1)
            grown = []
            for c in order:
                if checker.can_add(grown, c):
                    grown.append(c)
            if len(grown) > len(best):
                best = grown

        def dfs(chosen: list[int], start: int) -> None:
            nonlocal best
            if len(chosen) > len(best):
                best = chosen[:]
            if len(best) >= cap:
                return
            for idx in range(start, len(pool)):
                if len(chosen) + len(pool) - idx <= len(best):
                    return
                c = pool[idx]
                if checker.can_add(chosen, c):
                    chosen.append(c)
                    dfs(chosen, idx + 1)
                    chosen.pop()
                    if len(best) >= cap:
                        return

        if len(best) < cap:
            dfs([], 0)
        exhaustive = True
    except _BudgetExhausted:
        pass

    cert = BinaryMatrix(t, len(best), tuple(sorted(best, key=lambda c: tuple((c >> i) & 1 for i in range(t)))))
    return SearchResult(prop, d, t, len(best), cert, exhaustive, checker.used)


def verify_certificate(result: SearchResult) -> bool:
    """Re-check a certificate with the property checkers."""
    m = result.certificate
    if len(set(m.columns)) != m.n or 0 in m.columns:
        return False
    prop, d = result.property, result.d
    if prop == "dm":
        return m.n <= 1 or check_property(m, "dm", min(d, m.n - 1)).holds
    if prop == "sm":
        return check_property(m, "sm", min(d, m.n)).holds
    if m.n >= d:
        return check_property(m, "ssm", d).holds
    return check_property(m, "ssm-bar", m.n).holds if m.n > 1 else True


def rate_entry(t: int, max_n: int) -> float:
    return math.log2(max_n) / t


def rate_table(
    d: int,
    t_range,
    prop: str = "ssm",
    budget: int | None = None,
    restarts: int = 0,
) -> list[dict]:
    """``log2(max_n) / t`` for each ``t``; budgeted entries are lower bounds."""
    rows = []
    for t in t_range:
        res = search_max(prop, d, t, budget=budget, restarts=restarts)
        rows.append({
            "t": t,
            "max_n": res.max_n,
            "rate": rate_entry(t, res.max_n),
            "exhaustive": res.exhaustive,
        })
    return rows
