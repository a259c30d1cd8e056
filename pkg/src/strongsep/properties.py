"""Property checks for group-testing matrices.

Each check returns a :class:`PropertyReport`.  When the property fails the
report carries a witness built from 1-based column indices; the first
violation in lexicographic subset order is reported, so reports are
deterministic.  :func:`replay_witness` re-checks a witness against the
plain definition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import ParameterError, ScaleError
from .matrix import BinaryMatrix

__all__ = [
    "PropertyReport",
    "is_disjunct",
    "is_bar_separable",
    "is_ssm",
    "is_ssm_bruteforce",
    "check_property",
    "replay_witness",
    "BRUTEFORCE_MAX_N",
]

BRUTEFORCE_MAX_N = 20

PROPERTY_NAMES = ("dm", "sm", "ssm", "ssm-bar")


@dataclass(frozen=True)
class PropertyReport:
    """Verdict of one property check.

    ``property`` is one of ``"dm"`` (d-disjunct), ``"sm"`` (d-bar-separable),
    ``"ssm"`` (strongly d-separable) and ``"ssm-bar"``.  ``witness`` is
    ``None`` exactly when ``holds`` is true.
    """

    property: str
    d: int
    holds: bool
    witness: dict | None = field(default=None)

    def __post_init__(self):
        if self.holds != (self.witness is None):
            raise ValueError("witness must be present iff the property fails")

    def to_json(self) -> dict:
        return {"property": self.property, "d": self.d, "holds": self.holds, "witness": self.witness}


def _idx(mask_or_seq) -> list[int]:
    if isinstance(mask_or_seq, int):
        out, j = [], 1
        while mask_or_seq:
            if mask_or_seq & 1:
                out.append(j)
            mask_or_seq >>= 1
            j += 1
        return out
    return [j + 1 for j in mask_or_seq]


def _or(cols, subset) -> int:
    r = 0
    for j in subset:
        r |= cols[j]
    return r


def is_disjunct(m: BinaryMatrix, d: int) -> PropertyReport:
    """No Boolean sum of ``d`` columns covers a column outside the sum."""
    if not 1 <= d <= m.n - 1:
        raise ParameterError(f"d-disjunct needs 1 <= d <= n-1, got d={d}, n={m.n}")
    cols = m.columns
    n = m.n
    for s in combinations(range(n), d):
        r = _or(cols, s)
        inside = set(s)
        for j in range(n):
            if j not in inside and cols[j] & ~r == 0:
                return PropertyReport("dm", d, False, {"subset": _idx(s), "covered": j + 1})
    return PropertyReport("dm", d, True)


def is_bar_separable(m: BinaryMatrix, d: int) -> PropertyReport:
    """Boolean sums of all nonempty sets of at most ``d`` columns are distinct.

    Subsets are visited by size, then lexicographically; the witness pairs
    the first colliding subset with the earlier one it collides with.
    """
    if not 1 <= d <= m.n:
        raise ParameterError(f"d-bar-separable needs 1 <= d <= n, got d={d}, n={m.n}")
    cols = m.columns
    seen: dict[int, tuple[int, ...]] = {}
    for k in range(1, d + 1):
        for s in combinations(range(m.n), k):
            r = _or(cols, s)
            prev = seen.setdefault(r, s)
            if prev is not s:
                return PropertyReport("sm", d, False, {"first": _idx(prev), "second": _idx(s)})
    return PropertyReport("sm", d, True)


def _ssm_violation(cols, n: int, s: tuple[int, ...]) -> tuple[int, int] | None:
    """Return (member, frame mask) if some member of ``s`` lacks a private row."""
    r = _or(cols, s)
    covered = [j for j in range(n) if cols[j] & ~r == 0]
    for j in s:
        others = 0
        frame = 0
        for l in covered:
            if l != j:
                others |= cols[l]
                frame |= 1 << l
        # frame == 0 only for a lone singleton, which is always its own frame
        if frame and cols[j] & ~others == 0:
            return j, frame
    return None


def is_ssm(m: BinaryMatrix, d: int) -> PropertyReport:
    """Strong d-separability via the private-row characterization.

    For each ``d``-subset with Boolean sum ``r``, collect every column that
    ``r`` covers.  Each member of the subset must then own a row where it is
    the only 1 among the covered columns.  If a member has no such row, the
    covered columns minus that member form a frame (same Boolean sum) that
    omits it, which is returned as the witness.
    """
    if not 2 <= d <= m.n:
        raise ParameterError(f"d-SSM needs 2 <= d <= n, got d={d}, n={m.n}")
    return _ssm_fast(m, d, range(d, d + 1), "ssm")


def _ssm_fast(m: BinaryMatrix, d: int, sizes, name: str) -> PropertyReport:
    cols = m.columns
    for k in sizes:
        for s in combinations(range(m.n), k):
            hit = _ssm_violation(cols, m.n, s)
            if hit is not None:
                member, frame = hit
                return PropertyReport(name, d, False, {
                    "subset": _idx(s), "frame": _idx(frame), "member": member + 1,
                })
    return PropertyReport(name, d, True)


def is_ssm_bruteforce(m: BinaryMatrix, d: int, bar: bool = False) -> PropertyReport:
    """Strong separability straight from the definition.

    Computes the Boolean sum of every nonempty column subset, intersects all
    subsets sharing a sum, and checks that the intersection for each tested
    subset is the subset itself.  With ``bar=True`` every subset size from 1
    to ``d`` is tested.  Exponential in ``n``.
    """
    if m.n > BRUTEFORCE_MAX_N:
        raise ScaleError(f"oracle scale exceeded: n={m.n} > {BRUTEFORCE_MAX_N}")
    if not 1 <= d <= m.n:
        raise ParameterError(f"need 1 <= d <= n, got d={d}, n={m.n}")
    cols = m.columns
    n = m.n
    full = 1 << n
    sums = [0] * full
    meet: dict[int, int] = {}
    for mask in range(1, full):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] | cols[low.bit_length() - 1]
        r = sums[mask]
        meet[r] = meet.get(r, mask) & mask
    name = "ssm-bar" if bar else "ssm"
    sizes = range(1, d + 1) if bar else range(d, d + 1)
    for k in sizes:
        for s in combinations(range(n), k):
            f0 = 0
            for j in s:
                f0 |= 1 << j
            r = sums[f0]
            if meet[r] != f0:
                frame = next(x for x in range(1, full) if sums[x] == r and f0 & ~x)
                member = (f0 & ~frame & -(f0 & ~frame)).bit_length()
                return PropertyReport(name, d, False, {
                    "subset": _idx(s), "frame": _idx(frame), "member": member,
                })
    return PropertyReport(name, d, True)


def check_property(m: BinaryMatrix, prop: str, d: int, bruteforce: bool = False) -> PropertyReport:
    """Dispatch on a property name from ``PROPERTY_NAMES``."""
    if prop == "dm":
        return is_disjunct(m, d)
    if prop == "sm":
        return is_bar_separable(m, d)
    if prop == "ssm":
        return is_ssm_bruteforce(m, d) if bruteforce else is_ssm(m, d)
    if prop == "ssm-bar":
        if bruteforce:
            return is_ssm_bruteforce(m, d, bar=True)
        if not 1 <= d <= m.n:
            raise ParameterError(f"need 1 <= d <= n, got d={d}, n={m.n}")
        return _ssm_fast(m, d, range(1, d + 1), "ssm-bar")
    raise ParameterError(f"unknown property {prop!r}")


def replay_witness(m: BinaryMatrix, report: PropertyReport) -> bool:
    """True iff the report's witness really violates the property's definition."""
    w = report.witness
    if w is None:
        return False
    cols = m.columns

    def total(idx):
        return _or(cols, [j - 1 for j in idx])

    if report.property == "dm":
        s, j = w["subset"], w["covered"]
        return len(set(s)) == report.d and j not in s and cols[j - 1] & ~total(s) == 0
    if report.property == "sm":
        a, b = w["first"], w["second"]
        return (
            set(a) != set(b)
            and 1 <= len(a) <= report.d
            and 1 <= len(b) <= report.d
            and total(a) == total(b)
        )
    if report.property in ("ssm", "ssm-bar"):
        s, frame, member = w["subset"], w["frame"], w["member"]
        size_ok = len(s) == report.d if report.property == "ssm" else 1 <= len(s) <= report.d
        return (
            size_ok
            and bool(frame)
            and member in s
            and member not in frame
            and total(frame) == total(s)
        )
    raise ValueError(f"unknown property {report.property!r}")
