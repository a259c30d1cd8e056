"""Binary testing matrices and Boolean vectors.

Vectors and columns are packed into Python integers: bit ``i - 1`` holds the
entry of row ``i``.  Cover tests and Boolean sums are therefore single
big-integer operations regardless of ``t``.  Row masks use the transposed
packing (bit ``j - 1`` holds column ``j``) and are built lazily.

Column indices are 1-based everywhere outside this module's internals.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable, Sequence

from .errors import ParseError, SupportError

__all__ = [
    "BooleanVector",
    "BinaryMatrix",
    "boolean_sum",
    "covers",
    "support_set",
    "read_matrix",
    "write_matrix",
    "matrix_from_json",
    "matrix_to_json",
]


def _pack(entries: Iterable[int]) -> tuple[int, int]:
    bits = 0
    length = 0
    for i, e in enumerate(entries):
        if e not in (0, 1):
            raise ValueError(f"entry {i + 1} is {e!r}, expected 0 or 1")
        bits |= e << i
        length = i + 1
    return bits, length


@dataclass(frozen=True)
class BooleanVector:
    """A 0/1 vector of fixed length, packed into an int."""

    bits: int
    length: int

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("vector length must be >= 1")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits do not fit the stated length")

    @classmethod
    def from_seq(cls, entries: Iterable[int]) -> BooleanVector:
        bits, length = _pack(entries)
        return cls(bits, length)

    @classmethod
    def from_string(cls, s: str) -> BooleanVector:
        if not s or set(s) - {"0", "1"}:
            raise ValueError(f"not a 0/1 string: {s!r}")
        return cls.from_seq(int(ch) for ch in s)

    @classmethod
    def zeros(cls, length: int) -> BooleanVector:
        return cls(0, length)

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        """Entry of row ``i`` (1-based)."""
        if not 1 <= i <= self.length:
            raise IndexError(i)
        return (self.bits >> (i - 1)) & 1

    def __iter__(self):
        return ((self.bits >> i) & 1 for i in range(self.length))

    def __or__(self, other: BooleanVector) -> BooleanVector:
        _check_lengths(self, other)
        return BooleanVector(self.bits | other.bits, self.length)

    def __and__(self, other: BooleanVector) -> BooleanVector:
        _check_lengths(self, other)
        return BooleanVector(self.bits & other.bits, self.length)

    def covers(self, other: BooleanVector) -> bool:
        return covers(self, other)

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.length) if (self.bits >> i) & 1)

    def to_tuple(self) -> tuple[int, ...]:
        return tuple(self)

    def to_string(self) -> str:
        return "".join(str(e) for e in self)

    def __str__(self) -> str:
        return self.to_string()


def _check_lengths(a: BooleanVector, b: BooleanVector) -> None:
    if a.length != b.length:
        raise ValueError(f"length mismatch: {a.length} != {b.length}")


def covers(a: BooleanVector, b: BooleanVector) -> bool:
    """True iff every 1 of ``b`` is also a 1 of ``a``."""
    _check_lengths(a, b)
    return b.bits & ~a.bits == 0


@dataclass(frozen=True)
class BinaryMatrix:
    """A ``t x n`` 0/1 matrix stored column-wise.

    ``columns[j - 1]`` is the packed column of item ``j``.  Duplicate and
    all-zero columns are allowed; property checks report them.
    """

    t: int
    n: int
    columns: tuple[int, ...]

    def __post_init__(self):
        if self.t < 1 or self.n < 1:
            raise ValueError(f"matrix must be at least 1x1, got {self.t}x{self.n}")
        if len(self.columns) != self.n:
            raise ValueError(f"expected {self.n} columns, got {len(self.columns)}")
        for j, c in enumerate(self.columns, 1):
            if c < 0 or c >> self.t:
                raise ValueError(f"column {j} does not fit in {self.t} rows")

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int] | BooleanVector]) -> BinaryMatrix:
        if not columns:
            raise ValueError("matrix needs at least one column")
        packed = []
        t = None
        for col in columns:
            v = col if isinstance(col, BooleanVector) else BooleanVector.from_seq(col)
            if t is None:
                t = v.length
            elif v.length != t:
                raise ValueError("columns have different lengths")
            packed.append(v.bits)
        return cls(t, len(packed), tuple(packed))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int] | str]) -> BinaryMatrix:
        if not rows:
            raise ValueError("matrix needs at least one row")
        n = len(rows[0])
        cols = [0] * n
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError(f"row {i + 1} has length {len(row)}, expected {n}")
            for j, e in enumerate(row):
                e = int(e)
                if e not in (0, 1):
                    raise ValueError(f"entry ({i + 1},{j + 1}) is not 0/1")
                cols[j] |= e << i
        return cls(len(rows), n, tuple(cols))

    @classmethod
    def identity(cls, n: int) -> BinaryMatrix:
        return cls(n, n, tuple(1 << j for j in range(n)))

    @cached_property
    def rows(self) -> tuple[int, ...]:
        """Row masks: bit ``j - 1`` of ``rows[i - 1]`` is entry ``(i, j)``."""
        out = [0] * self.t
        for j, c in enumerate(self.columns):
            i = 0
            while c:
                if c & 1:
                    out[i] |= 1 << j
                c >>= 1
                i += 1
        return tuple(out)

    @property
    def shape(self) -> tuple[int, int]:
        return self.t, self.n

    def column(self, j: int) -> BooleanVector:
        if not 1 <= j <= self.n:
            raise SupportError(f"bad index {j} (n={self.n})")
        return BooleanVector(self.columns[j - 1], self.t)

    def entry(self, i: int, j: int) -> int:
        return (self.columns[j - 1] >> (i - 1)) & 1

    def row_strings(self) -> list[str]:
        return [
            "".join("1" if (c >> i) & 1 else "0" for c in self.columns)
            for i in range(self.t)
        ]

    def to_lists(self) -> list[list[int]]:
        return [[int(ch) for ch in r] for r in self.row_strings()]

    def pad_rows(self, extra: int) -> BinaryMatrix:
        """Append ``extra`` all-zero tests."""
        return BinaryMatrix(self.t + extra, self.n, self.columns)

    def select(self, indices: Iterable[int]) -> BinaryMatrix:
        return BinaryMatrix.from_columns([self.column(j) for j in indices])


def support_set(m: BinaryMatrix, s: Iterable[int]) -> tuple[int, ...]:
    """Validate a set of 1-based column indices; returns it sorted."""
    idx = tuple(sorted(set(s)))
    if not idx:
        raise SupportError("empty support")
    if idx[0] < 1 or idx[-1] > m.n:
        bad = idx[0] if idx[0] < 1 else idx[-1]
        raise SupportError(f"bad index {bad} (n={m.n})")
    return idx


def boolean_sum(m: BinaryMatrix, s: Iterable[int]) -> BooleanVector:
    """Coordinate-wise OR of the selected columns."""
    idx = support_set(m, s)
    cols = m.columns
    return BooleanVector(reduce(lambda a, j: a | cols[j - 1], idx, 0), m.t)


_HEADER = re.compile(r"([1-9][0-9]*) ([1-9][0-9]*)")


def read_matrix(text: str) -> BinaryMatrix:
    """Parse the ``"<t> <n>"`` + rows text format."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParseError("empty input", 1)
    header = _HEADER.fullmatch(lines[0])
    if header is None:
        raise ParseError(f"bad header {lines[0]!r}, expected '<t> <n>'", 1)
    t, n = int(header.group(1)), int(header.group(2))
    body = lines[1:]
    for k, row in enumerate(body[:t]):
        lineno = k + 2
        if len(row) != n:
            raise ParseError(f"row has {len(row)} characters, expected {n}", lineno)
        bad = next((ch for ch in row if ch not in "01"), None)
        if bad is not None:
            raise ParseError(f"invalid character {bad!r}", lineno)
    if len(body) != t:
        raise ParseError(f"header says {t} rows, found {len(body)}", min(len(body), t) + 2)
    return BinaryMatrix.from_rows(body)


def write_matrix(m: BinaryMatrix) -> str:
    return f"{m.t} {m.n}\n" + "".join(r + "\n" for r in m.row_strings())


def matrix_to_json(m: BinaryMatrix) -> dict:
    return {"t": m.t, "n": m.n, "rows": m.row_strings()}


def matrix_from_json(obj: dict | str) -> BinaryMatrix:
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    try:
        t, n, rows = obj["t"], obj["n"], obj["rows"]
    except (KeyError, TypeError):
        raise ParseError("JSON matrix needs keys 't', 'n', 'rows'") from None
    if not isinstance(rows, list) or len(rows) != t:
        raise ParseError(f"header says {t} rows, found {len(rows) if isinstance(rows, list) else '?'}")
    for k, row in enumerate(rows):
        if not isinstance(row, str) or len(row) != n or set(row) - {"0", "1"}:
            raise ParseError(f"row {k + 1} is not a 0/1 string of length {n}")
    return BinaryMatrix.from_rows(rows)
