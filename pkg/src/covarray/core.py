"""Covering arrays over B_q = {0, ..., q-1} and the primitives built on them.

Column and row indices are 1-based wherever a user passes them in
(selectors, column_metrics); arrays themselves are plain 0-based numpy
grids.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadSelector,
    DimensionMismatch,
    LengthMismatch,
    NotBinary,
    ParseError,
    StrengthOutOfRange,
    SymbolOutOfRange,
)

__all__ = [
    "CoveringArray",
    "CoverageReport",
    "ResidualSelector",
    "RowDistanceStructure",
    "ColumnMetrics",
    "new_array",
    "verify_coverage",
    "is_covering",
    "residual",
    "column_metrics",
    "hamming_distance",
    "row_distance_structure",
    "weight_bounds",
    "parse_ca",
    "format_ca",
    "read_ca",
    "write_ca",
]


class CoveringArray:
    """An immutable m x n matrix over B_q.

    The name follows the usual convention in the literature: the object is
    a candidate array; whether it actually covers at strength t is decided
    by :func:`verify_coverage`.
    """

    __slots__ = ("_entries", "q", "_col_masks", "_sym_masks", "_row_ints", "_hash")

    def __init__(self, entries, q: int = 2):
        grid = _grid(entries)
        if grid.ndim != 2:
            raise DimensionMismatch(f"entries must be a 2-D grid, got ndim={grid.ndim}")
        if q < 2:
            raise SymbolOutOfRange(f"alphabet order must be >= 2, got {q}")
        m, n = grid.shape
        if m < 1 or n < 1:
            raise DimensionMismatch(f"array must be at least 1x1, got {m}x{n}")
        if grid.min() < 0 or grid.max() >= q:
            bad = np.argwhere((grid < 0) | (grid >= q))[0]
            raise SymbolOutOfRange(
                f"entry at row {bad[0] + 1}, column {bad[1] + 1} is "
                f"{grid[tuple(bad)]}, outside B_{q}"
            )
        grid = grid.astype(np.uint8)
        grid.flags.writeable = False
        self._entries = grid
        self.q = int(q)
        self._col_masks = None
        self._sym_masks = None
        self._row_ints = None
        self._hash = None

    # -- shape -------------------------------------------------------------
    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def m(self) -> int:
        return self._entries.shape[0]

    @property
    def n(self) -> int:
        return self._entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._entries.shape

    @property
    def is_binary(self) -> bool:
        return self.q == 2

    def rows(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in r) for r in self._entries]

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in c) for c in self._entries.T]

    # -- bit-vector views --------------------------------------------------
    @property
    def column_masks(self) -> tuple[int, ...]:
        """Per-column bitmask of rows holding a nonzero symbol (bit i = row i)."""
        if self._col_masks is None:
            weights = 1 << np.arange(self.m, dtype=object)
            nz = self._entries != 0
            self._col_masks = tuple(int((weights * nz[:, j]).sum()) for j in range(self.n))
        return self._col_masks

    @property
    def symbol_masks(self) -> tuple[tuple[int, ...], ...]:
        """``symbol_masks[j][s]`` is the bitmask of rows where column j holds s."""
        if self._sym_masks is None:
            out = []
            for j in range(self.n):
                col = self._entries[:, j]
                masks = [0] * self.q
                for i, s in enumerate(col):
                    masks[s] |= 1 << i
                out.append(tuple(masks))
            self._sym_masks = tuple(out)
        return self._sym_masks

    @property
    def row_ints(self) -> tuple[int, ...]:
        """Binary rows packed as integers (bit j = column j). q = 2 only."""
        if self.q != 2:
            raise NotBinary("row_ints is defined for binary arrays only")
        if self._row_ints is None:
            weights = 1 << np.arange(self.n, dtype=object)
            self._row_ints = tuple(int((weights * r).sum()) for r in self._entries.astype(object))
        return self._row_ints

    def weights(self) -> list[int]:
        return [int(w) for w in (self._entries != 0).sum(axis=0)]

    # -- transforms --------------------------------------------------------
    def complement(self) -> "CoveringArray":
        if self.q != 2:
            raise NotBinary("complement is defined for binary arrays only")
        return CoveringArray(1 - self._entries.astype(np.int64), 2)

    def delete_columns(self, cols: Iterable[int]) -> "CoveringArray":
        """Drop the given 1-based columns."""
        drop = {c - 1 for c in cols}
        keep = [j for j in range(self.n) if j not in drop]
        return CoveringArray(self._entries[:, keep], self.q)

    def hstack(self, other: "CoveringArray") -> "CoveringArray":
        return CoveringArray(np.hstack([self._entries, other.entries]), max(self.q, other.q))

    def vstack(self, other: "CoveringArray") -> "CoveringArray":
        return CoveringArray(np.vstack([self._entries, other.entries]), max(self.q, other.q))

    # -- value semantics ---------------------------------------------------
    def key(self) -> tuple:
        return (self.q, self.m, self.n, self._entries.tobytes())

    def __eq__(self, other):
        if not isinstance(other, CoveringArray):
            return NotImplemented
        return self.key() == other.key()

    def __lt__(self, other):
        # Row-major symbol-string order on arrays of one shape.
        return (self.q, self.m, self.n, self.rows()) < (other.q, other.m, other.n, other.rows())

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        return f"CoveringArray(m={self.m}, n={self.n}, q={self.q})"

    def __str__(self):
        return format_ca(self)


def _grid(entries) -> np.ndarray:
    try:
        return np.array(entries, dtype=np.int64, copy=True)
    except (ValueError, TypeError) as exc:
        raise DimensionMismatch(f"entries do not form a rectangular integer grid: {exc}") from None


def new_array(m: int, n: int, q: int, entries) -> CoveringArray:
    """Validated constructor checking the declared dimensions against the grid."""
    grid = _grid(entries)
    if grid.ndim != 2 or grid.shape != (m, n):
        raise DimensionMismatch(f"expected a {m}x{n} grid, got shape {grid.shape}")
    return CoveringArray(grid, q)


# ---------------------------------------------------------------------------
# coverage


@dataclass(frozen=True)
class CoverageReport:
    strength: int
    is_covering: bool
    missing: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] = ()

    def first_missing(self):
        return self.missing[0] if self.missing else None


def _check_strength(array: CoveringArray, t: int) -> None:
    if not 1 <= t <= array.n:
        raise StrengthOutOfRange(f"strength must lie in [1, {array.n}], got {t}")


def _iter_uncovered(array: CoveringArray, t: int):
    """Yield (0-based columns, pattern) pairs with no matching row, in lex order."""
    masks = array.symbol_masks
    q = array.q
    full = (1 << array.m) - 1
    for cols in combinations(range(array.n), t):
        # extend pattern masks one column at a time; an empty prefix mask
        # marks every pattern below it as missing
        layer = [((), full)]
        for c in cols:
            nxt = []
            cm = masks[c]
            for pat, msk in layer:
                for s in range(q):
                    nxt.append((pat + (s,), msk & cm[s]))
            layer = nxt
        for pat, msk in layer:
            if not msk:
                yield cols, pat


def verify_coverage(array: CoveringArray, t: int) -> CoverageReport:
    """Report every (columns, pattern) pair missing from ``array`` at strength t.

    Column indices in the witnesses are 1-based.
    """
    _check_strength(array, t)
    missing = tuple(
        (tuple(c + 1 for c in cols), pat) for cols, pat in _iter_uncovered(array, t)
    )
    return CoverageReport(t, not missing, missing)


def is_covering(array: CoveringArray, t: int) -> bool:
    """Early-exit form of :func:`verify_coverage`."""
    _check_strength(array, t)
    if array.m < array.q ** t:
        return False
    for _ in _iter_uncovered(array, t):
        return False
    return True


# ---------------------------------------------------------------------------
# residuals and metrics


@dataclass(frozen=True)
class ResidualSelector:
    """Assignments ``column = symbol`` with 1-based column indices."""

    assignments: tuple[tuple[int, int], ...] = ()

    @classmethod
    def of(cls, *pairs: tuple[int, int], **kw) -> "ResidualSelector":
        items = list(pairs)
        for name, v in kw.items():
            if not name.startswith("c"):
                raise BadSelector(f"keyword selectors look like c1=1, got {name}")
            items.append((int(name[1:]), v))
        return cls(tuple(items))


def residual(array: CoveringArray, sel: ResidualSelector | Sequence[tuple[int, int]]) -> CoveringArray:
    """Rows matching every assignment, with the assigned columns deleted.

    Raises DimensionMismatch when no row (or no column) survives, since an
    empty matrix is not an array.
    """
    pairs = sel.assignments if isinstance(sel, ResidualSelector) else tuple(sel)
    cols = [c for c, _ in pairs]
    if len(set(cols)) != len(cols):
        raise BadSelector(f"duplicate column in selector {pairs}")
    for c, v in pairs:
        if not 1 <= c <= array.n:
            raise BadSelector(f"column {c} out of range 1..{array.n}")
        if not 0 <= v < array.q:
            raise BadSelector(f"symbol {v} outside B_{array.q}")
    if not pairs:
        return array
    e = array.entries
    rows = np.ones(array.m, dtype=bool)
    for c, v in pairs:
        rows &= e[:, c - 1] == v
    keep = [j for j in range(array.n) if j + 1 not in set(cols)]
    sub = e[rows][:, keep]
    if sub.shape[0] == 0 or sub.shape[1] == 0:
        raise DimensionMismatch(f"residual {pairs} is empty ({sub.shape[0]}x{sub.shape[1]})")
    return CoveringArray(sub, array.q)


class ColumnMetrics(tuple):
    """(weight, support, complement) for one column; support is 1-based."""

    __slots__ = ()

    def __new__(cls, weight, support, complement):
        return super().__new__(cls, (weight, support, complement))

    weight = property(lambda self: self[0])
    support = property(lambda self: self[1])
    complement = property(lambda self: self[2])


def column_metrics(array: CoveringArray, i: int, complement: bool = False) -> ColumnMetrics:
    """Weight and support of the 1-based column ``i``; optionally its complement."""
    if not 1 <= i <= array.n:
        raise BadSelector(f"column {i} out of range 1..{array.n}")
    col = array.entries[:, i - 1]
    support = frozenset(int(r) + 1 for r in np.flatnonzero(col))
    comp = None
    if complement:
        if array.q != 2:
            raise NotBinary("column complement needs q = 2")
        comp = tuple(int(1 - x) for x in col)
    return ColumnMetrics(len(support), support, comp)


def hamming_distance(u: Sequence[int], v: Sequence[int]) -> int:
    if len(u) != len(v):
        raise LengthMismatch(f"vectors of length {len(u)} and {len(v)}")
    return sum(1 for a, b in zip(u, v) if a != b)


@dataclass(frozen=True)
class RowDistanceStructure:
    """Sorted multiset of per-row distance profiles.

    Each vector has n + 1 slots; slot 0 counts the other rows identical to
    the row, slot j the rows at Hamming distance j.
    """

    vectors: tuple[tuple[int, ...], ...] = field(default_factory=tuple)

    def as_counter(self) -> Counter:
        return Counter(self.vectors)

    def to_text(self) -> str:
        return "\n".join(" ".join(map(str, v)) for v in self.vectors) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RowDistanceStructure":
        vecs = [tuple(int(x) for x in line.split()) for line in text.splitlines() if line.strip()]
        return cls(tuple(sorted(vecs)))


def row_distance_structure(array: CoveringArray) -> RowDistanceStructure:
    e = array.entries
    # pairwise Hamming distances between rows
    dist = (e[:, None, :] != e[None, :, :]).sum(axis=2)
    vecs = []
    for i in range(array.m):
        counts = np.bincount(dist[i], minlength=array.n + 1)
        counts[0] -= 1  # the row itself
        vecs.append(tuple(int(x) for x in counts))
    return RowDistanceStructure(tuple(sorted(vecs)))


def weight_bounds(m: int, n: int, q: int, t: int) -> tuple[int, int]:
    """Column weight range ((q-1) CAN(t-1, n-1, q), m - CAN(t-1, n-1, q))."""
    from .bounds import known_can_table

    can = known_can_table().exact(t - 1, n - 1, q)
    return (q - 1) * can, m - can


# ---------------------------------------------------------------------------
# ".ca" text format


def format_ca(array: CoveringArray) -> str:
    if array.q > 10:
        raise ParseError("the .ca format stores single-digit symbols (q <= 10)")
    lines = [f"{array.m} {array.n} {array.q}"]
    lines += ["".join(str(int(x)) for x in row) for row in array.entries]
    return "\n".join(lines) + "\n"


def parse_ca(text: str) -> CoveringArray:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty .ca document")
    head = lines[0].split()
    if len(head) != 3:
        raise ParseError(f"header must be 'm n q', got {lines[0]!r}")
    try:
        m, n, q = (int(x) for x in head)
    except ValueError as exc:
        raise ParseError(f"non-integer header {lines[0]!r}") from exc
    body = ["".join(ln.split()) for ln in lines[1:]]
    if len(body) != m:
        raise ParseError(f"header declares {m} rows, found {len(body)}")
    grid = []
    for k, row in enumerate(body, start=2):
        if len(row) != n or not row.isdigit():
            raise ParseError(f"line {k}: expected {n} digits, got {row!r}")
        grid.append([int(ch) for ch in row])
    return new_array(m, n, q, grid)


def read_ca(path) -> CoveringArray:
    with open(path) as fh:
        return parse_ca(fh.read())


def write_ca(array: CoveringArray, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_ca(array))

