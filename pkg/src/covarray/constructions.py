"""Explicit binary covering arrays: standard maximal 2-CAs, the hypercube
construction of strength n-2, the order-12 Hadamard array, and fixed
matrices used in the uniqueness arguments.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb

import numpy as np

from .core import CoveringArray
from .errors import DegreeTooSmall, SizeTooSmall, UnknownName

__all__ = [
    "HypercubeSubset",
    "standard_maximal_2ca",
    "johnson_entringer",
    "hadamard_12",
    "hadamard_3ca_12x11",
    "fixed_matrix",
    "FIXED_MATRIX_NAMES",
    "residue_class",
    "r_n",
    "s_n_set",
    "hypercube_c4_check",
]


def standard_maximal_2ca(m: int) -> CoveringArray:
    """All-ones first row over every (floor(m/2)-1)-subset column of the other m-1 rows.

    Columns come in ``itertools.combinations`` order, so for m = 6 this is
    exactly the matrix A of the 12 x 11 uniqueness argument.
    """
    if m < 4:
        raise SizeTooSmall(f"standard maximal 2-CA needs m >= 4, got {m}")
    k = m // 2 - 1
    cols = []
    for ones in combinations(range(m - 1), k):
        col = [1] + [0] * (m - 1)
        for i in ones:
            col[i + 1] = 1
        cols.append(col)
    assert len(cols) == comb(m - 1, k)
    return CoveringArray(np.array(cols).T, 2)


# ---------------------------------------------------------------------------
# hypercube construction


@dataclass(frozen=True)
class HypercubeSubset:
    n: int
    members: frozenset  # of n-tuples over {0, 1}

    def __len__(self):
        return len(self.members)

    def translate(self, c) -> "HypercubeSubset":
        c = tuple(c)
        return HypercubeSubset(self.n, frozenset(tuple(a ^ b for a, b in zip(v, c)) for v in self.members))

    def as_array(self) -> CoveringArray:
        return CoveringArray(sorted(self.members), 2)


def _build_r_table() -> dict[int, int]:
    table = {}
    for res in range(6):
        hits = [r for r in range(3) if res in {(2 * r) % 6, (2 * r - 1) % 6}]
        assert len(hits) == 1, f"r_n ambiguous for n = {res} mod 6: {hits}"
        table[res] = hits[0]
    return table


_R_TABLE = _build_r_table()


def r_n(n: int) -> int:
    """The r in {0, 1, 2} with n = 2r or 2r - 1 (mod 6)."""
    return _R_TABLE[n % 6]


def residue_class(n: int, j: int) -> list[tuple[int, ...]]:
    """Vertices of Q_n whose weight is j mod 3, in lexicographic order."""
    return [v for v in product((0, 1), repeat=n) if sum(v) % 3 == j % 3]


def johnson_entringer(n: int) -> CoveringArray:
    """floor(2^n / 3) x n array of strength n - 2: rows of weight r_n + 1 mod 3."""
    if n < 4:
        raise DegreeTooSmall(f"construction needs n >= 4, got {n}")
    rows = residue_class(n, r_n(n) + 1)
    assert len(rows) == 2**n // 3
    return CoveringArray(rows, 2)


def s_n_set(n: int) -> HypercubeSubset:
    """S_n = V^{r_n} union V^{r_n - 1}; the complement of the rows above."""
    if n < 1:
        raise DegreeTooSmall(f"need n >= 1, got {n}")
    r = r_n(n)
    members = frozenset(residue_class(n, r)) | frozenset(residue_class(n, r - 1))
    return HypercubeSubset(n, members)


def hypercube_c4_check(s: HypercubeSubset) -> bool:
    """True iff the subgraph of Q_n induced by ``s`` contains a 4-cycle.

    Every 4-cycle of Q_n is a 2-dimensional face {a, a+e_i, a+e_j, a+e_i+e_j}.
    """
    pts = {sum(b << k for k, b in enumerate(v)) for v in s.members}
    n = s.n
    for a in pts:
        for i in range(n):
            bi = 1 << i
            if a & bi or a ^ bi not in pts:
                continue
            for j in range(i + 1, n):
                bj = 1 << j
                if a & bj:
                    continue
                if a ^ bj in pts and a ^ bi ^ bj in pts:
                    return True
    return False


# ---------------------------------------------------------------------------
# Hadamard


# Paley construction for p = 11, normalized (first row and column all +1).
_H12 = (
    "++++++++++++",
    "+--+---+++-+",
    "++--+---+++-",
    "+-+--+---+++",
    "++-+--+---++",
    "+++-+--+---+",
    "++++-+--+---",
    "+-+++-+--+--",
    "+--+++-+--+-",
    "+---+++-+--+",
    "++---+++-+--",
    "+-+---+++-+-",
)


def hadamard_12() -> np.ndarray:
    """A normalized Hadamard matrix of order 12 as a +-1 integer array."""
    return np.array([[1 if ch == "+" else -1 for ch in row] for row in _H12], dtype=np.int64)


def hadamard_3ca_12x11() -> CoveringArray:
    """Drop the first column of the normalized H_12 and map -1 to 0."""
    h = hadamard_12()[:, 1:]
    return CoveringArray((h + 1) // 2, 2)


# ---------------------------------------------------------------------------
# fixed matrices


_FIXED = {
    "A": (
        "1111111111",
        "1111000000",
        "1000111000",
        "0100100110",
        "0010010101",
        "0001001011",
    ),
    "B1": (
        "1100001101",
        "1010100011",
        "1001010110",
        "0110011010",
        "0101110001",
        "0011101100",
    ),
    "B2": (
        "1100010011",
        "1010001110",
        "1001100101",
        "0110101001",
        "0101011100",
        "0011110010",
    ),
    "D": (
        "1100",
        "1010",
        "1001",
        "0110",
        "0101",
        "0011",
    ),
    "E": (
        "0000",
        "0000",
        "0111",
        "1011",
        "1101",
        "1110",
    ),
    "CA5x4": (
        "0000",
        "0111",
        "1011",
        "1101",
        "1110",
    ),
    "CA10x5": (
        "10000",
        "10111",
        "11011",
        "11101",
        "11110",
        "01000",
        "00100",
        "00010",
        "00001",
        "01111",
    ),
}

FIXED_MATRIX_NAMES = tuple(_FIXED)


def fixed_matrix(name: str) -> CoveringArray:
    try:
        rows = _FIXED[name]
    except KeyError:
        raise UnknownName(f"unknown fixed matrix {name!r}; choose from {FIXED_MATRIX_NAMES}") from None
    return CoveringArray([[int(ch) for ch in r] for r in rows], 2)
