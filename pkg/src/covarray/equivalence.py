"""Equivalence of covering arrays under row permutations, column
permutations and per-column symbol permutations, plus an exact canonical
form.

The canonical form is the lexicographically least array (read row by row)
in the orbit of the input.  It is found by a depth-first search that places
one row at a time.  Columns not yet separated by the placed rows form
cells; each candidate next row is rendered by sorting its symbols inside
every cell, and only candidates giving the least rendering are expanded.
Automorphisms found at equal leaves prune sibling branches.

Permutation payloads of :class:`EquivalenceOp` are 0-based; the text
format and the helper constructors are 1-based.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .core import CoveringArray, row_distance_structure
from .errors import BudgetExceeded, DomainMismatch, ParseError

__all__ = [
    "EquivalenceOp",
    "CanonicalCertificate",
    "apply_op",
    "apply_ops",
    "canonical_form",
    "are_equivalent",
    "invariant_signature",
    "format_ops",
    "parse_ops",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 5_000_000

ROW, COL, SYM = "row", "col", "sym"


@dataclass(frozen=True)
class EquivalenceOp:
    """One generator of the equivalence group.

    kind "row": output row i is input row perm[i].
    kind "col": output column j is input column perm[j].
    kind "sym": every symbol s in ``column`` becomes perm[s].
    """

    kind: str
    perm: tuple[int, ...]
    column: int | None = None

    def __post_init__(self):
        if self.kind not in (ROW, COL, SYM):
            raise DomainMismatch(f"unknown op kind {self.kind!r}")
        if sorted(self.perm) != list(range(len(self.perm))):
            raise DomainMismatch(f"payload {self.perm} is not a permutation")
        if (self.kind == SYM) != (self.column is not None):
            raise DomainMismatch("only symbol ops carry a column")

    @classmethod
    def swap_rows(cls, i: int, j: int, m: int) -> "EquivalenceOp":
        """Transposition of 1-based rows i and j in an m-row array."""
        p = list(range(m))
        p[i - 1], p[j - 1] = p[j - 1], p[i - 1]
        return cls(ROW, tuple(p))

    @classmethod
    def swap_cols(cls, i: int, j: int, n: int) -> "EquivalenceOp":
        p = list(range(n))
        p[i - 1], p[j - 1] = p[j - 1], p[i - 1]
        return cls(COL, tuple(p))

    @classmethod
    def invert(cls, column: int, q: int = 2) -> "EquivalenceOp":
        """Symbol reversal s -> q-1-s on the 1-based column (complement for q = 2)."""
        return cls(SYM, tuple(range(q - 1, -1, -1)), column - 1)


def apply_op(array: CoveringArray, op: EquivalenceOp) -> CoveringArray:
    e = array.entries
    if op.kind == ROW:
        if len(op.perm) != array.m:
            raise DomainMismatch(f"row permutation of length {len(op.perm)} on {array.m} rows")
        return CoveringArray(e[list(op.perm)], array.q)
    if op.kind == COL:
        if len(op.perm) != array.n:
            raise DomainMismatch(f"column permutation of length {len(op.perm)} on {array.n} columns")
        return CoveringArray(e[:, list(op.perm)], array.q)
    if len(op.perm) != array.q or not 0 <= op.column < array.n:
        raise DomainMismatch(f"symbol op {op} does not fit a q={array.q}, n={array.n} array")
    out = np.array(e, dtype=np.int64)
    out[:, op.column] = np.asarray(op.perm)[e[:, op.column]]
    return CoveringArray(out, array.q)


def apply_ops(array: CoveringArray, ops: Iterable[EquivalenceOp]) -> CoveringArray:
    for op in ops:
        array = apply_op(array, op)
    return array


# ---------------------------------------------------------------------------
# invariants


def invariant_signature(array: CoveringArray) -> tuple:
    """Shape, row distance structure and column symbol-count profile.

    Equal for equivalent arrays; unequal signatures prove inequivalence.
    """
    rds = row_distance_structure(array).vectors
    if array.q == 2:
        cols = tuple(sorted(min(w, array.m - w) for w in array.weights()))
    else:
        e = array.entries
        cols = tuple(sorted(
            tuple(sorted(np.bincount(e[:, j], minlength=array.q).tolist()))
            for j in range(array.n)
        ))
    return (array.m, array.n, array.q, rds, cols)


# ---------------------------------------------------------------------------
# canonical form


@dataclass
class CanonicalCertificate:
    canonical: CoveringArray
    ops: list[EquivalenceOp]
    automorphisms: list[tuple[int, ...]] = field(default_factory=list)
    nodes: int = 0

    def replay(self, array: CoveringArray) -> CoveringArray:
        return apply_ops(array, self.ops)


class _Search:
    """Shared bookkeeping: budget, best leaf and automorphism generators."""

    def __init__(self, m: int, budget: int | None):
        self.m = m
        self.budget = budget
        self.nodes = 0
        self.best_levels = None
        self.best_order = None
        self.best_state = None
        self.gens: list[tuple[int, ...]] = []

    def tick(self):
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise BudgetExceeded(f"canonical form search exceeded {self.budget} nodes", nodes=self.nodes)

    def leaf(self, levels, order, state):
        if self.best_levels is None or levels < self.best_levels:
            self.best_levels = list(levels)
            self.best_order = list(order)
            self.best_state = state
            return
        # equal leaf: best_order[i] -> order[i] is an automorphism on rows
        perm = [0] * self.m
        for a, b in zip(self.best_order, order):
            perm[a] = b
        perm = tuple(perm)
        if any(i != p for i, p in enumerate(perm)) and perm not in self.gens:
            self.gens.append(perm)

    def pruned(self, levels) -> bool:
        return self.best_levels is not None and levels > self.best_levels[: len(levels)]

    def same_orbit(self, idx: int, explored: Sequence[int], fixed: Sequence[int]) -> bool:
        if not explored or not self.gens:
            return False
        gens = [g for g in self.gens if all(g[f] == f for f in fixed)]
        if not gens:
            return False
        targets = set(explored)
        seen = {idx}
        stack = [idx]
        while stack:
            x = stack.pop()
            for g in gens:
                y = g[x]
                if y in targets:
                    return True
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return False


def _distinct(indices: Sequence[int], content) -> list[int]:
    seen = set()
    out = []
    for i in indices:
        c = content[i]
        if c not in seen:
            seen.add(c)
            out.append(i)
    return out


def _canon_binary(array: CoveringArray, budget):
    rows = array.row_ints
    m, n = array.m, array.n
    full = (1 << n) - 1
    s = _Search(m, budget)

    def dfs(x, order, remaining, cells, levels):
        s.tick()
        if not remaining:
            s.leaf(levels, order, (rows[order[0]], cells))
            return
        cands = []
        for idx in _distinct(remaining, x):
            v = x[idx]
            cands.append((tuple((v & c).bit_count() for c in cells), idx))
        mn = min(c for c, _ in cands)
        levels = levels + [mn]
        if s.pruned(levels):
            return
        explored = []
        for cnt, idx in cands:
            if cnt != mn or s.same_orbit(idx, explored, order):
                continue
            v = x[idx]
            new_cells = []
            for c in cells:
                z = c & ~v
                o = c & v
                if z:
                    new_cells.append(z)
                if o:
                    new_cells.append(o)
            rest = [r for r in remaining if r != idx]
            dfs(x, order + [idx], rest, new_cells, levels)
            explored.append(idx)

    explored = []
    for r1 in _distinct(range(m), rows):
        if s.same_orbit(r1, explored, ()):
            continue
        flips = rows[r1]
        x = [r ^ flips for r in rows]
        s.tick()
        dfs(x, [r1], [i for i in range(m) if i != r1], [full] if n else [], [()])
        explored.append(r1)

    flips, cells = s.best_state
    col_order = []
    for c in cells:
        col_order.extend(j for j in range(n) if c >> j & 1)
    order = s.best_order
    e = array.entries
    flip_vec = np.array([(flips >> j) & 1 for j in range(n)], dtype=np.int64)
    canon = (e[order].astype(np.int64) ^ flip_vec)[:, col_order]
    ops = [EquivalenceOp(SYM, (1, 0), j) for j in range(n) if flips >> j & 1]
    ops.append(EquivalenceOp(COL, tuple(col_order)))
    ops.append(EquivalenceOp(ROW, tuple(order)))
    return CoveringArray(canon, 2), ops, s


def _canon_generic(array: CoveringArray, budget):
    rows = [tuple(int(v) for v in r) for r in array.entries]
    m, n, q = array.m, array.n, array.q
    s = _Search(m, budget)

    def dfs(order, remaining, cells, sigma, levels):
        s.tick()
        if not remaining:
            s.leaf(levels, order, (cells, sigma))
            return
        cands = []
        for idx in _distinct(remaining, rows):
            r = rows[idx]
            lvl = []
            for cell in cells:
                vals = []
                for j in cell:
                    sj = sigma[j]
                    vals.append(sj.index(r[j]) if r[j] in sj else len(sj))
                lvl.extend(sorted(vals))
            cands.append((tuple(lvl), idx))
        mn = min(c for c, _ in cands)
        levels = levels + [mn]
        if s.pruned(levels):
            return
        explored = []
        for lvl, idx in cands:
            if lvl != mn or s.same_orbit(idx, explored, order):
                continue
            r = rows[idx]
            new_sigma = list(sigma)
            new_cells = []
            for cell in cells:
                groups: dict[int, list[int]] = {}
                for j in cell:
                    sj = sigma[j]
                    if r[j] in sj:
                        val = sj.index(r[j])
                    else:
                        val = len(sj)
                        new_sigma[j] = sj + (r[j],)
                    groups.setdefault(val, []).append(j)
                new_cells.extend(groups[k] for k in sorted(groups))
            rest = [i for i in remaining if i != idx]
            dfs(order + [idx], rest, new_cells, tuple(new_sigma), levels)
            explored.append(idx)

    dfs([], list(range(m)), [list(range(n))], tuple(() for _ in range(n)), [])

    cells, sigma = s.best_state
    col_order = [j for cell in cells for j in cell]
    ops = []
    full_maps = []
    for j in range(n):
        seen = list(sigma[j])
        rest = [v for v in range(q) if v not in seen]
        mapping = [0] * q
        for new, old in enumerate(seen + rest):
            mapping[old] = new
        full_maps.append(mapping)
        if mapping != list(range(q)):
            ops.append(EquivalenceOp(SYM, tuple(mapping), j))
    order = s.best_order
    canon = [[full_maps[j][rows[i][j]] for j in col_order] for i in order]
    ops.append(EquivalenceOp(COL, tuple(col_order)))
    ops.append(EquivalenceOp(ROW, tuple(order)))
    return CoveringArray(canon, q), ops, s


def canonical_form(array: CoveringArray, budget: int | None = DEFAULT_BUDGET,
                   generic: bool = False) -> CanonicalCertificate:
    """Lexicographically least equivalent array and the ops reaching it.

    ``generic=True`` forces the symbol-map search even for binary input;
    both paths compute the same canonical array.
    """
    if array.q == 2 and not generic:
        canon, ops, s = _canon_binary(array, budget)
    else:
        canon, ops, s = _canon_generic(array, budget)
    return CanonicalCertificate(canon, ops, list(s.gens), s.nodes)


def are_equivalent(a: CoveringArray, b: CoveringArray, budget: int | None = DEFAULT_BUDGET) -> bool:
    if a.shape != b.shape or a.q != b.q:
        return False
    if invariant_signature(a) != invariant_signature(b):
        return False
    return canonical_form(a, budget).canonical == canonical_form(b, budget).canonical


# ---------------------------------------------------------------------------
# certificate text format


def _perm_to_swaps(perm: Sequence[int]) -> list[tuple[int, int]]:
    """Transpositions (0-based) whose successive application realizes perm."""
    cur = list(range(len(perm)))
    pos = {v: i for i, v in enumerate(cur)}
    swaps = []
    for i, want in enumerate(perm):
        if cur[i] != want:
            j = pos[want]
            swaps.append((i, j))
            pos[cur[i]], pos[cur[j]] = j, i
            cur[i], cur[j] = cur[j], cur[i]
    return swaps


def format_ops(ops: Iterable[EquivalenceOp]) -> str:
    """Line format: ``row i j`` / ``col i j`` swaps and ``sym c p0 .. p(q-1)``, 1-based."""
    lines = []
    for op in ops:
        if op.kind == SYM:
            lines.append("sym " + " ".join(str(x) for x in (op.column + 1, *op.perm)))
        else:
            lines += [f"{op.kind} {i + 1} {j + 1}" for i, j in _perm_to_swaps(op.perm)]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_ops(text: str, m: int, n: int) -> list[EquivalenceOp]:
    ops = []
    for k, line in enumerate(text.splitlines(), start=1):
        parts = line.split("#", 1)[0].split()
        if not parts:
            continue
        kind, *args = parts
        try:
            nums = [int(a) for a in args]
        except ValueError as exc:
            raise ParseError(f"line {k}: non-integer argument in {line!r}") from exc
        if kind == ROW and len(nums) == 2:
            ops.append(EquivalenceOp.swap_rows(*nums, m))
        elif kind == COL and len(nums) == 2:
            ops.append(EquivalenceOp.swap_cols(*nums, n))
        elif kind == SYM and len(nums) >= 3:
            ops.append(EquivalenceOp(SYM, tuple(nums[1:]), nums[0] - 1))
        else:
            raise ParseError(f"line {k}: cannot parse {line!r}")
    return ops
