"""Weight lifting for binary 2-covering arrays via complete bipartite matchings.

Columns of minimum weight s are replaced by weight-(s+1) supersets chosen
through a complete matching into the layer of weight-(s+1) vectors; the
result stays 2-covering, and every support only grows.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import CoveringArray, is_covering
from .errors import HallViolation, InternalInconsistency, PreconditionViolated

__all__ = [
    "LiftProblem",
    "Matching",
    "complete_matching",
    "lift_min_weight",
    "lift_to_target",
    "lift_except",
]


@dataclass(frozen=True)
class LiftProblem:
    """Bipartite graph from left vertices to right vertices.

    For arrays, left vertices are the indices of the minimum-weight columns
    and right vertices are row bitmasks of weight s + 1; ``adjacency[k]``
    lists the right vertices adjacent to ``left[k]`` in a fixed order.
    """

    m: int
    s: int
    left: tuple
    adjacency: tuple

    @property
    def right(self) -> tuple:
        seen = {}
        for nbrs in self.adjacency:
            for w in nbrs:
                seen.setdefault(w, None)
        return tuple(seen)

    @property
    def edges(self) -> list[tuple]:
        return [(c, w) for c, nbrs in zip(self.left, self.adjacency) for w in nbrs]

    def right_degrees(self) -> dict:
        deg: dict = {}
        for nbrs in self.adjacency:
            for w in nbrs:
                deg[w] = deg.get(w, 0) + 1
        return deg

    @classmethod
    def from_edges(cls, left, edges, m: int = 0, s: int = 0) -> "LiftProblem":
        left = tuple(left)
        adj = {c: [] for c in left}
        for c, w in edges:
            adj[c].append(w)
        return cls(m, s, left, tuple(tuple(adj[c]) for c in left))

    @classmethod
    def from_array(cls, array: CoveringArray, columns=None, exclude_supersets_of=None) -> "LiftProblem":
        """Graph between minimum-weight columns and the weight-(s+1) layer.

        ``columns`` restricts the left side (0-based indices, all of weight
        s); right vertices containing the mask ``exclude_supersets_of`` are
        dropped.  Only the right vertices adjacent to some left vertex are
        materialized.
        """
        masks = array.column_masks
        weights = array.weights()
        if columns is None:
            s = min(weights)
            columns = [j for j, w in enumerate(weights) if w == s]
        else:
            columns = list(columns)
            s = weights[columns[0]] if columns else 0
        adjacency = []
        for j in columns:
            c = masks[j]
            nbrs = []
            for r in range(array.m):
                bit = 1 << r
                if c & bit:
                    continue
                w = c | bit
                if exclude_supersets_of is not None and w & exclude_supersets_of == exclude_supersets_of:
                    continue
                nbrs.append(w)
            adjacency.append(tuple(nbrs))
        return cls(array.m, s, tuple(columns), tuple(adjacency))


@dataclass(frozen=True)
class Matching:
    pairs: dict

    def __len__(self):
        return len(self.pairs)


def complete_matching(p: LiftProblem) -> Matching:
    """Left-saturating matching by augmenting paths, left vertices in order.

    Raises HallViolation carrying a left set S with |N(S)| < |S| when no
    complete matching exists.
    """
    adj = dict(zip(p.left, p.adjacency))
    owner: dict = {}  # right -> left

    def augment(u, seen):
        for w in adj[u]:
            if w in seen:
                continue
            seen.add(w)
            if w not in owner or augment(owner[w], seen):
                owner[w] = u
                return True
        return False

    for u in p.left:
        if not augment(u, set()):
            # alternating-path closure from u is a Hall violator
            S, N = {u}, set()
            frontier = [u]
            while frontier:
                x = frontier.pop()
                for w in adj[x]:
                    if w not in N:
                        N.add(w)
                        y = owner.get(w)
                        if y is not None and y not in S:
                            S.add(y)
                            frontier.append(y)
            raise HallViolation(S, N)
    return Matching({u: w for w, u in owner.items()})


# ---------------------------------------------------------------------------


def _check_lift_input(array: CoveringArray) -> int:
    if array.q != 2:
        raise PreconditionViolated("weight lifting needs a binary array")
    h = array.m // 2
    if max(array.weights()) > h:
        raise PreconditionViolated(f"some column weight exceeds floor(m/2) = {h}")
    if array.n >= 2 and not is_covering(array, 2):
        raise PreconditionViolated("input is not 2-covering")
    return h


def _replace_columns(array: CoveringArray, new_masks: dict) -> CoveringArray:
    e = np.array(array.entries, dtype=np.int64)
    for j, w in new_masks.items():
        e[:, j] = [(w >> r) & 1 for r in range(array.m)]
    return CoveringArray(e, 2)


def _lift(array: CoveringArray, columns, exclude=None) -> CoveringArray:
    prob = LiftProblem.from_array(array, columns, exclude)
    match = complete_matching(prob)
    out = _replace_columns(array, match.pairs)
    if out.n >= 2 and not is_covering(out, 2):
        raise InternalInconsistency("lifted array lost 2-coverage")
    return out


def lift_min_weight(array: CoveringArray) -> CoveringArray:
    """One lifting step: every minimum-weight column gains one row.

    Requires a binary 2-covering array with all weights <= floor(m/2) and
    minimum weight s < floor(m/2); columns above s are kept unchanged.
    """
    h = _check_lift_input(array)
    s = min(array.weights())
    if s >= h:
        raise PreconditionViolated(f"minimum weight {s} already equals floor(m/2) = {h}")
    return _lift(array, None)


def lift_to_target(array: CoveringArray, s_prime: int) -> CoveringArray:
    """Lift until every column weight is at least s_prime (s < s_prime <= floor(m/2))."""
    h = _check_lift_input(array)
    s = min(array.weights())
    if not s < s_prime <= h:
        raise PreconditionViolated(f"need {s} < s' <= {h}, got s' = {s_prime}")
    while min(array.weights()) < s_prime:
        array = _lift(array, None)
    return array


def lift_except(array: CoveringArray, j: int) -> CoveringArray:
    """Lift every column to floor(m/2) except the 1-based column j, which ends at floor(m/2) - 1.

    Below floor(m/2) - 1 ordinary lifting steps apply.  The final step lifts
    the weight-(floor(m/2)-1) columns other than j, avoiding supersets of
    column j so that j is never swallowed.
    """
    h = _check_lift_input(array)
    k = j - 1
    if not 0 <= k < array.n:
        raise PreconditionViolated(f"column {j} out of range")
    if array.weights()[k] >= h:
        raise PreconditionViolated(f"column {j} already has weight >= floor(m/2) = {h}")
    while min(array.weights()) < h - 1:
        array = _lift(array, None)
    weights = array.weights()
    rest = [i for i, w in enumerate(weights) if w == h - 1 and i != k]
    if rest:
        array = _lift(array, rest, exclude=array.column_masks[k])
    return array
