"""Isomorph-free exhaustive enumeration of binary covering arrays.

A binary array of strength t >= 2 has no repeated or complementary
columns, so up to equivalence it is a set of complement classes of
m-bit vectors, taken modulo row permutations.  Coverage, column weights and
pairwise distances all pass to column subsets, so every k-column subset of
a valid array is itself valid.  The search therefore grows one column at a
time: the representatives at level k are extended by every admissible
class, children in one orbit of the parent's automorphism group are
expanded once, and the survivors are deduplicated by canonical form.
"""
from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from .bounds import forced_column_profile
from .core import CoveringArray, is_covering, residual
from .equivalence import are_equivalent, canonical_form
from .errors import (
    BudgetExceeded,
    EmptyUniverse,
    InternalInconsistency,
    NotApplicable,
    ParamOutOfRange,
    UnknownCAN,
)

__all__ = [
    "SearchConstraints",
    "ClassificationResult",
    "default_constraints",
    "column_universe",
    "classify",
    "count_classes",
    "max_degree_search",
    "columns_to_array",
]


@dataclass(frozen=True)
class SearchConstraints:
    """Restrictions every column (or column pair) of a solution must meet.

    weight_range: inclusive (lo, hi); a column class is admissible when the
        column or its complement has weight in range.
    distances: admissible Hamming distances between two columns; must be
        closed under d -> m - d so it is well defined on complement classes.
    pinned: columns (0/1 tuples) every solution starts from.  Results are
        still canonical forms, so the pinned columns appear in them only up
        to equivalence, not necessarily first.
    residual_templates: ((selector pairs), CoveringArray) requirements checked
        up to equivalence on the finished arrays.
    """

    weight_range: tuple[int, int] | None = None
    distances: frozenset | None = None
    pinned: tuple = ()
    residual_templates: tuple = ()

    def to_json(self) -> dict:
        return {
            "weight_range": list(self.weight_range) if self.weight_range else None,
            "distances": sorted(self.distances) if self.distances else None,
            "pinned": ["".join(map(str, c)) for c in self.pinned],
        }


@dataclass
class ClassificationResult:
    params: tuple  # (m, t, n, q)
    representatives: list
    count: int
    stats: dict = field(default_factory=dict)

    def summary(self) -> str:
        m, t, n, q = self.params
        return f"CA({m};{t},{n},{q}): {self.count} class(es)"


def default_constraints(m: int, t: int, n: int, distances: bool = True) -> SearchConstraints:
    """Weight range from the residual argument, plus forced distances when they apply."""
    try:
        wr = _weight_range(m, t, n)
    except UnknownCAN:
        lo = 2 ** (t - 1)
        wr = (lo, m - lo)
    d = None
    if distances and t == 3 and m % 2 == 0:
        try:
            w, d = forced_column_profile(m // 2, n)
            wr = (w, w)
        except NotApplicable:
            d = None
    return SearchConstraints(weight_range=wr, distances=d)


def _weight_range(m, t, n):
    from .core import weight_bounds

    return weight_bounds(m, n, 2, t)


# ---------------------------------------------------------------------------
# column universe


def _reduce(v: int, m: int) -> int:
    """Complement-class representative: the lighter vector; ties keep row 0 clear."""
    full = (1 << m) - 1
    u = v ^ full
    wv, wu = v.bit_count(), u.bit_count()
    if wv != wu:
        return v if wv < wu else u
    return v if not v & 1 else u


def _bits_key(v: int, m: int) -> str:
    return "".join("1" if v >> i & 1 else "0" for i in range(m))


def column_universe(m: int, constraints: SearchConstraints) -> list[int]:
    """Admissible complement classes as row bitmasks (bit i = row i).

    Ordered by weight, then by the bit string read from row 1 down.
    """
    lo, hi = constraints.weight_range if constraints.weight_range else (0, m)
    out = set()
    for w in range(max(lo, 0), min(hi, m) + 1):
        for rows in combinations(range(m), w):
            v = 0
            for r in rows:
                v |= 1 << r
            out.add(_reduce(v, m))
    if not out:
        raise EmptyUniverse(f"no column of size {m} has weight in {lo}..{hi}")
    return sorted(out, key=lambda v: (v.bit_count(), _bits_key(v, m)))


def columns_to_array(masks: Sequence[int], m: int) -> CoveringArray:
    e = np.array([[(c >> r) & 1 for c in masks] for r in range(m)], dtype=np.int64)
    return CoveringArray(e, 2)


# ---------------------------------------------------------------------------
# one generation step


def _pattern_masks(cols: Sequence[int], s: int, full: int) -> list[int]:
    """Row sets realising each pattern on each s-subset of ``cols``; empty ones dropped."""
    out = set()
    for sub in combinations(cols, s):
        layer = [full]
        for c in sub:
            nc = c ^ full
            layer = [x & c for x in layer] + [x & nc for x in layer]
        out.update(x for x in layer if x)
    return sorted(out)


def _act(v: int, perm: Sequence[int]) -> int:
    out = 0
    while v:
        low = v & -v
        out |= 1 << perm[low.bit_length() - 1]
        v ^= low
    return out


def _extend(parent_cols, autos, m, t, universe, dset, stats):
    """Valid one-column extensions of a parent, one per automorphism orbit."""
    full = (1 << m) - 1
    k = len(parent_cols)
    s = min(t, k + 1) - 1
    masks = _pattern_masks(parent_cols, s, full)
    taken = {_reduce(c, m) for c in parent_cols}
    valid = []
    for v in universe:
        if v in taken:
            continue
        nv = v ^ full
        ok = True
        for msk in masks:
            if not (msk & v and msk & nv):
                ok = False
                break
        if not ok:
            stats["coverage_pruned"] += 1
            continue
        if dset is not None and any((c ^ v).bit_count() not in dset for c in parent_cols):
            stats["distance_pruned"] += 1
            continue
        valid.append(v)
    if not autos or len(valid) < 2:
        return valid
    parent = {v: v for v in valid}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in autos:
        for v in valid:
            u = _reduce(_act(v, g), m)
            if u in parent:
                a, b = find(v), find(u)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    reps = []
    seen = set()
    for v in valid:
        r = find(v)
        if r not in seen:
            seen.add(r)
            reps.append(v)
    stats["orbit_skipped"] += len(valid) - len(reps)
    return reps


def _canon_child(cols, m, budget):
    arr = columns_to_array(cols, m)
    cert = canonical_form(arr, budget)
    canon = cert.canonical
    # automorphisms of the canonical array: conjugate by the row order
    order = cert.ops[-1].perm
    inv = [0] * m
    for i, o in enumerate(order):
        inv[o] = i
    autos = [tuple(inv[g[order[i]]] for i in range(m)) for g in cert.automorphisms]
    return canon, autos, cert.nodes


def _process_parents(args):
    parents, m, t, universe, dset = args
    stats = {"coverage_pruned": 0, "distance_pruned": 0, "orbit_skipped": 0,
             "children": 0, "canon_nodes": 0}
    found = {}
    for cols, autos in parents:
        for v in _extend(cols, autos, m, t, universe, dset, stats):
            stats["children"] += 1
            canon, cautos, nodes = _canon_child(list(cols) + [v], m, None)
            stats["canon_nodes"] += nodes
            key = canon.entries.tobytes()
            if key not in found:
                found[key] = (tuple(canon.column_masks), cautos)
    return found, stats


# ---------------------------------------------------------------------------
# checkpoints


def _save_checkpoint(path, params, constraints, level, reps):
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        json.dump({
            "params": list(params),
            "constraints": constraints.to_json(),
            "level": level,
            "reps": [[_bits_key(c, params[0]) for c in cols] for cols, _ in reps],
        }, fh)
    os.replace(tmp, path)


def _load_checkpoint(path, params, constraints, m):
    if not path or not os.path.exists(path):
        return None
    with open(path) as fh:
        data = json.load(fh)
    if tuple(data["params"]) != tuple(params) or data["constraints"] != constraints.to_json():
        return None
    reps = []
    for cols in data["reps"]:
        masks = [int(s[::-1], 2) for s in cols]
        _, autos, _ = _canon_child(masks, m, None)
        reps.append((tuple(masks), autos))
    return data["level"], reps


# ---------------------------------------------------------------------------
# drivers


def _levels(m, t, n, constraints, jobs=1, checkpoint=None, budget=None, on_level=None):
    """Run the generation up to level n; returns (reps, stats)."""
    if t < 2:
        raise ParamOutOfRange("classification needs strength t >= 2")
    universe = column_universe(m, constraints)
    dset = constraints.distances
    if dset is not None and any(m - d not in dset for d in dset):
        raise ParamOutOfRange(f"distance set {sorted(dset)} is not closed under d -> m - d")
    params = (m, t, n, 2)
    start = time.perf_counter()
    stats = {"universe": len(universe), "levels": {}, "coverage_pruned": 0,
             "distance_pruned": 0, "orbit_skipped": 0, "children": 0, "canon_nodes": 0}

    pinned = [sum(b << i for i, b in enumerate(c)) for c in constraints.pinned]
    if pinned:
        # pinned columns are not interchangeable with the rest, so no orbit pruning
        reps = [(tuple(pinned), [])]
        level = len(pinned)
    else:
        reps = [((), [])]
        level = 0
    resumed = _load_checkpoint(checkpoint, params, constraints, m)
    if resumed is not None:
        level, reps = resumed
        stats["resumed_from"] = level

    while level < n and reps:
        if jobs > 1 and len(reps) > 1:
            chunks = [reps[i::jobs] for i in range(jobs)]
            with ProcessPoolExecutor(jobs) as ex:
                results = list(ex.map(_process_parents,
                                      [(c, m, t, universe, dset) for c in chunks]))
        else:
            results = [_process_parents((reps, m, t, universe, dset))]
        merged = {}
        for found, st in results:
            for k in ("coverage_pruned", "distance_pruned", "orbit_skipped", "children", "canon_nodes"):
                stats[k] += st[k]
            for key, val in found.items():
                merged.setdefault(key, val)
        level += 1
        reps = [merged[k] for k in sorted(merged)]
        stats["levels"][level] = len(reps)
        if on_level is not None:
            on_level(level, reps)
        if budget is not None and stats["canon_nodes"] > budget and level < n:
            if checkpoint:
                _save_checkpoint(checkpoint, params, constraints, level, reps)
            raise BudgetExceeded(
                f"classification of CA({m};{t},{n},2) exceeded {budget} nodes at level {level}",
                nodes=stats["canon_nodes"], checkpoint=checkpoint)
        if checkpoint and level < n:
            _save_checkpoint(checkpoint, params, constraints, level, reps)
    stats["seconds"] = time.perf_counter() - start
    if level < n:
        reps = []
    return reps, stats


def _passes_templates(arr: CoveringArray, constraints: SearchConstraints) -> bool:
    for sel, template in constraints.residual_templates:
        try:
            res = residual(arr, sel)
        except Exception:
            return False
        if not are_equivalent(res, template):
            return False
    return True


def classify(m: int, t: int, n: int, constraints: SearchConstraints | None = None, *,
             jobs: int = 1, checkpoint: str | None = None, budget: int | None = None,
             keep: bool = True, on_level=None) -> ClassificationResult:
    """One canonical representative per equivalence class of binary CA(m; t, n, 2).

    ``constraints`` defaults to :func:`default_constraints`.  ``budget`` caps
    the total canonical-form search nodes; on overrun a checkpoint of the
    last finished level is written (when ``checkpoint`` is given) and
    BudgetExceeded is raised.  Running again with the same checkpoint
    resumes from that level.
    """
    if constraints is None:
        constraints = default_constraints(m, t, n)
    reps, stats = _levels(m, t, n, constraints, jobs, checkpoint, budget, on_level)
    arrays = [columns_to_array(cols, m) for cols, _ in reps]
    if constraints.residual_templates:
        arrays = [a for a in arrays if _passes_templates(a, constraints)]
    for a in arrays:
        if not is_covering(a, min(t, a.n)):
            raise InternalInconsistency("emitted representative is not covering")
    arrays.sort(key=lambda a: a.rows())
    if checkpoint and os.path.exists(checkpoint):
        os.remove(checkpoint)
    return ClassificationResult((m, t, n, 2), arrays if keep else [], len(arrays), stats)


def count_classes(m: int, t: int, n: int, constraints: SearchConstraints | None = None,
                  **kw) -> int:
    return classify(m, t, n, constraints, keep=False, **kw).count


def max_degree_search(m: int, t: int, budget: int | None = None,
                      max_n: int | None = None) -> tuple[int, CoveringArray]:
    """Largest n admitting a binary CA(m; t, n, 2), with a witness.

    Columns are only restricted by the degree-free weight range
    2^(t-1) <= wt <= m - 2^(t-1).
    """
    lo = 2 ** (t - 1)
    if m < 2 * lo:
        raise ParamOutOfRange(f"no strength-{t} column fits in {m} rows")
    constraints = SearchConstraints(weight_range=(lo, m - lo))
    cap = max_n if max_n is not None else 2 ** (m - 1)
    last = [0, None]

    def track(level, reps):
        if reps:
            last[0], last[1] = level, reps[0][0]

    _levels(m, t, cap, constraints, budget=budget, on_level=track)
    if last[0] < t:
        raise ParamOutOfRange(f"no CA({m};{t},{t},2) exists")
    return last[0], columns_to_array(last[1], m)
