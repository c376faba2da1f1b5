from itertools import product

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from covarray import are_equivalent, is_covering, residual
from covarray.bounds import roux_lower
from covarray.classify import classify
from covarray.constructions import fixed_matrix, hadamard_3ca_12x11
from covarray.proofs import BlockSearch, complete_free_block, guided_uniqueness_24x12, nonexistence_14x16, nonexistence_48x13
from oracles import naive_is_covering


def _brute_completions(fixed, free_rows, known, t, weight):
    """Free-row multisets completing ``fixed`` to a t-covering array."""
    r, n = fixed.shape
    unknown = [j for j in range(n) if j not in known]
    out = set()
    for bits in product((0, 1), repeat=free_rows * len(unknown)):
        low = np.zeros((free_rows, n), dtype=int)
        for j, col in known.items():
            low[:, j] = col
        for k, j in enumerate(unknown):
            low[:, j] = bits[k * free_rows:(k + 1) * free_rows]
        full = np.vstack([fixed, low])
        if weight is not None and any(full[:, j].sum() != weight for j in range(n)):
            continue
        if naive_is_covering([tuple(x) for x in full], 2, t):
            out.add(tuple(sorted(tuple(x) for x in low)))
    return out


@st.composite
def block_specs(draw):
    n = draw(st.integers(2, 4))
    r = draw(st.integers(1, 3))
    free = draw(st.integers(1, 3))
    fixed = np.array(draw(st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n), min_size=r, max_size=r)))
    known = {}
    if draw(st.booleans()):
        known[0] = tuple(draw(st.lists(st.integers(0, 1), min_size=free, max_size=free)))
    t = draw(st.integers(1, min(2, n)))
    weight = draw(st.one_of(st.none(), st.integers(1, r + free - 1)))
    return fixed, free, known, t, weight


@given(block_specs())
@settings(max_examples=150)
def test_free_block_matches_brute_force(spec):
    fixed, free, known, t, weight = spec
    got, nodes = complete_free_block(BlockSearch(fixed, free, known, t, weight))
    mine = [tuple(sorted(tuple(x) for x in a.entries[fixed.shape[0]:])) for a in got]
    assert len(mine) == len(set(mine))
    assert set(mine) == _brute_completions(fixed, free, known, t, weight)
    assert nodes[0] <= 1


def test_first_only():
    fixed = fixed_matrix("CA5x4").entries
    all_, _ = complete_free_block(BlockSearch(fixed, 3, {}, 2))
    one, _ = complete_free_block(BlockSearch(fixed, 3, {}, 2), first_only=True)
    assert len(one) == 1 and len(all_) > 1 and one[0] == all_[0]


class TestTwentyFourByTwelve:
    def test_unique(self):
        r = guided_uniqueness_24x12()
        assert r.count == 1 and r.params == (24, 4, 12, 2)
        a = r.representatives[0]
        assert a.shape == (24, 12) and is_covering(a, 4)
        assert a.weights() == [12] * 12

    def test_branches(self):
        st_ = guided_uniqueness_24x12().stats
        assert st_["branches"]["B1"]["solutions"] == 0
        assert st_["branches"]["B2"]["classes"] == 1
        fifth = st_["b1_fifth_column"]
        assert fifth["hand_column"] == (1, 0, 1, 0, 0, 1)
        assert fifth["hand_column_d_c3_c7"] == 14
        assert not fifth["hand_column_admissible"]
        assert fifth["coverage_completions"] == []

    def test_residuals(self):
        a = guided_uniqueness_24x12().representatives[0]
        # each half splits on any column into a 12 x 11 strength-3 array
        for v in (0, 1):
            res = residual(a, [(1, v)])
            assert res.shape == (12, 11) and are_equivalent(res, hadamard_3ca_12x11())


class TestFortyEightByThirteen:
    def test_report(self):
        p = nonexistence_48x13()
        assert p.verdict == "nonexistent"
        q = p.quantities
        assert q["completions"] == 0 and q["completions_without_distance_pruning"] == 0
        assert q["res_c1_is_4_covering"]
        assert q["roux_lower"] == roux_lower(5, 13, 2).value == 48
        assert q["implied_lower"] == 49
        assert p.log and p.lines()[0].startswith("48x13")


class TestFourteenBySixteen:
    def test_report(self):
        p = nonexistence_14x16()
        q = p.quantities
        assert p.verdict == "nonexistent"
        assert q["distance_sum"] == q["distance_sum_by_rows"] == 600
        assert q["required_at_least"] == 630
        assert q["forced_weight"] == 7 and q["distances"] == [6, 8]
        assert q["ones_per_lower_row"] == [5]
        assert q["residuals_2_covering"]

    def test_independent_sum(self):
        # recompute over the concrete 14 x 16 candidate without the library
        s = classify(7, 2, 15).representatives[0].entries.astype(int)
        # orient every column to weight 3; the sum is not invariant under column flips
        s = np.where(s.sum(axis=0) > 3, 1 - s, s)
        assert sorted(s.sum(axis=1)) == [5] * 6 + [15]
        c = np.vstack([np.hstack([np.ones((7, 1), int), s]), np.hstack([np.zeros((7, 1), int), 1 - s])])
        total = sum(int((c[:, i] != c[:, j]).sum()) for i in range(1, 16) for j in range(i + 1, 16))
        assert total == 600 < 6 * 105
