from math import comb, isqrt

import numpy as np
import pytest

from covarray import CoveringArray, is_covering
from covarray.bounds import (
    all_bounds,
    best_lower_bound,
    binom_exceeds_4l2,
    binom_exceeds_5l,
    can2,
    forced_column_profile,
    gram_determinant,
    hilton_milner_bound,
    improved_lower_3,
    improved_lower_t,
    known_can_table,
    max_degree_strength2,
    replay_even_certificate,
    replay_odd_certificate,
    roux_lower,
    roux_upper_recursion_3,
    structure_window,
    window_root_gap,
)
from covarray.classify import max_degree_search
from covarray.constructions import fixed_matrix, hadamard_3ca_12x11, johnson_entringer, standard_maximal_2ca
from covarray.errors import CertificateFails, DegreeTooSmall, NotApplicable, ParamOutOfRange, UnknownCAN


class TestStrengthTwo:
    @pytest.mark.parametrize("m,want", [(4, 3), (6, 10), (7, 15)])
    def test_max_degree(self, m, want):
        assert max_degree_strength2(m) == want

    @pytest.mark.parametrize("m", range(4, 8))
    def test_max_degree_matches_search(self, m):
        n, witness = max_degree_search(m, 2)
        assert n == max_degree_strength2(m)
        assert witness.shape == (m, n) and is_covering(witness, 2)

    @pytest.mark.parametrize("n,want", [(10, 6), (4, 5), (35, 8), (2, 4), (3, 4), (11, 7)])
    def test_can2(self, n, want):
        assert can2(n) == want

    @pytest.mark.parametrize("m", range(4, 13))
    def test_inverse_consistency(self, m):
        d = max_degree_strength2(m)
        assert can2(d) == m
        assert can2(d + 1) == m + 1

    def test_errors(self):
        with pytest.raises(DegreeTooSmall):
            can2(1)
        with pytest.raises(ParamOutOfRange):
            hilton_milner_bound(7, 4)

    def test_hilton_milner(self):
        assert hilton_milner_bound(7, 3) == 13 == 15 - 3 + 1
        assert hilton_milner_bound(6, 3) == comb(5, 2)
        for m in range(5, 20):
            h = m // 2
            got = hilton_milner_bound(m, h)
            if m % 2:
                assert got == comb(m - 1, h - 1) - h + 1
            else:
                assert got == comb(m - 1, h - 1)


class TestWindows:
    def test_values(self):
        assert structure_window(7) == (13, 15)
        assert structure_window(8) == (31, 35)

    def test_disjoint(self):
        windows = {m: structure_window(m) for m in range(4, 16)}
        for n in range(1, 501):
            hits = [m for m, (lo, hi) in windows.items() if lo < n <= hi]
            assert len([m for m in hits if m % 2]) <= 1, n
            assert len([m for m in hits if m % 2 == 0]) <= 1, n


class TestRoux:
    @pytest.mark.parametrize("args,want", [((4, 12, 2), 24), ((3, 11, 2), 12), ((5, 13, 2), 48)])
    def test_lower(self, args, want):
        r = roux_lower(*args)
        assert r.value == want and r.kind == "lower" and r.provenance.startswith("roux(")

    def test_upper(self):
        assert roux_upper_recursion_3(11).value == 19
        assert roux_upper_recursion_3(5).value == 16

    def test_upper_above_lower(self):
        for n in range(5, 12):
            up = roux_upper_recursion_3(n).value
            assert up >= roux_lower(3, 2 * n, 2).value

    def test_unknown_base(self):
        with pytest.raises(UnknownCAN):
            roux_lower(5, 14, 2)


class TestImproved:
    @pytest.mark.parametrize("n,want", [(16, 15), (15, 15), (36, 18)])
    def test_strength_three(self, n, want):
        assert improved_lower_3(n).value == want

    def test_general(self):
        assert improved_lower_t(4, 17).value == 30
        assert improved_lower_t(5, 18).value == 60
        for n in (15, 16, 36):
            assert improved_lower_t(3, n) == improved_lower_3(n)

    def test_not_applicable(self):
        with pytest.raises(NotApplicable):
            improved_lower_3(12)
        with pytest.raises(ParamOutOfRange):
            improved_lower_t(2, 10)

    @pytest.mark.parametrize("m,n1,want", [(7, 16, (7, {6, 8})), (6, 11, (6, {6})), (5, 5, (5, {4, 6}))])
    def test_forced_profile(self, m, n1, want):
        w, d = forced_column_profile(m, n1)
        assert (w, set(d)) == want

    def test_forced_profile_outside(self):
        with pytest.raises(NotApplicable):
            forced_column_profile(7, 10)
        with pytest.raises(NotApplicable):
            forced_column_profile(4, 4)


class TestInequalities:
    def test_5l(self):
        assert comb(7, 3) == 35 and binom_exceeds_5l(4)
        assert all(binom_exceeds_5l(l) for l in range(4, 60))

    def test_4l2(self):
        assert all(binom_exceeds_4l2(l) for l in range(5, 60))
        # the printed range starts at l = 5 and l = 4 indeed fails
        assert not binom_exceeds_4l2(4)

    def test_root_gap(self):
        got = window_root_gap(4)
        assert [n for n, _ in got] == [54, 55, 56]
        assert all(ok for _, ok in got)
        for l in range(4, 30):
            assert all(ok for _, ok in window_root_gap(l)), l

    def test_root_gap_matches_float(self):
        b = comb(7, 2)
        for n, ok in window_root_gap(4):
            assert ok == (n / 2 - n**0.5 / 2 > b)
        assert 27 - isqrt(54 * 10**6) / 2000 > 23.3


class TestCertificates:
    def test_odd_15(self):
        r = replay_odd_certificate(7, 15)
        assert r.quantities["upper"] == 600 and r.quantities["lower"] == 630 == 6 * comb(15, 2)

    def test_odd_14(self):
        r = replay_odd_certificate(7, 14)
        assert (r.quantities["upper"], r.quantities["lower"]) == (540, 546)

    def test_odd_range(self):
        for m in (7, 9, 11, 13):
            lo, hi = structure_window(m)
            for n in range(lo + 1, hi + 1):
                assert replay_odd_certificate(m, n).certified

    def test_even(self):
        r = replay_even_certificate(8, 35)
        assert r.quantities["rank_demand"] == 36 and r.quantities["rows"] == 17
        assert replay_even_certificate(10, 126).quantities["rank_demand"] == 127

    def test_even_range(self):
        for m in (8, 10, 12):
            lo, hi = structure_window(m)
            for n in range(lo + 1, hi + 1):
                assert replay_even_certificate(m, n).certified

    def test_not_applicable(self):
        with pytest.raises(NotApplicable):
            replay_odd_certificate(8, 35)
        with pytest.raises(NotApplicable):
            replay_even_certificate(7, 15)
        with pytest.raises(NotApplicable):
            replay_odd_certificate(7, 12)

    def test_fails_is_distinct(self):
        assert not issubclass(CertificateFails, NotApplicable)

    @pytest.mark.parametrize("size", [1, 2, 5, 8])
    @pytest.mark.parametrize("dim", [1, 3, 7, 20])
    def test_gram(self, size, dim):
        g = 2 * size * np.eye(dim, dtype=np.int64) + np.ones((dim, dim), dtype=np.int64)
        assert np.isclose(np.linalg.det(g.astype(float)), float(gram_determinant(size, dim)), rtol=1e-9)
        assert np.linalg.matrix_rank(g) == dim


def _witness(entry):
    name = entry.witness
    if name == "fixed_matrix:CA10x5":
        return fixed_matrix("CA10x5")
    if name == "hadamard_3ca_12x11":
        return CoveringArray(hadamard_3ca_12x11().entries[:, : entry.n], 2)
    if name == "standard_maximal_2ca":
        return CoveringArray(standard_maximal_2ca(entry.value).entries[:, : entry.n], 2)
    if name == "johnson_entringer":
        return johnson_entringer(entry.n)
    if name == "guided_uniqueness_24x12":
        from covarray.proofs import guided_uniqueness_24x12

        return guided_uniqueness_24x12().representatives[0]
    return None


class TestTable:
    def test_lookups(self):
        tab = known_can_table()
        assert tab.exact(3, 11, 2) == 12
        assert tab.exact(3, 12, 2) == 15
        e = tab.lookup(5, 13, 2)
        assert (e.value, e.kind) == (49, "lower")
        with pytest.raises(UnknownCAN):
            tab.exact(5, 13, 2)
        with pytest.raises(UnknownCAN):
            tab.lookup(6, 20, 2)

    def test_witnessed_entries(self):
        seen = 0
        for e in known_can_table().rows(max_n=12):
            a = _witness(e)
            if a is None:
                continue
            seen += 1
            assert (a.m, a.n) == (e.value, e.n), e
            assert is_covering(a, e.t), e
        assert seen > 20

    def test_lower_rules_below_exact(self):
        for e in known_can_table().rows(max_n=14):
            if e.kind != "exact":
                continue
            for b in all_bounds(e.t, e.n, e.q):
                if b.kind == "lower":
                    assert b.value <= e.value, (e, b)

    def test_best_lower(self):
        b = best_lower_bound(5, 13, 2)
        assert b.value == 49
        assert best_lower_bound(3, 16, 2).value == 15
        assert best_lower_bound(4, 30, 2).value >= 16
