import random
from itertools import combinations, product
from math import comb

import pytest

from covarray import are_equivalent, is_covering
from covarray.constructions import (
    FIXED_MATRIX_NAMES,
    HypercubeSubset,
    fixed_matrix,
    hadamard_12,
    hadamard_3ca_12x11,
    hypercube_c4_check,
    johnson_entringer,
    r_n,
    residue_class,
    s_n_set,
    standard_maximal_2ca,
)
from covarray.errors import DegreeTooSmall, SizeTooSmall, UnknownName


def _hits_every_square(rows, n):
    """Every 2-dimensional subcube of Q_n contains a row (direct enumeration)."""
    rows = set(rows)
    for free in combinations(range(n), 2):
        fixed = [i for i in range(n) if i not in free]
        for vals in product((0, 1), repeat=n - 2):
            base = [0] * n
            for i, v in zip(fixed, vals):
                base[i] = v
            hit = False
            for a, b in product((0, 1), repeat=2):
                base[free[0]], base[free[1]] = a, b
                if tuple(base) in rows:
                    hit = True
                    break
            if not hit:
                return False
    return True


class TestStandard:
    @pytest.mark.parametrize("m", range(4, 13))
    def test_shape_and_coverage(self, m):
        a = standard_maximal_2ca(m)
        assert a.shape == (m, comb(m - 1, m // 2 - 1))
        assert len(set(a.columns())) == a.n
        assert is_covering(a, 2)

    def test_small_cases(self):
        assert standard_maximal_2ca(4).shape == (4, 3)
        assert standard_maximal_2ca(6) == fixed_matrix("A")
        assert standard_maximal_2ca(7).shape == (7, 15)

    def test_too_small(self):
        with pytest.raises(SizeTooSmall):
            standard_maximal_2ca(3)


class TestHypercube:
    def test_r_table(self):
        assert [r_n(n) for n in range(6)] == [0, 1, 1, 2, 2, 0]
        for n in range(1, 40):
            r = r_n(n)
            assert n % 6 in {(2 * r) % 6, (2 * r - 1) % 6}

    @pytest.mark.parametrize("n", range(4, 13))
    def test_size_and_strength(self, n):
        a = johnson_entringer(n)
        assert a.shape == (2**n // 3, n)
        assert is_covering(a, n - 2)

    @pytest.mark.parametrize("n", range(4, 9))
    def test_subcube_oracle(self, n):
        a = johnson_entringer(n)
        assert _hits_every_square(a.rows(), n)
        assert _hits_every_square(a.rows(), n) == is_covering(a, n - 2)
        # dropping any row breaks it
        rows = a.rows()
        assert not _hits_every_square(rows[1:], n)

    def test_n4_rows(self):
        a = johnson_entringer(4)
        assert set(a.rows()) == {(0, 0, 0, 0), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 0)}
        assert are_equivalent(a, fixed_matrix("CA5x4"))

    def test_n5(self):
        a = johnson_entringer(5)
        assert {sum(r) for r in a.rows()} == {1, 4}
        assert are_equivalent(a, fixed_matrix("CA10x5"))

    def test_n6(self):
        a = johnson_entringer(6)
        assert a.m == 21 and is_covering(a, 4)

    def test_degree_too_small(self):
        with pytest.raises(DegreeTooSmall):
            johnson_entringer(3)
        with pytest.raises(DegreeTooSmall):
            s_n_set(0)

    def test_residue_class(self):
        assert residue_class(3, 1) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
        for n in range(1, 9):
            assert sum(len(residue_class(n, j)) for j in range(3)) == 2**n

    @pytest.mark.parametrize("n", range(1, 11))
    def test_s_n_is_complement(self, n):
        s = s_n_set(n)
        assert len(s) == 2**n - 2**n // 3 == -(-(2 ** (n + 1)) // 3)
        if n >= 4:
            assert s.members.isdisjoint(johnson_entringer(n).rows())

    def test_c4_examples(self):
        assert hypercube_c4_check(HypercubeSubset(2, frozenset(product((0, 1), repeat=2))))
        s4 = s_n_set(4)
        assert not hypercube_c4_check(s4)
        for c in product((0, 1), repeat=4):
            assert not hypercube_c4_check(s4.translate(c))

    @pytest.mark.parametrize("n", range(2, 11))
    def test_s_n_c4_free(self, n):
        assert not hypercube_c4_check(s_n_set(n))

    def test_as_array(self):
        a = s_n_set(3).as_array()
        assert a.shape == (6, 3)

    @pytest.mark.parametrize("n", range(4, 11))
    def test_greedy_c4_free_sets_stay_small(self, n):
        # maximal C4-free sets grown at random never beat the bound
        bound = -(-(2 ** (n + 1)) // 3)
        rng = random.Random(n)
        verts = list(range(2**n))

        def closes_square(s, v):
            for i in range(n):
                for j in range(i + 1, n):
                    a, b = v ^ (1 << i), v ^ (1 << j)
                    if a in s and b in s and a ^ (1 << j) in s:
                        return True
            return False

        for _ in range(5):
            rng.shuffle(verts)
            s = set()
            for v in verts:
                if not closes_square(s, v):
                    s.add(v)
            assert len(s) <= bound
            extra = next(v for v in range(2**n) if v not in s)
            bigger = HypercubeSubset(n, frozenset(tuple((x >> k) & 1 for k in range(n)) for x in s | {extra}))
            assert hypercube_c4_check(bigger)


class TestHadamard:
    def test_orthogonal(self):
        h = hadamard_12()
        assert (h @ h.T == 12 * (h.shape[0] ** 0) * __import__("numpy").eye(12, dtype=int)).all()
        assert (h[0] == 1).all() and (h[:, 0] == 1).all()

    def test_array(self):
        a = hadamard_3ca_12x11()
        assert a.shape == (12, 11)
        assert a.weights() == [6] * 11
        assert is_covering(a, 3) and not is_covering(a, 4)


class TestFixed:
    def test_weights(self):
        for name in FIXED_MATRIX_NAMES:
            a = fixed_matrix(name)
            want = 5 if name == "CA10x5" else (2 if name == "CA5x4" else 3)
            if name == "CA5x4":
                assert sorted(a.weights()) == [3, 3, 3, 3]
            else:
                assert a.weights() == [want] * a.n, name

    def test_coverage(self):
        for name in ("A", "B1", "B2", "CA5x4"):
            assert is_covering(fixed_matrix(name), 2)
        assert is_covering(fixed_matrix("CA10x5"), 3)

    def test_d_and_e(self):
        d, e = fixed_matrix("D"), fixed_matrix("E")
        assert d.shape == e.shape == (6, 4)
        assert sum(1 for r in e.rows() if not any(r)) == 2
        # E is the first four columns of the complement of A
        assert e.rows() == [r[:4] for r in fixed_matrix("A").complement().rows()]

    def test_unknown(self):
        with pytest.raises(UnknownName):
            fixed_matrix("Z")
