import math
from fractions import Fraction

import pytest

from nonfree.errors import BadDigit, BadParams, IndexTooSmall
from nonfree.families import (
    base_k_parse,
    f_check,
    geom_alternating,
    geom_block,
    geom_series_sum,
    half_pell_numbers,
    hpell_tuple,
    pell_numbers,
    pell_state,
    pell_tuple,
)
from nonfree.halfrel import certify_half_relation, is_half_relation, phr_poly


class TestGeometric:
    def test_block_examples(self):
        assert geom_block(3, 1, 3) == (Fraction(26, 27), (1, 54, 1))
        assert geom_block(8, 3, 3) == (Fraction(7, 512), (1, 520, 64))
        for k in range(2, 9):
            assert geom_block(k, 1, 1) == (Fraction(k - 1, k), (1, 2 * k, 1))

    def test_alternating_examples(self):
        assert geom_alternating(3, 2, 1) == (Fraction(20, 81), (1, 405, 4))
        q, t = geom_alternating(7, 4, 1)
        assert t == (49, 136857, 8)
        assert q == Fraction(6, 7**4) + Fraction(6, 7**6)
        assert geom_alternating(5, 2, 3)[1][0] == 1

    def test_closed_forms_match_series(self):
        for k in range(2, 7):
            for s in range(1, 5):
                for t in range(s, 6):
                    assert geom_block(k, s, t)[0] == geom_series_sum(k, range(s, t + 1))
            for s in range(2, 5):
                for t in range(1, 4):
                    assert geom_alternating(k, s, t)[0] == geom_series_sum(k, (s + 2 * n for n in range(t + 1)))

    def test_grid(self):
        for k in range(2, 11):
            for s in range(1, 9):
                for t in range(s, 9):
                    q, tup = geom_block(k, s, t)
                    assert is_half_relation(tup, q)
            for s in range(2, 9):
                for t in range(1, 7):
                    q, tup = geom_alternating(k, s, t)
                    assert is_half_relation(tup, q)

    @pytest.mark.parametrize("args", [(1, 1, 1), (3, 0, 2), (3, 3, 2)])
    def test_block_bad(self, args):
        with pytest.raises(BadParams):
            geom_block(*args)

    @pytest.mark.parametrize("args", [(3, 1, 1), (1, 2, 1), (3, 2, 0)])
    def test_alternating_bad(self, args):
        with pytest.raises(BadParams):
            geom_alternating(*args)


class TestPell:
    def test_prefixes(self):
        assert pell_numbers(8) == [0, 1, 2, 5, 12, 29, 70, 169]
        assert half_pell_numbers(8) == [1, 1, 3, 7, 17, 41, 99, 239]

    def test_examples(self):
        assert pell_tuple(2) == (Fraction(5, 2), (1, -4, 1, -1, 1, -1))
        assert pell_tuple(3) == (Fraction(12, 5), (1, 20, 1, -1, 1, -1))
        assert hpell_tuple(2) == (Fraction(7, 3), (1, 3, 1, -1, 1, -1))
        assert hpell_tuple(3) == (Fraction(17, 7), (1, -21, 1, -1, 1, -1))

    def test_identities(self):
        for n in range(1, 201):
            p0, p1, p2 = pell_state(n - 1).P, pell_state(n).P, pell_state(n + 1).P
            h0, h1, h2 = pell_state(n - 1).H, pell_state(n).H, pell_state(n + 1).H
            assert p0 * p2 - p1 * p1 == (-1) ** n
            assert h2 * h0 - h1 * h1 == 2 * (-1) ** (n + 1)

    def test_f_vanishes(self):
        for n in range(2, 51):
            q, t = pell_tuple(n)
            a, u = hpell_tuple(n)
            assert f_check(q, t[1]) == 0
            assert f_check(a, u[1]) == 0

    def test_f_values(self):
        assert f_check(Fraction(5, 2), -4) == 0
        assert f_check(2, 0) == 0
        assert f_check(1, 1) == -4

    def test_f_is_phr6(self):
        import random
        rng = random.Random(11)
        for _ in range(100):
            x = rng.choice([v for v in range(-50, 51) if v])
            q = Fraction(rng.randint(-30, 30), rng.randint(1, 30))
            assert phr_poly((1, x, 1, -1, 1, -1))(q) == f_check(q, x)

    def test_certificates(self):
        for n in range(2, 12):
            assert certify_half_relation(*reversed(pell_tuple(n))).valid
            assert certify_half_relation(*reversed(hpell_tuple(n))).valid

    def test_index_too_small(self):
        with pytest.raises(IndexTooSmall):
            pell_tuple(1)

    def test_convergence(self):
        lo, hi = Fraction(2414213562373, 10**12), Fraction(2414213562374, 10**12)
        assert lo < 1 + math.sqrt(2) < hi and hi - lo <= Fraction(1, 10**12)
        for n in range(10, 60):
            for q, _ in (pell_tuple(n), hpell_tuple(n)):
                assert max(abs(q - lo), abs(q - hi)) < Fraction(1, 10**6)


class TestBaseK:
    def test_examples(self):
        assert base_k_parse("0.222", 3) == Fraction(26, 27)
        assert base_k_parse("0.007", 8) == Fraction(7, 512)
        assert base_k_parse("0.0", 10) == 0
        assert base_k_parse("0.0202", 3) == Fraction(20, 81)
        assert base_k_parse("0.000606", 7) == geom_alternating(7, 4, 1)[0]

    @pytest.mark.parametrize("digits,k", [("0.3", 3), ("0.1x", 10), ("12", 10), ("0.1", 40)])
    def test_bad(self, digits, k):
        with pytest.raises(BadDigit):
            base_k_parse(digits, k)
