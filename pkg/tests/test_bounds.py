from __future__ import annotations

import random

import pytest

from qcadditive import gf2
from qcadditive.bounds import (
    LinearRecord,
    classify_vs_reference,
    cyclic_distance,
    griesmer_concat_check,
    griesmer_concat_max_d,
    griesmer_concat_sum,
    lemma2_check,
    parse_reference,
    theorem1_bound,
    theorem1_conditions,
    theorem2_conditions,
)
from qcadditive.codes import QCGenerator, build_qc_1gen
from qcadditive.distance import min_distance
from qcadditive.errors import HypothesisViolated, InvalidIndex, InvalidInput, NotAGenerator
from qcadditive.gf2 import GF2Poly
from qcadditive.tables import load_examples, read_data

ONE = GF2Poly(1)
X1 = GF2Poly.from_exponents([0, 1])


def _example1():
    ex = load_examples()["example1"]
    g, fs = ex.gens[0]
    return ex.n, g, fs


class TestTheorem1Bound:
    @pytest.mark.parametrize("q,m,d,want", [(2, 1, 16, 24), (2, 2, 64, 192), (2, 3, 0, 0), (4, 1, 4, 5)])
    def test_values(self, q, m, d, want):
        assert theorem1_bound(q, m, d) == want

    def test_invalid(self):
        with pytest.raises(InvalidInput):
            theorem1_bound(2, 0, 3)


class TestTheorem1Conditions:
    def test_example1(self):
        n, g, fs = _example1()
        rep = theorem1_conditions(n, g, fs)
        assert rep.hypotheses_hold and rep.bound_value == 24 and rep.d_g == 16

    def test_constant_pair_fails_degree(self):
        n, g, _ = _example1()
        rep = theorem1_conditions(n, g, (ONE, ONE))
        assert not rep.hypotheses_hold and "deg" in rep.failed_condition

    def test_equal_pair_fails_sum(self):
        n, g, _ = _example1()
        f = GF2Poly.from_exponents([0, 2])
        rep = theorem1_conditions(n, g, (f, f))
        assert not rep.hypotheses_hold and "f_0 + f_1" in rep.failed_condition
        assert rep.bound_value == 0

    def test_non_divisor(self):
        with pytest.raises(NotAGenerator):
            theorem1_conditions(7, GF2Poly.from_exponents([0, 2]), (ONE, X1))

    def test_odd_index(self):
        with pytest.raises(InvalidIndex):
            theorem1_conditions(7, X1, (ONE,))

    def test_cyclic_distance_through_dual(self):
        # <1+x> in length 31 is too big to enumerate; its dual is the repetition code
        assert cyclic_distance(31, X1, budget=1 << 10) == 2
        assert cyclic_distance(7, GF2Poly.from_exponents([0, 1, 3])) == 3

    def test_bound_never_violated(self):
        r = random.Random(7)
        checked = 0
        for n in (7, 9, 15, 17, 21, 23, 31, 33, 35):
            full = gf2.x_n_minus_1(n)
            found, attempts = 0, 0
            while found < 15 and attempts < 20000:
                attempts += 1
                g = gf2.poly_gcd(GF2Poly(r.getrandbits(n + 1)) or ONE, full)
                if g.degree >= n or n - g.degree > 20:
                    continue
                m = r.choice((1, 2))
                fs = tuple(GF2Poly(r.getrandbits(n)) for _ in range(2 * m))
                d_g = cyclic_distance(n, g)
                rep = theorem1_conditions(n, g, fs, d_g=d_g)
                if not rep.hypotheses_hold:
                    continue
                code = build_qc_1gen(QCGenerator(n, g, fs))
                assert code.rank == n - g.degree
                d = min_distance(code, budget=1 << 20)
                assert d.exact and d.value >= rep.bound_value, (n, g, fs)
                found += 1
            checked += found
        assert checked >= 100


class TestTheorem2Conditions:
    def test_example2(self):
        ex = load_examples()["example2"]
        g, _ = ex.gens[0]
        rep = theorem2_conditions(ex.n, g, X1, ONE, 128)
        assert rep.hypotheses_hold and rep.bound_value == 192

    def test_degree_failure(self):
        rep = theorem2_conditions(7, GF2Poly.from_exponents([0, 1, 3]), ONE, ONE, 3)
        assert not rep.hypotheses_hold


class TestLemma2:
    def test_example1(self):
        n, g, _ = _example1()
        assert lemma2_check(n, g, X1)
        q, r = gf2.poly_divrem(g, X1)
        assert r == GF2Poly(0)

    def test_self_divisor(self):
        n, g, _ = _example1()
        assert lemma2_check(n, g, g)

    def test_even_n(self):
        with pytest.raises(HypothesisViolated):
            lemma2_check(8, X1, X1)

    def test_divisor_is_coprime_to_h(self):
        n, g, _ = _example1()
        h = gf2.cyclotomic_quotient(g, n)
        for f in (X1, g):
            assert gf2.poly_gcd(f, h) == ONE

    def test_shifted_divisor_can_share_a_factor(self):
        # f | g does not make f + 1 coprime to h
        n, g, _ = _example1()
        h = gf2.cyclotomic_quotient(g, n)
        assert gf2.poly_gcd(g + ONE, h) == GF2Poly.from_exponents([0, 3, 5])
        assert gf2.poly_gcd(X1 + ONE, h) == ONE


class TestGriesmer:
    def test_example1_tight(self):
        assert griesmer_concat_sum(5, 24) == 93
        assert griesmer_concat_check(31, 5, 24)
        assert not griesmer_concat_check(31, 5, 25)

    def test_example2_tight(self):
        assert griesmer_concat_sum(7, 96) == 381 == 3 * 127

    @pytest.mark.parametrize("n,k2,want", [(28, 7, 20), (254, 7, 192), (31, 5, 24)])
    def test_max_d(self, n, k2, want):
        assert griesmer_concat_max_d(n, k2) == want

    def test_single_term(self):
        for n in range(1, 40):
            assert griesmer_concat_max_d(n, 1) == (3 * n) // 2

    def test_max_d_is_tight(self):
        for n in range(1, 301, 7):
            for k2 in range(1, 13):
                d = griesmer_concat_max_d(n, k2)
                if d:
                    assert griesmer_concat_check(n, k2, d)
                assert not griesmer_concat_check(n, k2, d + 1)

    def test_invalid(self):
        with pytest.raises(InvalidInput):
            griesmer_concat_check(10, 0, 3)


class TestClassify:
    REF = parse_reference(read_data("reference_linear.txt"))

    def test_strong_sense(self):
        assert classify_vs_reference((56, 22, 30), self.REF) == "strong-sense-better"

    def test_higher_rate(self):
        assert classify_vs_reference((63, 11, 45), self.REF) == "higher-rate"

    def test_gap_filler(self):
        assert classify_vs_reference((56, 21, 30), self.REF) == "gap-filler"

    def test_unknown(self):
        assert classify_vs_reference((999, 4, 3), self.REF) == "unknown"

    def test_not_better(self):
        assert classify_vs_reference((56, 22, 29), [LinearRecord(56, 11, 29)]) == "not-better"

    def test_order_independent(self):
        r = random.Random(3)
        shuffled = list(self.REF)
        r.shuffle(shuffled)
        for params in [(56, 22, 30), (63, 11, 45), (56, 21, 30), (128, 22, 80)]:
            assert classify_vs_reference(params, shuffled) == classify_vs_reference(params, self.REF)

    def test_parse_reference(self):
        recs = parse_reference("# c\n56 11 29\n\n63 5 44  # note\n")
        assert recs == [LinearRecord(56, 11, 29), LinearRecord(63, 5, 44)]
        with pytest.raises(InvalidInput):
            parse_reference("1 2\n")
