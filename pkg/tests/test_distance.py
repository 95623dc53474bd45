from __future__ import annotations

import numpy as np
import pytest

from oracle import all_codewords, hamming_weight, min_weight, symplectic_dual_words, symplectic_weight
from qcadditive.additive import phi_map
from qcadditive.codes import BinaryCode, QCGenerator, build_cyclic, build_qc_1gen
from qcadditive.distance import (
    codewords_of_weight,
    distance,
    dual_min_distance,
    macwilliams,
    min_distance,
    sampled_upper_bound,
    weight,
    weight_distribution,
)
from qcadditive.errors import BudgetError, InvalidForm, NoCodewords
from qcadditive.gf2 import GF2Poly
from qcadditive.tables import load_examples

HAMMING_G = GF2Poly.from_exponents([0, 1, 3])


def _random_code(rng, k: int, length: int, symplectic: bool = True) -> BinaryCode:
    while True:
        m = rng.integers(0, 2, size=(k, length)).astype(np.uint8)
        c = BinaryCode(length, m, symplectic)
        if c.rank:
            return c


class TestWeight:
    def test_examples(self):
        assert weight(np.array([1, 0, 1, 1]), "hamming") == 3
        assert weight(np.array([1, 0, 1, 1]), "symplectic") == 2
        assert weight(np.array([1, 1, 1, 1]), "symplectic") == 2
        assert weight(np.zeros(6, dtype=np.uint8), "symplectic") == 0

    def test_odd_length(self):
        with pytest.raises(InvalidForm):
            weight(np.array([1, 0, 1]), "symplectic")

    def test_lemma1_identity(self, rng):
        # 2 w_s(x|y) = w_H(x) + w_H(y) + w_H(x + y)
        x = rng.integers(0, 2, size=(100_000, 16)).astype(np.uint8)
        y = rng.integers(0, 2, size=(100_000, 16)).astype(np.uint8)
        ws = np.count_nonzero(x | y, axis=1)
        rhs = np.count_nonzero(x, axis=1) + np.count_nonzero(y, axis=1) + np.count_nonzero(x ^ y, axis=1)
        assert (2 * ws == rhs).all()
        for i in range(200):
            assert 2 * weight(np.concatenate([x[i], y[i]]), "symplectic") == rhs[i]

    def test_symplectic_is_gf4_hamming(self, rng):
        # wt_s(a|b) = wt_H(a) + wt_H(b) - |a & b| = Hamming weight over GF(4)
        for _ in range(2000):
            v = rng.integers(0, 2, size=24).astype(np.uint8)
            a, b = v[:12], v[12:]
            s = weight(v, "symplectic")
            assert s == int(a.sum() + b.sum() - (a & b).sum())
            assert s == int(np.count_nonzero(phi_map(v)))
            assert s == symplectic_weight(v)


class TestMinDistance:
    def test_repetition(self):
        c = BinaryCode(3, np.array([[1, 1, 1]], dtype=np.uint8), False)
        r = min_distance(c, "hamming")
        assert r.value == 3 and r.exact

    def test_symplectic_example(self):
        c = BinaryCode(4, np.array([[1, 0, 1, 0], [0, 1, 0, 1]], dtype=np.uint8), True)
        assert min_distance(c, "symplectic").value == 1

    def test_zero_code(self):
        with pytest.raises(NoCodewords):
            min_distance(BinaryCode(4, np.zeros((0, 4), dtype=np.uint8)))

    def test_out_of_budget_is_not_exact(self):
        c = build_cyclic(31, GF2Poly.from_exponents([0, 1, 2, 3, 5]))
        r = min_distance(c, "hamming", budget=100)
        assert not r.exact and r.upper_bound is not None
        with pytest.raises(BudgetError):
            distance(c, "hamming", budget=100)

    def test_against_oracle(self, rng):
        for _ in range(60):
            k = int(rng.integers(1, 8))
            c = _random_code(rng, k, 16)
            assert min_distance(c, "symplectic").value == min_weight(c.generators, True)
            assert min_distance(c, "hamming").value == min_weight(c.generators, False)

    def test_worker_invariance(self, rng):
        for _ in range(10):
            c = _random_code(rng, 12, 40)
            ref = min_distance(c)
            for w in (2, 3, 4):
                assert min_distance(c, workers=w).value == ref.value

    def test_lower_bound_stop_keeps_value(self):
        ex = load_examples()["example1"]
        g, fs = ex.gens[0]
        c = build_qc_1gen(QCGenerator(ex.n, g, fs))
        full = min_distance(c)
        assert min_distance(c, lower_bound=full.value).value == full.value

    def test_witness_has_minimum_weight(self, rng):
        c = _random_code(rng, 10, 30)
        r = min_distance(c)
        assert weight(c.encode(r.witness), "symplectic") == r.value


class TestSampling:
    def test_never_below_exact(self, rng):
        for seed in range(10):
            c = _random_code(rng, 14, 40)
            exact = min_distance(c).value
            ub = sampled_upper_bound(c, trials=2000, seed=seed)
            assert ub.value >= exact
            assert weight(c.encode(ub.witness), "symplectic") == ub.value

    def test_deterministic(self, rng):
        c = _random_code(rng, 20, 60)
        a = sampled_upper_bound(c, trials=5000, seed=7)
        b = sampled_upper_bound(c, trials=5000, seed=7)
        assert a.value == b.value and a.witness == b.witness


class TestDistributions:
    def test_weight_distribution_against_oracle(self, rng):
        for _ in range(20):
            c = _random_code(rng, int(rng.integers(1, 7)), 14)
            counts = np.zeros(8, dtype=np.int64)
            for w in all_codewords(c.generators):
                counts[symplectic_weight(w)] += 1
            assert (weight_distribution(c) == counts).all()

    def test_hamming_distribution(self):
        dist = weight_distribution(build_cyclic(7, HAMMING_G), "hamming")
        assert list(dist) == [1, 0, 0, 7, 7, 0, 0, 1]

    def test_binary_macwilliams(self):
        dual = macwilliams(weight_distribution(build_cyclic(7, HAMMING_G), "hamming"), 2)
        assert dual == [1, 0, 0, 0, 7, 0, 0, 0]  # simplex [7,3,4]

    def test_quaternary_macwilliams_against_oracle(self, rng):
        for _ in range(15):
            c = _random_code(rng, int(rng.integers(1, 6)), 12)
            dual_words = symplectic_dual_words(c.generators)
            counts = [0] * 7
            for w in dual_words:
                counts[symplectic_weight(w)] += 1
            assert macwilliams(weight_distribution(c), 4) == counts

    def test_dual_min_distance(self, rng):
        for _ in range(15):
            c = _random_code(rng, int(rng.integers(2, 6)), 12)
            nonzero = [symplectic_weight(w) for w in symplectic_dual_words(c.generators) if any(w)]
            assert dual_min_distance(c).value == min(nonzero)

    def test_codewords_of_weight(self):
        words = codewords_of_weight(build_cyclic(7, HAMMING_G), "hamming", 3)
        assert words.shape == (7, 7)
        assert all(hamming_weight(w) == 3 for w in words)
        assert len({w.tobytes() for w in words}) == 7
