from __future__ import annotations

import numpy as np
import pytest

from oracle import all_codewords, min_weight, symplectic_dual_words, symplectic_weight
from qcadditive.additive import (
    AdditiveCode,
    all_one,
    all_w,
    augment,
    construction_x,
    extend,
    extended_dual_distance,
    format_gf4,
    format_params,
    gf4_add,
    gf4_mul,
    juxtapose,
    parse_gf4,
    phi_inverse,
    phi_map,
    puncture,
    shorten,
)
from qcadditive.codes import dual_code
from qcadditive.distance import min_distance
from qcadditive.errors import (
    AugmentForbidden,
    EmptyCode,
    InvalidForm,
    InvalidInput,
    NotASubcode,
    ParseError,
    ShapeError,
)


def _random_additive(rng, n: int, k2: int) -> AdditiveCode:
    while True:
        c = AdditiveCode.from_rows(rng.integers(0, 2, size=(k2, 2 * n)).astype(np.uint8), n)
        if c.k2:
            return c


def _gf4_words(c: AdditiveCode) -> set[tuple[int, ...]]:
    return {tuple(phi_map(w)) for w in all_codewords(c.generators)}


class TestPhi:
    def test_examples(self):
        assert list(phi_map(np.array([1, 0, 0, 1]))) == [1, 2]
        assert list(phi_map(np.array([1, 1, 1, 1]))) == [3, 3]

    def test_odd_length(self):
        with pytest.raises(InvalidForm):
            phi_map(np.array([1, 0, 1]))

    def test_round_trip_and_weight(self, rng):
        v = rng.integers(0, 2, size=(100_000, 20)).astype(np.uint8)
        u = phi_map(v)
        assert (phi_inverse(u) == v).all()
        sympl = np.count_nonzero(v[:, :10] | v[:, 10:], axis=1)
        assert (np.count_nonzero(u, axis=1) == sympl).all()

    def test_additive(self, rng):
        a = rng.integers(0, 2, size=(200, 12)).astype(np.uint8)
        b = rng.integers(0, 2, size=(200, 12)).astype(np.uint8)
        assert (phi_map(a ^ b) == (phi_map(a) ^ phi_map(b))).all()

    def test_field_arithmetic(self):
        w, W = 2, 3
        assert gf4_mul(w, w) == W and gf4_mul(w, W) == 1
        assert gf4_add(w, 1) == W
        for a in range(1, 4):
            assert any(gf4_mul(a, b) == 1 for b in range(1, 4))

    def test_parse_and_format(self):
        assert list(parse_gf4("1 w W 0")) == [1, 2, 3, 0]
        assert list(parse_gf4("1wW0")) == [1, 2, 3, 0]
        assert list(parse_gf4("w^2 1")) == [3, 1]
        assert format_gf4([0, 1, 2, 3]) == "0 1 w W"
        with pytest.raises(ParseError):
            parse_gf4("1 x")

    def test_phi_inverse_range(self):
        with pytest.raises(InvalidInput):
            phi_inverse(np.array([4]))

    def test_format_params(self):
        assert format_params(31, 5, 24) == "(31,2.5,24)_4"
        assert format_params(25, 26, 8) == "(25,13,8)_4"


class TestExtend:
    def test_even_like_sum(self):
        c = AdditiveCode.from_gf4([[1, 2, 2]])
        e = extend(c)
        assert e.n == 4 and list(e.gf4_generators()[0]) == [1, 2, 2, 1]

    def test_zero_pad(self):
        c = AdditiveCode.from_gf4([[1, 1]])
        e = extend(c, "zero-pad", count=2)
        assert e.n == 4 and list(e.gf4_generators()[0][2:]) == [0, 0]

    def test_bad_mode(self):
        with pytest.raises(InvalidInput):
            extend(AdditiveCode.from_gf4([[1]]), "odd")

    def test_distance_grows_by_at_most_one(self, rng):
        for _ in range(30):
            c = _random_additive(rng, 6, 4)
            e = extend(c)
            assert e.k2 == c.k2
            d, de = min_weight(c.generators, True), min_weight(e.generators, True)
            assert d <= de <= d + 1
            # every word of the extension has GF(4) coordinate sum 0
            for w in _gf4_words(e):
                s = 0
                for v in w:
                    s ^= v
                assert s == 0


class TestPunctureShorten:
    def test_puncture_example(self):
        c = AdditiveCode.from_gf4([[1, 2, 3]])
        assert list(puncture(c, [1]).gf4_generators()[0]) == [1, 3]

    def test_shorten_example(self):
        c = AdditiveCode.from_gf4([[1, 1, 0], [0, 1, 1], [0, 2, 2]])
        s = shorten(c, [0])
        assert s.n == 2 and s.k2 == 2

    def test_out_of_range(self):
        with pytest.raises(InvalidInput):
            puncture(AdditiveCode.from_gf4([[1, 1]]), [2])

    def test_shorten_to_nothing(self):
        with pytest.raises(EmptyCode):
            shorten(AdditiveCode.from_gf4([[1, 1]]), [0])

    def test_shorten_matches_oracle(self, rng):
        for _ in range(20):
            c = _random_additive(rng, 6, 6)
            try:
                s = shorten(c, [2])
            except EmptyCode:
                continue
            expect = {w[:2] + w[3:] for w in _gf4_words(c) if w[2] == 0}
            assert _gf4_words(s) == expect

    def test_duality(self, rng):
        # dual(shorten(C, P)) == puncture(dual(C), P)
        for n in range(3, 11):
            for _ in range(4):
                c = _random_additive(rng, n, int(rng.integers(2, n + 1)))
                pos = sorted(rng.choice(n, size=int(rng.integers(1, 3)), replace=False).tolist())
                try:
                    s = shorten(c, pos)
                except EmptyCode:
                    continue
                lhs = dual_code(s.preimage, "symplectic")
                dual = AdditiveCode.from_binary(dual_code(c.preimage, "symplectic"))
                assert lhs.same_code(puncture(dual, pos).preimage)


class TestAugment:
    def test_half(self):
        c = AdditiveCode.from_gf4([[1, 2, 0, 0]])
        a = augment(c, "half")
        assert a.k2 == 2 and a.preimage.contains(all_one(4))

    def test_full(self):
        a = augment(AdditiveCode.from_gf4([[1, 2, 0, 0]]), "full")
        assert a.k2 == 3 and a.preimage.contains(all_w(4))

    def test_full_weight_word_forbidden(self):
        c = AdditiveCode.from_gf4([[1, 2, 3]])
        with pytest.raises(AugmentForbidden):
            augment(c)
        assert augment(c, strict=False).k2 == 2

    def test_no_growth_forbidden(self):
        with pytest.raises(AugmentForbidden):
            augment(AdditiveCode.from_gf4([[1, 1, 1]]), strict=False)

    def test_distance_property(self, rng):
        # adding 1_n to c zeroes exactly the coordinates where c is 1
        for _ in range(30):
            c = _random_additive(rng, 5, 3)
            try:
                a = augment(c)
            except AugmentForbidden:
                continue
            d = min_weight(c.generators, True)
            shifted = min(5 - int(np.count_nonzero(phi_map(w) == 1)) for w in all_codewords(c.generators))
            assert min_distance(a.preimage).value == min(d, shifted) == min_weight(a.generators, True)


class TestConstructionX:
    def test_shape_and_subcode_checks(self):
        c1 = AdditiveCode.from_gf4([[1, 0, 0], [0, 1, 0]])
        c2 = AdditiveCode.from_gf4([[1, 0, 0]])
        with pytest.raises(ShapeError):
            construction_x(c1, c2, AdditiveCode.from_gf4([[1, 1], [2, 2]]))
        with pytest.raises(NotASubcode):
            construction_x(c1, AdditiveCode.from_gf4([[0, 0, 1]]), AdditiveCode.from_gf4([[1, 1]]))

    def test_distance_bound(self, rng):
        aux = AdditiveCode.from_gf4([[1, 1, 1]])  # (3,0.5,3)
        for _ in range(20):
            c1 = _random_additive(rng, 6, 5)
            sub_rows = c1.generators[1:]
            c2 = AdditiveCode.from_rows(sub_rows, 6)
            if c2.k2 != c1.k2 - 1:
                continue
            x = construction_x(c1, c2, aux)
            assert (x.n, x.k2) == (9, c1.k2)
            d1 = min_weight(c1.generators, True)
            d2 = min_weight(c2.generators, True)
            assert min_weight(x.generators, True) >= min(d2, d1 + 3)


class TestJuxtapose:
    def test_rows_are_concatenated(self):
        j = juxtapose(AdditiveCode.from_gf4([[1, 0]]), AdditiveCode.from_gf4([[2]]))
        assert list(j.gf4_generators()[0]) == [1, 0, 2]

    def test_mismatch(self):
        with pytest.raises(ShapeError):
            juxtapose(AdditiveCode.from_gf4([[1, 0]]), AdditiveCode.from_gf4([[1], [2]]))

    def test_distance_is_superadditive(self, rng):
        for _ in range(20):
            a, b = _random_additive(rng, 5, 3), _random_additive(rng, 4, 3)
            if a.k2 != 3 or b.k2 != 3:
                continue
            j = juxtapose(a, b)
            assert min_weight(j.generators, True) >= min_weight(a.generators, True)


class TestExtendedDualDistance:
    def test_against_oracle(self, rng):
        for _ in range(15):
            n = int(rng.integers(3, 6))
            c = _random_additive(rng, n, int(rng.integers(1, n + 1)))
            best = None
            for w in symplectic_dual_words(c.generators):
                v = np.frombuffer(w, dtype=np.uint8)
                if not v.any():
                    continue
                sym = 0
                for s in phi_map(v):
                    sym ^= int(s)
                wt = symplectic_weight(v) + (sym != 0)
                best = wt if best is None else min(best, wt)
            assert extended_dual_distance(c).value == best
