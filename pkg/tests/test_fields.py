"""Field towers: quadratic etale, cyclic cubic, composite LK."""

from fractions import Fraction

import pytest

from albertlab.errors import (ConfigError, NotGaloisClosure, NotInvertible,
                              NotIrreducible)
from albertlab.fields import (Composite, CyclicCubic, Elem, PrimeFieldDesc,
                              QuadraticEtale, Rationals, tower_build)
from albertlab.rng import Stream
from albertlab.scalars import PrimeField


class TestQuadratic:
    def test_gaussian_norm_trace(self, tower_q):
        K = tower_q.K
        x = Elem(K, [Fraction(3), Fraction(4)])       # 3 + 4i
        # N(3+4i) = 9 + 16, T = 6   [oracle: a^2 - d b^2 with d = -1]
        assert tower_q.norm(x, "K/k") == Fraction(25)
        assert tower_q.trace(x, "K/k") == Fraction(6)

    def test_bar_is_involution(self, tower_q):
        K = tower_q.K
        x = Elem(K, [Fraction(2), Fraction(-7)])
        assert K.apply("bar", K.apply("bar", x)) == x
        assert K.apply("bar", x) == Elem(K, [Fraction(2), Fraction(7)])

    def test_split_case(self):
        tow = tower_build(QuadraticEtale(base=Rationals(), split=True))
        K = tow.K
        x = Elem(K, [Fraction(2), Fraction(5)])
        y = Elem(K, [Fraction(3), Fraction(-1)])
        # componentwise product in k x k
        assert x * y == Elem(K, [Fraction(6), Fraction(-5)])
        assert K.apply("bar", x) == Elem(K, [Fraction(5), Fraction(2)])

    def test_f25_bar_is_frobenius(self):
        f5 = PrimeField(5)
        tow = tower_build(QuadraticEtale(base=PrimeFieldDesc(5), d="2"))
        K = tow.K
        for a in range(5):
            for b in range(5):
                x = Elem(K, [f5.from_int(a), f5.from_int(b)])
                frob = x
                for _ in range(4):
                    frob = frob * x
                assert K.apply("bar", x) == frob

    def test_zero_d_rejected(self):
        with pytest.raises(ConfigError):
            tower_build(QuadraticEtale(base=Rationals(), d="0"))


class TestCyclicCubic:
    def test_generator_norm_trace(self, tower_l_q):
        L = tower_l_q.L
        alpha = Elem(L, [Fraction(0), Fraction(1), Fraction(0)])
        # for x^3 - 3x + 1: N(alpha) = -a0 = -1, T(alpha) = -a2 = 0
        assert tower_l_q.norm(alpha, "L/k") == Fraction(-1)
        assert tower_l_q.trace(alpha, "L/k") == Fraction(0)

    def test_rho_order_three_and_nontrivial(self, tower_l_q):
        L = tower_l_q.L
        alpha = Elem(L, [Fraction(0), Fraction(1), Fraction(0)])
        r1 = L.apply("rho", alpha)
        r3 = L.apply("rho", L.apply("rho", r1))
        assert r1 != alpha
        assert r3 == alpha

    def test_norm_is_rho_invariant(self, tower_l_q):
        L = tower_l_q.L
        s = Stream(7)
        for _ in range(20):
            x = L.random(s)
            assert tower_l_q.norm(x, "L/k") == \
                tower_l_q.norm(L.apply("rho", x), "L/k")

    def test_reducible_rejected(self):
        # x^3 - 1 = (x - 1)(x^2 + x + 1)
        with pytest.raises(NotIrreducible):
            tower_build(CyclicCubic(base=Rationals(), f=("-1", "0", "0", "1"),
                                    rho=("-2", "0", "1")))

    def test_non_galois_rejected(self):
        # x^3 - 2 is irreducible but not Galois over Q; no polynomial rho
        # can permute its roots inside L
        with pytest.raises(NotGaloisClosure):
            tower_build(CyclicCubic(base=Rationals(), f=("-2", "0", "0", "1"),
                                    rho=("-2", "0", "1")))

    def test_identity_rho_rejected(self):
        with pytest.raises(NotGaloisClosure):
            tower_build(CyclicCubic(base=Rationals(), f=("1", "-3", "0", "1"),
                                    rho=("0", "1", "0")))


class TestComposite:
    def test_star_fixes_l_and_rho_fixes_k(self, tower_q):
        LK = tower_q.LK
        alpha = tower_q.embed_L_in_LK(
            Elem(tower_q.L, [Fraction(0), Fraction(1), Fraction(0)]))
        i_elem = tower_q.embed_K_in_LK(
            Elem(tower_q.K, [Fraction(0), Fraction(1)]))
        assert LK.apply("star", alpha) == alpha
        assert LK.apply("star", i_elem) == -i_elem
        assert LK.apply("rho", i_elem) == i_elem
        assert LK.apply("rho", alpha) != alpha

    def test_star_and_rho_commute(self, tower_q):
        LK = tower_q.LK
        s = Stream(11)
        for _ in range(20):
            x = LK.random(s)
            assert LK.apply("star", LK.apply("rho", x)) == \
                LK.apply("rho", LK.apply("star", x))

    def test_lk_norm_multiplicative(self, tower_q):
        s = Stream(13)
        for _ in range(10):
            x = tower_q.LK.random(s)
            y = tower_q.LK.random(s)
            nx = tower_q.norm(x, "LK/K")
            ny = tower_q.norm(y, "LK/K")
            assert tower_q.norm(x * y, "LK/K") == nx * ny

    def test_inversion(self, tower_q):
        s = Stream(17)
        LK = tower_q.LK
        for _ in range(10):
            x = LK.random(s)
            if not x:
                continue
            try:
                y = x.inv()
            except NotInvertible:
                continue
            assert x * y == LK.one

    def test_mismatched_bases_rejected(self):
        with pytest.raises(ConfigError):
            tower_build(Composite(
                L=CyclicCubic(base=Rationals(), f=("1", "-3", "0", "1"),
                              rho=("-2", "0", "1")),
                K=QuadraticEtale(base=PrimeFieldDesc(5), d="2")))
