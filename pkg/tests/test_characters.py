import random
from fractions import Fraction

import numpy as np
import pytest

from ultrametric import characters as ch
from ultrametric.padic import PAdicInt, PAdicScalar
from ultrametric.radic import Radix


def test_cyclic_examples():
    assert ch.cyclic_eval(ch.CyclicCharacter(4, 1), 1).turn == Fraction(1, 4)
    assert ch.cyclic_eval(ch.CyclicCharacter(4, 1), 1).complex() == pytest.approx(1j)
    assert all(ch.cyclic_eval(ch.CyclicCharacter(5, 0), a).is_one() for a in range(5))
    assert ch.cyclic_eval(ch.CyclicCharacter(2, 1), 1).turn == Fraction(1, 2)


def test_cyclic_homomorphism_law():
    rng = random.Random(1)
    for _ in range(200):
        n = rng.randrange(1, 30)
        chi = ch.CyclicCharacter(n, rng.randrange(n))
        a, b = rng.randrange(100), rng.randrange(100)
        assert chi.eval(a + b).turn == (chi.eval(a) * chi.eval(b)).turn


def test_ep_eval_examples():
    half = PAdicScalar.from_rational(Fraction(1, 2), 2, 6)
    assert ch.ep_eval(half).turn == Fraction(1, 2)
    five = PAdicScalar.from_rational(5, 2, 6)
    assert ch.ep_eval(five).is_one()
    x = PAdicScalar.from_rational(Fraction(5, 4), 2, 6)
    assert ch.ep_eval(x).turn == Fraction(1, 4)


def test_ep_homomorphism():
    rng = random.Random(3)
    p, N = 3, 8
    for _ in range(200):
        a = Fraction(rng.randrange(-40, 41), p ** rng.randrange(0, 4))
        b = Fraction(rng.randrange(-40, 41), p ** rng.randrange(0, 4))
        if a == 0 or b == 0 or a + b == 0:
            continue
        ea = ch.ep_eval(PAdicScalar.from_rational(a, p, N))
        eb = ch.ep_eval(PAdicScalar.from_rational(b, p, N))
        eab = ch.ep_eval(PAdicScalar.from_rational(a + b, p, N))
        assert eab.turn == (ea * eb).turn


def test_phi_y_kernel():
    # |y|_2 = 2, i.e. y = 1/2: kernel on Z_2 is 2 Z_2, checked mod 2^3
    y = ch.PadicCharacter(2, 1, 1)
    assert y.kernel_exponent() == 1
    for r in range(8):
        val = y.eval_int(r)
        assert val.is_one() == (r % 2 == 0)
    trivial = ch.PadicCharacter(5, 0, 0)
    assert trivial.trivial
    assert all(trivial.eval_int(r).is_one() for r in range(25))
    # y in Z_p: phi_y restricted to Z_p is identically 1
    x = PAdicScalar.from_padic_int(PAdicInt(2, 6, 13))
    assert ch.phi_y(ch.PadicCharacter(2, 0, 0), x).is_one()


def test_phi_y_matches_ep_of_product():
    rng = random.Random(7)
    p, N = 2, 10
    for _ in range(200):
        k = rng.randrange(0, 4)
        y_res = rng.randrange(p**k) if k else 0
        y = ch.PadicCharacter(p, k, y_res)
        xq = Fraction(rng.randrange(1, 200))
        x = PAdicScalar.from_rational(xq, p, N)
        yq = Fraction(y_res, p**k)
        expected = ch.ep_eval(PAdicScalar.from_rational(xq * yq, p, N)) if xq * yq else ch.ONE
        assert ch.phi_y(y, x).turn == expected.turn


def test_turn_sum_lemma():
    assert ch.turn_sum_is_zero([Fraction(a, 5) for a in range(5)])
    assert not ch.turn_sum_is_zero([Fraction(0), Fraction(0)])
    assert ch.turn_sum_is_zero([Fraction(0), Fraction(1, 2)])


def test_gram_identity():
    for n in (1, 2, 4, 7, 12):
        g = ch.gram_exact(n)
        assert all(
            g[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n)
        )
        f = ch.gram_float(n)
        assert np.max(np.abs(f - np.eye(n))) < 1e-12


def test_table_cap_and_n1():
    t = ch.character_table(1)
    assert len(t) == 1 and t[0][0].is_one()
    with pytest.raises(ValueError):
        ch.character_table(ch.TABLE_CAP + 1)


def test_l2_distance_is_two():
    for n in (2, 3, 8, 15):
        for j1 in range(n):
            for j2 in range(n):
                d = ch.l2_distance_squared(n, j1, j2)
                assert d == (0 if j1 == j2 else 2)


def test_sup_distance_exceeds_one():
    for n in range(2, 65):
        for j2 in range(1, n):
            assert ch.sup_distance_exceeds_one(n, 0, j2)
    assert not ch.sup_distance_exceeds_one(6, 2, 2)


def test_padic_character_count_and_kernels():
    for p, k in ((2, 3), (3, 2), (5, 1), (7, 0)):
        chars = ch.padic_characters(p, k)
        assert len(chars) == ch.padic_character_count(p, k) == p**k
        tables = {tuple(c.eval_int(a).turn for a in range(p**k)) for c in chars}
        assert len(tables) == p**k  # pairwise distinct
        for c in chars:
            ke = c.kernel_exponent()
            pk = p**k
            for r in range(min(pk, 64)):
                if r % p**ke == 0:
                    assert c.eval_int(r).is_one()


def test_padic_characters_trivial_on_conductor_ball():
    p, k = 3, 2
    for c in ch.padic_characters(p, k):
        for a in range(0, 5 * p**k, p**k):
            assert c.eval_int(a).is_one()


def test_span_dimension_of_level_k_characters():
    # the p^k characters restricted to Z/p^kZ form an orthogonal basis,
    # so level-k locally constant functions have character-span dimension p^k
    p, k = 2, 3
    n = p**k
    assert all(
        ch.gram_exact(n)[i][j] == (1 if i == j else 0)
        for i in range(n)
        for j in range(n)
    )


def test_radic_characters_via_projection():
    r = Radix((2, 3, 2))
    n = 2
    R = r.cumulative(n)  # 6
    chars = [ch.radic_character(r, n, j) for j in range(R)]
    # trivial on Y_n = R_n Z_r: value 1 on multiples of R_n
    for chi in chars:
        for m in range(0, 5 * R, R):
            assert chi(m).is_one()
    tables = {tuple(chi(a).turn for a in range(R)) for chi in chars}
    assert len(tables) == R
    # homomorphism law on representatives
    rng = random.Random(11)
    for _ in range(100):
        j = rng.randrange(R)
        a, b = rng.randrange(100), rng.randrange(100)
        chi = ch.radic_character(r, n, j)
        assert chi(a + b).turn == (chi(a) * chi(b)).turn


def test_product_characters_z2_z3():
    assert ch.all_product_characters_match([2, 3])
    assert ch.all_product_characters_match([2, 2])
    assert ch.all_product_characters_match([4, 2])


def test_product_character_trivial_and_law():
    trivial = ch.product_character([lambda d: ch.ONE, lambda d: ch.ONE])
    assert trivial((1, 2)).is_one()
    chis = [ch.CyclicCharacter(2, 1).eval, ch.CyclicCharacter(3, 2).eval]
    phi = ch.product_character(chis)
    for a0 in range(2):
        for a1 in range(3):
            for b0 in range(2):
                for b1 in range(3):
                    x, y = (a0, a1), (b0, b1)
                    z = ((a0 + b0) % 2, (a1 + b1) % 3)
                    assert phi(z).turn == (phi(x) * phi(y)).turn


def test_orthogonality_integral_zero():
    # int phi dH = 0 for nontrivial characters, via the exact sum lemma
    for n in (2, 3, 6, 10):
        for j in range(1, n):
            turns = [ch.CyclicCharacter(n, j).eval(a).turn for a in range(n)]
            assert ch.turn_sum_is_zero(turns)
