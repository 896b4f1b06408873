import random

import pytest

from colorzeta.cyclotomic import CycNumber
from colorzeta.words import (
    NotLevelOneError,
    XWord,
    YWord,
    all_xwords,
    all_ywords,
    canonical_key,
    inv_map,
    p_map,
    parse_xword,
    parse_yword,
    plain_form,
    q_map,
    r_eta,
    ratio_form,
    tau,
    to_x,
    to_y,
    xword,
    yword,
)


def rand_word(rng, level, maxw=4):
    d = rng.randint(0, maxw)
    pairs = []
    left = maxw
    for _ in range(d):
        if left <= 0:
            break
        s = rng.randint(1, left)
        pairs.append((s, rng.randrange(level)))
        left -= s
    return yword(pairs, level)


def test_weights_and_admissibility():
    w = yword([(2, 1), (1, 0)], 3)
    assert w.weight == 3 and w.depth == 2
    assert w.is_admissible
    assert not yword([(1, 0), (2, 1)], 3).is_admissible
    assert YWord(()).is_admissible
    # non-admissible nonempty words start exactly with (1, 0)
    rng = random.Random(0)
    for _ in range(100):
        w = rand_word(rng, 4)
        if w and not w.is_admissible:
            assert w[0] == (1, 0)


def test_conversions():
    assert to_x(yword([(2, 1)], 3)) == XWord((None, 1))
    assert to_x(YWord(())) == XWord(())
    assert to_y(XWord(())) == YWord(())
    w = xword([1, None, None, 2], 3)
    assert to_y(w) == yword([(1, 1), (3, 2)], 3)
    with pytest.raises(ValueError):
        to_y(XWord((1, None)))
    rng = random.Random(1)
    for _ in range(60):
        w = rand_word(rng, 4)
        x = to_x(w)
        assert to_y(x) == w
        assert x.weight == w.weight and x.depth == w.depth


def test_p_q_maps():
    assert p_map(yword([(1, 1), (1, 1)], 4), 4) == yword([(1, 1), (1, 2)], 4)
    assert q_map(yword([(1, 1), (1, 2), (1, 0)], 4), 4) == yword(
        [(1, 1), (1, 1), (1, 2)], 4
    )
    w = yword([(2, 1)], 4)
    assert p_map(w, 4) == w and q_map(w, 4) == w
    rng = random.Random(2)
    for n in (3, 4):
        for _ in range(60):
            w = rand_word(rng, n)
            assert q_map(p_map(w, n), n) == w
            assert p_map(q_map(w, n), n) == w
            assert p_map(w, n).weight == w.weight


def test_q_commutes_with_divergent_prefix():
    rng = random.Random(3)
    for n in (3, 4):
        for _ in range(40):
            w = rand_word(rng, n, 3)
            for reps in (1, 2, 3):
                pre = tuple([(1, 0)] * reps)
                assert q_map(YWord(pre + tuple(w)), n) == YWord(
                    pre + tuple(q_map(w, n))
                )


def test_tau():
    assert tau(yword([(2, 0)], 3), 3) == (CycNumber.one(3), yword([(2, 0)], 3))
    t = tau(YWord(()), 3)
    assert t.word == YWord(()) and t.coeff == CycNumber.one(3)
    t = tau(yword([(1, 0), (2, 0)], 3), 3)
    assert t.coeff == CycNumber.from_rational(3, -1)
    assert t.word == yword([(2, 0), (1, 0)], 3)
    with pytest.raises(NotLevelOneError):
        tau(yword([(1, 1)], 3), 3)


def test_inv_map():
    s, e = 2, 1
    t = inv_map(yword([(s, e)], 4), 4)
    assert t.word == yword([(s, e)], 4)
    assert t.coeff == CycNumber.root_power(4, -e)  # (-1)^2 = +1
    t = inv_map(yword([(1, 0), (2, 2)], 4), 4)
    assert t.word == yword([(2, 2), (1, 0)], 4)
    assert t.coeff == -1 * CycNumber.root_power(4, -2)
    t = inv_map(YWord(()), 4)
    assert t.coeff == CycNumber.one(4) and t.word == YWord(())


def test_inv_is_antiautomorphism():
    rng = random.Random(4)
    for n in (3, 4):
        for _ in range(40):
            u, v = rand_word(rng, n, 3), rand_word(rng, n, 2)
            uv = YWord(tuple(u) + tuple(v))
            lhs = inv_map(uv, n)
            iu, iv = inv_map(u, n), inv_map(v, n)
            assert lhs.word == YWord(tuple(iv.word) + tuple(iu.word))
            assert lhs.coeff == iu.coeff * iv.coeff


def test_r_eta():
    x = xword([1, None, 3], 4)
    assert r_eta(x, 0, 4) == x
    assert r_eta(x, 1, 4) == xword([0, None, 2], 4)
    rng = random.Random(5)
    for n in (3, 4):
        for _ in range(40):
            x = to_x(rand_word(rng, n))
            e = rng.randrange(n)
            assert r_eta(r_eta(x, e, n), -e, n) == x


def test_ratio_and_plain_form():
    w = ratio_form((1, 1), (1, 2), 3)
    assert w == yword([(1, 1), (1, 1)], 3)
    assert plain_form(w, 3) == ((1, 1), (1, 2))
    assert ratio_form((2,), (1,), 4) == yword([(2, 1)], 4)
    rng = random.Random(6)
    for n in (3, 4):
        for _ in range(40):
            w = rand_word(rng, n)
            s, e = w.exponents(), w.colors()
            assert plain_form(ratio_form(s, e, n), n) == (s, e)


def test_enumeration_counts():
    # sum over depth d of C(w-1, d-1) N^d
    assert len(all_ywords(1, 3)) == 3
    assert len(all_ywords(2, 3)) == 12
    assert len(all_ywords(3, 4)) == 100
    assert len(all_ywords(4, 4)) == 500
    assert len(all_xwords(2, 4)) == 25
    ws = all_ywords(3, 3)
    assert ws == sorted(ws, key=canonical_key)
    assert len(set(ws)) == len(ws)


def test_parsing():
    assert parse_yword("y(2,1) y(1,0)", 3) == yword([(2, 1), (1, 0)], 3)
    assert parse_yword("1", 3) == YWord(())
    assert parse_yword("y(1,-1)", 3) == yword([(1, 2)], 3)
    assert parse_xword("x0 x(2)", 3) == xword([None, 2], 3)
    assert parse_xword("1", 3) == XWord(())
    with pytest.raises(ValueError):
        parse_yword("y(2;1)", 3)
    with pytest.raises(ValueError):
        parse_xword("x0 y(1,1)", 3)


def test_maps_preserve_weight_depth():
    rng = random.Random(7)
    for n in (3, 4):
        for _ in range(40):
            w = rand_word(rng, n)
            for f in (lambda v: p_map(v, n), lambda v: q_map(v, n)):
                assert f(w).weight == w.weight and f(w).depth == w.depth
            iw = inv_map(w, n).word
            assert iw.weight == w.weight and iw == w.reversed()
