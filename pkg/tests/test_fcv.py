import random

import pytest

from colorzeta.cyclotomic import (
    CycNumber,
    EmbedDenominatorError,
    ModCycNumber,
    embed_cyc,
    get_prime_context,
)
from colorzeta.fcv import (
    FcvValue,
    below_threshold,
    bernoulli_mod_p,
    default_primes,
    fcv,
    fcv_of_lincomb,
    fermat_quotient,
    harmonic_sum,
    harmonic_sum_naive,
    prime_range,
    verify_fcv_relation,
)
from colorzeta.wordalg import LinComb, stuffle, shuffle
from colorzeta.words import YWord, q_map, tau, yword

rng = random.Random(77)


def rand_word(level, maxw=4):
    d = rng.randint(1, maxw)
    pairs = []
    left = maxw
    for _ in range(d):
        if left <= 0:
            break
        s = rng.randint(1, left)
        pairs.append((s, rng.randrange(level)))
        left -= s
    return yword(pairs, level)


def test_prime_range():
    assert prime_range(3, 2, 20) == [2, 5, 11, 17]
    assert prime_range(4, 2, 20) == [3, 7, 11, 19]
    assert prime_range(1, 2, 10) == [2, 3, 5, 7]
    assert prime_range(3, 19, 18) == []
    assert prime_range(5, 2, 100) == [19, 29, 59, 79, 89]


def test_default_primes():
    ps = default_primes(3)
    assert ps[0] == 2 and ps[-1] == 1019 and all(p < 312 or p == 1019 for p in ps)
    ps4 = default_primes(4)
    assert 1019 in ps4 and all((p + 1) % 4 == 0 for p in ps4)


def test_harmonic_empty_word():
    ctx = get_prime_context(5, 3)
    assert harmonic_sum(YWord(()), 4, ctx) == ModCycNumber.one(5, 3)


def test_harmonic_dp_matches_naive():
    for _ in range(40):
        N = rng.choice([3, 4])
        p = rng.choice(prime_range(N, 2, 31))
        w = rand_word(N, 4)
        k = rng.randint(0, p - 1)
        assert harmonic_sum(w, k, get_prime_context(p, N)) == harmonic_sum_naive(
            w, k, p, N
        )


def test_wolstenholme():
    for p in prime_range(1, 5, 60):
        ctx = get_prime_context(p, 1)
        assert harmonic_sum(yword([(1, 0)], 1), p - 1, ctx).is_zero()


def test_fermat_quotient_and_depth1():
    assert fermat_quotient(3) == 1
    N = 4
    for p in prime_range(4, 3, 100):
        ctx = get_prime_context(p, N)
        v = harmonic_sum(yword([(1, 2)], N), p - 1, ctx)
        assert v.eq_mod_cyclotomic(
            ModCycNumber.scalar(p, N, -2 * fermat_quotient(p))
        )


def test_bernoulli():
    p = 11
    assert bernoulli_mod_p(0, p) == 1
    assert bernoulli_mod_p(1, p) == (-pow(2, -1, p)) % p
    # B_2 = 1/6, B_4 = -1/30
    assert bernoulli_mod_p(2, p) == pow(6, -1, p)
    assert bernoulli_mod_p(4, p) == (-pow(30, -1, p)) % p
    assert bernoulli_mod_p(3, p) == 0
    with pytest.raises(ValueError):
        bernoulli_mod_p(p - 2, p)


def test_depth1_bernoulli_identity():
    for p in prime_range(4, 5, 200):
        ctx = get_prime_context(p, 4)
        v = harmonic_sum(yword([(3, 2)], 4), p - 1, ctx)
        c = (-2 * (1 - pow(4, -1, p)) * bernoulli_mod_p(p - 3, p) * pow(3, -1, p)) % p
        assert v.eq_mod_cyclotomic(ModCycNumber.scalar(p, 4, c))


def test_fcv_container():
    w = yword([(2, 1)], 3)
    v = fcv(w, [2, 5, 11], 3)
    assert v.primes == [2, 5, 11]
    assert v.below == (2,)  # p - 1 <= weight at p = 2 (and 3 not in panel)
    data = v.to_json()
    assert data["schema"] == 1 and data["primes"] == [2, 5, 11]
    rows = list(v.csv_rows())
    assert rows[0][0] == 2 and len(rows) == 3
    with pytest.raises(ValueError):
        fcv(w, [7], 3)  # 7 not in P(3)


def test_homogeneous_vanishing_small():
    for (s, d) in ((1, 1), (2, 1), (1, 2), (3, 1), (2, 2), (1, 3)):
        w = yword([(s, 0)] * d, 3)
        v = fcv(w, prime_range(3, 2, 100), 3)
        for p, comp in v.components.items():
            if not below_threshold(p, w.weight):
                assert comp.is_zero_mod_cyclotomic(), (s, d, p)


def test_fcv_of_lincomb_strict_error():
    from fractions import Fraction

    L = LinComb(3, {yword([(1, 1)], 3): CycNumber.from_rational(3, Fraction(1, 5))})
    with pytest.raises(EmbedDenominatorError):
        fcv_of_lincomb(L, [5])
    vals = fcv_of_lincomb(L, [5], strict=False)
    assert vals[5].is_zero()


def test_stuffle_homomorphism_exact():
    # full-ring identity, valid at every panel prime
    for _ in range(30):
        N = rng.choice([3, 4])
        u, v = rand_word(N, 3), rand_word(N, 2)
        prod = stuffle(u, v, N)
        for p in prime_range(N, 2, 60):
            ctx = get_prime_context(p, N)
            acc = ModCycNumber.zero(p, N)
            for w, c in prod.terms.items():
                acc = acc + embed_cyc(c, ctx) * harmonic_sum(w, p - 1, ctx)
            assert acc == harmonic_sum(u, p - 1, ctx) * harmonic_sum(v, p - 1, ctx)


def test_linear_shuffle_relation():
    for _ in range(25):
        N = rng.choice([3, 4])
        u = rand_word(1, 3)
        u = yword(tuple(u), N)
        v = rand_word(N, 2)
        t = tau(u, N)
        rec = shuffle(u, v, N) - LinComb.from_word(
            YWord(tuple(t.word) + tuple(v)), N, t.coeff
        )
        qrec = rec.map_words(lambda w: q_map(w, N))
        rep = verify_fcv_relation(qrec, prime_range(N, 2, 80))
        assert rep.ok, (u, v, rep.failing())


def test_reversal_relation():
    for _ in range(30):
        N = rng.choice([3, 4])
        w = rand_word(N, 4)
        sign = -1 if w.weight % 2 else 1
        coeff = CycNumber.root_power(N, -sum(w.colors())) * sign
        L = LinComb.from_word(w.reversed(), N) - LinComb.from_word(
            w.conjugated(N), N, coeff
        )
        rep = verify_fcv_relation(L, prime_range(N, 2, 80))
        assert rep.ok, (w, rep.failing())


def test_conjugation_equivariance():
    for _ in range(20):
        N = rng.choice([3, 4])
        w = rand_word(N, 3)
        for p in prime_range(N, 2, 40):
            ctx = get_prime_context(p, N)
            assert harmonic_sum(w.conjugated(N), p - 1, ctx) == harmonic_sum(
                w, p - 1, ctx
            ).conjugate()


def test_verify_zero_and_perturbed():
    N = 3
    L = LinComb.zero(N)
    rep = verify_fcv_relation(L, default_primes(N))
    assert rep.ok
    # perturbing a correct relation by +1 on one word breaks every prime
    w = yword([(1, 0)], N)
    good = LinComb.from_word(w, N)  # homogeneous: zeta(1;1) = 0
    assert verify_fcv_relation(good, default_primes(N)).ok
    bad = good + LinComb.from_word(yword([(1, 1)], N), N)
    repb = verify_fcv_relation(bad, default_primes(N))
    fails = repb.failing()
    assert fails, "perturbed relation unexpectedly verified"
    assert len(fails) >= len([p for p in default_primes(N) if p > 2]) - 2


def test_level4_paper_relation_weight2():
    i_ = CycNumber.root_power(4, 1)
    one = CycNumber.one(4)
    L = LinComb(
        4,
        {
            yword([(2, 1)], 4): 1,
            yword([(1, 1), (1, 0)], 4): -(i_ - one),
            yword([(1, 1), (1, 1)], 4): i_,
        },
    )
    assert verify_fcv_relation(L, default_primes(4)).ok


def test_report_json():
    N = 3
    rep = verify_fcv_relation(LinComb.from_word(yword([(1, 0)], N), N), [2, 5, 11])
    data = rep.to_json()
    assert data["ok"] and data["below_threshold"] == [2]
