from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from puiseux.ratcore import (
    INFINITY,
    NEG_INFINITY,
    SupportSet,
    dyadic_index,
    ell2,
    enumerate_dyadics_gt1,
    fmt_rat,
    is_prime,
    mod_p,
    next_pool_prime,
    nth_odd_prime,
    nth_prime,
    odd_prime_index,
    padic_valuation,
    parse_rat,
    partition_primes,
    pool_of_prime,
    prime_index,
    prime_pi,
    prime_support,
)
from puiseux import ratcore

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**6)


@pytest.mark.parametrize("q,p,v", [(Q(7, 12), 2, -2), (Q(5, 27), 3, -3), (Q(18), 3, 2), (Q(1, 5), 2, 0)])
def test_valuation_values(q, p, v):
    assert padic_valuation(q, p) == v


def test_valuation_of_zero_is_infinite():
    assert padic_valuation(0, 5) is INFINITY
    assert INFINITY > 10**100 and NEG_INFINITY < -(10**100)


@given(rationals, rationals, st.sampled_from([2, 3, 5, 7]))
def test_valuation_is_a_valuation(a, b, p):
    if a and b:
        assert padic_valuation(a * b, p) == padic_valuation(a, p) + padic_valuation(b, p)
    if a + b:
        va, vb = padic_valuation(a, p), padic_valuation(b, p)
        assert padic_valuation(a + b, p) >= min(va, vb)


@pytest.mark.parametrize("q,primes", [(Q(7, 12), {2, 3}), (Q(5), set()), (Q(1, 30), {2, 3, 5})])
def test_prime_support(q, primes):
    s = prime_support(q)
    assert isinstance(s, SupportSet)
    assert set(s.primes) == primes


@pytest.mark.parametrize("x,v", [(3, 2), (9, 8), (8, 4), (2, 1), (17, 16)])
def test_ell2(x, v):
    assert ell2(x) == v


@pytest.mark.parametrize("text,q", [("7/12", Q(7, 12)), ("-3/6", Q(-1, 2)), ("4", Q(4)), (" 2/4 ", Q(1, 2))])
def test_parse_rat(text, q):
    assert parse_rat(text) == q


@pytest.mark.parametrize("bad", ["", "1/0", "a/b", "1//2", "1.5"])
def test_parse_rat_rejects(bad):
    with pytest.raises(ValueError):
        parse_rat(bad)


@given(rationals)
def test_fmt_parse_round_trip(q):
    assert parse_rat(fmt_rat(q)) == q


def test_mod_p():
    # 1/2 = 4 mod 7
    assert mod_p(Q(1, 2), 7) == 4
    with pytest.raises(ValueError):
        mod_p(Q(1, 7), 7)


@pytest.mark.parametrize("n,v", [(1, Q(2)), (3, Q(3, 2)), (5, Q(5, 4))])
def test_dyadic_enumeration_values(n, v):
    assert enumerate_dyadics_gt1(n) == v


def test_dyadic_enumeration_is_a_bijection_prefix():
    seen = [enumerate_dyadics_gt1(i) for i in range(1, 5000)]
    assert len(set(seen)) == len(seen)
    assert all(v > 1 and (v.denominator & (v.denominator - 1)) == 0 for v in seen)
    assert all(dyadic_index(v) == i for i, v in enumerate(seen, 1))


def test_dyadic_enumeration_covers_small_dyadics():
    # every dyadic in (1, 8] with denominator <= 8 appears within 872 indices
    first = {enumerate_dyadics_gt1(i) for i in range(1, 873)}
    grid = {Q(j, 8) for j in range(9, 65)}
    assert grid <= first


def _dyadics_1_4_denominator_64():
    return {Q(j, 64) for j in range(65, 257)}


@pytest.mark.xfail(strict=True, reason="1 + 191/64 first appears near index 9.8k")
def test_dyadic_enumeration_covers_denominator_64_within_500():
    first = {enumerate_dyadics_gt1(i) for i in range(1, 501)}
    assert _dyadics_1_4_denominator_64() <= first


def test_dyadic_enumeration_covers_denominator_64_at_true_bound():
    target = _dyadics_1_4_denominator_64()
    last = max(dyadic_index(v) for v in target)
    assert 9000 < last < 11000
    assert dyadic_index(Q(64 + 191, 64)) == last


def test_primes_and_indices():
    assert [nth_prime(i) for i in range(1, 8)] == [2, 3, 5, 7, 11, 13, 17]
    assert [nth_odd_prime(i) for i in range(1, 7)] == [3, 5, 7, 11, 13, 17]
    assert prime_index(7919) == 1000 and odd_prime_index(7919) == 999
    assert prime_pi(100) == 25
    assert not is_prime(1) and is_prime(2) and not is_prime(7917)


def test_lucy_prime_count_matches_sieve():
    table = ratcore._PrimeTable()
    for x in (10**3, 12345, 10**5, 999_983):
        assert ratcore._lucy_pi(x) == table.pi(x)
    assert ratcore._lucy_pi(10**9) == 50_847_534


@pytest.mark.parametrize("ell,values", [(1, [3, 7, 13, 19]), (2, [5, 17, 31])])
def test_partition_primes(ell, values):
    assert [partition_primes(ell, n) for n in range(1, len(values) + 1)] == values


def test_partition_pools_disjoint():
    pools = {ell: {partition_primes(ell, n) for n in range(1, 1001)} for ell in (1, 2, 3)}
    assert not pools[1] & pools[2] and not pools[1] & pools[3] and not pools[2] & pools[3]
    for ell, ps in pools.items():
        assert all(pool_of_prime(p) == ell for p in list(ps)[:50])


def test_next_pool_prime_walks_the_pool():
    assert next_pool_prime(3, 1) == 7
    assert next_pool_prime(6, 2) == 17
    p = 1
    for n in range(1, 40):
        p = next_pool_prime(p, 1)
        assert p == partition_primes(1, n)
