import random

import pytest

from iwastat.primes import (
    factorize,
    icbrt,
    iroot,
    is_prime,
    legendre,
    next_prime,
    prime_range,
    primes_up_to,
    sqrt_mod,
    valuation,
)


def test_valuation_known_values():
    assert valuation(360, 2) == 3
    assert valuation(360, 3) == 2
    assert valuation(360, 5) == 1
    assert valuation(360, 7) == 0
    assert valuation(-8, 2) == 3
    assert valuation(1, 97) == 0


def test_valuation_rejects_zero():
    with pytest.raises(ValueError):
        valuation(0, 2)


def test_valuation_divides_exactly():
    rng = random.Random(11)
    for _ in range(300):
        n = rng.randrange(1, 10**12)
        p = rng.choice([2, 3, 5, 7, 11, 13])
        v = valuation(n, p)
        assert n % p**v == 0 and n % p ** (v + 1) != 0


def test_iroot_known_values():
    assert icbrt(26) == 2
    assert icbrt(27) == 3
    assert icbrt(28) == 3
    assert iroot(10**15, 5) == 1000
    assert iroot(0, 3) == 0
    assert iroot(1, 7) == 1


def test_iroot_bracket_property():
    rng = random.Random(23)
    for _ in range(500):
        n = rng.randrange(0, 10**18)
        k = rng.randrange(2, 8)
        r = iroot(n, k)
        assert r**k <= n < (r + 1) ** k


def test_primes_up_to_and_range():
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert prime_range(10, 30) == [11, 13, 17, 19, 23, 29]
    assert prime_range(5, 6) == [5]
    assert prime_range(24, 29) == []


def test_is_prime_small_and_carmichael():
    primes = set(primes_up_to(200))
    for n in range(2, 200):
        assert is_prime(n) == (n in primes)
    # Carmichael numbers fool Fermat-only tests
    for n in (561, 1105, 1729, 2465):
        assert not is_prime(n)
    assert is_prime(10**9 + 7)
    assert is_prime(2**61 - 1)


def test_next_prime():
    assert next_prime(2) == 3
    assert next_prime(13) == 17
    assert next_prime(89) == 97


def test_legendre_at_7():
    qrs = {x * x % 7 for x in range(1, 7)}
    assert qrs == {1, 2, 4}
    for a in range(1, 7):
        assert legendre(a, 7) == (1 if a in qrs else -1)
    assert legendre(0, 7) == 0
    assert legendre(14, 7) == 0


def test_legendre_euler_criterion():
    rng = random.Random(7)
    for _ in range(400):
        p = rng.choice([5, 13, 101, 997, 10007])
        a = rng.randrange(1, p)
        e = pow(a, (p - 1) // 2, p)
        assert legendre(a, p) == (1 if e == 1 else -1)


def test_legendre_multiplicative():
    rng = random.Random(5)
    for _ in range(300):
        p = rng.choice([7, 11, 103, 1009])
        a = rng.randrange(1, p)
        b = rng.randrange(1, p)
        assert legendre(a * b, p) == legendre(a, p) * legendre(b, p)


def test_sqrt_mod_round_trip():
    rng = random.Random(3)
    # both residue classes of p mod 4, plus p = 2
    for p in (2, 5, 13, 17, 19, 23, 10007, 10009):
        for _ in range(40):
            a = rng.randrange(p)
            r = sqrt_mod(a, p)
            if r is None:
                assert legendre(a, p) == -1
            else:
                assert r * r % p == a % p


def test_factorize_known():
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert factorize(1) == {}
    assert factorize(97) == {97: 1}
    assert factorize(2**10) == {2: 10}


def test_factorize_reconstructs():
    rng = random.Random(41)
    for _ in range(120):
        n = rng.randrange(2, 10**12)
        f = factorize(n)
        prod = 1
        for p, e in f.items():
            assert is_prime(p) and e >= 1
            prod *= p**e
        assert prod == n
