import math
import random

import numpy as np
import pytest

from iwastat.curves import (
    CurveQ,
    DpMode,
    PointCountCache,
    ReductionClass,
    anomalous_residue_table,
    classify_reduction,
    count_points,
    d_of_p,
    disc0_of,
    dp_census,
    dp_table,
    is_minimal_pair,
    trace_frobenius,
)
from iwastat.errors import (
    BadReductionAt,
    InvalidPrime,
    NonMinimalModel,
    SingularCurve,
)


def brute_count(a, b, p):
    # independent oracle: direct point enumeration, no character sums
    n = 1  # infinity
    for x in range(p):
        rhs = (x * x * x + a * x + b) % p
        for y in range(p):
            if y * y % p == rhs:
                n += 1
    return n


def test_count_points_known_values():
    assert count_points(0, 1, 5) == 6
    assert count_points(1, 0, 5) == 4
    assert count_points(-1, 0, 5) == 8
    assert count_points(3, 0, 5) == 10
    assert trace_frobenius(0, 1, 5) == 0
    assert trace_frobenius(1, 0, 5) == 2
    assert trace_frobenius(-1, 0, 5) == -2


def test_count_points_exhaustive_small_fields():
    for p in (5, 7, 11, 13):
        for a in range(p):
            for b in range(p):
                if (4 * a**3 + 27 * b * b) % p == 0:
                    continue
                assert count_points(a, b, p) == brute_count(a, b, p)


def test_count_points_rejects_bad_prime():
    with pytest.raises(InvalidPrime):
        count_points(-1, 0, 2)
    with pytest.raises(BadReductionAt):
        count_points(0, 0, 7)
    with pytest.raises(BadReductionAt):
        count_points(-3, 2, 5)  # disc0 = -108 + 108 = 0 mod 5 (singular over Q too)


def test_hasse_bound_random():
    rng = random.Random(17)
    for _ in range(400):
        p = rng.choice([5, 7, 11, 13, 17, 19, 101, 211])
        a = rng.randrange(p)
        b = rng.randrange(p)
        if (4 * a**3 + 27 * b * b) % p == 0:
            continue
        t = p + 1 - count_points(a, b, p)
        assert t * t <= 4 * p


def test_quadratic_twist_flips_trace():
    # twist by d multiplies the trace by the residue symbol of d
    from iwastat.primes import legendre

    rng = random.Random(29)
    for _ in range(200):
        p = rng.choice([5, 7, 11, 13, 17])
        a = rng.randrange(p)
        b = rng.randrange(p)
        if (4 * a**3 + 27 * b * b) % p == 0:
            continue
        d = rng.randrange(1, p)
        t = trace_frobenius(a, b, p)
        tw = trace_frobenius(d * d % p * a % p, pow(d, 3, p) * b % p, p)
        assert tw == legendre(d, p) * t


def test_curveq_validation():
    c = CurveQ(-1, 0)
    assert c.disc0 == -4
    assert disc0_of(-1, 0) == -4
    with pytest.raises(SingularCurve):
        CurveQ(0, 0)
    with pytest.raises(SingularCurve):
        CurveQ(-3, 2)
    # q^4 | A and q^6 | B is a non-minimal model
    with pytest.raises(NonMinimalModel):
        CurveQ(16, 64)
    assert is_minimal_pair(-1, 0)
    assert not is_minimal_pair(16, 64)
    # zero coordinate is divisible by every q^6, so the other one decides
    assert not is_minimal_pair(16, 0) and not is_minimal_pair(0, 64)
    assert is_minimal_pair(8, 0) and is_minimal_pair(0, 32)


def test_classify_reduction_cases():
    r = classify_reduction((0, 1), 5)
    assert r.reduction_class is ReductionClass.GOOD_SUPERSINGULAR
    assert r.n_points == 6 and r.a_p == 0 and not r.anomalous
    r = classify_reduction((1, 0), 5)
    assert r.reduction_class is ReductionClass.GOOD_ORDINARY
    assert r.a_p == 2 and not r.anomalous
    r = classify_reduction((3, 0), 5)
    assert r.reduction_class is ReductionClass.GOOD_ORDINARY
    assert r.n_points == 10 and r.anomalous
    r = classify_reduction((-1, 0), 2 + 3)  # bad at 5? disc0 = -4, good
    assert r.is_good
    r = classify_reduction(CurveQ(1, 5), 7)  # disc0 = 679 = 7 * 97
    assert r.reduction_class is ReductionClass.BAD
    assert r.n_points is None and r.a_p is None


def test_classify_reduction_prime_policy():
    with pytest.raises(InvalidPrime):
        classify_reduction((-1, 0), 3)
    with pytest.raises(InvalidPrime):
        classify_reduction((-1, 0), 2, allow_p3=True)
    with pytest.raises(InvalidPrime):
        classify_reduction((-1, 0), 9)
    r = classify_reduction((-1, 0), 3, allow_p3=True)
    assert r.is_good


def test_point_count_cache():
    cache = PointCountCache()
    n1 = count_points(2, 3, 97, cache)
    n2 = count_points(2, 3, 97, cache)
    assert n1 == n2 == count_points(2, 3, 97)
    snap = cache.snapshot()
    fresh = PointCountCache()
    fresh.restore(snap)
    assert fresh.get(2, 3, 97) == n1
    # poisoned lambda proves the cache path is hit
    assert fresh.get_or_compute(2, 3, 97, lambda: -1) == n1


def test_dp_census_frozen_values():
    c5 = dp_census(5)
    assert c5[DpMode.LITERAL_PAIRS.value] == 3
    assert c5[DpMode.TRACE_ONE_PAIRS.value] == 2
    assert c5[DpMode.TRACE_ONE_CLASSES.value] == 1
    c7 = dp_census(7)
    assert c7[DpMode.LITERAL_PAIRS.value] == 4
    assert c7[DpMode.TRACE_ONE_PAIRS.value] == 4
    assert c7[DpMode.TRACE_ONE_CLASSES.value] == 2
    assert dp_census(61)[DpMode.TRACE_ONE_CLASSES.value] == 5


def test_dp_census_literal_pairs_verified():
    # every reported pair really is nonsingular with p | #E
    for p in (5, 7, 11):
        c = dp_census(p)
        pairs = c["literal_pairs"]
        assert len(pairs) == c[DpMode.LITERAL_PAIRS.value]
        for a, b in pairs:
            assert (4 * a**3 + 27 * b * b) % p != 0
            assert brute_count(a, b, p) % p == 0
        n_one = sum(1 for a, b in pairs if brute_count(a, b, p) == p)
        assert n_one == c[DpMode.TRACE_ONE_PAIRS.value]


def test_dp_census_mode_ordering():
    for p in (5, 7, 13, 31):
        c = dp_census(p)
        assert (
            c[DpMode.LITERAL_PAIRS.value]
            >= c[DpMode.TRACE_ONE_PAIRS.value]
            >= c[DpMode.TRACE_ONE_CLASSES.value]
        )


def test_d_of_p_mode_aliases():
    assert d_of_p(5) == 3
    assert d_of_p(5, DpMode.LITERAL_PAIRS) == 3
    assert d_of_p(5, "literal") == 3
    assert d_of_p(5, "trace-pairs") == 2
    assert d_of_p(5, "trace-classes") == 1
    with pytest.raises(ValueError):
        d_of_p(5, "nope")
    with pytest.raises(InvalidPrime):
        d_of_p(3)


def test_dp_table_matches_census():
    t = dp_table(20)
    assert sorted(t) == [5, 7, 11, 13, 17, 19]
    for p, row in t.items():
        c = dp_census(p)
        for mode in DpMode:
            assert row[mode.value] == c[mode.value]


def test_anomalous_residue_table():
    for p in (5, 7):
        tab = anomalous_residue_table(p)
        assert tab.shape == (p, p) and tab.dtype == np.bool_
        for a in range(p):
            for b in range(p):
                if (4 * a**3 + 27 * b * b) % p == 0:
                    assert not tab[a, b]
                else:
                    assert tab[a, b] == (brute_count(a, b, p) % p == 0)
