import math
from fractions import Fraction

import pytest

from iwastat.curves import classify_reduction, disc0_of, is_minimal_pair
from iwastat.enumeration import (
    DensityReport,
    bound_dp2,
    bound_dp3,
    box_bounds,
    brumer_estimate,
    count_Ip,
    empirical_densities,
    enumerate_curves,
    iter_curves,
    lattice_class_count,
    lattice_density,
    lifting_count_bruteforce,
    sadek_bounds,
    total_weq,
    zeta10,
)
from iwastat.errors import EqualPrimes, TooLarge
from iwastat.local_data import kodaira_tamagawa
from iwastat.primes import primes_up_to, valuation


def brute_family(X):
    # independent re-derivation of the height box and the membership rules
    amax = round(X ** (1 / 3))
    while (amax + 1) ** 3 <= X:
        amax += 1
    while amax**3 > X:
        amax -= 1
    bmax = math.isqrt(X)
    out = []
    for A in range(-amax, amax + 1):
        for B in range(-bmax, bmax + 1):
            if 4 * A**3 + 27 * B * B == 0:
                continue
            q = 2
            minimal = True
            while q**4 <= max(abs(A), 1) or q**6 <= max(abs(B), 1):
                if A % q**4 == 0 and B % q**6 == 0:
                    minimal = False
                    break
                q += 1
            if minimal:
                out.append((A, B))
    return out


def test_box_bounds():
    assert box_bounds(1) == (1, 1)
    assert box_bounds(100) == (4, 10)
    assert box_bounds(10**6) == (100, 1000)
    with pytest.raises(TooLarge):
        box_bounds(10**15 + 1)


def test_family_counts_small_oracle():
    assert enumerate_curves(1) == len(brute_family(1)) == 8
    assert enumerate_curves(100) == len(brute_family(100)) == 186
    assert set(iter_curves(100)) == set(brute_family(100))
    assert total_weq(100) == 9 * 21 == 189
    assert total_weq(1) == 9


def test_enumerate_visitor_sees_every_curve():
    seen = []
    n = enumerate_curves(50, visitor=lambda a, b: seen.append((a, b)))
    assert n == len(seen) == len(set(seen))
    assert set(seen) == set(brute_family(50))


def test_frozen_counts_at_height_1e6():
    r = empirical_densities(5, 10**6)
    assert r.total == 401782
    assert r.good_at_p == 321418
    assert r.e2 == 51
    assert r.e3 == 48002
    assert r.ip_counts[7] == 16
    assert r.ip_counts[19] == 2
    assert all(v == 0 for l, v in r.ip_counts.items() if l not in (7, 19))
    assert r.skipped_uncertified is None
    assert r.d_literal == 3


def test_strict_mode_drops_uncertified():
    r = empirical_densities(5, 10**6, strict=True)
    assert r.e2 == 48
    assert r.skipped_uncertified == 26674
    assert r.total == 401782  # strictness only affects the bad-fiber census


def test_workers_agree_with_serial():
    a = empirical_densities(5, 10**5)
    b = empirical_densities(5, 10**5, workers=2)
    assert a == b


def test_counts_cross_checked_against_local_theory():
    # rebuild every census column at X = 10^4 from per-curve local data
    X = 10**4
    family = brute_family(X)
    good = e3 = e2 = ip7 = 0
    for A, B in family:
        d0 = disc0_of(A, B)
        if d0 % 5:
            good += 1
            if classify_reduction((A, B), 5).anomalous:
                e3 += 1
        hit = False
        for l in set(
            l for l in primes_up_to(310) if l >= 5 and d0 % l == 0
        ):
            k = kodaira_tamagawa((A, B), l)
            if k.split and k.n % 5 == 0:
                hit = True
            if l == 7 and A % 7 and B % 7 and valuation(d0, 7) == 5:
                ip7 += 1
        if hit:
            e2 += 1
    r = empirical_densities(5, X, ip_primes=[7])
    assert r.total == len(family)
    assert r.good_at_p == good
    assert r.e3 == e3
    assert r.e2 == e2
    assert r.ip_counts[7] == ip7


def test_count_Ip_values_and_guards():
    assert count_Ip(7, 5, 10**6) == 16
    assert count_Ip(11, 5, 10**6) == 0
    with pytest.raises(EqualPrimes):
        count_Ip(5, 5, 10**6)


def test_sadek_sandwich_frozen():
    lo, hi = sadek_bounds(7, 5, 10**6)
    assert lo == pytest.approx(-0.0037908746017967514, rel=1e-12)
    assert hi == pytest.approx(7535.491071428571, rel=1e-12)
    assert lo <= 16 <= hi
    with pytest.raises(AssertionError):
        sadek_bounds(7, 5, 1000)  # box too small for the primorial cutoff


def test_lifting_counts():
    # the unit-locus count matches the closed form once l is large enough
    # for the discriminant gradient to stay nonzero on units
    assert lifting_count_bruteforce(5, 2) == 400 == 5**2 * 4**2
    assert lifting_count_bruteforce(7, 2) == 1764 == 7**2 * 6**2
    # at l = 2 and 3 the unit locus is empty: 2 coprime to B forces an odd
    # discriminant and 3 coprime to A forces v_3 = 0
    assert lifting_count_bruteforce(2, 5) == 0
    assert lifting_count_bruteforce(3, 5) == 0
    assert lifting_count_bruteforce(2, 7) == 0
    # dropping the componentwise rule picks up pairs on the boundary
    assert lifting_count_bruteforce(2, 5, exclusion="pair") == 64
    assert lifting_count_bruteforce(3, 5, exclusion="pair") == 8748
    assert lifting_count_bruteforce(2, 7, exclusion="pair") == 256
    with pytest.raises(TooLarge):
        lifting_count_bruteforce(7, 7)


def test_zeta10_value():
    assert zeta10() == pytest.approx(math.pi**10 / 93555, rel=1e-15)
    s = sum(Fraction(1, n**10) for n in range(1, 200))
    assert zeta10() == pytest.approx(float(s), abs=1e-15)


def test_brumer_estimate_formula():
    for X in (100, 10**6):
        assert brumer_estimate(X) == pytest.approx(4 * X ** (5 / 6) / zeta10(), rel=1e-12)
    # the estimate tracks the true count already at moderate heights
    assert abs(enumerate_curves(10**6) / brumer_estimate(10**6) - 1) < 0.01


def test_bound_dp2_against_independent_sum():
    # same series, separately coded: sum (l-1)^2 / l^(p+2) over primes l != p
    def indep(p, limit=2000):
        tot = Fraction(0)
        for l in range(2, limit):
            if l != p and all(l % q for q in range(2, int(l**0.5) + 1)):
                tot += Fraction((l - 1) ** 2, l ** (p + 2))
        return float(tot)

    assert bound_dp2(5) == pytest.approx(0.009693875536248306, rel=1e-12)
    assert bound_dp2(5) == pytest.approx(indep(5), abs=1e-7)
    assert bound_dp2(7) == pytest.approx(indep(7), abs=1e-9)
    vals = [bound_dp2(p) for p in (5, 7, 11, 13)]
    assert vals == sorted(vals, reverse=True) and len(set(vals)) == 4


def test_bound_dp3_closed_form():
    assert bound_dp3(5, 1) == pytest.approx(zeta10() / 25, rel=1e-12)
    assert bound_dp3(5, 3) == pytest.approx(3 * zeta10() / 25, rel=1e-12)
    assert bound_dp3(7, 1) == pytest.approx(zeta10() / 49, rel=1e-12)


def test_lattice_counts():
    assert lattice_class_count((3, 2), 5, 100) == 8
    assert lattice_density((3, 2), 5, 100) == pytest.approx(8 / 189)
    # residue classes partition the box
    for X in (100, 3000):
        tot = sum(
            lattice_class_count((ka, kb), 5, X) for ka in range(5) for kb in range(5)
        )
        assert tot == total_weq(X)
    # explicit check against a brute count
    amax, bmax = box_bounds(100)
    brute = sum(
        1
        for A in range(-amax, amax + 1)
        for B in range(-bmax, bmax + 1)
        if A % 5 == 3 and B % 5 == 2
    )
    assert brute == 8


def test_density_report_shape():
    r = empirical_densities(5, 100)
    assert isinstance(r, DensityReport)
    assert r.p == 5 and r.X == 100
    assert r.total_weq == 189
    assert r.brumer_estimate == pytest.approx(brumer_estimate(100))
    assert r.bound_dp2 == pytest.approx(bound_dp2(5))
    assert r.bound_dp3 == pytest.approx(bound_dp3(5, r.d_literal))
    with pytest.raises(Exception):
        r.total = 1  # frozen
