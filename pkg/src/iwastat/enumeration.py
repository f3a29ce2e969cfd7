"""Height-ordered curve enumeration and the counting/bound machinery.

The height-X box is |A| <= floor(X^(1/3)), |B| <= floor(X^(1/2)); a pair
belongs to the curve family when disc0 = 4A^3 + 27B^2 is nonzero and no
prime q has q^4 | A and q^6 | B. Sweeps are vectorized one A-row at a time,
which keeps a full X = 10^8 report under a second on one core; a worker
count > 1 partitions the A-range and merges pure counts.
"""

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Tuple

import numpy as np

from .curves import DpMode, anomalous_residue_table, d_of_p, is_minimal_pair
from .errors import EqualPrimes, TooLarge
from .primes import icbrt, isqrt, legendre, primes_up_to

__all__ = [
    "DensityReport",
    "box_bounds",
    "total_weq",
    "zeta10",
    "brumer_estimate",
    "enumerate_curves",
    "iter_curves",
    "count_Ip",
    "sadek_bounds",
    "lifting_count_bruteforce",
    "bound_dp2",
    "bound_dp3",
    "lattice_class_count",
    "lattice_density",
    "empirical_densities",
]

# 4|A|^3 + 27B^2 <= 31X must stay far inside int64 for the numpy sweeps
_X_CAP = 10 ** 15


def box_bounds(X: int) -> Tuple[int, int]:
    assert X >= 1
    if X > _X_CAP:
        raise TooLarge(f"height {X} exceeds the int64-safe cap {_X_CAP}")
    return icbrt(X), isqrt(X)


def total_weq(X: int) -> int:
    """Number of all integer pairs in the height-X box, no constraints."""
    amax, bmax = box_bounds(X)
    return (2 * amax + 1) * (2 * bmax + 1)


def zeta10() -> float:
    # pi^10 / 93555; approximately 1.0009945751
    return math.pi ** 10 / 93555


def brumer_estimate(X: int) -> float:
    """Leading-term estimate 4 X^(5/6) / zeta(10) for the family count."""
    return 4.0 * X ** (5.0 / 6.0) / zeta10()


# ---------------------------------------------------------------------------
# exact enumeration


def _minimality_primes(amax: int, bmax: int):
    q4 = [q for q in primes_up_to(max(int(amax ** 0.25) + 2, 3)) if q ** 4 <= amax]
    q6 = [q for q in primes_up_to(max(int(bmax ** (1 / 6)) + 2, 3)) if q ** 6 <= bmax]
    return q4, q6


def iter_curves(X: int) -> Iterator[Tuple[int, int]]:
    """Every minimal nonsingular pair in the box, A ascending then B."""
    amax, bmax = box_bounds(X)
    for A in range(-amax, amax + 1):
        for B in range(-bmax, bmax + 1):
            if 4 * A ** 3 + 27 * B ** 2 != 0 and is_minimal_pair(A, B):
                yield A, B


def enumerate_curves(X: int, visitor: Optional[Callable[[int, int], None]] = None) -> int:
    """Count of the curve family up to height X; visits each pair in order.

    The visitor, when given, is called per pair; accumulation across
    parallel sweeps elsewhere assumes commutative-monoid state, but this
    entry point itself is strictly sequential and deterministic.
    """
    count = 0
    for A, B in iter_curves(X):
        if visitor is not None:
            visitor(A, B)
        count += 1
    return count


def _row_ok_mask(A: int, B: np.ndarray, disc: np.ndarray, q4: list, q6: list) -> np.ndarray:
    ok = disc != 0
    if A == 0:
        for q in q6:
            ok &= (B % q ** 6) != 0
    else:
        for q in q4:
            if A % q ** 4 == 0:
                ok &= (B % q ** 6) != 0
    return ok


# ---------------------------------------------------------------------------
# I_p loci and the congruence bounds


def _ip_candidates(p: int, maxdisc: int) -> List[int]:
    lim = int(maxdisc ** (1.0 / p)) + 2
    return [l for l in primes_up_to(lim) if l ** p <= maxdisc]


def count_Ip(l: int, p: int, X: int, workers: Optional[int] = None) -> int:
    """Exact count of family members with l coprime to A and B and
    v_l(disc0) = p exactly.  For l >= 5 this is the locus forcing fiber
    type I_p at l; for l in {2, 3} it is just the raw valuation locus."""
    if l == p:
        raise EqualPrimes("the locus is defined for l != p")
    counts = _sweep(X, p, ip_primes=[l], want_e2=False, want_e3=False, workers=workers)
    return counts.ip_counts[l]


def _primorial_cutoff(X: int):
    # greedy maximal primorial L_k = 2*3*...*l_k with L_k <= X^(1/12)
    assert X >= 4096, "bounds need X >= 2^12 so that at least L_1 = 2 fits"
    Lk, lk, used = 1, None, []
    for q in primes_up_to(64):
        if (Lk * q) ** 12 <= X:
            Lk *= q
            lk = q
            used.append(q)
        else:
            break
    return Lk, lk, used


def sadek_bounds(l: int, p: int, X: int) -> Tuple[float, float]:
    """Congruence-lattice sandwich for the I_p locus count at l.

    Evaluates the closed-form main term with both floor corrections;
    the lower bound may be negative and is returned as-is.
    """
    if l == p:
        raise EqualPrimes("the locus is defined for l != p")
    x3, x2 = box_bounds(X)
    Lk, lk, used = _primorial_cutoff(X)
    prod = 1
    for q in used:
        prod *= q ** 10 - 1
    C = 4 * l ** p * (l - 1) ** 2 * prod
    main = C * (x3 // (l ** (p + 1) * Lk ** 4)) * (x2 // (l ** (p + 1) * Lk ** 6))
    lower = main - C * X ** (5 / 6) / (9 * l ** (2 * p + 2) * Lk ** 10 * lk ** 9)
    upper = main + C * (
        X ** (1 / 3) / (3 * l ** (p + 1) * Lk ** 4 * lk ** 3)
        + X ** (1 / 2) / (5 * l ** (p + 1) * Lk ** 6 * lk ** 5)
    )
    return lower, upper


def lifting_count_bruteforce(l: int, p: int, exclusion: str = "componentwise") -> int:
    """Count residue pairs (A, B) mod l^(p+1) with v_l(disc0) = p exactly.

    exclusion picks which pairs are admitted: "componentwise" keeps
    l coprime to A and to B (the literal locus definition); "pair" keeps
    everything except A = B = 0 mod l. The closed-form prediction for the
    count is l^p (l-1)^2, which brute force confirms for l >= 5 and
    refutes at l in {2, 3} (both conventions).
    """
    assert exclusion in ("componentwise", "pair")
    modulus = l ** (p + 1)
    if modulus * modulus > 2 ** 32:
        raise TooLarge(f"l^(2(p+1)) = {modulus * modulus} exceeds the 2^32 guard")
    B = np.arange(modulus, dtype=np.int64)
    B_ok_comp = (B % l) != 0
    Bsq27 = (27 * B * B) % modulus
    count = 0
    for A in range(modulus):
        a_unit = A % l != 0
        if exclusion == "componentwise":
            if not a_unit:
                continue
            keep = B_ok_comp
        else:
            keep = B_ok_comp | np.bool_(a_unit)  # broadcast: pair not (0,0) mod l
        disc = (4 * A ** 3 + Bsq27) % modulus
        count += int(np.count_nonzero(keep & (disc % l ** p == 0) & (disc % modulus != 0)))
    return count


def bound_dp2(p: int, tol: float = 1e-8) -> float:
    """Sum over primes l != p of (l-1)^2 / l^(p+2), certified below tol.

    The tail over primes > L is dominated by sum_{n > L} n^(-p)
    < L^(1-p)/(p-1), so L grows until that bound clears tol.
    """
    assert p >= 5 and tol > 0
    L = 10
    while L ** (1 - p) / (p - 1) >= tol:
        L *= 2
    return sum((l - 1) ** 2 / l ** (p + 2) for l in primes_up_to(L) if l != p)


def bound_dp3(p: int, d_value: int) -> float:
    """Density bound zeta(10) * d(p) / p^2 for the anomalous locus."""
    assert d_value >= 0
    return zeta10() * d_value / (p * p)


def _axis_class_count(M: int, a: int, p: int) -> int:
    # integers in [-M, M] congruent to a mod p
    a %= p
    return (M - a) // p + (M + a) // p + 1


def lattice_class_count(kappa: Tuple[int, int], p: int, X: int) -> int:
    amax, bmax = box_bounds(X)
    return _axis_class_count(amax, kappa[0], p) * _axis_class_count(bmax, kappa[1], p)


def lattice_density(kappa: Tuple[int, int], p: int, X: int) -> float:
    """Fraction of the unconstrained box in one residue class mod p;
    tends to 1/p^2 as X grows."""
    return lattice_class_count(kappa, p, X) / total_weq(X)


# ---------------------------------------------------------------------------
# the one-pass empirical sweep


@dataclass
class _SweepCounts:
    total: int = 0
    good_at_p: int = 0
    e2: int = 0
    e3: int = 0
    skipped: int = 0
    ip_counts: Dict[int, int] = field(default_factory=dict)

    def merge(self, other: "_SweepCounts") -> None:
        self.total += other.total
        self.good_at_p += other.good_at_p
        self.e2 += other.e2
        self.e3 += other.e3
        self.skipped += other.skipped
        for l, n in other.ip_counts.items():
            self.ip_counts[l] = self.ip_counts.get(l, 0) + n


def _uncertified_min_valuation(l: int, p: int) -> int:
    """Smallest achievable v = v_l(disc0) for which the p-part of c_l at
    l in {2, 3} cannot be certified trivial from valuations alone (model
    Delta adds v_l(16) at l = 2). Candidates n = v_l(Delta) - 12k, n >= 1.
    v_2(disc0) = 1 cannot occur (disc0 odd when B is odd, 4 | disc0 when B
    is even), so the l = 2 scan starts at 2 to keep the filter sparse."""
    shift = 4 if l == 2 else 0
    for v in range(2 if l == 2 else 1, 200):
        if any(n % p == 0 for n in range(v + shift, 0, -12)):
            return v
    raise AssertionError("unreachable for p <= 199")


def _sweep_chunk(X, p, a_lo, a_hi, ip_primes, want_e2, want_e3, strict) -> _SweepCounts:
    amax, bmax = box_bounds(X)
    B = np.arange(-bmax, bmax + 1, dtype=np.int64)
    Bsq27 = 27 * B * B
    Bmodp = B % p
    q4, q6 = _minimality_primes(amax, bmax)
    maxdisc = 4 * amax ** 3 + 27 * bmax ** 2
    e2_cands = [l for l in _ip_candidates(p, maxdisc) if l >= 5] if want_e2 else []
    # primes with l^p beyond the largest possible |disc0| can never hit the
    # locus; skipping them also keeps the modulus inside int64
    ip_set = sorted(l for l in set(ip_primes or []) if l ** p <= maxdisc)
    ip_zero = sorted(set(ip_primes or []) - set(ip_set))
    anom = anomalous_residue_table(p) if want_e3 else None
    strict2 = _uncertified_min_valuation(2, p) if strict else None
    strict3 = _uncertified_min_valuation(3, p) if strict else None

    out = _SweepCounts(ip_counts={l: 0 for l in ip_set + ip_zero})
    for A in range(a_lo, a_hi):
        disc = 4 * A ** 3 + Bsq27
        ok = _row_ok_mask(A, B, disc, q4, q6)
        n_ok = int(np.count_nonzero(ok))
        if n_ok == 0:
            continue
        out.total += n_ok
        good = ok & (disc % p != 0)
        out.good_at_p += int(np.count_nonzero(good))
        if want_e3:
            out.e3 += int(np.count_nonzero(good & anom[A % p][Bmodp]))

        skip_mask = None
        if strict:
            skip_mask = np.zeros(len(B), dtype=bool)
            for l, minv in ((2, strict2), (3, strict3)):
                hit = ok & (disc % l ** minv == 0)
                for i in np.flatnonzero(hit):
                    d = int(disc[i])
                    v = 0
                    while d % l == 0:
                        d //= l
                        v += 1
                    shift = 4 if l == 2 else 0
                    if any(n % p == 0 for n in range(v + shift, 0, -12)):
                        skip_mask[i] = True
            out.skipped += int(np.count_nonzero(skip_mask))

        if want_e2:
            e2_mask = np.zeros(len(B), dtype=bool)
            for l in e2_cands:
                if A % l == 0:
                    continue  # l | A with l | disc0 is additive, c_l <= 4 < p
                hit = ok & (disc % l ** p == 0)
                for i in np.flatnonzero(hit):
                    d = int(disc[i])
                    n = 0
                    while d % l == 0:
                        d //= l
                        n += 1
                    if n % p == 0 and legendre(864 * int(B[i]) % l, l) == 1:
                        e2_mask[i] = True
            if strict:
                e2_mask &= ~skip_mask
            out.e2 += int(np.count_nonzero(e2_mask))

        for l in ip_set:
            if A % l == 0:
                continue
            m = ok & ((B % l) != 0) & (disc % l ** p == 0) & (disc % l ** (p + 1) != 0)
            out.ip_counts[l] += int(np.count_nonzero(m))
    return out


def _sweep(X, p, ip_primes=None, want_e2=True, want_e3=True, strict=False,
           workers=None) -> _SweepCounts:
    amax, _ = box_bounds(X)
    if workers is None:
        workers = int(os.environ.get("IWASTAT_THREADS", "1") or "1")
    if workers <= 1 or amax < 64:
        return _sweep_chunk(X, p, -amax, amax + 1, ip_primes, want_e2, want_e3, strict)
    edges = np.linspace(-amax, amax + 1, workers + 1).astype(int)
    jobs = [
        (X, p, int(edges[i]), int(edges[i + 1]), ip_primes, want_e2, want_e3, strict)
        for i in range(workers)
    ]
    merged = _SweepCounts(ip_counts={l: 0 for l in (ip_primes or [])})
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_sweep_chunk_star, jobs):
            merged.merge(part)
    return merged


def _sweep_chunk_star(args):
    return _sweep_chunk(*args)


@dataclass(frozen=True)
class DensityReport:
    p: int
    X: int
    total: int
    total_weq: int
    good_at_p: int
    e2: int
    e3: int
    ip_counts: Dict[int, int]
    brumer_estimate: float
    bound_dp2: float
    bound_dp3: float
    d_literal: int
    skipped_uncertified: Optional[int] = None  # strict mode only


def empirical_densities(p: int, X: int, ip_primes: Optional[List[int]] = None,
                        strict: bool = False, workers: Optional[int] = None) -> DensityReport:
    """One sweep of the height-X box filling every report field.

    By default the Tamagawa-divisibility locus e2 is computed from the
    multiplicative classification at primes l >= 5 (additive types cannot
    contribute for p >= 5); strict mode additionally drops curves whose
    2,3-part cannot be certified trivial and reports how many were dropped.
    e3 counts good-at-p anomalous curves only: the defect is undefined at
    bad primes, and both denominators (total, good_at_p) are in the report.
    """
    assert p >= 5
    amax, bmax = box_bounds(X)
    if ip_primes is None:
        maxdisc = 4 * amax ** 3 + 27 * bmax ** 2
        ip_primes = [l for l in _ip_candidates(p, maxdisc) if l >= 5 and l != p]
    counts = _sweep(X, p, ip_primes=ip_primes, strict=strict, workers=workers)
    d_lit = d_of_p(p, DpMode.LITERAL_PAIRS)
    return DensityReport(
        p=p,
        X=X,
        total=counts.total,
        total_weq=total_weq(X),
        good_at_p=counts.good_at_p,
        e2=counts.e2,
        e3=counts.e3,
        ip_counts=dict(sorted(counts.ip_counts.items())),
        brumer_estimate=brumer_estimate(X),
        bound_dp2=bound_dp2(p),
        bound_dp3=bound_dp3(p, d_lit),
        d_literal=d_lit,
        skipped_uncertified=counts.skipped if strict else None,
    )
