"""Short Weierstrass curves over Q and their reduction data at single primes.

A curve is an integral pair (A, B) for y^2 = x^3 + A x + B with
disc0 = 4A^3 + 27B^2 != 0, kept in reduced form: no prime q has q^4 | A
and q^6 | B simultaneously.  Invariant conventions used throughout:

    c4 = -48 A,   c6 = -864 B,   Delta = -16 disc0,
    height H = max(|A|^3, B^2).

Point counts mod p use the quadratic-character sum

    N_p = 1 + sum_x (1 + chi(x^3 + A x + B)) = p + 1 + sum_x chi(f(x)),

one chi table per prime, O(p) per curve.  No Schoof-style machinery; the
primes handled here are desk scale.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .errors import (
    BadReductionAt,
    InvalidPrime,
    NonMinimalModel,
    SingularCurve,
)
from .primes import is_prime, iroot, isqrt, legendre, primes_up_to, valuation

__all__ = [
    "CurveQ", "LocalReduction", "ReductionClass", "DpMode", "PointCountCache",
    "legendre", "count_points", "trace_frobenius", "classify_reduction",
    "is_minimal_pair", "d_of_p", "dp_census", "dp_table",
    "anomalous_residue_table",
]


def disc0_of(A: int, B: int) -> int:
    return 4 * A**3 + 27 * B**2


def is_minimal_pair(A: int, B: int) -> bool:
    """True unless some prime q has q^4 | A and q^6 | B.

    A == 0 is divisible by every q^4, so it demands a sixth-power-free B;
    symmetrically B == 0 demands a fourth-power-free A.
    """
    if A == 0 and B == 0:
        return False
    if A == 0:
        return all(B % q**6 != 0 for q in primes_up_to(iroot(abs(B), 6)))
    if B == 0:
        return all(A % q**4 != 0 for q in primes_up_to(iroot(abs(A), 4)))
    for q in primes_up_to(iroot(abs(A), 4)):
        if A % q**4 == 0 and B % q**6 == 0:
            return False
    return True


@dataclass(frozen=True)
class CurveQ:
    """A reduced integral model y^2 = x^3 + A x + B.

    Construction rejects singular pairs (disc0 == 0) and non-reduced ones.
    height and disc0 are derived and fixed at construction.
    """

    A: int
    B: int
    height: int = 0
    disc0: int = 0

    def __post_init__(self):
        d = disc0_of(self.A, self.B)
        if d == 0:
            raise SingularCurve(f"4*{self.A}^3 + 27*{self.B}^2 = 0")
        if not is_minimal_pair(self.A, self.B):
            raise NonMinimalModel(f"({self.A}, {self.B}) admits a q^4/q^6 reduction")
        object.__setattr__(self, "height", max(abs(self.A) ** 3, self.B**2))
        object.__setattr__(self, "disc0", d)

    @property
    def c4(self) -> int:
        return -48 * self.A

    @property
    def c6(self) -> int:
        return -864 * self.B

    @property
    def discriminant(self) -> int:
        return -16 * self.disc0


class ReductionClass(str, Enum):
    GOOD_ORDINARY = "GoodOrdinary"
    GOOD_SUPERSINGULAR = "GoodSupersingular"
    BAD = "Bad"


@dataclass(frozen=True)
class LocalReduction:
    """Reduction data of a curve at one odd prime."""

    prime: int
    reduction_class: ReductionClass
    n_points: int | None  # None at bad primes
    a_p: int | None
    anomalous: bool

    @property
    def is_good(self) -> bool:
        return self.reduction_class is not ReductionClass.BAD


@lru_cache(maxsize=512)
def _chi_table(p: int) -> np.ndarray:
    """chi[t] in {-1, 0, +1} for t in 0..p-1."""
    tab = np.full(p, -1, dtype=np.int8)
    x = np.arange(p, dtype=np.int64)
    tab[(x * x) % p] = 1
    tab[0] = 0
    return tab


class PointCountCache:
    """Read-through cache of point counts keyed by (A mod p, B mod p, p).

    Reads are lock-free dict lookups; writes are serialized.  At most p^2
    entries per prime can ever exist, so no eviction is needed at desk scale.
    snapshot()/restore() give an optional on-disk round trip; the format tag
    guards against stale snapshots after incompatible changes.
    """

    FORMAT_VERSION = 1

    def __init__(self):
        self._data: dict[tuple[int, int, int], int] = {}
        self._lock = threading.Lock()

    def __len__(self):
        return len(self._data)

    def get(self, a: int, b: int, p: int) -> int | None:
        return self._data.get((a % p, b % p, p))

    def put(self, a: int, b: int, p: int, n: int) -> None:
        with self._lock:
            self._data[(a % p, b % p, p)] = n

    def get_or_compute(self, a: int, b: int, p: int, compute) -> int:
        key = (a % p, b % p, p)
        n = self._data.get(key)
        if n is None:
            n = compute()
            with self._lock:
                self._data[key] = n
        return n

    def snapshot(self) -> dict:
        with self._lock:
            return {
                "format": self.FORMAT_VERSION,
                "entries": [[a, b, p, n] for (a, b, p), n in self._data.items()],
            }

    def restore(self, blob: dict) -> int:
        if blob.get("format") != self.FORMAT_VERSION:
            return 0
        loaded = 0
        with self._lock:
            for a, b, p, n in blob.get("entries", []):
                self._data[(a, b, p)] = n
                loaded += 1
        return loaded


def _require_odd_prime(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise InvalidPrime(f"{p} is not an odd prime")


def _affine_count(a: int, b: int, p: int) -> int:
    if p < 64:
        chi = _chi_table(p)
        return p + int(sum(int(chi[(x * x * x + a * x + b) % p]) for x in range(p)))
    chi = _chi_table(p)
    x = np.arange(p, dtype=np.int64)
    f = (x * x % p * x + a * x + b) % p
    return p + int(chi[f].sum(dtype=np.int64))


def count_points(A: int, B: int, p: int, cache: PointCountCache | None = None) -> int:
    """#E(F_p) including the point at infinity, for an odd prime of good
    reduction.  Raises BadReductionAt when p divides disc0."""
    _require_odd_prime(p)
    a, b = A % p, B % p
    if (4 * a * a * a + 27 * b * b) % p == 0:
        raise BadReductionAt(f"p={p} divides disc0")
    if cache is not None:
        n = cache.get_or_compute(a, b, p, lambda: _affine_count(a, b, p) + 1)
    else:
        n = _affine_count(a, b, p) + 1
    t = p + 1 - n
    assert t * t <= 4 * p, f"Hasse bound violated: a_p={t} at p={p}"
    return n


def trace_frobenius(A: int, B: int, p: int, cache: PointCountCache | None = None) -> int:
    return p + 1 - count_points(A, B, p, cache)


def _is_anomalous(n_points: int, p: int) -> bool:
    return n_points % p == 0


def classify_reduction(curve: CurveQ | tuple[int, int], p: int,
                       cache: PointCountCache | None = None,
                       allow_p3: bool = False) -> LocalReduction:
    """Reduction class of the curve at p.

    Default policy admits primes p >= 5 only.  p = 3 sits behind allow_p3:
    the divisibility definitions (p | a_p supersingular, p | N_p anomalous)
    still make sense there but several downstream statements do not, so the
    caller must opt in.  p = 2 is always rejected.
    """
    if isinstance(curve, tuple):
        curve = CurveQ(*curve)
    if not is_prime(p) or p < 3 or (p == 3 and not allow_p3):
        raise InvalidPrime(f"p={p} not admitted (allow_p3={allow_p3})")
    if curve.disc0 % p == 0:
        return LocalReduction(p, ReductionClass.BAD, None, None, False)
    n = count_points(curve.A, curve.B, p, cache)
    a_p = p + 1 - n
    if a_p % p == 0:
        # p >= 5 forces a_p = 0 here by Hasse, |a_p| <= 2 sqrt p < p
        cls = ReductionClass.GOOD_SUPERSINGULAR
        if p >= 5:
            assert a_p == 0
    else:
        cls = ReductionClass.GOOD_ORDINARY
    return LocalReduction(p, cls, n, a_p, _is_anomalous(n, p))


# ---------------------------------------------------------------------------
# census of anomalous residue pairs mod p

class DpMode(str, Enum):
    """Normalizations for the mod-p census of curves carrying a point of
    order p.

    LiteralPairs      pairs (a, b) with disc0(a,b) != 0 mod p and p | N_p;
                      a point of order p exists iff p divides the group order.
    TraceOnePairs     pairs with N_p = p exactly (trace of Frobenius 1).
                      For p >= 7 Hasse forces the two sets to coincide; at
                      p = 5 the literal set also admits N = 10 (trace -4).
    TraceOneClasses   TraceOnePairs counted up to the F_p-isomorphism action
                      (a, b) ~ (u^4 a, u^6 b), u in F_p^*.
    """

    LITERAL_PAIRS = "LiteralPairs"
    TRACE_ONE_PAIRS = "TraceOnePairs"
    TRACE_ONE_CLASSES = "TraceOneClasses"


def _coerce_mode(mode) -> DpMode:
    if isinstance(mode, DpMode):
        return mode
    try:
        return DpMode(mode)
    except ValueError:
        pass
    alias = {
        "literal": DpMode.LITERAL_PAIRS,
        "trace-pairs": DpMode.TRACE_ONE_PAIRS,
        "trace-classes": DpMode.TRACE_ONE_CLASSES,
    }
    try:
        return alias[str(mode)]
    except KeyError:
        raise ValueError(f"unknown census mode {mode!r}") from None


def _affine_counts_row(a: int, p: int, xs, ys2) -> np.ndarray:
    """Affine point counts for all b at fixed a, via the histogram of
    b = y^2 - x^3 - a x over (x, y) in F_p^2."""
    fx = (xs * xs % p * xs + a * xs) % p
    b_of = (ys2[:, None] - fx[None, :]) % p
    return np.bincount(b_of.ravel(), minlength=p)


def dp_census(p: int) -> dict:
    """All three census counts at p in one sweep over F_p^2.

    Returns {"p": p, "LiteralPairs": n1, "TraceOnePairs": n2,
    "TraceOneClasses": n3, "literal_pairs": [(a, b), ...]}.
    """
    _require_odd_prime(p)
    if p < 5:
        raise InvalidPrime("census defined for p >= 5")
    xs = np.arange(p, dtype=np.int64)
    ys2 = (xs * xs) % p
    bs = np.arange(p, dtype=np.int64)
    literal = 0
    trace_one: list[tuple[int, int]] = []
    literal_pairs: list[tuple[int, int]] = []
    for a in range(p):
        n_row = _affine_counts_row(a, p, xs, ys2) + 1
        nonsing = (4 * a**3 + 27 * bs * bs) % p != 0
        lit_mask = (n_row % p == 0) & nonsing
        literal += int(lit_mask.sum())
        for b in np.flatnonzero(lit_mask):
            literal_pairs.append((a, int(b)))
        for b in np.flatnonzero((n_row == p) & nonsing):
            trace_one.append((a, int(b)))
    # orbit count under (a, b) -> (u^4 a, u^6 b)
    seen: set[tuple[int, int]] = set()
    classes = 0
    for (a, b) in trace_one:
        if (a, b) in seen:
            continue
        classes += 1
        for u in range(1, p):
            seen.add((pow(u, 4, p) * a % p, pow(u, 6, p) * b % p))
    assert literal >= len(trace_one) >= classes
    return {
        "p": p,
        DpMode.LITERAL_PAIRS.value: literal,
        DpMode.TRACE_ONE_PAIRS.value: len(trace_one),
        DpMode.TRACE_ONE_CLASSES.value: classes,
        "literal_pairs": literal_pairs,
    }


def d_of_p(p: int, mode=DpMode.LITERAL_PAIRS) -> int:
    """Census count at p in the requested normalization."""
    return dp_census(p)[_coerce_mode(mode).value]


def _census_worker(p: int) -> tuple[int, dict]:
    c = dp_census(p)
    c.pop("literal_pairs")
    return p, c


def dp_table(p_max: int, p_min: int = 5, workers: int | None = None) -> dict[int, dict]:
    """dp_census for every prime p_min <= p < p_max, all modes at once.

    workers > 1 fans the primes out over processes; aggregation is by
    ascending prime either way, so the result is deterministic.
    """
    ps = [p for p in primes_up_to(p_max - 1) if p >= p_min]
    if workers and workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as ex:
            got = dict(ex.map(_census_worker, ps))
        return {p: got[p] for p in ps}
    out = {}
    for p in ps:
        out[p] = _census_worker(p)[1]
    return out


def anomalous_residue_table(p: int) -> np.ndarray:
    """p x p boolean table: entry [a, b] is True when (a, b) mod p is
    nonsingular and its point count is divisible by p.  Used by the
    height-box sweeps to test anomalicity by residue lookup."""
    _require_odd_prime(p)
    xs = np.arange(p, dtype=np.int64)
    ys2 = (xs * xs) % p
    bs = np.arange(p, dtype=np.int64)
    tab = np.zeros((p, p), dtype=bool)
    for a in range(p):
        n_row = _affine_counts_row(a, p, xs, ys2) + 1
        nonsing = (4 * a**3 + 27 * bs * bs) % p != 0
        tab[a] = (n_row % p == 0) & nonsing
    return tab
