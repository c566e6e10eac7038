"""Sieve counts for the density of second-minimal twists.

C_k(x): square-free n <= x with exactly k prime factors.
Q_k(x): n in C_k(x), n = 1 mod 8, coprime to abc, every p | n is 1 mod 4
        and a quadratic residue mod every q | abc.
P_k(x): n in Q_k(x) with h4(n) = 1 and h8(n) = [2/d].

The predicted proportion #P_k / #C_k is
2^(-kl-k-2) (u_k + (1/2 - 2^-k) u_{k-1}), u_k = prod_{1<=i<=k/2} (1 - 2^(1-2i)).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional, Sequence

import numpy as np

from . import f2
from .arith import _jacobi, factorize, primes_up_to
from .errors import BadShape, BudgetExceeded
from .f2 import F2Matrix, F2Vector
from .gaussian import rational_quartic
from .params import CurveParams, TwistN

MAX_X = 10**8
SEGMENT = 10**7
PROGRESS_EVERY = 10**5
CSV_COLUMNS = ("k", "x", "count_Ck", "count_Qk", "count_Pk", "ratio", "constant", "deviation")


def u_constant(k: int) -> Fraction:
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = Fraction(1)
    for i in range(1, k // 2 + 1):
        out *= 1 - Fraction(2, 2 ** (2 * i))
    return out


def density_constant(k: int, l: int) -> Fraction:  # noqa: E741
    if k < 1:
        raise ValueError("k must be at least 1")
    return Fraction(1, 2 ** (k * l + k + 2)) * (u_constant(k) + (Fraction(1, 2) - Fraction(1, 2**k)) * u_constant(k - 1))


# ------------------------------------------------------------------ sieving


@dataclass
class _Segment:
    lo: int
    omega: np.ndarray  # distinct prime factors
    squarefree: np.ndarray
    good: np.ndarray  # no "bad" prime factor


def _bad_small(p: int, curve: Optional[CurveParams]) -> bool:
    if p % 4 != 1:
        return True
    if curve is None:
        return False
    return any(p == q or _jacobi(p, q) != 1 for q in curve.qs)


def _sieve_segments(x: int, curve: Optional[CurveParams], segment: int = SEGMENT) -> Iterator[_Segment]:
    """Segments of [1, x] with omega, square-freeness and the Q_k prime test."""
    if x > MAX_X:
        raise BudgetExceeded(f"x = {x} exceeds the sieve budget {MAX_X}")
    root = math.isqrt(x)
    small = [int(p) for p in primes_up_to(root)]
    bad = np.array([_bad_small(p, curve) for p in small], dtype=bool)
    qs = curve.qs if curve is not None else ()
    qr_tables = []
    for q in qs:
        t = np.zeros(q, dtype=bool)
        t[[(r * r) % q for r in range(1, q)]] = True
        qr_tables.append((q, t))
    for lo in range(1, x + 1, segment):
        hi = min(x + 1, lo + segment)
        size = hi - lo
        rem = np.arange(lo, hi, dtype=np.int64)
        omega = np.zeros(size, dtype=np.int8)
        sqf = np.ones(size, dtype=bool)
        good = np.ones(size, dtype=bool)
        for p, is_bad in zip(small, bad):
            start = (-lo) % p
            idx = slice(start, size, p)
            omega[idx] += 1
            if is_bad:
                good[idx] = False
            block = rem[idx]
            block //= p
            rem[idx] = block
            p2 = p * p
            if p2 <= hi:
                start2 = (-lo) % p2
                sqf[start2:size:p2] = False
            # remove any further powers so the cofactor is the large prime part
            while True:
                sub = rem[idx]
                hit = sub % p == 0
                if not hit.any():
                    break
                sub[hit] //= p
                rem[idx] = sub
        big = rem > 1
        omega[big] += 1
        # the cofactor > sqrt(x) is prime; test it like the small primes
        big_bad = big & (rem % 4 != 1)
        for q, t in qr_tables:
            big_bad |= big & ((rem % q == 0) | ~t[rem % q])
        good &= ~big_bad
        yield _Segment(lo, omega, sqf, good)


def enumerate_Ck(x: int, k: int) -> Iterator[TwistN]:
    """Every square-free n <= x with exactly k prime factors, in increasing order."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    for seg in _sieve_segments(x, None):
        hits = np.nonzero((seg.omega == k) & seg.squarefree)[0]
        for i in hits.tolist():
            yield TwistN.of(seg.lo + i)


def count_Ck(x: int, k: int) -> int:
    return sum(int(np.count_nonzero((s.omega == k) & s.squarefree)) for s in _sieve_segments(x, None))


def in_Qk(curve: CurveParams, n) -> bool:
    n = TwistN.of(n)
    if n.n % 8 != 1 or math.gcd(n.n, curve.abc) != 1:
        return False
    return all(p % 4 == 1 and all(_jacobi(p, q) == 1 for q in curve.qs) for p in n.primes)


def in_Pk(curve: CurveParams, n, bound: Optional[int] = None) -> bool:
    """Route-B verdict h4 = 1 and h8 = [2/d] for n in Q_k."""
    from .cassels import classify_route_B

    return classify_route_B(curve, n, case="B", bound=bound)


# ------------------------------------------------------------------ reports


@dataclass(frozen=True)
class DensityReport:
    curve: CurveParams
    k: int
    x: int
    count_Ck: int
    count_Qk: int
    count_Pk: int

    def __post_init__(self):
        if not 0 <= self.count_Pk <= self.count_Qk <= self.count_Ck:
            raise ValueError("counts must satisfy P_k <= Q_k <= C_k")

    @property
    def empirical_ratio(self) -> Fraction:
        return Fraction(self.count_Pk, self.count_Ck) if self.count_Ck else Fraction(0)

    @property
    def theoretical_constant(self) -> Fraction:
        return density_constant(self.k, self.curve.l)

    @property
    def deviation(self) -> float:
        """Relative deviation |ratio - constant| / constant."""
        c = self.theoretical_constant
        return float(abs(self.empirical_ratio - c) / c)

    def csv_row(self) -> list:
        return [
            self.k,
            self.x,
            self.count_Ck,
            self.count_Qk,
            self.count_Pk,
            f"{float(self.empirical_ratio):.8f}",
            str(self.theoretical_constant),
            f"{self.deviation:.6f}",
        ]


def _classify_chunk(args) -> list:
    a, b, ns = args
    curve = CurveParams.from_ab(a, b)
    return [in_Pk(curve, n) for n in ns]


def density_scan(
    curve: CurveParams,
    k: int,
    checkpoints: Sequence[int],
    progress: Optional[Callable[[int, int], None]] = None,
    workers: int = 1,
) -> list:
    """DensityReports at each checkpoint x (ascending) from one sieve to max(checkpoints)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    xs = sorted(set(int(x) for x in checkpoints))
    if not xs or xs[0] < 1:
        raise ValueError("checkpoints must be positive")
    ck_all, qk_all = [], []
    for seg in _sieve_segments(xs[-1], curve):
        n_arr = np.arange(seg.lo, seg.lo + len(seg.omega), dtype=np.int64)
        ck = (seg.omega == k) & seg.squarefree
        qk = ck & seg.good & (n_arr % 8 == 1)
        ck_all.append(n_arr[ck])
        qk_all.append(n_arr[qk])
    ck_ns = np.concatenate(ck_all)
    qk_ns = np.concatenate(qk_all).tolist()
    flags = _run_classification(curve, qk_ns, progress, workers)
    p_ns = np.array([n for n, f in zip(qk_ns, flags) if f], dtype=np.int64)
    q_arr = np.array(qk_ns, dtype=np.int64)
    out = []
    for x in xs:
        out.append(
            DensityReport(
                curve,
                k,
                x,
                int(np.searchsorted(ck_ns, x, side="right")),
                int(np.searchsorted(q_arr, x, side="right")),
                int(np.searchsorted(p_ns, x, side="right")),
            )
        )
    return out


def _run_classification(curve, ns: list, progress, workers: int) -> list:
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        chunks = [ns[i : i + PROGRESS_EVERY] for i in range(0, len(ns), PROGRESS_EVERY)]
        flags = []
        with ProcessPoolExecutor(max_workers=workers) as ex:
            for res in ex.map(_classify_chunk, [(curve.a, curve.b, c) for c in chunks]):
                flags.extend(res)
                if progress:
                    progress(len(flags), len(ns))
        return flags
    flags = []
    for i, n in enumerate(ns, 1):
        flags.append(in_Pk(curve, n))
        if progress and (i % PROGRESS_EVERY == 0 or i == len(ns)):
            progress(i, len(ns))
    return flags


def density_report(curve: CurveParams, k: int, x: int, **kw) -> DensityReport:
    return density_scan(curve, k, [x], **kw)[0]


def write_csv(reports: Iterable[DensityReport], fh=None) -> str:
    buf = fh if fh is not None else io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        w.writerow(r.csv_row())
    return buf.getvalue() if fh is None else ""


# ------------------------------------------------------ restricted counting


def _restricted_d(B: F2Matrix) -> F2Vector:
    k = B.nrows
    if B.ncols != k or B.T != B:
        raise BadShape("B must be square and symmetric")
    if not B.apply(F2Vector.ones(k)).is_zero():
        raise BadShape("B must satisfy B 1 = 0")
    if f2.rank(B) != k - 2:
        raise BadShape(f"B must have rank k - 2 = {k - 2}")
    for v in f2.kernel(B):
        if not v.is_zero() and v != F2Vector.ones(k) and v[k - 1] == 0:
            return v
    raise BadShape("Ker B has no vector d with s_k = 0")


def restricted_constant(k: int, l: int) -> Fraction:  # noqa: E741
    return Fraction(1, 2 ** (k * l + 3 * k + 1 + math.comb(k, 2)))


def count_restricted(x: int, alpha: Sequence[int], B: F2Matrix, curve: CurveParams) -> tuple:
    """(#C_k(x, alpha, B), predicted count 2^(-kl-3k-1-C(k,2)) #C_k(x))."""
    alpha = tuple(int(a) for a in alpha)
    k = len(alpha)
    if k < 2:
        raise BadShape("restricted counts need k >= 2")
    if any(a not in (1, 5, 9, 13) for a in alpha):
        raise BadShape("each alpha_i must be 1, 5, 9 or 13 mod 16")
    if math.prod(alpha) % 8 != 1:
        raise BadShape("prod alpha_i must be 1 mod 8")
    if B.nrows != k:
        raise BadShape("B and alpha have different sizes")
    dvec = _restricted_d(B)
    count = 0
    total = 0
    for seg in _sieve_segments(x, curve):
        ck = (seg.omega == k) & seg.squarefree
        total += int(np.count_nonzero(ck))
        n_arr = np.arange(seg.lo, seg.lo + len(seg.omega), dtype=np.int64)
        for n in n_arr[ck & seg.good].tolist():
            ps = factorize(n).primes
            if any(p % 16 != a for p, a in zip(ps, alpha)):
                continue
            ok = True
            for i in range(k):
                for j in range(i + 1, k):
                    if (1 if _jacobi(ps[j], ps[i]) == -1 else 0) != B[i, j]:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            d = math.prod(p for i, p in enumerate(ps) if dvec[i])
            dp = n // d
            if rational_quartic(dp, d) * rational_quartic(d, dp) == -1:
                count += 1
    return count, restricted_constant(k, curve.l) * total
