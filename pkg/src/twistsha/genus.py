"""Genus theory for K = Q(sqrt(-n)), n = 1 mod 4: Redei matrix, 4- and 8-ranks.

Column j of the Redei matrix corresponds to p_j for j < k and to 2 for j = k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import f2
from .arith import _hilbert_int, _jacobi
from .errors import HypothesisViolation, NotFound
from .f2 import F2Matrix, F2Vector
from .forms import class_group_oracle  # noqa: F401  (re-exported oracle)
from .gaussian import rational_quartic
from .params import TwistN


@dataclass(frozen=True)
class NormEquationSolution:
    d: int
    dprime: int
    r: int
    alpha: int
    beta: int
    gamma: int

    def check(self) -> bool:
        lhs = self.d * self.alpha**2 + self.dprime * self.beta**2
        return (
            min(self.alpha, self.beta, self.gamma) > 0
            and lhs == (1 << self.r) * self.gamma**2
            and math.gcd(math.gcd(self.alpha, self.beta), self.gamma) == 1
        )


@dataclass(frozen=True)
class GenusData:
    n: TwistN
    redei: F2Matrix
    h2: int
    h4: int
    d0: Optional[int] = None
    d_odd: Optional[int] = None
    h8_indicator: Optional[int] = None


def _check_1mod4(n: TwistN) -> None:
    if n.n % 4 != 1:
        raise HypothesisViolation(f"genus theory here needs n = 1 mod 4, got {n.n}")
    if n.k == 0:
        raise HypothesisViolation("n = 1 has no prime factors")


def redei_matrix(n) -> F2Matrix:
    """k x (k+1) matrix with entry (i, j) = [p_j, -n]_{p_i}, p_{k+1} = 2."""
    n = TwistN.of(n)
    _check_1mod4(n)
    cols = list(n.primes) + [2]
    rows = []
    for p in n.primes:
        bits = 0
        for j, q in enumerate(cols):
            if _hilbert_int(q, -n.n, p) == -1:
                bits |= 1 << j
        rows.append(bits)
    return F2Matrix(n.k, n.k + 1, rows)


def h4(n) -> int:
    n = TwistN.of(n)
    return n.k - f2.rank(redei_matrix(n))


def _decode_divisor(v: F2Vector, n: TwistN) -> int:
    primes = list(n.primes) + [2]
    return math.prod(p for j, p in enumerate(primes) if v[j])


def distinguished_divisor(n) -> tuple:
    """(d0, d_odd): the smaller of the two divisors of 2n representing the
    nontrivial class of A[2] / A^2-intersection, and its odd part."""
    n = TwistN.of(n)
    red = redei_matrix(n)
    if n.k - f2.rank(red) != 1:
        raise HypothesisViolation(f"h4({n.n}) != 1")
    vec_n = F2Vector(n.k + 1, (1 << n.k) - 1)
    for v in f2.kernel(red):
        if not v.is_zero() and v != vec_n:
            break
    else:
        raise AssertionError("kernel of the Redei matrix lost its extra vector")
    d0 = min(_decode_divisor(v, n), _decode_divisor(v + vec_n, n))
    return d0, d0 // 2 if d0 % 2 == 0 else d0


# ------------------------------------------------------------ norm equations


def norm_equation_solutions(d: int, dprime: int, r: int, gamma_max: int) -> list:
    """All primitive positive (alpha, beta, gamma) with d a^2 + d' b^2 = 2^r g^2,
    g <= gamma_max, sorted by (gamma, alpha, beta)."""
    if d < 1 or dprime < 1 or r not in (0, 1, 2):
        raise ValueError("need positive d, d' and r in {0, 1, 2}")
    two_r = 1 << r
    amax = math.isqrt(two_r * gamma_max * gamma_max // d)
    bmax = math.isqrt(two_r * gamma_max * gamma_max // dprime)
    if amax < 1 or bmax < 1:
        return []
    alpha = np.arange(1, amax + 1, dtype=np.int64)
    beta = np.arange(1, bmax + 1, dtype=np.int64)
    out = []
    chunk = max(1, 2_000_000 // bmax)
    for start in range(0, amax, chunk):
        al = alpha[start : start + chunk, None]
        lhs = d * al * al + dprime * beta[None, :] * beta[None, :]
        ok = lhs % two_r == 0
        g2 = lhs // two_r
        g = np.rint(np.sqrt(g2.astype(np.float64))).astype(np.int64)
        hit = ok & (g * g == g2) & (g <= gamma_max)
        for i, j in zip(*np.nonzero(hit)):
            a_, b_, g_ = int(alpha[start + i]), int(beta[j]), int(g[i, j])
            if math.gcd(math.gcd(a_, b_), g_) == 1:
                out.append(NormEquationSolution(d, dprime, r, a_, b_, g_))
    out.sort(key=lambda s: (s.gamma, s.alpha, s.beta))
    return out


def default_bound(d: int, dprime: int) -> int:
    return 10 * d * dprime


def solve_norm_equation(d: int, dprime: int, r: int, bound: Optional[int] = None) -> NormEquationSolution:
    """Primitive solution of d a^2 + d' b^2 = 2^r g^2 with g minimal, g <= bound.

    The search starts at the Legendre-Holzer box g <= sqrt(d d') and doubles
    the gamma range until a solution appears or the bound is passed.
    """
    if bound is None:
        bound = default_bound(d, dprime)
    gmax = min(bound, math.isqrt(d * dprime) + 1)
    while True:
        sols = norm_equation_solutions(d, dprime, r, gmax)
        if sols:
            return sols[0]
        if gmax >= bound:
            raise NotFound(f"no primitive solution of {d}a^2 + {dprime}b^2 = {1 << r}g^2 with g <= {bound}")
        gmax = min(bound, 2 * gmax)


def adjust_parity(sol: NormEquationSolution) -> NormEquationSolution:
    """For r = 0 and d = d' = 5 mod 8, move to a primitive solution with even alpha.

    The rotation of an odd-alpha solution is again a solution but may carry
    a common odd factor, which is divided out.
    """
    d, dp = sol.d, sol.dprime
    if sol.r != 0 or d % 8 != 5 or dp % 8 != 5:
        raise HypothesisViolation("adjust_parity needs r = 0 and d = d' = 5 mod 8")
    if sol.alpha % 2 == 0:
        out = sol
    else:
        a = abs((d - dp) * sol.alpha // 2 + dp * sol.beta)
        b = abs((d - dp) * sol.beta // 2 - d * sol.alpha)
        g = (d + dp) * sol.gamma // 2
        # the image can share an odd factor; removing it keeps the parities
        h = math.gcd(a, b, g)
        out = NormEquationSolution(d, dp, 0, a // h, b // h, g // h)
    if not out.check():
        raise HypothesisViolation(f"parity adjustment of {sol} is not a primitive solution")
    if out.alpha % 4 != 2 or out.beta % 2 != 1 or out.gamma % 2 != 1:
        raise HypothesisViolation(f"parity pattern violated by {out}")
    return out


# ------------------------------------------------------------------ 8-rank


def b_vector(g: int, n: TwistN) -> F2Vector:
    """(floor[g/p_1], ..., floor[g/p_k]) as additive Legendre symbols."""
    bits = 0
    for i, p in enumerate(n.primes):
        s = _jacobi(g, p)
        if s == 0:
            raise ValueError(f"{p} divides {g}")
        if s == -1:
            bits |= 1 << i
    return F2Vector(n.k, bits)


def h8_indicator(n, bound: Optional[int] = None, solution: Optional[NormEquationSolution] = None) -> int:
    """1 iff the distinguished class lies in A^4, i.e. h8(n) = 1 (needs h4 = 1)."""
    n = TwistN.of(n)
    red = redei_matrix(n)
    d0, d = distinguished_divisor(n)
    r = 1 if d0 % 2 == 0 else 0
    if solution is None:
        solution = solve_norm_equation(d, n.n // d, r, bound)
    elif (solution.d * solution.dprime, solution.r) != (n.n, r) or not solution.check():
        raise ValueError("supplied norm-equation solution does not match n")
    return 1 if f2.in_image(red, b_vector(solution.gamma, n)) else 0


def h8_via_quartic(n, case: str, d: int, dprime: int) -> int:
    """h8 from rational quartic symbols; case is "k-2" or "k-1" (rank of A)."""
    n = TwistN.of(n)
    if n.k == 0:
        raise HypothesisViolation("n = 1 has no prime factors")
    if d * dprime != n.n:
        raise HypothesisViolation(f"{d} * {dprime} != {n.n}")
    if any(p % 4 != 1 for p in n.primes):
        raise HypothesisViolation("quartic criterion needs every p | n to be 1 mod 4")
    try:
        if case == "k-2":
            if d % 8 != 5 or dprime % 8 != 5:
                raise HypothesisViolation("rank k-2 case needs d = d' = 5 mod 8")
            val = rational_quartic(d, dprime) * rational_quartic(dprime, d)
            return 1 if val == -1 else 0
        if case == "k-1":
            if n.n % 8 != 1:
                raise HypothesisViolation("rank k-1 case needs n = 1 mod 8")
            val = rational_quartic(2 * d, dprime) * rational_quartic(2 * dprime, d)
            return 1 if val == (-1) ** ((n.n - 1) // 8) else 0
    except HypothesisViolation:
        raise
    except ValueError as exc:
        # a quartic symbol is undefined: (d, d') does not fit the case tag
        raise HypothesisViolation(f"case {case} is inconsistent with d = {d}, d' = {dprime}: {exc}") from None
    raise HypothesisViolation(f"unknown case tag {case!r}")


def genus_data(n, bound: Optional[int] = None) -> GenusData:
    n = TwistN.of(n)
    red = redei_matrix(n)
    h4_ = n.k - f2.rank(red)
    if h4_ != 1:
        return GenusData(n, red, n.k, h4_)
    d0, d = distinguished_divisor(n)
    return GenusData(n, red, n.k, h4_, d0, d, h8_indicator(n, bound))


def quartic_case(n) -> tuple:
    """(case tag, d, d') for the quartic criteria, read off the Redei matrix (A | b_2).

    Needs n = 1 mod 8 with all p_i = 1 mod 4 and h4(n) = 1.  For rank A = k - 2
    d comes from Ker A = {0, 1, d, d + 1}; for rank A = k - 1 it solves A d = b_2.
    The smaller of d and n/d is returned.
    """
    n = TwistN.of(n)
    _check_1mod4(n)
    if n.n % 8 != 1 or any(p % 4 != 1 for p in n.primes):
        raise HypothesisViolation("quartic criteria need n = 1 mod 8 and every p = 1 mod 4")
    red = redei_matrix(n)
    if n.k - f2.rank(red) != 1:
        raise HypothesisViolation(f"h4({n.n}) != 1")
    k = n.k
    mask = (1 << k) - 1
    A = F2Matrix(k, k, [r & mask for r in red.rows])
    b2 = F2Vector(k, sum(((r >> k) & 1) << i for i, r in enumerate(red.rows)))
    ones = F2Vector.ones(k)
    rank_a = f2.rank(A)
    if rank_a == k - 2:
        v = next(v for v in f2.kernel(A) if not v.is_zero() and v != ones)
        tag = "k-2"
    elif rank_a == k - 1:
        v = f2.solve(A, b2)
        tag = "k-1"
    else:
        raise HypothesisViolation(f"rank A = {rank_a} with h4 = 1")
    d = math.prod(p for i, p in enumerate(n.primes) if v[i])
    d = min(d, n.n // d)
    return tag, d, n.n // d
