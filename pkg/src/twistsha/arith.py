"""Integer arithmetic: factorization, Jacobi and Hilbert symbols, square roots mod p."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Union

import numpy as np

MAX_INT = 2**63
TRIAL_LIMIT = 10**6
INF = "inf"

Rational = Union[int, Fraction, tuple]
Place = Union[int, str, float]


class SymbolValue(enum.IntEnum):
    """A value of a quadratic symbol; ``int(s)`` is the multiplicative form."""

    MINUS = -1
    ZERO = 0
    PLUS = 1

    @property
    def multiplicative(self) -> int:
        return int(self)

    @property
    def additive(self) -> int:
        """Image under {+1, -1} -> F_2; undefined for 0."""
        if self is SymbolValue.ZERO:
            raise ValueError("additive form of a zero symbol is undefined")
        return 0 if self is SymbolValue.PLUS else 1


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple  # ((p, e), ...) with p increasing

    @property
    def primes(self) -> tuple:
        return tuple(p for p, _ in self.factors)

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def __iter__(self):
        return iter(self.factors)


@lru_cache(maxsize=1)
def _small_primes() -> list:
    return primes_up_to(TRIAL_LIMIT).tolist()


def primes_up_to(x: int) -> np.ndarray:
    """All primes <= x (sieve of Eratosthenes)."""
    if x < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(x + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for p in range(3, math.isqrt(x) + 1, 2):
        if sieve[p]:
            sieve[p * p :: 2 * p] = False
    return np.flatnonzero(sieve).astype(np.int64)


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        y, m, g, r, q = 2, 128, 1, 1, 1
        f = lambda v: (v * v + c) % n  # noqa: E731
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = f(y)
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = f(y)
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = f(ys)
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"Pollard rho failed on {n}")


def _split_large(n: int, out: dict) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    g = _pollard_brent(n)
    _split_large(g, out)
    _split_large(n // g, out)


def factorize(n: int) -> Factorization:
    """Canonical factorization of 1 <= n <= 2^63."""
    n = int(n)
    if n < 1 or n > MAX_INT:
        raise ValueError(f"factorize expects 1 <= n <= 2^63, got {n}")
    out: dict = {}
    m = n
    for p in _small_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out[p] = e
    if m > 1:
        if m <= TRIAL_LIMIT**2:
            out[m] = out.get(m, 0) + 1
        else:
            _split_large(m, out)
    return Factorization(n, tuple(sorted(out.items())))


def squarefree_part(n: int) -> int:
    """Signed square-free representative of n modulo squares."""
    if n == 0:
        raise ValueError("0 has no square class")
    sign = -1 if n < 0 else 1
    r = 1
    for p, e in factorize(abs(n)):
        if e % 2:
            r *= p
    return sign * r


def squarefree_product(*xs: int) -> int:
    """Square-free part of a product of square-free integers, without refactoring."""
    sign = 1
    acc = 1
    for x in xs:
        if x < 0:
            sign = -sign
            x = -x
        g = math.gcd(acc, x)
        acc = (acc // g) * (x // g)
    return sign * acc


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def divisors(f: Factorization) -> list:
    ds = [1]
    for p, e in f:
        ds = [d * p**i for d in ds for i in range(e + 1)]
    return sorted(ds)


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# ---------------------------------------------------------------- symbols


def _jacobi(a: int, b: int) -> int:
    """Standard Jacobi symbol (a/b) for odd b > 0 as an int; 0 if gcd > 1."""
    a %= b
    t = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if b % 8 in (3, 5):
                t = -t
        a, b = b, a
        if a % 4 == 3 and b % 4 == 3:
            t = -t
        a %= b
    return t if b == 1 else 0


def jacobi(a: int, b: int) -> SymbolValue:
    """(a/b) as a product of Legendre symbols over p | b with multiplicity."""
    if b <= 0 or b % 2 == 0:
        raise ValueError(f"jacobi modulus must be odd and positive, got {b}")
    if math.gcd(a, b) != 1:
        raise ValueError(f"jacobi requires gcd(a, b) = 1, got ({a}, {b})")
    return SymbolValue(_jacobi(a, b))


def ajacobi(a: int, b: int) -> int:
    """Additive Jacobi symbol in F_2."""
    return jacobi(a, b).additive


def legendre_q(x: Rational, p: int) -> int:
    """Legendre symbol of a p-adic unit rational (numerator * denominator)."""
    num, den = _as_pair(x)
    v = _jacobi(num * den, p)
    if v == 0:
        raise ValueError(f"{x} is not a {p}-adic unit")
    return v


def sqrt_mod(a: int, p: int) -> Optional[int]:
    """Tonelli-Shanks: r with r^2 = a mod p, or None for a non-residue."""
    a %= p
    if p == 2 or a == 0:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _as_pair(x: Rational) -> tuple:
    if isinstance(x, tuple):
        num, den = int(x[0]), int(x[1])
    elif isinstance(x, Fraction):
        num, den = x.numerator, x.denominator
    else:
        num, den = int(x), 1
    if num == 0 or den == 0:
        raise ValueError("Hilbert symbol arguments must be nonzero")
    if den < 0:
        num, den = -num, -den
    return num, den


def _split_p(n: int, p: int) -> tuple:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def _hilbert_int(a: int, b: int, p) -> int:
    if p == INF:
        return -1 if (a < 0 and b < 0) else 1
    alpha, u = _split_p(a, p)
    beta, v = _split_p(b, p)
    if p == 2:
        eu, ev = ((u - 1) // 2) % 2, ((v - 1) // 2) % 2
        wu, wv = ((u * u - 1) // 8) % 2, ((v * v - 1) // 8) % 2
        e = (eu * ev + alpha * wv + beta * wu) % 2
        return -1 if e else 1
    s = -1 if (alpha * beta % 2 and p % 4 == 3) else 1
    if beta % 2:
        s *= _jacobi(u, p)
    if alpha % 2:
        s *= _jacobi(v, p)
    return s


def _norm_place(v: Place):
    if isinstance(v, str) or (isinstance(v, float) and math.isinf(v)):
        return INF
    return int(v)


def hilbert(a: Rational, b: Rational, v: Place) -> SymbolValue:
    """Hilbert symbol (a, b)_v at an odd prime, 2, or the real place ("inf")."""
    an, ad = _as_pair(a)
    bn, bd = _as_pair(b)
    return SymbolValue(_hilbert_int(an * ad, bn * bd, _norm_place(v)))


def ahilbert(a: Rational, b: Rational, v: Place) -> int:
    """Additive Hilbert symbol [a, b]_v."""
    return hilbert(a, b, v).additive


def primes_dividing(*xs: int) -> list:
    ps: set = set()
    for x in xs:
        ps.update(factorize(abs(x)).primes)
    return sorted(ps)


def iter_squarefree(limit: int) -> Iterator[int]:
    """Square-free integers 1..limit in increasing order (small limits only)."""
    mark = np.ones(limit + 1, dtype=bool)
    mark[0] = False
    for p in primes_up_to(math.isqrt(limit)):
        mark[int(p) ** 2 :: int(p) ** 2] = False
    for n in np.flatnonzero(mark):
        yield int(n)
