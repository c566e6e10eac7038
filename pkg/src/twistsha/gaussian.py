"""Gaussian integers and their quadratic / quartic residue symbols.

Symbol values are returned as Python complex numbers with integer parts
(``1``, ``-1``, ``1j``, ``-1j`` or ``0``), which compare exactly.
"""

from __future__ import annotations

from functools import lru_cache

from .arith import factorize, is_prime, jacobi, sqrt_mod


class GaussInt:
    __slots__ = ("re", "im")

    def __init__(self, re: int = 0, im: int = 0):
        self.re = int(re)
        self.im = int(im)

    @classmethod
    def of(cls, z) -> "GaussInt":
        if isinstance(z, GaussInt):
            return z
        if isinstance(z, complex):
            return cls(int(z.real), int(z.imag))
        if isinstance(z, tuple):
            return cls(*z)
        return cls(int(z), 0)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def conj(self) -> "GaussInt":
        return GaussInt(self.re, -self.im)

    def __add__(self, other):
        o = GaussInt.of(other)
        return GaussInt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussInt.of(other)
        return GaussInt(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussInt.of(other) - self

    def __neg__(self):
        return GaussInt(-self.re, -self.im)

    def __mul__(self, other):
        o = GaussInt.of(other)
        return GaussInt(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            o = GaussInt.of(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re or self.im)

    def __complex__(self):
        return complex(self.re, self.im)

    def __repr__(self):
        return f"GaussInt({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


UNITS = (GaussInt(1, 0), GaussInt(0, 1), GaussInt(-1, 0), GaussInt(0, -1))
_UNIT_VALUES = (1 + 0j, 1j, -1 + 0j, -1j)


def _round_div(a: int, b: int) -> int:
    """Nearest integer to a / b for b > 0 (ties toward +inf)."""
    return (2 * a + b) // (2 * b)


def gauss_divmod(a, b) -> tuple:
    """Division with remainder, norm(r) <= norm(b) / 2."""
    a, b = GaussInt.of(a), GaussInt.of(b)
    n = b.norm()
    if n == 0:
        raise ZeroDivisionError("division by zero Gaussian integer")
    t = a * b.conj()
    q = GaussInt(_round_div(t.re, n), _round_div(t.im, n))
    return q, a - q * b


def gauss_mod(a, b) -> GaussInt:
    return gauss_divmod(a, b)[1]


def divides(b, a) -> bool:
    return not gauss_mod(a, b)


def gauss_gcd(a, b) -> GaussInt:
    a, b = GaussInt.of(a), GaussInt.of(b)
    while b:
        a, b = b, gauss_mod(a, b)
    return a


def is_primary(z) -> bool:
    z = GaussInt.of(z)
    x, y = (z.re - 1) % 4, z.im % 4
    return (x, y) in ((0, 0), (2, 2))


def primary_associate(z) -> GaussInt:
    """The unique unit multiple of z congruent to 1 mod 2+2i."""
    z = GaussInt.of(z)
    if z.norm() % 2 == 0:
        raise ValueError(f"{z} has even norm; no primary associate")
    for u in UNITS:
        w = u * z
        if is_primary(w):
            return w
    raise AssertionError("unreachable: odd-norm element without primary associate")


@lru_cache(maxsize=None)
def split_prime(p: int) -> GaussInt:
    """The primary prime of norm p with positive imaginary part (p = 1 mod 4)."""
    if p % 4 != 1 or not is_prime(p):
        raise ValueError(f"split_prime needs a prime p = 1 mod 4, got {p}")
    x = sqrt_mod(-1, p)
    g = primary_associate(gauss_gcd(GaussInt(p), GaussInt(x, 1)))
    if g.norm() != p:
        raise AssertionError(f"gcd computation failed for p = {p}")
    return g if g.im > 0 else g.conj()


def gauss_powmod(a, e: int, m) -> GaussInt:
    a, m = GaussInt.of(a), GaussInt.of(m)
    result = GaussInt(1)
    base = gauss_mod(a, m)
    while e:
        if e & 1:
            result = gauss_mod(result * base, m)
        base = gauss_mod(base * base, m)
        e >>= 1
    return result


def prime_factors(z) -> list:
    """Primary prime factors of an odd-norm z with multiplicity, as [(pi, e)]."""
    z = GaussInt.of(z)
    n = z.norm()
    if n == 0 or n % 2 == 0:
        raise ValueError(f"{z} must have odd nonzero norm")
    out = []
    for p, e in factorize(n):
        if p % 4 == 3:
            out.append((GaussInt(-p), e // 2))
            continue
        for pi in (split_prime(p), split_prime(p).conj()):
            k = 0
            while divides(pi, z):
                z = gauss_divmod(z, pi)[0]
                k += 1
            if k:
                out.append((pi, k))
    return out


def _power_residue(alpha: GaussInt, pi: GaussInt, root: int) -> complex:
    n = pi.norm()
    if divides(pi, alpha):
        return 0j
    r = gauss_powmod(alpha, (n - 1) // root, pi)
    for u, val in zip(UNITS, _UNIT_VALUES):
        if divides(pi, r - u):
            return val
    raise AssertionError(f"{alpha}^((N{pi}-1)/{root}) is not a unit mod {pi}")


def quad_symbol(alpha, lam) -> complex:
    """(alpha/lam)_2, multiplicative over the prime factorization of lam."""
    alpha, lam = GaussInt.of(alpha), GaussInt.of(lam)
    if lam.norm() % 2 == 0:
        raise ValueError(f"{lam} is divisible by 1+i")
    val = 1 + 0j
    for pi, e in prime_factors(lam):
        s = _power_residue(alpha, pi, 2)
        val *= s**e
    return val


def quartic_symbol(alpha, lam) -> complex:
    """(alpha/lam)_4 for primary lam, multiplicative over primary prime factors."""
    alpha, lam = GaussInt.of(alpha), GaussInt.of(lam)
    if lam.norm() % 2 == 0 or not is_primary(lam):
        raise ValueError(f"{lam} is not primary")
    val = 1 + 0j
    for pi, e in prime_factors(lam):
        s = _power_residue(alpha, pi, 4)
        val *= s**e
    return val


def rational_quartic(a: int, d: int) -> complex:
    """(a/d)_4 for square-free d with every p | d congruent to 1 mod 4 and (a/p) = 1."""
    if d < 1:
        raise ValueError("d must be positive")
    val = 1 + 0j
    for p, e in factorize(d):
        if e != 1:
            raise ValueError(f"d = {d} is not square-free")
        if p % 4 != 1:
            raise ValueError(f"prime {p} | {d} is not 1 mod 4")
        if jacobi(a, p) != 1:
            raise ValueError(f"({a}/{p}) != 1")
        val *= _power_residue(GaussInt(a), split_prime(p), 4)
    return val
