"""Validated inputs: the base-curve triple (a, b, c) and the twisting integer n."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .arith import Factorization, factorize
from .errors import BadShape, HypothesisViolation


@dataclass(frozen=True)
class TwistN:
    """A square-free positive integer n with its sorted prime factors."""

    n: int
    primes: tuple

    @classmethod
    def of(cls, n: Union[int, "TwistN"]) -> "TwistN":
        if isinstance(n, TwistN):
            return n
        n = int(n)
        if n < 1:
            raise HypothesisViolation(f"n must be positive, got {n}")
        f = factorize(n)
        if not f.is_squarefree:
            raise HypothesisViolation(f"n = {n} is not square-free")
        return cls(n, f.primes)

    @classmethod
    def from_primes(cls, primes) -> "TwistN":
        ps = tuple(sorted(int(p) for p in primes))
        return cls(math.prod(ps), ps)

    @property
    def k(self) -> int:
        return len(self.primes)

    @property
    def residues16(self) -> tuple:
        return tuple(p % 16 for p in self.primes)

    def __int__(self):
        return self.n


@dataclass(frozen=True)
class CurveParams:
    """(a, b, c) with a^2 + b^2 = 2c^2, gcd(a, b) = 1, and the primes of a, b, c.

    The primes q_1..q_l of abc are ordered as (primes of a, primes of b,
    primes of c), each group increasing; l1 and l2 are the group boundaries.
    """

    a: int
    b: int
    c: int
    a_primes: tuple
    b_primes: tuple
    c_primes: tuple
    abc_factors: Factorization

    @classmethod
    def from_ab(cls, a: int, b: int) -> "CurveParams":
        a, b = int(a), int(b)
        if a < 1 or b < 1:
            raise BadShape(f"a and b must be positive, got ({a}, {b})")
        if math.gcd(a, b) != 1:
            raise BadShape(f"gcd({a}, {b}) != 1")
        s = a * a + b * b
        c = math.isqrt(s // 2)
        if s % 2 or 2 * c * c != s:
            raise BadShape(f"{a}^2 + {b}^2 is not twice a square")
        return cls(
            a,
            b,
            c,
            factorize(a).primes,
            factorize(b).primes,
            factorize(c).primes,
            factorize(a * b * c),
        )

    @property
    def qs(self) -> tuple:
        return self.a_primes + self.b_primes + self.c_primes

    @property
    def l1(self) -> int:
        return len(self.a_primes)

    @property
    def l2(self) -> int:
        return len(self.a_primes) + len(self.b_primes)

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.qs)

    @property
    def abc(self) -> int:
        return self.a * self.b * self.c

    def __str__(self):
        return f"({self.a}, {self.b}, {self.c})"
