"""Class groups of imaginary quadratic orders from reduced binary quadratic forms.

This is the independent oracle for the genus-theory code: it never looks at
Hilbert symbols, only at forms (a, b, c) of discriminant -4n and their
composition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_ABS_DISC = 10**8


def _xgcd(a: int, b: int) -> tuple:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def reduce_form(a: int, b: int, c: int) -> tuple:
    """The reduced form properly equivalent to a positive definite (a, b, c)."""
    while True:
        if not -a < b <= a:
            k = (a - b) // (2 * a)
            b, c = b + 2 * a * k, a * k * k + b * k + c
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return a, b, c


def compose(f: tuple, g: tuple) -> tuple:
    """Gauss composition of two primitive forms of equal discriminant, reduced."""
    a1, b1, c1 = f
    a2, b2, c2 = g
    if a1 > a2:
        a1, b1, c1, a2, b2, c2 = a2, b2, c2, a1, b1, c1
    disc = b2 * b2 - 4 * a2 * c2
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, d = 0, a1
    else:
        d, u, _ = _xgcd(a2, a1)
        y1 = u
    if s % d == 0:
        y2, x2, d1 = -1, 0, d
    else:
        d1, x2, y2 = _xgcd(s, d)
        y2 = -y2
    v1, v2 = a1 // d1, a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    num = b3 * b3 - disc
    if num % (4 * a3):
        raise ArithmeticError(f"composition of {f} and {g} failed")
    return reduce_form(a3, b3, num // (4 * a3))


@lru_cache(maxsize=4)
def _pair_table(amax: int) -> tuple:
    a_list, b_list = [], []
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            if b % 2 == 0:
                a_list.append(a)
                b_list.append(b)
    return np.array(a_list, dtype=np.int64), np.array(b_list, dtype=np.int64)


def reduced_forms(n: int) -> list:
    """All reduced primitive forms of discriminant -4n."""
    disc = 4 * n
    if disc > MAX_ABS_DISC:
        raise ValueError(f"|discriminant| {disc} exceeds oracle limit {MAX_ABS_DISC}")
    amax = math.isqrt(disc // 3)
    table_max = max(64, 1 << (amax - 1).bit_length())
    A, B = _pair_table(table_max)
    sel = A <= amax
    A, B = A[sel], B[sel]
    num = B * B + disc
    ok = num % (4 * A) == 0
    A, B, C = A[ok], B[ok], num[ok] // (4 * A[ok])
    keep = (C > A) | ((C == A) & (B >= 0))
    forms = []
    for a, b, c in zip(A[keep].tolist(), B[keep].tolist(), C[keep].tolist()):
        if math.gcd(math.gcd(a, b), c) == 1:
            forms.append((a, b, c))
    return forms


@dataclass(frozen=True)
class ClassGroupInfo:
    n: int
    order: int
    two_power_ranks: tuple  # (h2, h4, h8, ...)

    def rank(self, m: int) -> int:
        """The 2^m-rank for m >= 1."""
        return self.two_power_ranks[m - 1] if m <= len(self.two_power_ranks) else 0


def class_group_oracle(n: int, min_ranks: int = 3) -> ClassGroupInfo:
    """Order and 2^m-ranks of the form class group of discriminant -4n."""
    forms = reduced_forms(n)
    level = set(forms)
    ranks = []
    while True:
        nxt = {compose(f, f) for f in level}
        drop = len(level) // len(nxt)
        ranks.append(drop.bit_length() - 1)
        if drop == 1:
            break
        level = nxt
    while len(ranks) > max(min_ranks, 1) and ranks[-1] == 0:
        ranks.pop()
    while len(ranks) < min_ranks:
        ranks.append(0)
    return ClassGroupInfo(n, len(forms), tuple(ranks))
