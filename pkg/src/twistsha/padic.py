"""Brute-force p-adic point search on the homogeneous spaces D_Lambda.

A point (t : u1 : u2 : u3) of D_Lambda exists over Q_p iff some
(t : u3) in P^1(Q_p) makes both

    d2 * (b^2 n t^2 + d3 u3^2)      (= (d2 u2)^2)
    d1 * (d3 u3^2 - a^2 n t^2)      (= (d1 u1)^2)

squares in Q_p (zero included).  P^1(Q_p) is covered by the charts
(1 : s) and (p s : 1) with s in Z_p; each chart is searched by refining
residue classes s0 + p^m Z_p until every class is certified square,
certified non-square, or the depth budget runs out.
"""

from __future__ import annotations

from typing import Optional

from .arith import _jacobi
from .errors import Inconclusive

_SQUARE, _NONSQUARE, _UNKNOWN = 1, 0, -1


def _v(x: int, p: int) -> int:
    if x == 0:
        return 10**9
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _class_status(poly: tuple, s0: int, m: int, p: int) -> int:
    """Square class of q(s) for s in s0 + p^m Z_p, q(s) = c2 s^2 + c0."""
    c2, c0 = poly
    val = c2 * s0 * s0 + c0
    d1 = 2 * c2 * s0
    # q(s0 + p^m x) = val + d1 p^m x + c2 p^(2m) x^2
    e = _v(val, p)
    f = min(_v(d1, p) + m, _v(c2, p) + 2 * m)
    need = 3 if p == 2 else 1
    if e + need > f:
        return _UNKNOWN
    if e % 2:
        return _NONSQUARE
    u = val // p**e
    if p == 2:
        return _SQUARE if u % 8 == 1 else _NONSQUARE
    return _SQUARE if _jacobi(u, p) == 1 else _NONSQUARE


def _search_chart(polys: list, p: int, depth: int) -> Optional[bool]:
    stack = [(0, 0)]
    unresolved = False
    while stack:
        s0, m = stack.pop()
        statuses = [_class_status(q, s0, m, p) for q in polys]
        if _NONSQUARE in statuses:
            continue
        if all(s == _SQUARE for s in statuses):
            return True
        if m >= depth:
            unresolved = True
            continue
        step = p**m
        for j in range(p - 1, -1, -1):
            stack.append((s0 + j * step, m + 1))
    return None if unresolved else False


def default_depth(space, p: int) -> int:
    cur, n = space.curve, space.n.n
    x = 4 * (cur.a * cur.b * cur.c * n) ** 2
    lam = space.lam
    return 2 * _v(x, p) + 3 + _v(lam.d1 * lam.d2 * lam.d3, p)


def local_point_oracle(space, p: int, depth: Optional[int] = None) -> bool:
    """Whether D_Lambda(Q_p) is non-empty, decided by exhaustive class refinement.

    Raises Inconclusive when some residue class is still undecided at ``depth``.
    """
    if depth is None:
        depth = default_depth(space, p)
    cur, n = space.curve, space.n.n
    d1, d2, d3 = space.lam.d1, space.lam.d2, space.lam.d3
    bn, an = cur.b**2 * n, cur.a**2 * n
    # chart (t : u3) = (1 : s)
    chart1 = [(d2 * d3, d2 * bn), (d1 * d3, -d1 * an)]
    # chart (t : u3) = (p s : 1)
    chart2 = [(d2 * bn * p * p, d2 * d3), (-d1 * an * p * p, d1 * d3)]
    undecided = False
    for polys in (chart1, chart2):
        res = _search_chart(polys, p, depth)
        if res:
            return True
        if res is None:
            undecided = True
    if undecided:
        raise Inconclusive(f"p = {p}, depth {depth}: undecided classes remain for {space.lam}")
    return False
