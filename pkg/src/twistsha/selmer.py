"""Pure 2-Selmer groups of the twists E^(n): y^2 = x(x - a^2 n)(x + b^2 n).

Elements of the 2-Selmer group are triples (d1, d2, d3) of square-free
integers with d1 d2 d3 a square; the homogeneous space D_Lambda is

    H1: -b^2 n t^2 + d2 u2^2 - d3 u3^2 = 0
    H2: -a^2 n t^2 + d3 u3^2 - d1 u1^2 = 0
    H3: 2 c^2 n t^2 + d1 u1^2 - d2 u2^2 = 0.

Modulo the torsion classes (2, 2n, n), (-2n, 2, -n), (-n, n, -1) every
Selmer class has a unique representative with d1, d2, d3 positive odd
divisors of nabc; the pure Selmer group is computed as the kernel of the
generalized Monsky matrix over that representative set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Union

from . import f2
from .arith import INF, Factorization, _hilbert_int, _jacobi, divisors, factorize, is_square, squarefree_part
from .errors import BadShape, HypothesisViolation, NotSelmerMinimal, TorsionAnomaly, TwistError
from .f2 import F2Matrix, F2Vector
from .params import CurveParams, TwistN

Place = Union[int, str]


def parametrize_abc(alpha: int, beta: int) -> tuple:
    """(a, b, c) = (|a^2 - 2ab - b^2|, |a^2 + 2ab - b^2|, a^2 + b^2) for the pair (alpha, beta)."""
    if math.gcd(alpha, beta) != 1:
        raise BadShape(f"gcd({alpha}, {beta}) != 1")
    if (alpha - beta) % 2 == 0:
        raise BadShape(f"{alpha} and {beta} must have opposite parity")
    a = abs(alpha * alpha - 2 * alpha * beta - beta * beta)
    b = abs(alpha * alpha + 2 * alpha * beta - beta * beta)
    c = alpha * alpha + beta * beta
    return a, b, c


# ------------------------------------------------------------------ triples


@dataclass(frozen=True)
class SelmerTriple:
    d1: int
    d2: int
    d3: int

    def __post_init__(self):
        for d in (self.d1, self.d2, self.d3):
            if d == 0 or squarefree_part(d) != d:
                raise HypothesisViolation(f"{self} has an entry that is not a nonzero square-free integer")
        prod = self.d1 * self.d2 * self.d3
        if prod < 0 or not is_square(prod):
            raise HypothesisViolation(f"{self}: d1 d2 d3 is not a square")

    @classmethod
    def from_d1d2(cls, d1: int, d2: int) -> "SelmerTriple":
        g = math.gcd(d1, d2)
        d3 = (d1 // g) * (d2 // g)
        if d1 * d2 < 0:
            d3 = -abs(d3)
        else:
            d3 = abs(d3)
        return cls(d1, d2, d3)

    def __mul__(self, other: "SelmerTriple") -> "SelmerTriple":
        return SelmerTriple.from_d1d2(_sqfree_mul(self.d1, other.d1), _sqfree_mul(self.d2, other.d2))

    def as_tuple(self) -> tuple:
        return (self.d1, self.d2, self.d3)

    def __str__(self):
        return f"({self.d1}, {self.d2}, {self.d3})"


def _sqfree_mul(x: int, y: int) -> int:
    g = math.gcd(x, y)
    return (x // g) * (y // g)


def torsion_triples(n) -> tuple:
    """Images of (a^2 n, 0), (-b^2 n, 0), (0, 0) under the descent map."""
    m = TwistN.of(n).n
    return (
        SelmerTriple(2, 2 * m, m),
        SelmerTriple(-2 * m, 2, -m),
        SelmerTriple(-m, m, -1),
    )


def normalize(lam: SelmerTriple, n) -> SelmerTriple:
    """Canonical representative of lam modulo torsion: d1 odd and positive.

    Torsion only moves d1 between the four classes {1, 2, -n, -2n} * d1;
    exactly one has d1 odd and positive, so this picks a unique coset element.
    """
    n = TwistN.of(n)
    t_2n, _, t_m1 = torsion_triples(n)
    if lam.d1 % 2 == 0:
        lam = lam * t_2n
    if lam.d1 < 0:
        lam = lam * t_m1
    return lam


def same_class(x: SelmerTriple, y: SelmerTriple, n) -> bool:
    return normalize(x, n) == normalize(y, n)


@dataclass(frozen=True)
class HomogeneousSpace:
    curve: CurveParams
    n: TwistN
    lam: SelmerTriple

    @classmethod
    def of(cls, curve: CurveParams, n, lam) -> "HomogeneousSpace":
        if not isinstance(lam, SelmerTriple):
            lam = SelmerTriple(*lam)
        n = TwistN.of(n)
        if math.gcd(n.n, 2 * curve.abc) != 1:
            raise HypothesisViolation(f"gcd(n, 2abc) != 1 for n = {n.n}, curve {curve}")
        return cls(curve, n, lam)

    @property
    def quadrics(self) -> tuple:
        """Coefficients of (t^2, first u^2, second u^2) in H1, H2, H3."""
        a, b, c, n = self.curve.a, self.curve.b, self.curve.c, self.n.n
        d1, d2, d3 = self.lam.as_tuple()
        return (-b * b * n, d2, -d3), (-a * a * n, d3, -d1), (2 * c * c * n, d1, -d2)

    def contains(self, t: int, u1: int, u2: int, u3: int) -> bool:
        (h1, h2, h3) = self.quadrics
        return (
            h1[0] * t * t + h1[1] * u2 * u2 + h1[2] * u3 * u3 == 0
            and h2[0] * t * t + h2[1] * u3 * u3 + h2[2] * u1 * u1 == 0
            and h3[0] * t * t + h3[1] * u1 * u1 + h3[2] * u2 * u2 == 0
        )

    def relevant_places(self) -> list:
        """Places where local solvability is not automatic: inf and p | 2abcn d1d2d3."""
        ps = {2, *self.curve.qs, *self.n.primes}
        for d in (self.lam.d1, self.lam.d2):
            ps.update(factorize(abs(d)).primes)
        return [INF] + sorted(ps)


# --------------------------------------------------------- local solvability


def _leg(x, p: int) -> int:
    """Legendre symbol of a rational x = num/den (or int) prime to p."""
    if isinstance(x, tuple):
        num, den = x
        v = _jacobi(num, p) * _jacobi(den, p)
    else:
        v = _jacobi(x, p)
    if v == 0:
        raise ArithmeticError(f"{x} is not a unit at {p}")
    return v


def _at_n(lam: SelmerTriple, p: int, n: int) -> bool:
    d1, d2 = lam.d1, lam.d2
    i1, i2 = d1 % p == 0, d2 % p == 0
    if not i1 and not i2:
        return _leg(d1, p) == 1 and _leg(d2, p) == 1
    if not i1 and i2:
        return _leg(2 * d1, p) == 1 and _leg(_unit(2 * n, d2, p), p) == 1
    if i1 and not i2:
        return _leg(_unit(-2 * n, d1, p), p) == 1 and _leg(2 * d2, p) == 1
    return _leg(_unit(-n, d1, p), p) == 1 and _leg(_unit(n, d2, p), p) == 1


def _unit(num: int, den: int, p: int) -> tuple:
    """num/den with one factor p cancelled from each, as a (num, den) pair."""
    return (num // p, den // p)


def _at_abc(lam: SelmerTriple, p: int, curve: CurveParams, n: int) -> bool:
    # At p | a no point has p | d2; with p prime to d1 d2 d3 there are two
    # branches of points: u1, u3 units (needs (d2/p) = 1) and
    # u1 = u3 = 0 mod p (needs (n d2/p) = 1).  Likewise at p | b and p | c.
    d1, d2, d3 = lam.as_tuple()
    if curve.a % p == 0:
        if d2 % p == 0:
            return False
        if d1 % p:
            return _leg(d2, p) == 1 or _leg(n * d2, p) == 1
        return _leg(d2, p) == 1 and _leg(n, p) == 1
    if curve.b % p == 0:
        if d1 % p == 0:
            return False
        if d2 % p:
            return _leg(d1, p) == 1 or _leg(-n * d1, p) == 1
        return _leg(d1, p) == 1 and _leg(-n, p) == 1
    if curve.c % p == 0:
        if d3 % p == 0:
            return False
        if d1 % p:
            return _leg(d3, p) == 1 or _leg(n * d3, p) == 1
        return _leg(d3, p) == 1 and _leg(n, p) == 1
    raise AssertionError(f"{p} does not divide abc")


def local_solvable(space: HomogeneousSpace, v: Place) -> bool:
    """Whether D_Lambda(Q_v) is non-empty, by the local solvability tables.

    ``v`` is a prime or the string ``"inf"``.
    """
    lam, n, curve = space.lam, space.n.n, space.curve
    if v == INF:
        return lam.d2 > 0
    p = int(v)
    if p == 2:
        d1, d2 = lam.d1, lam.d2
        if d1 % 2 != d2 % 2:
            return False
        if d1 % 2 == 0:
            lam = lam * torsion_triples(space.n)[0]
            d1, d2 = lam.d1, lam.d2
        return ((d1 - 1) % 4 == 0 and (d1 - d2) % 8 == 0) or (
            (d1 + n) % 4 == 0 and (d1 - d2 + 2 * n) % 8 == 0
        )
    if n % p == 0:
        return _at_n(lam, p, n)
    if curve.abc % p == 0:
        return _at_abc(lam, p, curve, n)
    return (lam.d1 * lam.d2 * lam.d3) % p != 0


def everywhere_locally_solvable(space: HomogeneousSpace) -> bool:
    return all(local_solvable(space, v) for v in space.relevant_places())


# ------------------------------------------------------------------ matrices


def _add_hilbert(x: int, y: int, p: int) -> int:
    return 1 if _hilbert_int(x, y, p) == -1 else 0


def _add_leg(x: int, p: int) -> int:
    s = _jacobi(x, p)
    if s == 0:
        raise ArithmeticError(f"{p} divides {x}")
    return 1 if s == -1 else 0


def matrix_A(n) -> F2Matrix:
    """k x k matrix with entry (i, j) = [p_j, -n]_{p_i}."""
    n = TwistN.of(n)
    rows = []
    for p in n.primes:
        bits = 0
        for j, q in enumerate(n.primes):
            bits |= _add_hilbert(q, -n.n, p) << j
        rows.append(bits)
    return F2Matrix(n.k, n.k, rows)


def diag_D(u: int, n) -> F2Matrix:
    """diag(floor[u/p_1], ..., floor[u/p_k])."""
    n = TwistN.of(n)
    return F2Matrix.diag([_add_leg(u, p) for p in n.primes])


def monsky_matrix(n) -> F2Matrix:
    """M_n = [[A + D_{-2}, D_2], [D_2, A + D_2]]."""
    n = TwistN.of(n)
    if n.n % 2 == 0:
        raise HypothesisViolation(f"n = {n.n} must be odd")
    A = matrix_A(n)
    d2, dm2 = diag_D(2, n), diag_D(-2, n)
    k = n.k
    return F2Matrix.block([[A + dm2, d2], [d2, A + d2]], [k, k], [k, k])


def matrix_M1(curve: CurveParams, literal: bool = False) -> F2Matrix:
    """The (l + l2 - l1) x l matrix [[0, F2, F3], [F4, 0, F6], [F7, F8, 0], [0, Delta, 0]].

    F-entries are [q_j, q_i]_{q_i} and Delta = diag(floor[-1/q]) over the
    primes of b.  A prime q | b with q = 3 mod 4 imposes no condition through
    its (F4, 0, F6) row (either d1 or -d1 is a square mod q), so that row is
    zeroed unless ``literal`` is set; its Delta row still forces z_q = 0.
    """
    qs = curve.qs
    l1, l2, l = curve.l1, curve.l2, curve.l
    groups = [range(0, l1), range(l1, l2), range(l2, l)]
    rows = []
    for g, grp in enumerate(groups):
        for i in grp:
            qi = qs[i]
            bits = 0
            if g != 1 or literal or qi % 4 == 1:
                for h, other in enumerate(groups):
                    if h == g:
                        continue
                    for j in other:
                        bits |= _add_hilbert(qs[j], qi, qi) << j
            rows.append(bits)
    for i in groups[1]:
        rows.append(_add_leg(-1, qs[i]) << i)
    return F2Matrix(l + l2 - l1, l, rows)


def _check_compatible(curve: CurveParams, n: TwistN) -> None:
    if math.gcd(n.n, 2 * curve.abc) != 1:
        raise HypothesisViolation(f"gcd({n.n}, 2abc) != 1 for curve {curve}")
    for p in n.primes:
        for q in curve.qs:
            if _jacobi(p, q) != 1:
                raise HypothesisViolation(f"{p} is not a quadratic residue mod {q}")


def generalized_monsky(curve: CurveParams, n) -> F2Matrix:
    """CM_n = [[M_n, G], [0, CM_1]] with G = [[G1, 0, G3], [0, G2, G3]]."""
    n = TwistN.of(n)
    _check_compatible(curve, n)
    k, l, l1, l2 = n.k, curve.l, curve.l1, curve.l2
    g = []
    for p in n.primes:
        g.append(sum(_add_hilbert(q, -n.n, p) << j for j, q in enumerate(curve.qs)))
    a_mask = (1 << l1) - 1
    b_mask = ((1 << l2) - 1) ^ a_mask
    upper = [row & ~b_mask for row in g]
    lower = [row & ~a_mask for row in g]
    G = F2Matrix(2 * k, l, upper + lower)
    m1 = matrix_M1(curve)
    return F2Matrix.block(
        [[monsky_matrix(n) if k else None, G], [None, m1]],
        [2 * k, m1.nrows],
        [2 * k, l],
    )


@lru_cache(maxsize=64)
def _ker_M1_dim(curve: CurveParams) -> int:
    return len(f2.kernel_basis(matrix_M1(curve)))


def require_selmer_minimal(curve: CurveParams) -> None:
    dim = _ker_M1_dim(curve)
    if dim:
        raise NotSelmerMinimal(f"curve {curve}: Ker CM_1 has dimension {dim}")


def check_curve(a: int, b: int) -> CurveParams:
    """Validated curve data; raises NotSelmerMinimal unless Sel_2(E) = (Z/2)^2."""
    curve = CurveParams.from_ab(a, b)
    require_selmer_minimal(curve)
    return curve


# ------------------------------------------------------------- Selmer group


def decode(vector: F2Vector, curve: CurveParams, n: TwistN) -> SelmerTriple:
    """(x, y, z) -> (d1, d2, d3) by the coordinate map on positive divisors of nabc."""
    k, qs, l1, l2 = n.k, curve.qs, curve.l1, curve.l2
    d1 = d2 = 1
    for i, p in enumerate(n.primes):
        if vector[i]:
            d1 *= p
        if vector[k + i]:
            d2 *= p
    for j, q in enumerate(qs):
        if vector[2 * k + j]:
            if j < l1 or j >= l2:
                d1 *= q
            if j >= l1:
                d2 *= q
    return SelmerTriple.from_d1d2(d1, d2)


def encode(lam: SelmerTriple, curve: CurveParams, n: TwistN) -> F2Vector:
    """Inverse of decode on normalized representatives."""
    lam = normalize(lam, n)
    k = n.k
    bits = 0
    for i, p in enumerate(n.primes):
        if lam.d1 % p == 0:
            bits |= 1 << i
        if lam.d2 % p == 0:
            bits |= 1 << (k + i)
    for j, q in enumerate(curve.qs):
        if j < curve.l1:
            hit = lam.d1 % q == 0
        elif j < curve.l2:
            hit = lam.d2 % q == 0
        else:
            hit = lam.d1 % q == 0
        if hit:
            bits |= 1 << (2 * k + j)
    out = F2Vector(2 * k + curve.l, bits)
    if decode(out, curve, n) != lam:
        raise HypothesisViolation(f"{lam} is not a positive divisor triple of nabc in normal form")
    return out


def sel2_prime(curve: CurveParams, n) -> tuple:
    """(dimension, basis) of the pure 2-Selmer group as the kernel of CM_n.

    Each basis triple is the normalized positive representative and is
    re-verified against the local solvability tables.
    """
    n = TwistN.of(n)
    cm = generalized_monsky(curve, n)
    basis = [decode(v, curve, n) for v in f2.kernel_basis(cm)]
    for lam in basis:
        space = HomogeneousSpace(curve, n, lam)
        bad = [v for v in space.relevant_places() if not local_solvable(space, v)]
        if bad:
            raise TwistError(f"kernel vector {lam} fails local solvability at {bad}")
    return len(basis), basis


def span(basis: list, n) -> set:
    """All normalized elements of the subgroup generated by ``basis``."""
    n = TwistN.of(n)
    out = {SelmerTriple(1, 1, 1)}
    for b in basis:
        out |= {normalize(x * b, n) for x in out}
    return out


def candidate_triples(curve: CurveParams, n) -> Iterator[SelmerTriple]:
    """All normalized positive triples with d1 | nac, d2 | nbc, d3 | nab."""
    n = TwistN.of(n)
    c_part = Factorization(curve.c, tuple((q, 1) for q in curve.c_primes))
    a_part = Factorization(curve.a, tuple((q, 1) for q in curve.a_primes))
    b_part = Factorization(curve.b, tuple((q, 1) for q in curve.b_primes))
    n_fac = Factorization(n.n, tuple((p, 1) for p in n.primes))
    nd = divisors(n_fac)
    for zc in divisors(c_part):
        for za in divisors(a_part):
            for zb in divisors(b_part):
                for x in nd:
                    for y in nd:
                        yield SelmerTriple.from_d1d2(x * za * zc, y * zb * zc)


def sel2_prime_bruteforce(curve: CurveParams, n) -> list:
    """Normalized elements of Sel_2' found by testing every candidate triple."""
    n = TwistN.of(n)
    out = []
    for lam in candidate_triples(curve, n):
        if everywhere_locally_solvable(HomogeneousSpace(curve, n, lam)):
            out.append(lam)
    return out


# ------------------------------------------------------------------- torsion


def _ono_three_torsion(A: int, B: int, fa: Factorization, fb: Factorization) -> Optional[tuple]:
    """An Ono triple (d, u, v) for y^2 = x(x - A)(x + B), or None."""

    def cube_divisors(f: Factorization) -> list:
        base = []
        for p, e in f.factors:
            if e >= 3:
                base.append((p, e // 3))
        pf = Factorization(math.prod(p**e for p, e in base), tuple(base))
        return divisors(pf)

    for u0 in cube_divisors(fa):
        for v0 in cube_divisors(fb):
            for su in (1, -1):
                for sv in (1, -1):
                    u, v = su * u0, sv * v0
                    # u/v must avoid -2, -1/2, -1, 1, 0
                    if math.gcd(u, v) != 1 or u in (-2 * v, -v, v) or 2 * u == -v:
                        continue
                    den = u**3 * (u + 2 * v)
                    if (-A) % den:
                        continue
                    d2 = -A // den
                    if d2 <= 0 or not is_square(d2):
                        continue
                    if d2 * v**3 * (v + 2 * u) == B:
                        return math.isqrt(d2), u, v
    return None


def torsion_check(curve: CurveParams, n) -> tuple:
    """Confirm E^(n)_tors(Q) = (Z/2)^2; returns the invariants (2, 2)."""
    n = TwistN.of(n)
    a2n, b2n, c2n = curve.a**2 * n.n, curve.b**2 * n.n, 2 * curve.c**2 * n.n
    for x, y in ((-a2n, b2n), (a2n, c2n), (-b2n, -c2n)):
        if x >= 0 and y >= 0 and is_square(x) and is_square(y):
            raise TorsionAnomaly(f"point of order 4 from the square pair ({x}, {y})")
    fa = factorize(a2n)
    fb = factorize(b2n)
    hit = _ono_three_torsion(a2n, b2n, fa, fb)
    if hit is not None:
        raise TorsionAnomaly(f"point of order 3 from Ono data (d, u, v) = {hit}")
    return (2, 2)
