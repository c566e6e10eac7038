"""Cassels pairing on the pure 2-Selmer group in the two second-minimal cases.

When Sel_2' has dimension 2 the pairing is alternating, so its Gram matrix
is [[0, e], [e, 0]] and non-degeneracy is the single bit e.  The bit is
evaluated by closed formulas from Legendre symbols of one norm-equation
solution:

* all p | n congruent to +-1 mod 8 ("case A"): generators (2, 2, 1), (d, 1, d)
  with Ker(A + D_{-1}) = {0, d} and a^2 + n b^2 = 2 g^2;
  e = [g/d] + [-1/d][g/n];
* all p | n congruent to 1 mod 4 ("case B"):
  rank A = k - 2: generators (d, d, 1), (-1, 1, -1) with Ker A = {0, 1, d, d + 1},
  d a^2 + d' b^2 = g^2 with a even; e = [g/n] + 1;
  rank A = k - 1: generators (2d, 2d, 1), (-1, 1, -1) with A d = b_2,
  d a^2 + d' b^2 = 2 g^2; e = [g/n] + [2/d].

Route A classifies by Selmer dimension and pairing bit; route B by the
class-group conditions h4 = 1 and h8 = 0 (case A) or h8 = [2/d] (case B).
The two must agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from . import f2, genus
from .arith import _jacobi
from .errors import EquivalenceViolation, HypothesisViolation, RankAnomaly
from .f2 import F2Matrix, F2Vector
from .genus import NormEquationSolution, adjust_parity, solve_norm_equation
from .params import CurveParams, TwistN
from .selmer import SelmerTriple, diag_D, matrix_A, normalize, require_selmer_minimal, sel2_prime, span

CASE_A = "A"
CASE_B_K2 = "B_rank_k_minus_2"
CASE_B_K1 = "B_rank_k_minus_1"


@dataclass(frozen=True)
class PairingCertificate:
    case_tag: str
    d: int
    generators: tuple
    norm_solution: NormEquationSolution
    pairing_bit: int
    normalized_generators: tuple = field(default=())

    @property
    def gram(self) -> tuple:
        e = self.pairing_bit
        return ((0, e), (e, 0))


def _add_jacobi(x: int, m: int) -> int:
    s = _jacobi(x, m)
    if s == 0:
        raise ArithmeticError(f"gcd({x}, {m}) != 1")
    return 1 if s == -1 else 0


def _divisor(v: F2Vector, n: TwistN) -> int:
    return math.prod(p for i, p in enumerate(n.primes) if v[i])


def _smaller(d: int, n: TwistN) -> int:
    return min(d, n.n // d)


def applicable_cases(curve: CurveParams, n) -> tuple:
    """Which of the two classification cases apply to n; raises if neither does or E is not Selmer-minimal."""
    n = TwistN.of(n)
    require_selmer_minimal(curve)
    if n.n == 1:
        raise HypothesisViolation("n = 1 has trivial class group; the classification needs n > 1")
    if n.n % 8 != 1:
        raise HypothesisViolation(f"n = {n.n} is not 1 mod 8")
    if math.gcd(n.n, curve.abc) != 1:
        raise HypothesisViolation(f"gcd({n.n}, abc) != 1")
    for p in n.primes:
        for q in curve.qs:
            if _jacobi(p, q) != 1:
                raise HypothesisViolation(f"{p} is not a quadratic residue mod {q}")
    cases = []
    if all(p % 8 in (1, 7) for p in n.primes):
        cases.append(CASE_A)
    if all(p % 4 == 1 for p in n.primes):
        cases.append("B")
    if not cases:
        raise HypothesisViolation(f"n = {n.n} has primes outside both +-1 mod 8 and 1 mod 4")
    return tuple(cases)


def _require_h4(n: TwistN) -> None:
    if genus.h4(n) != 1:
        raise HypothesisViolation(f"h4({n.n}) != 1")


def pairing_case_A(curve: CurveParams, n, bound: Optional[int] = None) -> PairingCertificate:
    n = TwistN.of(n)
    if CASE_A not in applicable_cases(curve, n):
        raise HypothesisViolation(f"n = {n.n} has a prime not +-1 mod 8")
    _require_h4(n)
    m = matrix_A(n) + diag_D(-1, n)
    ker = f2.kernel_basis(m)
    if len(ker) != 1:
        raise RankAnomaly(f"Ker(A + D_-1) has dimension {len(ker)} although h4 = 1")
    d = _divisor(ker[0], n)
    sol = solve_norm_equation(1, n.n, 1, bound)
    return _certificate_A(n, d, sol)


def _certificate_A(n: TwistN, d: int, sol: NormEquationSolution) -> PairingCertificate:
    g = sol.gamma
    bit = (_add_jacobi(g, d) + _add_jacobi(-1, d) * _add_jacobi(g, n.n)) % 2
    gens = (SelmerTriple(2, 2, 1), SelmerTriple(d, 1, d))
    norm = tuple(normalize(x, n) for x in gens)
    return PairingCertificate(CASE_A, d, gens, sol, bit, norm)


def bit_case_A(n, d: int, sol: NormEquationSolution) -> int:
    """Case A pairing bit from a given solution of a^2 + n b^2 = 2 g^2."""
    n = TwistN.of(n)
    if (sol.d, sol.dprime, sol.r) != (1, n.n, 1) or not sol.check():
        raise ValueError(f"{sol} does not solve a^2 + {n.n} b^2 = 2 g^2")
    return _certificate_A(n, d, sol).pairing_bit


def _case_B_setup(n: TwistN) -> tuple:
    k = n.k
    A = matrix_A(n)
    r = f2.rank(A)
    if r == k - 2:
        ones = F2Vector.ones(k)
        for v in f2.kernel(A):
            if not v.is_zero() and v != ones:
                return CASE_B_K2, _smaller(_divisor(v, n), n)
        raise RankAnomaly("Ker A lost its extra vector")
    if r == k - 1:
        b2 = F2Vector.from_list([_add_jacobi(2, p) for p in n.primes])
        v = f2.solve(A, b2)
        if v is None:
            raise RankAnomaly(f"b_2 is not in the image of A for n = {n.n}")
        return CASE_B_K1, _smaller(_divisor(v, n), n)
    raise RankAnomaly(f"rank A = {r} not in {{k-2, k-1}} for n = {n.n} with h4 = 1")


def _certificate_B(n: TwistN, tag: str, d: int, sol: NormEquationSolution) -> PairingCertificate:
    g = sol.gamma
    if tag == CASE_B_K2:
        bit = (_add_jacobi(g, n.n) + 1) % 2
        gens = (SelmerTriple(d, d, 1), SelmerTriple(-1, 1, -1))
    else:
        bit = (_add_jacobi(g, n.n) + _add_jacobi(2, d)) % 2
        gens = (SelmerTriple.from_d1d2(2 * d, 2 * d), SelmerTriple(-1, 1, -1))
    norm = tuple(normalize(x, n) for x in gens)
    return PairingCertificate(tag, d, gens, sol, bit, norm)


def pairing_case_B(curve: CurveParams, n, bound: Optional[int] = None) -> PairingCertificate:
    n = TwistN.of(n)
    if "B" not in applicable_cases(curve, n):
        raise HypothesisViolation(f"n = {n.n} has a prime not 1 mod 4")
    _require_h4(n)
    tag, d = _case_B_setup(n)
    dp = n.n // d
    if tag == CASE_B_K2:
        if d % 8 != 5 or dp % 8 != 5:
            raise RankAnomaly(f"rank k-2 case with d = {d}, d' = {dp} not both 5 mod 8")
        sol = adjust_parity(solve_norm_equation(d, dp, 0, bound))
    else:
        sol = solve_norm_equation(d, dp, 1, bound)
    return _certificate_B(n, tag, d, sol)


def bit_case_B(n, tag: str, d: int, sol: NormEquationSolution) -> int:
    """Case B pairing bit from a given norm-equation solution (parity-adjusted for rank k-2)."""
    n = TwistN.of(n)
    if sol.d * sol.dprime != n.n or not sol.check():
        raise ValueError(f"{sol} is not a solution for n = {n.n}")
    if tag == CASE_B_K2:
        sol = adjust_parity(sol)
    return _certificate_B(n, tag, d, sol).pairing_bit


def _pairing(curve: CurveParams, n: TwistN, case: str, bound: Optional[int]) -> PairingCertificate:
    return pairing_case_A(curve, n, bound) if case == CASE_A else pairing_case_B(curve, n, bound)


def classify_route_A(curve: CurveParams, n, case: Optional[str] = None, bound: Optional[int] = None) -> bool:
    """Selmer dimension 2 and a non-degenerate pairing."""
    return _route_A(curve, TwistN.of(n), case, bound)[0]


def _route_A(curve: CurveParams, n: TwistN, case: Optional[str], bound: Optional[int]) -> tuple:
    cases = applicable_cases(curve, n)
    case = case or cases[0]
    if case not in cases:
        raise HypothesisViolation(f"case {case} does not apply to n = {n.n}")
    dim, basis = sel2_prime(curve, n)
    if dim != 2:
        return False, None
    if genus.h4(n) != 1:
        raise RankAnomaly(f"Selmer dimension 2 but h4({n.n}) != 1")
    cert = _pairing(curve, n, case, bound)
    if span(basis, n) != span(list(cert.generators), n):
        raise EquivalenceViolation(f"pairing generators {cert.normalized_generators} do not span Sel_2'")
    return cert.pairing_bit == 1, cert


def classify_route_B(curve: CurveParams, n, case: Optional[str] = None, bound: Optional[int] = None) -> bool:
    """Class-group criterion: h4 = 1 and h8 = 0 (case A) or h8 = [2/d] (case B)."""
    n = TwistN.of(n)
    cases = applicable_cases(curve, n)
    case = case or cases[0]
    if case not in cases:
        raise HypothesisViolation(f"case {case} does not apply to n = {n.n}")
    if genus.h4(n) != 1:
        return False
    h8 = genus.h8_indicator(n, bound)
    if case == CASE_A:
        return h8 == 0
    _, d = genus.distinguished_divisor(n)
    return h8 == _add_jacobi(2, d)


@dataclass(frozen=True)
class Classification:
    verdict: bool
    certificate: Optional[PairingCertificate]
    agreement: bool
    cases: tuple


def classify(curve: CurveParams, n, bound: Optional[int] = None) -> Classification:
    """Verdict by route B, checked against route A for every applicable case."""
    n = TwistN.of(n)
    cases = applicable_cases(curve, n)
    verdicts, certs = [], []
    for case in cases:
        a, cert = _route_A(curve, n, case, bound)
        b = classify_route_B(curve, n, case, bound)
        if a != b:
            raise EquivalenceViolation(f"n = {n.n}, case {case}: route A says {a}, route B says {b}")
        verdicts.append(b)
        certs.append(cert)
    if len(set(verdicts)) != 1:
        raise EquivalenceViolation(f"n = {n.n}: the two cases disagree ({verdicts})")
    bits = {c.pairing_bit for c in certs if c is not None}
    if len(bits) > 1:
        raise EquivalenceViolation(f"n = {n.n}: case A and case B pairing bits differ")
    return Classification(verdicts[0], certs[0], True, cases)
