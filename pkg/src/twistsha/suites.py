"""Seeded agreement suites between the fast formulas and the independent oracles."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from . import cassels, genus, selmer
from .arith import _jacobi, factorize, is_prime, primes_up_to
from .errors import EquivalenceViolation, HypothesisViolation, Inconclusive, NotFound, TorsionAnomaly, TwistError
from .forms import class_group_oracle
from .gaussian import quad_symbol, quartic_symbol, rational_quartic, split_prime
from .padic import local_point_oracle
from .params import CurveParams, TwistN

DEFAULT_SEED = 20240601
VALID_CURVES = ((1, 1), (7, 23), (23, 47), (119, 167), (167, 223), (287, 359))


@dataclass
class SuiteResult:
    name: str
    total: int = 0
    passed: int = 0
    failed: int = 0
    inconclusive: int = 0
    failures: list = field(default_factory=list)

    def record(self, ok: bool, detail=None) -> None:
        self.total += 1
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.failures) < 20:
                self.failures.append(detail)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    @property
    def inconclusive_rate(self) -> float:
        return self.inconclusive / self.total if self.total else 0.0

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "total": self.total,
            "passed": self.passed,
            "failed": self.failed,
            "inconclusive": self.inconclusive,
            "failures": [str(f) for f in self.failures],
        }


def curve_pool(max_param: int = 6) -> list:
    """Primitive (a, b, c) from coprime (alpha, beta) of opposite parity."""
    out = []
    for al in range(1, max_param + 1):
        for be in range(0, max_param + 1):
            if math.gcd(al, be) != 1 or (al - be) % 2 == 0:
                continue
            a, b, _ = selmer.parametrize_abc(al, be)
            if a and b:
                cur = CurveParams.from_ab(min(a, b), max(a, b))
                if cur not in out:
                    out.append(cur)
    return out


def _random_squarefree(rng: random.Random, lo: int, hi: int, coprime_to: int) -> TwistN:
    while True:
        m = rng.randrange(lo, hi)
        if math.gcd(m, coprime_to) != 1:
            continue
        f = factorize(m)
        if f.is_squarefree:
            return TwistN(m, f.primes)


def local_oracle_suite(count: int = 10**4, seed: int = DEFAULT_SEED, pmax: int = 50) -> SuiteResult:
    """local_solvable versus the p-adic point search on random (curve, n, Lambda, p)."""
    rng = random.Random(seed)
    curves = curve_pool()
    small = [int(p) for p in primes_up_to(pmax)]
    res = SuiteResult("local-solvability")
    for _ in range(count):
        cur = rng.choice(curves)
        p = rng.choice(small)
        bad = 2 * cur.abc
        if p % 2 and cur.abc % p and rng.random() < 0.6:
            rest = _random_squarefree(rng, 1, 400, bad * p)
            n = TwistN.from_primes(rest.primes + (p,))
        else:
            n = _random_squarefree(rng, 1, 4000, bad)
        pool = sorted({2, *cur.qs, *n.primes, p, rng.choice(small)})
        d1 = -1 if rng.random() < 0.5 else 1
        d2 = -1 if rng.random() < 0.2 else 1
        for q in pool:
            if rng.random() < 0.45:
                d1 *= q
            if rng.random() < 0.45:
                d2 *= q
        lam = selmer.SelmerTriple.from_d1d2(d1, d2)
        space = selmer.HomogeneousSpace(cur, n, lam)
        table = selmer.local_solvable(space, p)
        try:
            truth = local_point_oracle(space, p)
        except Inconclusive:
            res.total += 1
            res.inconclusive += 1
            continue
        res.record(table == truth, (str(cur), n.n, str(lam), p, table, truth))
    return res


def redundancy_suite(count: int = 2000, seed: int = DEFAULT_SEED) -> SuiteResult:
    """Local solvability at every odd place and infinity forces it at 2."""
    rng = random.Random(seed)
    curves = curve_pool()
    res = SuiteResult("redundancy-at-2")
    for _ in range(count):
        cur = rng.choice(curves)
        n = _random_squarefree(rng, 1, 3000, 2 * cur.abc)
        cands = list(selmer.candidate_triples(cur, n)) if n.k <= 3 else []
        if not cands:
            continue
        lam = rng.choice(cands)
        space = selmer.HomogeneousSpace(cur, n, lam)
        others = [v for v in space.relevant_places() if v != 2]
        if all(selmer.local_solvable(space, v) for v in others):
            res.record(selmer.local_solvable(space, 2), (str(cur), n.n, str(lam)))
    return res


def selmer_bruteforce_suite(count: int = 300, seed: int = DEFAULT_SEED, nmax: int = 20000) -> SuiteResult:
    """Ker CM_n against direct enumeration of everywhere locally solvable triples."""
    rng = random.Random(seed)
    curves = [CurveParams.from_ab(*ab) for ab in VALID_CURVES[:3]] + [CurveParams.from_ab(1, 7), CurveParams.from_ab(7, 17)]
    res = SuiteResult("selmer-vs-bruteforce")
    tries = 0
    while res.total < count and tries < 100 * count:
        tries += 1
        cur = rng.choice(curves)
        n = _random_squarefree(rng, 1, nmax, 2 * cur.abc)
        if n.k > 4:
            continue
        try:
            _, basis = selmer.sel2_prime(cur, n)
        except HypothesisViolation:
            continue
        brute = set(selmer.sel2_prime_bruteforce(cur, n))
        res.record(brute == selmer.span(basis, n), (str(cur), n.n))
    return res


def genus_suite(nmax: int = 10**5, nmin: int = 5) -> SuiteResult:
    """Redei 4-rank, norm-equation 8-rank and quartic 8-rank against the forms oracle."""
    res = SuiteResult("genus-three-way")
    for m in range(nmin, nmax + 1, 4):
        if m % 4 != 1:
            continue
        f = factorize(m)
        if not f.is_squarefree:
            continue
        n = TwistN(m, f.primes)
        orc = class_group_oracle(m)
        h4 = genus.h4(n)
        ok = h4 == orc.rank(2)
        detail = {"n": m, "h4": h4, "oracle": orc.two_power_ranks}
        if ok and h4 == 1 and all(p % 4 == 1 for p in n.primes):
            h8 = genus.h8_indicator(n)
            ok = h8 == orc.rank(3)
            detail["h8"] = h8
            if ok and m % 8 == 1:
                q = genus.h8_via_quartic(n, *genus.quartic_case(n))
                ok = q == h8
                detail["h8_quartic"] = q
        res.record(ok, detail)
    return res


def route_suite(curve: CurveParams, nmax: int, nmin: int = 9) -> SuiteResult:
    """classify_route_A == classify_route_B for every n <= nmax meeting the hypotheses."""
    res = SuiteResult(f"routes {curve}")
    start = nmin + (1 - nmin) % 8
    for m in range(start, nmax + 1, 8):
        f = factorize(m)
        if not f.is_squarefree:
            continue
        n = TwistN(m, f.primes)
        try:
            cases = cassels.applicable_cases(curve, n)
        except HypothesisViolation:
            continue
        try:
            cassels.classify(curve, n)
            res.record(True)
        except EquivalenceViolation as exc:
            res.record(False, (m, cases, str(exc)))
        except (NotFound, TwistError) as exc:
            res.record(False, (m, cases, type(exc).__name__, str(exc)))
    return res


def torsion_suite(count: int = 1000, seed: int = DEFAULT_SEED) -> SuiteResult:
    """torsion_check on random Selmer-minimal curves and admissible twists."""
    rng = random.Random(seed)
    curves = [CurveParams.from_ab(*ab) for ab in VALID_CURVES]
    res = SuiteResult("torsion")
    for _ in range(count):
        cur = rng.choice(curves)
        n = _random_squarefree(rng, 1, 10**5, 2 * cur.abc)
        try:
            selmer.torsion_check(cur, n)
            res.record(True)
        except TorsionAnomaly as exc:
            res.record(False, (str(cur), n.n, str(exc)))
    return res


def _random_prime_1mod4(rng: random.Random, limit: int) -> int:
    while True:
        p = rng.randrange(5, limit, 4)
        if is_prime(p):
            return p


def symbol_suite(count: int = 100, seed: int = DEFAULT_SEED, limit: int = 10**4) -> SuiteResult:
    """Quartic reciprocity for primary primes and (p/q)_4 (q/p)_4 = (lambda_q/lambda_p)_2."""
    rng = random.Random(seed)
    res = SuiteResult("symbol-laws")
    for _ in range(count):
        p = _random_prime_1mod4(rng, limit)
        q = _random_prime_1mod4(rng, limit)
        while q == p:
            q = _random_prime_1mod4(rng, limit)
        lp, lq = split_prime(p), split_prime(q)
        sign = (-1) ** (((p - 1) // 4) * ((q - 1) // 4))
        recip = quartic_symbol(lp, lq) == quartic_symbol(lq, lp) * sign
        rhs = quad_symbol(lq, lp)
        bridge = quartic_symbol(p, lq) * quartic_symbol(q, lp) == rhs
        if _jacobi(p, q) == 1:
            bridge = bridge and rational_quartic(p, q) * rational_quartic(q, p) == rhs
        res.record(recip and bridge, (p, q))
    return res
