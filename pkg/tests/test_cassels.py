import pytest

from twistsha import cassels, genus, selmer, suites
from twistsha.arith import factorize
from twistsha.errors import HypothesisViolation
from twistsha.forms import class_group_oracle
from twistsha.genus import NormEquationSolution, norm_equation_solutions
from twistsha.params import CurveParams, TwistN

E11 = CurveParams.from_ab(1, 1)
E723 = CurveParams.from_ab(7, 23)


def _valid(curve, limit, start=9):
    for m in range(start, limit + 1, 8):
        if not factorize(m).is_squarefree:
            continue
        try:
            cases = cassels.applicable_cases(curve, m)
        except HypothesisViolation:
            continue
        yield TwistN.of(m), cases


def test_worked_example_17():
    cert = cassels.pairing_case_A(E11, 17)
    assert (cert.case_tag, cert.d, cert.pairing_bit) == (cassels.CASE_A, 17, 1)
    s = cert.norm_solution
    assert (s.alpha, s.beta, s.gamma) == (1, 1, 3)
    assert cert.gram == ((0, 1), (1, 0))
    res = cassels.classify(E11, 17)
    assert res.verdict is True and res.agreement is True
    assert res.cases == ("A", "B")


def test_worked_example_65():
    cert = cassels.pairing_case_B(E11, 65)
    assert (cert.case_tag, cert.d, cert.pairing_bit) == (cassels.CASE_B_K1, 5, 0)
    s = cert.norm_solution
    assert 5 * s.alpha**2 + 13 * s.beta**2 == 2 * s.gamma**2
    assert cassels.classify_route_A(E11, 65) is False
    assert cassels.classify_route_B(E11, 65) is False
    res = cassels.classify(E11, 65)
    assert (res.verdict, res.agreement) == (False, True)


@pytest.mark.parametrize("n", [1, 15, 3 * 11, 7 * 23 * 3])
def test_applicable_cases_rejects(n):
    with pytest.raises(HypothesisViolation):
        cassels.applicable_cases(E11, n)


def test_applicable_cases_qr_condition():
    with pytest.raises(HypothesisViolation):
        cassels.applicable_cases(E723, 17)  # gcd(17, abc) != 1
    with pytest.raises(HypothesisViolation):
        cassels.applicable_cases(E723, 41)  # (41/7) = -1
    assert cassels.applicable_cases(E11, 7 * 23) == ("A",)
    assert cassels.applicable_cases(E11, 5 * 13) == ("B",)


def test_case_A_bit_matches_h8():
    for n, cases in _valid(E11, 10**4):
        if "A" not in cases or genus.h4(n) != 1:
            continue
        bit = cassels.pairing_case_A(E11, n).pairing_bit
        assert (bit == 0) == (genus.h8_indicator(n) == 1), n.n


def test_case_A_bit_zero_example():
    # smallest prime p = 1 mod 8 whose minimal solution has (g/p) = 1
    for n, cases in _valid(E11, 2000):
        if n.k == 1:
            cert = cassels.pairing_case_A(E11, n)
            if cert.pairing_bit == 0:
                break
    # disc -164 has cyclic class group of order 8, so h8 = 1
    assert n.n == 41 and cert.norm_solution.gamma == 5
    assert class_group_oracle(41).two_power_ranks == (1, 1, 1)
    assert cassels.classify(E11, n).verdict is False


def test_prime_overlap_case_B_equals_case_A():
    for n, cases in _valid(E11, 5000):
        if n.k != 1:
            continue
        a = cassels.pairing_case_A(E11, n)
        b = cassels.pairing_case_B(E11, n)
        assert b.case_tag == cassels.CASE_B_K1 and b.d == 1
        assert a.pairing_bit == b.pairing_bit


def _first_rank_k2(curve):
    for n, cases in _valid(curve, 10**5):
        if "B" in cases and genus.h4(n) == 1:
            tag, _ = cassels._case_B_setup(n)
            if tag == cassels.CASE_B_K2:
                return n


def test_rank_k2_bit_is_solution_independent():
    n = _first_rank_k2(E11)
    cert = cassels.pairing_case_B(E11, n)
    assert cert.case_tag == cassels.CASE_B_K2
    d, dp = cert.d, n.n // cert.d
    sols = norm_equation_solutions(d, dp, 0, 40 * n.n)
    assert len(sols) >= 3
    bits = {cassels.bit_case_B(n, cassels.CASE_B_K2, d, s) for s in sols}
    assert bits == {cert.pairing_bit}


def test_rank_k1_bit_is_solution_independent():
    n = TwistN.of(65)
    sols = norm_equation_solutions(5, 13, 1, 3000)
    assert len(sols) >= 3
    assert {cassels.bit_case_B(n, cassels.CASE_B_K1, 5, s) for s in sols} == {0}


def test_case_A_bit_is_solution_independent():
    n = TwistN.of(17)
    sols = norm_equation_solutions(1, 17, 1, 3000)
    assert len(sols) >= 3
    assert {cassels.bit_case_A(n, 17, s) for s in sols} == {1}


def test_bit_functions_reject_wrong_solutions():
    with pytest.raises(ValueError):
        cassels.bit_case_A(17, 17, NormEquationSolution(1, 17, 1, 1, 1, 4))
    with pytest.raises(ValueError):
        cassels.bit_case_B(65, cassels.CASE_B_K1, 5, NormEquationSolution(5, 11, 1, 1, 1, 3))


def test_generators_span_selmer():
    for n in (17, 41, 65, 113, 145, 161):
        dim, basis = selmer.sel2_prime(E11, n)
        if dim != 2:
            continue
        for case in cassels.applicable_cases(E11, n):
            cert = cassels._pairing(E11, TwistN.of(n), case, None)
            assert selmer.span(basis, n) == selmer.span(list(cert.generators), n)
            for g in cert.generators:
                assert selmer.everywhere_locally_solvable(selmer.HomogeneousSpace.of(E11, n, g))


def test_route_gate_on_dimension():
    for n, _ in _valid(E11, 3000):
        if selmer.sel2_prime(E11, n)[0] != 2:
            assert cassels.classify_route_A(E11, n) is False
            assert cassels.classify_route_B(E11, n) is False


def test_curve_723_smallest_valid_n():
    n, cases = next(_valid(E723, 10**4))
    res = cassels.classify(E723, n)
    assert res.agreement


def test_routes_small_range():
    assert suites.route_suite(E11, 20000).failed == 0
    res = suites.route_suite(E723, 10**4)
    assert res.total == 28 and res.failed == 0


def test_all_case_tags_exercised():
    tags = set()
    for n, cases in _valid(E11, 20000):
        if genus.h4(n) != 1:
            continue
        for case in cases:
            tags.add(cassels._pairing(E11, n, case, None).case_tag)
    assert tags == {cassels.CASE_A, cassels.CASE_B_K1, cassels.CASE_B_K2}
