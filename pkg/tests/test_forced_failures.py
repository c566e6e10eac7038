"""Each anomaly class is raised by an intentionally corrupted table or routine."""

import io
import json

import pytest

from twistsha import cassels, cli, genus, selmer, suites
from twistsha.errors import (
    EquivalenceViolation,
    Inconclusive,
    NotFound,
    RankAnomaly,
    TorsionAnomaly,
    TwistError,
)
from twistsha.forms import ClassGroupInfo
from twistsha.padic import local_point_oracle
from twistsha.params import CurveParams

E11 = CurveParams.from_ab(1, 1)


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out=out, err=err)
    return code, json.loads(out.getvalue()), err.getvalue()


def test_flipped_h8_breaks_route_equivalence(monkeypatch):
    real = genus.h8_indicator
    monkeypatch.setattr(genus, "h8_indicator", lambda n, bound=None, solution=None: 1 - real(n, bound))
    with pytest.raises(EquivalenceViolation):
        cassels.classify(E11, 17)
    code, rep, err = run("classify", "--curve", "1,1", "--n", "17")
    assert code == cli.EXIT_ANOMALY and rep["error"]["type"] == "EquivalenceViolation"
    assert "n = 17" in rep["error"]["message"]
    res = suites.route_suite(E11, 2000)
    assert res.failed > 0


def test_flipped_pairing_bit_breaks_route_equivalence(monkeypatch):
    real = cassels._certificate_A

    def corrupt(n, d, sol):
        c = real(n, d, sol)
        return cassels.PairingCertificate(c.case_tag, c.d, c.generators, c.norm_solution, 1 - c.pairing_bit, c.normalized_generators)

    monkeypatch.setattr(cassels, "_certificate_A", corrupt)
    with pytest.raises(EquivalenceViolation):
        cassels.classify(E11, 17)


def test_corrupt_square_test_raises_torsion_anomaly(monkeypatch):
    monkeypatch.setattr(selmer, "is_square", lambda x: True)
    with pytest.raises(TorsionAnomaly):
        selmer.torsion_check(E11, 17)
    code, rep, _ = run("selmer", "--curve", "1,1", "--n", "17")
    assert code == cli.EXIT_ANOMALY and rep["error"]["type"] == "TorsionAnomaly"
    assert suites.torsion_suite(20).failed == 20


def test_inconsistent_h4_raises_rank_anomaly(monkeypatch):
    monkeypatch.setattr(genus, "h4", lambda n: 0)
    with pytest.raises(RankAnomaly):
        cassels.classify_route_A(E11, 17)
    code, rep, _ = run("classify", "--curve", "1,1", "--n", "17")
    assert code == cli.EXIT_ANOMALY and rep["error"]["type"] == "RankAnomaly"


def test_corrupt_matrix_A_raises_rank_anomaly(monkeypatch):
    # A + D_-1 forced to the zero matrix on a two-prime n leaves a 2-dim kernel
    from twistsha.f2 import F2Matrix

    monkeypatch.setattr(cassels, "matrix_A", lambda n: F2Matrix.zeros(n.k, n.k))
    monkeypatch.setattr(cassels, "diag_D", lambda u, n: F2Matrix.zeros(n.k, n.k))
    monkeypatch.setattr(cassels, "_require_h4", lambda n: None)
    with pytest.raises(RankAnomaly):
        cassels.pairing_case_A(E11, 7 * 23)


def test_corrupt_local_table_detected_by_oracle(monkeypatch):
    real = selmer._at_n
    monkeypatch.setattr(selmer, "_at_n", lambda lam, p, n: not real(lam, p, n))
    res = suites.local_oracle_suite(500, seed=1)
    assert res.failed > 0 and res.failures
    code, rep, _ = run("crosscheck", "--quick", "--suite", "local")
    assert code == cli.EXIT_ANOMALY and rep["ok"] is False


def test_literal_bad_prime_table_detected_by_bruteforce(monkeypatch):
    real = selmer.matrix_M1
    monkeypatch.setattr(selmer, "matrix_M1", lambda curve, literal=False: real(curve, literal=True))
    res = suites.selmer_bruteforce_suite(150, seed=2)
    assert res.failed > 0
    assert any("(1, 7, 5)" in str(f) for f in res.failures)


def test_corrupt_kernel_decoding_fails_reverification(monkeypatch):
    real = selmer.decode
    monkeypatch.setattr(selmer, "decode", lambda v, c, n: real(v, c, n) * selmer.SelmerTriple(3, 3, 1))
    with pytest.raises(TwistError, match="fails local solvability at"):
        selmer.sel2_prime(E11, 17)
    code, rep, _ = run("selmer", "--curve", "1,1", "--n", "17")
    assert code == cli.EXIT_ANOMALY


def test_forms_oracle_disagreement_exit(monkeypatch):
    monkeypatch.setattr(cli, "class_group_oracle", lambda n: ClassGroupInfo(n, 2, (1, 0, 0)))
    code, rep, _ = run("genus", "--n", "17")
    assert code == cli.EXIT_ANOMALY and rep["oracle"]["agrees"] is False


def test_corrupt_quartic_symbol_breaks_three_way(monkeypatch):
    real = genus.rational_quartic
    monkeypatch.setattr(genus, "rational_quartic", lambda a, d: -real(a, d) if d > 1 else real(a, d))
    res = suites.genus_suite(3000)
    assert res.failed > 0


def test_corrupt_symbol_breaks_reciprocity(monkeypatch):
    real = suites.quartic_symbol
    monkeypatch.setattr(suites, "quartic_symbol", lambda a, lam: real(a, lam) * 1j)
    assert suites.symbol_suite(20).failed > 0


def test_norm_search_exhausted():
    with pytest.raises(NotFound):
        cassels.pairing_case_A(E11, 17, bound=2)


def test_oracle_inconclusive_at_zero_depth():
    sp = selmer.HomogeneousSpace.of(E11, 17, (17, 1, 17))
    with pytest.raises(Inconclusive):
        local_point_oracle(sp, 17, depth=0)
