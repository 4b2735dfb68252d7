import numpy as np
import pytest

from qdeform.errors import SeriesTruncationError, ShapeError, UnknownCatalogKey
from qdeform.matq import RepMatrix, builtin_rep, flip_matrix, kron
from qdeform.ncpoly import Presentation, builtin_presentation, nc_mul
from qdeform.qgroup import fundamental_T
from qdeform.rmat import (
    CANDIDATES, RLL_KINDS, RMatrixValue, braid_form, calibrate_universal_R, check_braid,
    check_braid_far, check_fundamental_R, check_intertwiner, check_rll, check_rtt,
    check_scale_invariance, check_universal_R_fund, check_universal_R_spin1, check_ybe,
    check_ybe_mixed, fundamental_R, intertwiner_failures, l_matrices, universal_R,
)
from qdeform.scalars import ONE, Q, RHO, q_power, s_power


@pytest.fixture
def fund():
    return builtin_rep("fund")


@pytest.fixture
def spin1():
    return builtin_rep("spin1")


def _perturbed():
    fund = builtin_rep("fund")
    return RMatrixValue(RepMatrix.identity(4) + kron(fund.E, fund.F), (2, 2))


def test_fundamental_R_entries():
    r = fundamental_R()
    assert r.dims == (2, 2)
    assert r.matrix[0, 0].render() == "s"
    assert r.matrix[1, 1].render() == "s^-1"
    assert r.matrix[1, 2].render() == "s - s^-3"
    assert r.matrix[2, 1] == 0


def test_fundamental_R_check():
    assert check_fundamental_R().passed


def test_ybe_fund():
    report = check_ybe(fundamental_R(), "ybe-2")
    assert report.passed, report.witness
    assert report.name == "ybe-2"


def test_ybe_controls():
    assert check_ybe(RMatrixValue(RepMatrix.identity(4), (2, 2))).passed
    report = check_ybe(_perturbed())
    assert not report.passed
    assert report.witness.startswith("R12 R13 R23 - R23 R13 R12 at (")


def test_ybe_needs_equal_factors(fund, spin1):
    with pytest.raises(ShapeError):
        check_ybe(RMatrixValue(kron(fund.K, spin1.K), (2, 3)))


def test_braid(fund):
    assert check_braid(fundamental_R()).passed
    assert check_braid_far(fundamental_R()).passed
    np.testing.assert_allclose(braid_form(fundamental_R()).evaluate(1.0),
                               flip_matrix(2).evaluate(1.0), atol=1e-12)


def test_intertwiner(fund):
    assert check_intertwiner(fundamental_R(), fund, fund).passed
    identity = RMatrixValue(RepMatrix.identity(4), (2, 2))
    assert not check_intertwiner(identity, fund, fund).passed
    # Delta_q^-1 is the flip of Delta_q, so P itself intertwines
    assert not intertwiner_failures(flip_matrix(2), fund, fund)


def test_scaled_R_still_intertwines(fund):
    assert check_intertwiner(fundamental_R().scaled(Q + RHO), fund, fund).passed


def test_calibration():
    cal = calibrate_universal_R()
    assert cal.convention in CANDIDATES
    assert cal.convention != CANDIDATES[0]
    assert cal.scalar == ONE
    assert "literal candidate" in cal.notes


def test_universal_R_reproduces_fundamental(fund):
    assert universal_R(fund, fund).matrix == fundamental_R().matrix
    report = check_universal_R_fund()
    assert report.passed, report.witness
    assert report.convention_notes.startswith("universal R:")


def test_universal_R_spin1(spin1):
    r = universal_R(spin1, spin1)
    assert r.dims == (3, 3)
    assert r.matrix.shape == (9, 9)
    assert r.matrix.is_rho_free
    report = check_universal_R_spin1()
    assert report.passed, report.witness


def test_universal_R_truncation(spin1):
    with pytest.raises(SeriesTruncationError):
        universal_R(spin1, spin1, max_order=2)


def test_universal_R_mixed_shapes(fund, spin1):
    r = universal_R(fund, spin1)
    assert r.dims == (2, 3)
    assert check_intertwiner(r, fund, spin1).passed


@pytest.mark.slow
def test_ybe_spin1(spin1):
    report = check_ybe(universal_R(spin1, spin1), "ybe-3")
    assert report.passed, report.witness


@pytest.mark.slow
def test_ybe_mixed():
    report = check_ybe_mixed()
    assert report.passed, report.witness


def test_rtt():
    report = check_rtt()
    assert report.passed, report.witness
    assert "R21" in report.convention_notes


def test_t1_t2_do_not_commute():
    pres = builtin_presentation("funq_gl2")
    T = fundamental_T(pres)
    eye = RepMatrix.identity(2)
    t12 = kron(T, eye) @ kron(eye, T)
    t21 = kron(eye, T) @ kron(T, eye)
    diff = t12 - t21
    assert diff[1, 1] == (Q - q_power(-1)) * pres.word("B", "C")


def test_l_matrices():
    ls = l_matrices()
    pres = builtin_presentation("uq_sl2")
    assert ls["p"][0, 0] == pres.g("K^-1")
    assert not ls["m"][0, 1]
    assert ls["p"][1, 1] == pres.g("K")


@pytest.mark.parametrize("kind", RLL_KINDS)
def test_rll(kind):
    report = check_rll(kind)
    assert report.passed, report.witness
    assert report.name == f"rll-{kind}"


def test_rll_unknown_kind():
    with pytest.raises(UnknownCatalogKey):
        check_rll("mp")


def test_scale_invariance():
    report = check_scale_invariance()
    assert report.passed, report.witness


def test_rll_pm_entry_is_the_ef_relation():
    uq = builtin_presentation("uq_sl2")
    ef = (uq.index("E"), uq.index("F"))
    free = Presentation("uq-without-EF", uq.generators,
                        [r for r in uq.defining_rules if r.lhs != ef], uq.inverse_pairs)
    ls = l_matrices(free)
    eye = RepMatrix.identity(2)
    l1, l2 = kron(ls["p"], eye), kron(eye, ls["m"])
    R = fundamental_R().matrix
    residual = (l1 @ l2) @ R - R @ (l2 @ l1)
    lam = Q - q_power(-1)
    K, Kinv = free.g("K"), free.g("K^-1")
    relation = (free.word("E", "F") - free.word("F", "E")
                - lam.inverse() * (nc_mul(K, K, free) - nc_mul(Kinv, Kinv, free)))
    assert residual[1, 2] == (s_power(-1) * lam * lam) * relation
    assert check_rll("pm").passed


def test_fundamental_R_is_invertible():
    m = fundamental_R().matrix
    assert m @ m.inverse() == RepMatrix.identity(4)
