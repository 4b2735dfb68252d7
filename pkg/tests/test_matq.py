import numpy as np
import pytest

from qdeform.errors import SeriesTruncationError, ShapeError, UnknownCatalogKey
from qdeform.matq import (
    REP_NAMES, NCMatrix, RepMatrix, builtin_rep, check_coproduct_rep, check_rep,
    check_rep_classical, check_universal_T, coproduct_rep, embed, flip_matrix, kron,
    matrix_q_exp, matrix_witness, param_T, universal_T, weights,
)
from qdeform.ncpoly import builtin_presentation, nc_power
from qdeform.scalars import ONE, Q, RHO, ZERO, q_power


@pytest.fixture
def fund():
    return builtin_rep("fund")


@pytest.fixture
def spin1():
    return builtin_rep("spin1")


def test_rep_catalog(fund, spin1):
    assert REP_NAMES == ("fund", "spin1")
    assert fund.dim == 2
    assert spin1.dim == 3
    assert weights(fund) == [1, -1]
    assert weights(spin1) == [2, 0, -2]
    assert spin1.E[0, 1] == RHO
    assert spin1.E[1, 2] == Q * RHO
    with pytest.raises(UnknownCatalogKey):
        builtin_rep("spin2")


@pytest.mark.parametrize("name", REP_NAMES)
def test_representations(name):
    report = check_rep(builtin_rep(name))
    assert report.passed, report.witness
    assert report.name == f"rep-{name}"


def test_classical_limit():
    report = check_rep_classical()
    assert report.passed
    assert report.residual < 1e-12


def test_broken_rep_is_reported(fund):
    broken = fund.__class__("broken", fund.E * 2, fund.F, fund.K, fund.Kinv)
    report = check_rep(broken)
    assert not report.passed
    assert report.witness.startswith("E.F - F.E")


def test_coproducts_on_tensor_products():
    report = check_coproduct_rep()
    assert report.passed, report.witness


def test_coproducts_differ_but_agree_at_q_one(fund, spin1):
    dq, dqi = coproduct_rep(fund, spin1, "q"), coproduct_rep(fund, spin1, "qinv")
    assert dq.E != dqi.E
    np.testing.assert_allclose(dq.E.evaluate(1.0), dqi.E.evaluate(1.0), atol=1e-12)
    with pytest.raises(UnknownCatalogKey):
        coproduct_rep(fund, fund, "both")


def test_matrix_basics(fund):
    eye = RepMatrix.identity(2)
    assert fund.K @ fund.Kinv == eye
    assert (fund.E @ fund.E).is_zero()
    assert fund.E.transpose() == fund.F
    assert fund.E.first_nonzero() == ((0, 1), ONE)
    assert RepMatrix.zeros(2, 3).shape == (2, 3)
    with pytest.raises(ShapeError):
        RepMatrix([[1, 2], [3]])
    with pytest.raises(ShapeError):
        fund.E @ RepMatrix.identity(3)
    with pytest.raises(ShapeError):
        fund.E + RepMatrix.identity(3)


def test_exact_inverse():
    m = RepMatrix([[Q, 1], [RHO, 2]])
    assert m @ m.inverse() == RepMatrix.identity(2)
    with pytest.raises(ShapeError, match="singular"):
        RepMatrix([[1, 2], [2, 4]]).inverse()


def test_invert_q_and_evaluate(fund):
    assert fund.K.invert_q() == fund.Kinv
    np.testing.assert_allclose(fund.K.evaluate(4.0), np.diag([2.0, 0.5]))


def test_matrix_witness(fund):
    assert matrix_witness("E", RepMatrix.zeros(2)) is None
    assert matrix_witness("E", fund.E * Q) == "E at (1,2): s^2"


def test_json_and_frame(spin1):
    data = spin1.K.to_json()
    assert data["rows"] == 3 and data["cols"] == 3
    assert data["entries"][0] == ["s^2", "0", "0"]
    assert data["entries"][2][2] == "s^-2"
    assert spin1.E.to_frame().shape == (3, 3)


def test_kron(fund):
    m = kron(fund.E, fund.F)
    assert m.shape == (4, 4)
    assert m[1, 2] == ONE
    assert m.first_nonzero() == ((1, 2), ONE)
    assert len(list(m.nonzero())) == 1


def test_embed_matches_kron(fund):
    eye = RepMatrix.identity(2)
    m = kron(fund.E, fund.F)
    assert embed(m, (1, 2), 3) == kron(m, eye)
    assert embed(m, (2, 3), 3) == kron(eye, m)
    assert embed(m, (2, 1), 2) == kron(fund.F, fund.E)
    assert embed(m, (1, 3), 3) == kron(kron(fund.E, eye), fund.F)
    with pytest.raises(ShapeError):
        embed(m, (1, 1), 3)


def test_embed_mixed_dimensions(fund, spin1):
    m = kron(fund.K, spin1.K)
    assert embed(m, (1, 3), 3, dims=(2, 2, 3)) == kron(kron(fund.K, RepMatrix.identity(2)), spin1.K)
    with pytest.raises(ShapeError):
        embed(m, (1, 2), 3, dims=(2, 2, 2))


def test_flip_matrix(fund, spin1):
    P = flip_matrix(2)
    assert P.render_grid() == [
        ["1", "0", "0", "0"],
        ["0", "0", "1", "0"],
        ["0", "1", "0", "0"],
        ["0", "0", "0", "1"],
    ]
    assert P @ P == RepMatrix.identity(4)
    P23 = flip_matrix(2, 3)
    assert P23 @ kron(fund.E, spin1.K) @ P23.transpose() == kron(spin1.K, fund.E)


def test_matrix_q_exp(fund):
    assert matrix_q_exp(fund.E, Q) == RepMatrix.identity(2) + fund.E
    with pytest.raises(SeriesTruncationError):
        matrix_q_exp(fund.K, Q, max_order=3)
    truncated = matrix_q_exp(fund.K, Q, max_order=1, truncate=True)
    assert truncated == RepMatrix.identity(2) + fund.K


def test_nc_matrix_identity():
    pres = builtin_presentation("param_alg")
    eye = NCMatrix.identity(2, pres)
    T = param_T(pres)
    assert eye @ T == T
    assert RepMatrix.identity(2) @ T == T
    assert T @ RepMatrix.identity(2) == T


def test_universal_T_fund_equals_parametrized_T(fund):
    assert universal_T(fund) == param_T()


def test_universal_T_spin1_corner(spin1):
    pres = builtin_presentation("param_alg")
    T = universal_T(spin1)
    assert T[0, 0] == nc_power(pres.g("u"), 2, pres)
    assert T[0, 1] == RHO * pres.word("u", "u", "beta")


@pytest.mark.parametrize("name", REP_NAMES)
def test_universal_T_checks(name):
    report = check_universal_T(builtin_rep(name))
    assert report.passed, report.witness
    assert report.name == f"universal-t-{name}"


def test_universal_T_needs_enough_order(spin1):
    with pytest.raises(SeriesTruncationError):
        universal_T(spin1, max_order=2)


def test_scalar_matrix_products():
    assert (RepMatrix.identity(2) * q_power(1)) == RepMatrix.diag([Q, Q])
    assert RepMatrix.diag([ZERO, ONE]).is_rho_free
    assert not RepMatrix.diag([RHO, ONE]).is_rho_free
