"""R-matrices: the fundamental one, the universal series on representations,
and the Yang-Baxter, braid, intertwiner, RTT and RLL identities.

The universal series leaves its operator dressing, factorial base and
Cartan placement open; calibrate_universal_R picks the first candidate that
reproduces the fundamental R-matrix up to a scalar and intertwines the two
coproducts on spin1 (x) spin1.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import RMatrixConstructionError, SeriesTruncationError, ShapeError, UnknownCatalogKey
from .matq import (
    NCMatrix, RepMatrix, builtin_rep, coproduct_rep, embed, flip_matrix, kron, matrix_witness,
    weights,
)
from .ncpoly import NCPoly, builtin_presentation
from .qgroup import fundamental_T
from .report import exact_report, timed_check
from .scalars import ONE, Q, RHO, S, q_factorial, q_power, s_power

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RMatrixValue:
    matrix: RepMatrix
    dims: tuple
    note: str = ""

    def scaled(self, c):
        return RMatrixValue(self.matrix * c, self.dims, self.note)


def fundamental_R():
    lam = Q - q_power(-1)
    m = RepMatrix([
        [Q, 0, 0, 0],
        [0, 1, lam, 0],
        [0, 0, 1, 0],
        [0, 0, 0, Q],
    ]) * s_power(-1)
    return RMatrixValue(m, (2, 2), "s^-1 [[q,0,0,0],[0,1,q-q^-1,0],[0,0,1,0],[0,0,0,q]]")


def braid_form(r):
    d1, d2 = r.dims
    return flip_matrix(d1, d2) @ r.matrix


def intertwiner_failures(matrix, r1, r2):
    """R.Delta_q(g) - Delta_q^-1(g).R for g in E, F, K."""
    dq, dqi = coproduct_rep(r1, r2, "q"), coproduct_rep(r1, r2, "qinv")
    out = []
    for g in ("E", "F", "K"):
        if w := matrix_witness(g, matrix @ dq.images[g] - dqi.images[g] @ matrix):
            out.append(w)
    return out


# -- universal R ---------------------------------------------------------------------

_DRESSINGS = [("K E", "K^-1 F"), ("E K", "F K^-1"), ("K^-1 E", "K F"), ("E", "F")]


def _dressed(rep, index):
    E, F, K, Kinv = rep.E, rep.F, rep.K, rep.Kinv
    return [(K @ E, Kinv @ F), (E @ K, F @ Kinv), (Kinv @ E, K @ F), (E, F)][index]


class Convention(NamedTuple):
    dressing: int
    x: int
    eps: int
    base: int
    side: str

    def describe(self):
        raising, lowering = _DRESSINGS[self.dressing]
        return (f"({raising})^n (x) ({lowering})^n times (1 - q^{self.x})^n q^({self.eps} n(n-1)/2)"
                f" / [n]_(q^{self.base})!, Cartan factor {self.side}")


CANDIDATES = tuple(Convention(*c) for c in itertools.product(
    range(len(_DRESSINGS)), (2, -2), (1, 0, -1), (1, 2, -2, -1), ("left", "right")))


class Calibration(NamedTuple):
    convention: Convention
    scalar: object

    @property
    def notes(self):
        text = f"universal R: {self.convention.describe()}"
        if self.convention != CANDIDATES[0]:
            text += f"; literal candidate {CANDIDATES[0].describe()} rejected"
        return text + f"; (fund, fund) = {self.scalar} * fundamental R"


def _series_R(conv, r1, r2, max_order):
    raising, _ = _dressed(r1, conv.dressing)
    _, lowering = _dressed(r2, conv.dressing)
    cartan = RepMatrix.diag([s_power(a * b) for a in weights(r1) for b in weights(r2)])
    base = q_power(conv.base)
    one_minus_x = ONE - q_power(conv.x)
    series = RepMatrix.identity(r1.dim * r2.dim)
    xp, yp = RepMatrix.identity(r1.dim), RepMatrix.identity(r2.dim)
    for n in range(1, max_order + 1):
        xp, yp = xp @ raising, yp @ lowering
        if xp.is_zero() or yp.is_zero():
            break
        coeff = one_minus_x ** n * q_power(conv.eps * n * (n - 1) // 2) * q_factorial(n, base).inverse()
        series = series + kron(xp, yp) * coeff
    else:
        raise SeriesTruncationError(f"universal R series does not truncate by max_order={max_order}")
    return cartan @ series if conv.side == "left" else series @ cartan


def _proportion(candidate, reference):
    hit = reference.first_nonzero()
    (i, j), ref = hit
    if not candidate[i, j]:
        return None
    c = candidate[i, j] / ref
    return c if candidate == reference * c else None


@lru_cache(maxsize=None)
def calibrate_universal_R():
    fund, spin1 = builtin_rep("fund"), builtin_rep("spin1")
    reference = fundamental_R().matrix
    for conv in CANDIDATES:
        scalar = _proportion(_series_R(conv, fund, fund, 8), reference)
        if scalar is None:
            logger.debug("calibration: rejected %s, not proportional to fundamental R", conv.describe())
            continue
        failures = intertwiner_failures(_series_R(conv, spin1, spin1, 8), spin1, spin1)
        if failures:
            logger.debug("calibration: rejected %s on spin1, %s", conv.describe(), failures[0])
            continue
        cal = Calibration(conv, scalar)
        if conv != CANDIDATES[0]:
            logger.warning("universal R calibration: %s", cal.notes)
        return cal
    raise RMatrixConstructionError(f"none of {len(CANDIDATES)} universal R conventions matches")


def universal_R(r1, r2, max_order=8):
    cal = calibrate_universal_R()
    matrix = _series_R(cal.convention, r1, r2, max_order)
    if failures := intertwiner_failures(matrix, r1, r2):
        raise RMatrixConstructionError(f"universal R on {r1.name} (x) {r2.name} fails: {failures[0]}")
    return RMatrixValue(matrix, (r1.dim, r2.dim), cal.notes)


# -- checks ----------------------------------------------------------------------------

def ybe_residual(r12, r13, r23, dims):
    R12 = embed(r12.matrix, (1, 2), 3, dims)
    R13 = embed(r13.matrix, (1, 3), 3, dims)
    R23 = embed(r23.matrix, (2, 3), 3, dims)
    return R12 @ R13 @ R23 - R23 @ R13 @ R12


@timed_check
def check_ybe(r, name="ybe"):
    d1, d2 = r.dims
    if d1 != d2:
        raise ShapeError(f"YBE needs equal factors, got {d1}x{d2}")
    w = matrix_witness("R12 R13 R23 - R23 R13 R12", ybe_residual(r, r, r, (d1,) * 3))
    return exact_report(name, [w] if w else [])


@timed_check
def check_ybe_mixed():
    """YBE on every ordered triple of fund and spin1 that mixes both."""
    reps = {name: builtin_rep(name) for name in ("fund", "spin1")}
    failures = []
    for names in itertools.product(reps, repeat=3):
        if len(set(names)) == 1:
            continue
        v1, v2, v3 = (reps[n] for n in names)
        residual = ybe_residual(universal_R(v1, v2), universal_R(v1, v3), universal_R(v2, v3),
                                (v1.dim, v2.dim, v3.dim))
        if w := matrix_witness("(" + ",".join(names) + ")", residual):
            failures.append(w)
    return exact_report("ybe-mixed", failures)


@timed_check
def check_braid(r, name="braid"):
    """S1 S2 S1 = S2 S1 S2 with S1 = R^ (x) 1, S2 = 1 (x) R^."""
    d = r.dims[0]
    rb = braid_form(r)
    eye = RepMatrix.identity(d)
    s1, s2 = kron(rb, eye), kron(eye, rb)
    w = matrix_witness("S1 S2 S1 - S2 S1 S2", s1 @ s2 @ s1 - s2 @ s1 @ s2)
    return exact_report(name, [w] if w else [])


@timed_check
def check_braid_far(r, name="braid-far-commute"):
    """Braid relations and far commutation of the generators on four strands."""
    rb = braid_form(r)
    sigma = [embed(rb, (i, i + 1), 4) for i in (1, 2, 3)]
    s1, s2, s3 = sigma
    checks = [
        ("s1 s3 - s3 s1", s1 @ s3 - s3 @ s1),
        ("s1 s2 s1 - s2 s1 s2", s1 @ s2 @ s1 - s2 @ s1 @ s2),
        ("s2 s3 s2 - s3 s2 s3", s2 @ s3 @ s2 - s3 @ s2 @ s3),
    ]
    failures = [w for label, m in checks if (w := matrix_witness(label, m))]
    return exact_report(name, failures)


@timed_check
def check_intertwiner(r, r1, r2, name="intertwiner"):
    return exact_report(name, intertwiner_failures(r.matrix, r1, r2))


@timed_check
def check_fundamental_R():
    """Exact inverse, R R^-1 = 1, and R = 1 at q = 1."""
    r = fundamental_R().matrix
    failures = []
    if w := matrix_witness("R R^-1 - 1", r @ r.inverse() - RepMatrix.identity(4)):
        failures.append(w)
    deviation = np.abs(r.evaluate(1.0) - np.eye(4)).max()
    if deviation >= 1e-12:
        failures.append(f"R at q=1 deviates from identity by {deviation:.3e}")
    return exact_report("r-fund", failures)


@timed_check
def check_universal_R_fund(max_order=8):
    r = universal_R(builtin_rep("fund"), builtin_rep("fund"), max_order)
    scalar = _proportion(r.matrix, fundamental_R().matrix)
    failures = [] if scalar is not None else ["universal R (fund, fund) is not proportional to fundamental R"]
    return exact_report("r-universal-2", failures, notes=r.note)


@timed_check
def check_universal_R_spin1(max_order=8):
    spin1 = builtin_rep("spin1")
    r = universal_R(spin1, spin1, max_order)
    failures = []
    if not r.matrix.is_rho_free:
        (i, j), v = next((ij, v) for ij, v in r.matrix.nonzero() if not v.is_rho_free)
        failures.append(f"entry ({i + 1},{j + 1}) carries r: {v}")
    failures += intertwiner_failures(r.matrix, spin1, spin1)
    return exact_report("r-universal-3", failures, notes=r.note)


def _two_form(name, residual_for, r):
    """Try the literal ordering with R, then with R21 = P R P."""
    literal = matrix_witness("literal", residual_for(r.matrix))
    if literal is None:
        return [], f"{name}: literal form with R holds"
    P = flip_matrix(*r.dims)
    flipped = matrix_witness("with R21", residual_for(P @ r.matrix @ P))
    if flipped is None:
        notes = f"{name}: holds with R21 = P R P; literal form leaves {literal}"
        logger.warning(notes)
        return [], notes
    return [literal, flipped], f"{name}: neither R nor R21 ordering holds"


@timed_check
def check_rtt(r=None):
    """R T1 T2 = T2 T1 R over funq_gl2, and T1 T2 != T2 T1."""
    r = r or fundamental_R()
    pres = builtin_presentation("funq_gl2")
    T = fundamental_T(pres)
    eye = RepMatrix.identity(2)
    t12 = kron(T, eye) @ kron(eye, T)
    t21 = kron(eye, T) @ kron(T, eye)
    failures, notes = _two_form("rtt", lambda R: R @ t12 - t21 @ R, r)
    commutator = matrix_witness("T1 T2 - T2 T1", t12 - t21)
    if commutator is None:
        failures.append("T1 T2 equals T2 T1")
    else:
        notes += f"; {commutator}"
    return exact_report("rtt", failures, notes=notes)


def l_matrices(pres=None):
    """L(+) and L(-) over uq_sl2, or any presentation with E, F, K, K^-1, with K = q^X0."""
    pres = pres or builtin_presentation("uq_sl2")
    E, F, K, Kinv = (pres.g(g) for g in ("E", "F", "K", "K^-1"))
    lam = Q - q_power(-1)
    zero = NCPoly()
    plus = NCMatrix([[Kinv, -(S * lam) * F], [zero, K]], pres)
    minus = NCMatrix([[K, zero], [(s_power(-1) * lam) * E, Kinv]], pres)
    return {"p": plus, "m": minus}


RLL_KINDS = ("pp", "mm", "pm")


@timed_check
def check_rll(kind="pp", r=None):
    """L1 L2 R = R L2 L1 with L1 = L(a) (x) 1 and L2 = 1 (x) L(b) for kind 'ab'."""
    if kind not in RLL_KINDS:
        raise UnknownCatalogKey("RLL relation", kind, RLL_KINDS)
    r = r or fundamental_R()
    ls = l_matrices()
    eye = RepMatrix.identity(2)
    l1, l2 = kron(ls[kind[0]], eye), kron(eye, ls[kind[1]])
    l12, l21 = l1 @ l2, l2 @ l1
    failures, notes = _two_form(f"rll-{kind}", lambda R: l12 @ R - R @ l21, r)
    return exact_report(f"rll-{kind}", failures, notes=notes)


SCALE = Q + 2 + RHO


@timed_check
def check_scale_invariance(c=None):
    """ybe, braid, intertwiner and rtt give the same verdict for c R as for R."""
    c = SCALE if c is None else c
    fund = builtin_rep("fund")
    r = fundamental_R()
    checks = {
        "ybe": lambda m: check_ybe(m),
        "braid": lambda m: check_braid(m),
        "intertwiner": lambda m: check_intertwiner(m, fund, fund),
        "rtt": lambda m: check_rtt(m),
    }
    failures = []
    for label, run in checks.items():
        plain, scaled = run(r), run(r.scaled(c))
        if not plain.passed or plain.status != scaled.status:
            failures.append(f"{label}: {plain.status} for R, {scaled.status} for ({c}) R")
    return exact_report("r-scale-invariance", failures)
