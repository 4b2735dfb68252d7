"""Truncated Fock-space realizations of the boson and q-boson algebras.

Ladder operators on span{|0>, ..., |d-1>} cannot satisfy the canonical
relations on the top state, so every residual is taken over the interior
columns: basis states whose mode indices are all at most d-2.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse as sp

from .errors import ScalarDomainError, ShapeError, UnknownCatalogKey
from .report import exact_report, numeric_report, timed_check
from .scalars import Q, q_int_sym, q_int_sym_numeric, q_power

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FockOps:
    d: int
    a: np.ndarray
    adag: np.ndarray
    n: np.ndarray
    q: float = 1.0


def positive_q(q):
    """Real positive deformation parameter, or ScalarDomainError."""
    z = complex(q)
    if z.imag != 0 or not z.real > 0:
        raise ScalarDomainError(f"q must be a positive real, got {q}")
    return z.real


def _check_dim(d):
    if d < 2:
        raise ShapeError(f"Fock dimension must be at least 2, got {d}")


def _fock(d, ladder, q):
    a = np.diag(np.sqrt(ladder), 1).astype(complex)
    return FockOps(d, a, a.conj().T, np.diag(np.arange(d)).astype(complex), q)


def boson_fock(d):
    _check_dim(d)
    return _fock(d, np.arange(1, d, dtype=float), 1.0)


def q_fock(d, q):
    """A|k> = sqrt([[k]]) |k-1>; q = 1 gives boson_fock."""
    _check_dim(d)
    q = positive_q(q)
    return _fock(d, q_int_sym_numeric(np.arange(1, d), q), q)


def interior(d, modes=1):
    """Flat indices of basis states with every mode index at most d-2."""
    return np.array([np.ravel_multi_index(idx, (d,) * modes)
                     for idx in itertools.product(range(d - 1), repeat=modes)])


def _residual(m, cols):
    block = m[:, cols]
    if sp.issparse(block):
        data = block.tocoo().data
        return float(np.abs(data).max()) if data.size else 0.0
    return float(np.abs(block).max())


def hamiltonian_spectrum(f):
    """Eigenvalues of (a a^+ + a^+ a)/2 on the interior block, ascending."""
    h = (f.a @ f.adag + f.adag @ f.a) / 2
    cols = interior(f.d)
    return list(scipy.linalg.eigvalsh(h[np.ix_(cols, cols)]))


def jordan_schwinger(d, q=1.0):
    """J0 = (N1 - N2)/2, J+ = A1^+ A2, J- = A2^+ A1 on two commuting oscillators."""
    f = boson_fock(d) if q == 1 else q_fock(d, q)
    eye = np.eye(d)
    a1, a2 = np.kron(f.a, eye), np.kron(eye, f.a)
    n1, n2 = np.kron(f.n, eye), np.kron(eye, f.n)
    j0 = (n1 - n2) / 2
    jp = a1.conj().T @ a2
    jm = a2.conj().T @ a1
    return j0, jp, jm, interior(d, modes=2)


def _sym_of_diag(diag2, q):
    """[[m]]_q for the integer diagonal m = 2 J0."""
    return q_int_sym_numeric(np.rint(np.real(diag2)).astype(int), q)


@timed_check
def check_boson_ccr(d):
    f = boson_fock(d)
    cols = interior(d)
    residual = max(
        _residual(f.a @ f.adag - f.adag @ f.a - np.eye(d), cols),
        _residual(f.n @ f.adag - f.adag @ f.n - f.adag, cols),
    )
    return numeric_report("boson-ccr", residual, 1e-12)


@timed_check
def check_qboson_relations(d, q):
    """A A^+ - q A^+ A = q^-N and [N, A^+] = A^+."""
    f = q_fock(d, q)
    cols = interior(d)
    q_minus_n = np.diag(f.q ** -np.arange(d, dtype=float))
    residual = max(
        _residual(f.a @ f.adag - f.q * f.adag @ f.a - q_minus_n, cols),
        _residual(f.n @ f.adag - f.adag @ f.n - f.adag, cols),
    )
    return numeric_report("qboson-relations", residual, 1e-9)


@timed_check
def check_hamiltonian_spectrum(d, q):
    f = q_fock(d, q)
    k = np.arange(d - 1)
    expected = (q_int_sym_numeric(k, f.q) + q_int_sym_numeric(k + 1, f.q)) / 2
    residual = np.abs(np.asarray(hamiltonian_spectrum(f)) - np.sort(expected)).max()
    return numeric_report("oscillator-spectrum", residual, 1e-9)


@timed_check
def check_js(d, q):
    """[J0, J+-] = +-J+-, [J+, J-] = [[2 J0]], with J0 hermitian and J+ = J-^+."""
    q = positive_q(q)
    j0, jp, jm, cols = jordan_schwinger(d, q)
    sym = np.diag(_sym_of_diag(2 * np.diag(j0), q))
    residual = max(
        _residual(j0 @ jp - jp @ j0 - jp, cols),
        _residual(j0 @ jm - jm @ j0 + jm, cols),
        _residual(jp @ jm - jm @ jp - sym, cols),
    )
    hermitian = max(np.abs(j0 - j0.conj().T).max(), np.abs(jp - jm.conj().T).max())
    name = "js-su2" if q == 1 else "js-suq2"
    if hermitian >= 1e-12:
        return numeric_report(name, max(residual, hermitian), 1e-9,
                              witness=f"hermiticity deviates by {hermitian:.3e}")
    return numeric_report(name, residual, 1e-9)


def coproduct_js(d, q, variant="q"):
    """Delta(J0) = J0 (x) 1 + 1 (x) J0; Delta(J+-) = J+- (x) q^J0 + q^-J0 (x) J+-, or swapped."""
    if variant not in ("q", "qinv"):
        raise UnknownCatalogKey("addition rule", variant, ("q", "qinv"))
    q = positive_q(q)
    j0, jp, jm, cols = jordan_schwinger(d, q)
    n = d * d
    eye = sp.identity(n, format="csr")
    weights = np.real(np.diag(j0))
    up = sp.diags(q ** weights, format="csr")
    down = sp.diags(q ** -weights, format="csr")
    right, left = (up, down) if variant == "q" else (down, up)
    J0, Jp, Jm = (sp.csr_matrix(m) for m in (j0, jp, jm))
    d0 = sp.kron(J0, eye) + sp.kron(eye, J0)
    dp = sp.kron(Jp, right) + sp.kron(left, Jp)
    dm = sp.kron(Jm, right) + sp.kron(left, Jm)
    outer = np.array([a * n + b for a in cols for b in cols])
    return d0.tocsr(), dp.tocsr(), dm.tocsr(), outer


@timed_check
def check_addition_rules(d, q, variant="q"):
    q = positive_q(q)
    d0, dp, dm, cols = coproduct_js(d, q, variant)
    sym = sp.diags(_sym_of_diag(2 * d0.diagonal(), q), format="csr")
    residual = max(
        _residual(d0 @ dp - dp @ d0 - dp, cols),
        _residual(d0 @ dm - dm @ d0 + dm, cols),
        _residual(dp @ dm - dm @ dp - sym, cols),
    )
    return numeric_report(f"addition-{variant}", residual, 1e-9)


def clock_shift_residual(N, m):
    """|T G - e^(i theta) G T| with theta = 2 pi m / N."""
    theta = 2 * np.pi * m / N
    shift = np.roll(np.eye(N), 1, axis=1)
    clock = np.diag(np.exp(1j * theta * np.arange(N)))
    return float(np.abs(shift @ clock - np.exp(1j * theta) * clock @ shift).max())


@timed_check
def clock_shift_check(N, m):
    if N < 2:
        raise ShapeError(f"clock dimension must be at least 2, got {N}")
    residual = clock_shift_residual(N, m)
    return numeric_report("clock-shift", residual, 1e-12, witness=f"N={N}, m={m}: residual {residual:.3e}")


@timed_check
def check_clock_shift(pairs):
    """clock_shift_check over every (N, m) pair; the worst one is reported."""
    return max((clock_shift_check(N, m) for N, m in pairs), key=lambda r: r.residual)


@timed_check
def check_qnumber_identity(max_k=8):
    """[[k+1]] - q [[k]] = q^-k exactly."""
    failures = []
    for k in range(max_k + 1):
        diff = q_int_sym(k + 1) - Q * q_int_sym(k) - q_power(-k)
        if diff:
            failures.append(f"k={k}: {diff}")
    return exact_report("qnumber-identity", failures)
