"""Exact matrices, the representation catalog and universal T-matrices.

RepMatrix holds QScalar entries (representations, R-matrices); NCMatrix
holds NCPoly entries normal-formed in an ambient presentation (T- and
L-matrices). Tensor-space bases are row-major: |11>, |12>, |21>, |22>.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass

import numpy as np
import pandas as pd

from .errors import SeriesTruncationError, ShapeError, UnknownCatalogKey
from .ncpoly import UNIT, NCPoly, apply_morphism, builtin_presentation, nc_mul, nc_power, normal_form
from .report import exact_report, numeric_report, timed_check
from .scalars import ONE, ZERO, Q, RHO, QScalar, q_factorial, q_power, s_power

logger = logging.getLogger(__name__)


class RepMatrix:
    """Dense matrix over QScalar."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        entries = tuple(tuple(QScalar.of(x) for x in row) for row in entries)
        if not entries or not entries[0]:
            raise ShapeError("empty matrix")
        if any(len(row) != len(entries[0]) for row in entries):
            raise ShapeError("ragged matrix rows")
        self.entries = entries
        self.rows = len(entries)
        self.cols = len(entries[0])

    @classmethod
    def from_sparse(cls, rows, cols, values):
        grid = [[ZERO] * cols for _ in range(rows)]
        for (i, j), v in values.items():
            grid[i][j] = v
        return cls(grid)

    @classmethod
    def identity(cls, n):
        return cls.diag([ONE] * n)

    @classmethod
    def zeros(cls, rows, cols=None):
        return cls.from_sparse(rows, rows if cols is None else cols, {})

    @classmethod
    def diag(cls, values):
        values = list(values)
        return cls.from_sparse(len(values), len(values), {(i, i): QScalar.of(v) for i, v in enumerate(values)})

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def nonzero(self):
        for i, row in enumerate(self.entries):
            for j, v in enumerate(row):
                if v:
                    yield (i, j), v

    def is_zero(self):
        return not any(True for _ in self.nonzero())

    def first_nonzero(self):
        return next(self.nonzero(), None)

    @property
    def is_rho_free(self):
        return all(v.is_rho_free for _, v in self.nonzero())

    def __eq__(self, other):
        if not isinstance(other, RepMatrix):
            return NotImplemented
        return self.entries == other.entries

    __hash__ = None

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        if not isinstance(other, RepMatrix):
            return NotImplemented
        self._check_same(other)
        return RepMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)])

    def __neg__(self):
        return RepMatrix([[-a for a in row] for row in self.entries])

    def __sub__(self, other):
        if not isinstance(other, RepMatrix):
            return NotImplemented
        self._check_same(other)
        return RepMatrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)])

    def __mul__(self, c):
        if isinstance(c, (RepMatrix, NCMatrix, NCPoly)):
            return NotImplemented
        c = QScalar.of(c)
        return RepMatrix([[c * a for a in row] for row in self.entries])

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, RepMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        other_rows = [[(j, b) for j, b in enumerate(row) if b] for row in other.entries]
        grid = []
        for row in self.entries:
            acc = [ZERO] * other.cols
            for k, a in enumerate(row):
                if not a:
                    continue
                for j, b in other_rows[k]:
                    acc[j] = acc[j] + a * b
            grid.append(acc)
        return RepMatrix(grid)

    def transpose(self):
        return RepMatrix(list(zip(*self.entries)))

    def map(self, fn):
        return RepMatrix([[fn(a) for a in row] for row in self.entries])

    def invert_q(self):
        return self.map(QScalar.invert_q)

    def inverse(self):
        """Exact Gauss-Jordan inverse."""
        if self.rows != self.cols:
            raise ShapeError(f"cannot invert non-square {self.shape}")
        n = self.rows
        work = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(self.entries)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if work[r][col]), None)
            if pivot is None:
                raise ShapeError("singular matrix")
            work[col], work[pivot] = work[pivot], work[col]
            inv = work[col][col].inverse()
            work[col] = [inv * v for v in work[col]]
            for r in range(n):
                factor = work[r][col]
                if r != col and factor:
                    work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
        return RepMatrix([row[n:] for row in work])

    def evaluate(self, q):
        return np.array([[v.evaluate(q) for v in row] for row in self.entries], dtype=complex)

    def render_grid(self):
        return [[v.render() for v in row] for row in self.entries]

    def to_json(self):
        return {"rows": self.rows, "cols": self.cols, "entries": self.render_grid()}

    def to_frame(self):
        return pd.DataFrame(self.render_grid())

    def __repr__(self):
        return f"RepMatrix({self.render_grid()!r})"


class NCMatrix:
    """Matrix of NCPoly entries, normal-formed in `ambient`."""

    __slots__ = ("rows", "cols", "entries", "ambient")

    def __init__(self, entries, ambient):
        self.ambient = ambient
        self.entries = tuple(tuple(normal_form(p, ambient) for p in row) for row in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0])
        if any(len(row) != self.cols for row in self.entries):
            raise ShapeError("ragged matrix rows")

    @classmethod
    def identity(cls, n, ambient):
        return cls([[UNIT if i == j else NCPoly() for j in range(n)] for i in range(n)], ambient)

    @classmethod
    def from_scalar(cls, m, ambient, factor=UNIT):
        """factor * m for a RepMatrix m."""
        return cls([[factor * v for v in row] for row in m.entries], ambient)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def nonzero(self):
        for i, row in enumerate(self.entries):
            for j, p in enumerate(row):
                if p:
                    yield (i, j), p

    def is_zero(self):
        return not any(True for _ in self.nonzero())

    def first_nonzero(self):
        return next(self.nonzero(), None)

    def __eq__(self, other):
        if not isinstance(other, NCMatrix):
            return NotImplemented
        return self.ambient is other.ambient and self.entries == other.entries

    __hash__ = None

    def __add__(self, other):
        if not isinstance(other, NCMatrix):
            return NotImplemented
        return NCMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
                        self.ambient)

    def __sub__(self, other):
        if not isinstance(other, NCMatrix):
            return NotImplemented
        return NCMatrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
                        self.ambient)

    def __mul__(self, c):
        if isinstance(c, (RepMatrix, NCMatrix, NCPoly)):
            return NotImplemented
        c = QScalar.of(c)
        return NCMatrix([[c * p for p in row] for row in self.entries], self.ambient)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, RepMatrix):
            other_rows = [[(j, b) for j, b in enumerate(row) if b] for row in other.entries]
            mul = lambda p, b: b * p
        elif isinstance(other, NCMatrix):
            other_rows = [[(j, b) for j, b in enumerate(row) if b] for row in other.entries]
            mul = lambda p, b: nc_mul(p, b, self.ambient)
        else:
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        grid = []
        for row in self.entries:
            acc = [NCPoly() for _ in range(other.cols)]
            for k, p in enumerate(row):
                if not p:
                    continue
                for j, b in other_rows[k]:
                    acc[j] = acc[j] + mul(p, b)
            grid.append(acc)
        return NCMatrix(grid, self.ambient)

    def __rmatmul__(self, other):
        if not isinstance(other, RepMatrix):
            return NotImplemented
        if other.cols != self.rows:
            raise ShapeError(f"cannot multiply {other.shape} by {self.shape}")
        grid = []
        for row in other.entries:
            acc = [NCPoly() for _ in range(self.cols)]
            for k, a in enumerate(row):
                if not a:
                    continue
                for j, p in enumerate(self.entries[k]):
                    if p:
                        acc[j] = acc[j] + a * p
            grid.append(acc)
        return NCMatrix(grid, self.ambient)

    def map(self, fn, ambient=None):
        return NCMatrix([[fn(p) for p in row] for row in self.entries], ambient or self.ambient)

    def render_grid(self):
        return [[p.render(self.ambient) for p in row] for row in self.entries]

    def to_json(self):
        return {"rows": self.rows, "cols": self.cols, "entries": self.render_grid()}

    def to_frame(self):
        return pd.DataFrame(self.render_grid())


def kron(m1, m2):
    """Kronecker product; at most one factor may carry NCPoly entries."""
    if isinstance(m1, NCMatrix) and isinstance(m2, NCMatrix):
        raise ShapeError("kron of two NCMatrix factors needs a tensor presentation")
    ambient = getattr(m1, "ambient", None) or getattr(m2, "ambient", None)
    zero = NCPoly() if ambient is not None else ZERO
    grid = [[zero] * (m1.cols * m2.cols) for _ in range(m1.rows * m2.rows)]
    for (i, j), a in m1.nonzero():
        for (k, l), b in m2.nonzero():
            grid[i * m2.rows + k][j * m2.cols + l] = a * b
    if ambient is None:
        return RepMatrix(grid)
    return NCMatrix(grid, ambient)


def embed(m, slots, total, dims=None):
    """Place a two-factor operator at the 1-based `slots` of a `total`-factor space."""
    i, j = (s - 1 for s in slots)
    if i == j or not (0 <= i < total and 0 <= j < total):
        raise ShapeError(f"bad slots {slots} for {total} factors")
    if dims is None:
        d = math.isqrt(m.rows)
        if d * d != m.rows:
            raise ShapeError(f"{m.rows} is not a square dimension")
        dims = [d] * total
    dims = list(dims)
    di, dj = dims[i], dims[j]
    if m.shape != (di * dj, di * dj):
        raise ShapeError(f"operator of shape {m.shape} does not act on factors of sizes {di}, {dj}")
    others = [k for k in range(total) if k not in (i, j)]
    n = math.prod(dims)
    values = {}
    for (r, c), v in m.nonzero():
        ri, rj = divmod(r, dj)
        ci, cj = divmod(c, dj)
        for rest in itertools.product(*(range(dims[k]) for k in others)):
            row, col = [0] * total, [0] * total
            for k, x in zip(others, rest):
                row[k] = col[k] = x
            row[i], row[j], col[i], col[j] = ri, rj, ci, cj
            values[int(np.ravel_multi_index(row, dims)), int(np.ravel_multi_index(col, dims))] = v
    return RepMatrix.from_sparse(n, n, values)


def flip_matrix(d1, d2=None):
    """Permutation P: V1 (x) V2 -> V2 (x) V1."""
    d2 = d1 if d2 is None else d2
    return RepMatrix.from_sparse(d1 * d2, d1 * d2,
                                 {(b * d1 + a, a * d2 + b): ONE for a in range(d1) for b in range(d2)})


# -- representations ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Rep:
    name: str
    E: RepMatrix
    F: RepMatrix
    K: RepMatrix
    Kinv: RepMatrix

    @property
    def dim(self):
        return self.K.rows

    @property
    def images(self):
        return {"E": self.E, "F": self.F, "K": self.K, "K^-1": self.Kinv}


def _fund():
    return Rep("fund",
               E=RepMatrix([[0, 1], [0, 0]]),
               F=RepMatrix([[0, 0], [1, 0]]),
               K=RepMatrix.diag([s_power(1), s_power(-1)]),
               Kinv=RepMatrix.diag([s_power(-1), s_power(1)]))


def _spin1():
    # sqrt([[2]]) q^(-1/2) = r and sqrt([[2]]) q^(1/2) = q r
    return Rep("spin1",
               E=RepMatrix([[0, RHO, 0], [0, 0, Q * RHO], [0, 0, 0]]),
               F=RepMatrix([[0, 0, 0], [Q * RHO, 0, 0], [0, RHO, 0]]),
               K=RepMatrix.diag([Q, ONE, q_power(-1)]),
               Kinv=RepMatrix.diag([q_power(-1), ONE, Q]))


_REPS = {"fund": _fund, "spin1": _spin1}
REP_NAMES = tuple(_REPS)


def builtin_rep(name):
    try:
        return _REPS[name]()
    except KeyError:
        raise UnknownCatalogKey("representation", name, REP_NAMES) from None


def weights(rep):
    """s-exponents of the diagonal K entries (twice the weights of X0)."""
    out = []
    for i in range(rep.dim):
        for j in range(rep.dim):
            if i != j and rep.K[i, j]:
                raise ShapeError(f"{rep.name}: K image is not diagonal")
        v = rep.K[i, i]
        if not v.is_rho_free or v.a.num != (1,) or v.a.den != (1,):
            raise ShapeError(f"{rep.name}: K entry {v} is not a monomial in s")
        out.append(v.a.shift)
    return out


def matrix_witness(label, m):
    """First nonzero entry of a residual matrix as "label at (i,j): value", 1-based."""
    hit = m.first_nonzero()
    if hit is None:
        return None
    (i, j), v = hit
    text = v.render(m.ambient) if isinstance(m, NCMatrix) else v.render()
    return f"{label} at ({i + 1},{j + 1}): {text}"


def rep_relations(rep):
    """Residual matrices of the K-form sl_q(2) relations; all zero for a representation."""
    E, F, K, Kinv = rep.E, rep.F, rep.K, rep.Kinv
    eye = RepMatrix.identity(rep.dim)
    cartan = (K @ K - Kinv @ Kinv) * (Q - q_power(-1)).inverse()
    return [
        ("K.E - q E.K", K @ E - (E @ K) * Q),
        ("K.F - q^-1 F.K", K @ F - (F @ K) * q_power(-1)),
        ("E.F - F.E - (K^2 - K^-2)/(q - q^-1)", E @ F - F @ E - cartan),
        ("K.K^-1 - 1", K @ Kinv - eye),
        ("K^-1.K - 1", Kinv @ K - eye),
    ]


@timed_check
def check_rep(rep):
    failures = [w for label, m in rep_relations(rep) if (w := matrix_witness(label, m))]
    return exact_report(f"rep-{rep.name}", failures)


def classical_residual(rep):
    """q = 1 image against [X0, X+-] = +-X+- and [X+, X-] = 2 X0."""
    E, F = rep.E.evaluate(1.0), rep.F.evaluate(1.0)
    X0 = np.diag(np.asarray(weights(rep), dtype=float) / 2.0)
    return max(
        np.abs(X0 @ E - E @ X0 - E).max(),
        np.abs(X0 @ F - F @ X0 + F).max(),
        np.abs(E @ F - F @ E - 2 * X0).max(),
    )


@timed_check
def check_rep_classical(reps=None):
    reps = reps or [builtin_rep(n) for n in REP_NAMES]
    residual = max(classical_residual(rep) for rep in reps)
    return numeric_report("rep-classical", residual, 1e-12)


def coproduct_rep(r1, r2, variant="q"):
    """Delta_q(E) = E (x) K + K^-1 (x) E; variant 'qinv' swaps K and K^-1 there."""
    if variant not in ("q", "qinv"):
        raise UnknownCatalogKey("coproduct variant", variant, ("q", "qinv"))
    right, left = (r1.K, r1.Kinv) if variant == "q" else (r1.Kinv, r1.K)
    right2 = r2.K if variant == "q" else r2.Kinv
    return Rep(f"{r1.name}(x){r2.name}[{variant}]",
               E=kron(r1.E, right2) + kron(left, r2.E),
               F=kron(r1.F, right2) + kron(left, r2.F),
               K=kron(r1.K, r2.K),
               Kinv=kron(r1.Kinv, r2.Kinv))


@timed_check
def check_coproduct_rep():
    failures = []
    fund, spin1 = builtin_rep("fund"), builtin_rep("spin1")
    for r1, r2 in [(fund, fund), (fund, spin1), (spin1, fund), (spin1, spin1)]:
        dq, dqi = coproduct_rep(r1, r2, "q"), coproduct_rep(r2, r1, "qinv")
        for label, m in rep_relations(dq) + rep_relations(coproduct_rep(r1, r2, "qinv")):
            if w := matrix_witness(f"{dq.name} {label}", m):
                failures.append(w)
        P = flip_matrix(r1.dim, r2.dim)
        for g in ("E", "F", "K"):
            swapped = P @ dq.images[g] @ P.transpose()
            if w := matrix_witness(f"flip of {dq.name} {g} vs {dqi.name}", swapped - dqi.images[g]):
                failures.append(w)
    return exact_report("coproduct-rep", failures)


# -- q-exponentials and universal T ------------------------------------------------

def _identity_like(m):
    if isinstance(m, NCMatrix):
        return NCMatrix.identity(m.rows, m.ambient)
    return RepMatrix.identity(m.rows)


def matrix_q_exp(m, base, max_order=8, truncate=False):
    """sum_n m^n / [n]_base! over n below the nilpotency index of m."""
    total = _identity_like(m)
    power = total
    for n in range(1, max_order + 1):
        power = power @ m
        if power.is_zero():
            return total
        total = total + power * q_factorial(n, base).inverse()
    if truncate:
        return total
    raise SeriesTruncationError(f"matrix is not nilpotent by max_order={max_order}")


def _param_gens(pres):
    return pres.g("u"), pres.g("u^-1"), pres.g("beta"), pres.g("gamma")


def universal_T(rep, max_order=8):
    """e_{q^-2}^{gamma F} . diag(u^{w_i}) . e_{q^2}^{beta E} over param_alg."""
    pres = builtin_presentation("param_alg")
    u, uinv, beta, gamma = _param_gens(pres)
    left = matrix_q_exp(NCMatrix.from_scalar(rep.F, pres, gamma), q_power(-2), max_order)
    right = matrix_q_exp(NCMatrix.from_scalar(rep.E, pres, beta), q_power(2), max_order)
    middle = [[NCPoly() for _ in range(rep.dim)] for _ in range(rep.dim)]
    for i, w in enumerate(weights(rep)):
        middle[i][i] = nc_power(u if w >= 0 else uinv, abs(w), pres)
    return left @ NCMatrix(middle, pres) @ right


def param_T(pres=None):
    """[[u, u beta], [gamma u, u^-1 + gamma u beta]]."""
    pres = pres or builtin_presentation("param_alg")
    u, uinv, beta, gamma = _param_gens(pres)
    ub = nc_mul(u, beta, pres)
    return NCMatrix([[u, ub], [nc_mul(gamma, u, pres), uinv + nc_mul(gamma, ub, pres)]], pres)


def quantum_matrix_relations(A, B, C, D, pres, det=True):
    """Residuals of AB = qBA, AC = qCA, BD = qDB, CD = qDC, BC = CB, AD - DA = (q - q^-1)BC."""
    mul = lambda x, y: nc_mul(x, y, pres)
    qq = Q - q_power(-1)
    out = [
        ("AB - qBA", mul(A, B) - Q * mul(B, A)),
        ("AC - qCA", mul(A, C) - Q * mul(C, A)),
        ("BD - qDB", mul(B, D) - Q * mul(D, B)),
        ("CD - qDC", mul(C, D) - Q * mul(D, C)),
        ("BC - CB", mul(B, C) - mul(C, B)),
        ("AD - DA - (q - q^-1)BC", mul(A, D) - mul(D, A) - qq * mul(B, C)),
    ]
    if det:
        out.append(("AD - qBC - 1", mul(A, D) - Q * mul(B, C) - UNIT))
    return out


def t1_matrix(A, B, C, D, pres):
    """The three dimensional corepresentation built from the entries of a quantum matrix."""
    mul = lambda x, y: nc_mul(x, y, pres)
    return NCMatrix([
        [mul(A, A), RHO * mul(A, B), mul(B, B)],
        [RHO * mul(A, C), mul(A, D) + q_power(-1) * mul(B, C), RHO * mul(B, D)],
        [mul(C, C), RHO * mul(C, D), mul(D, D)],
    ], pres)


@timed_check
def check_universal_T(rep, max_order=8):
    pres = builtin_presentation("param_alg")
    T = universal_T(rep, max_order)
    failures = []
    if rep.dim == 2:
        if w := matrix_witness("universal T - parametrized T", T - param_T(pres)):
            failures.append(w)
        (A, B), (C, D) = T.entries
        failures += [f"{label}: {p.render(pres)}"
                     for label, p in quantum_matrix_relations(A, B, C, D, pres) if p]
    elif rep.dim == 3:
        fun = builtin_presentation("funq_sl2")
        T1 = t1_matrix(*(fun.g(n) for n in "ABCD"), fun)
        sub = param_T(pres)
        images = {fun.gen(n): sub[divmod(k, 2)] for k, n in enumerate("ABCD")}
        substituted = T1.map(lambda p: apply_morphism(images, p, pres, fun), pres)
        if w := matrix_witness("universal T - substituted T1", T - substituted):
            failures.append(w)
    else:
        raise ShapeError(f"no reference T-matrix for dimension {rep.dim}")
    return exact_report(f"universal-t-{rep.name}", failures)
