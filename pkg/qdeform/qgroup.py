"""Quantum group identities checked by exact rewriting.

Fun_q(SL(2)) acting on the quantum plane, its coproduct and
corepresentations, and the two coproducts of U_q(sl(2)) in K-form.
"""

from __future__ import annotations

import logging

from .matq import NCMatrix, matrix_witness, quantum_matrix_relations, t1_matrix
from .ncpoly import (
    UNIT, NCPoly, apply_morphism, builtin_presentation, commutator, flip, nc_mul,
    normal_form, specialize, tensor, tensor_presentation,
)
from .report import exact_report, timed_check
from .scalars import ONE, Q, q_power

logger = logging.getLogger(__name__)

_ENTRIES = "ABCD"


def fundamental_T(pres=None):
    pres = pres or builtin_presentation("funq_sl2")
    return NCMatrix([[pres.g("A"), pres.g("B")], [pres.g("C"), pres.g("D")]], pres)


def t1_spin1():
    """Three dimensional corepresentation over funq_sl2, sqrt(1 + q^-2) held as r."""
    pres = builtin_presentation("funq_sl2")
    return t1_matrix(*(pres.g(n) for n in _ENTRIES), pres)


def t_inverse(pres=None):
    pres = pres or builtin_presentation("funq_sl2")
    A, B, C, D = (pres.g(n) for n in _ENTRIES)
    return NCMatrix([[D, -q_power(-1) * B], [-Q * C, A]], pres)


def detq(t):
    (A, B), (C, D) = t.entries
    pres = t.ambient
    return normal_form(nc_mul(A, D, pres) - Q * nc_mul(B, C, pres), pres)


@timed_check
def check_detq_central():
    failures = []
    gl2 = builtin_presentation("funq_gl2")
    d = detq(fundamental_T(gl2))
    for name in _ENTRIES:
        if r := commutator(d, gl2.g(name), gl2):
            failures.append(f"[detq, {name}] = {r.render(gl2)}")
    sl2 = builtin_presentation("funq_sl2")
    if (d1 := detq(fundamental_T(sl2))) != UNIT:
        failures.append(f"detq in funq_sl2 = {d1.render(sl2)}")
    return exact_report("detq-central", failures)


@timed_check
def check_t_inverse():
    pres = builtin_presentation("funq_sl2")
    T, Tinv = fundamental_T(pres), t_inverse(pres)
    eye = NCMatrix.identity(2, pres)
    failures = [w for label, m in [("T.T^-1 - 1", T @ Tinv - eye), ("T^-1.T - 1", Tinv @ T - eye)]
                if (w := matrix_witness(label, m))]
    return exact_report("t-inverse", failures)


# -- coproduct on Fun_q ------------------------------------------------------------

def _fun_images(pres):
    """Delta(T_ij) = sum_l T_il (x) T_lj."""
    tp = tensor_presentation(pres, pres)
    T = fundamental_T(pres)
    images = {}
    for k, name in enumerate(_ENTRIES):
        i, j = divmod(k, 2)
        images[pres.gen(name)] = normal_form(
            tensor(T[i, 0], T[0, j], pres) + tensor(T[i, 1], T[1, j], pres), tp)
    return images


def delta_fun(p, pres=None):
    pres = pres or builtin_presentation("funq_sl2")
    return apply_morphism(_fun_images(pres), p, tensor_presentation(pres, pres), pres)


@timed_check
def check_delta_fun():
    failures = []
    for name, det in [("funq_gl2", False), ("funq_sl2", True)]:
        pres = builtin_presentation(name)
        tp = tensor_presentation(pres, pres)
        images = _fun_images(pres)
        A, B, C, D = (images[pres.gen(n)] for n in _ENTRIES)
        failures += [f"{name}: {label} = {r.render(tp)}"
                     for label, r in quantum_matrix_relations(A, B, C, D, tp, det=det) if r]
    return exact_report("delta-fun", failures)


@timed_check
def check_corepresentation(t, name="corep"):
    """sum_l t_il (x) t_lj = Delta(t_ij) for every entry."""
    pres = t.ambient
    tp = tensor_presentation(pres, pres)
    failures = []
    for i in range(t.rows):
        for j in range(t.cols):
            lhs = NCPoly()
            for l in range(t.cols):
                lhs = lhs + tensor(t[i, l], t[l, j], pres)
            diff = normal_form(lhs, tp) - delta_fun(t[i, j], pres)
            if diff:
                failures.append(f"entry ({i + 1},{j + 1}): {diff.render(tp)}")
    return exact_report(name, failures)


# -- coproducts on U_q(sl(2)) ---------------------------------------------------------

def _uq_images(variant):
    pres = builtin_presentation("uq_sl2")
    tp = tensor_presentation(pres, pres)
    K, Kinv, E, F = (pres.g(g) for g in ("K", "K^-1", "E", "F"))
    right, left = (K, Kinv) if variant == "q" else (Kinv, K)
    images = {
        pres.gen("K"): tensor(K, K, pres),
        pres.gen("K^-1"): tensor(Kinv, Kinv, pres),
        pres.gen("E"): tensor(E, right, pres) + tensor(left, E, pres),
        pres.gen("F"): tensor(F, right, pres) + tensor(left, F, pres),
    }
    return images, pres, tp


def delta_uq(p, variant="q"):
    """Delta_q (variant 'q') or Delta_{q^-1} (variant 'qinv') of p over uq_sl2."""
    images, pres, tp = _uq_images(variant)
    return apply_morphism(images, p, tp, pres)


@timed_check
def check_delta_uq(variant="q"):
    images, pres, tp = _uq_images(variant)
    K, Kinv, E, F = (images[pres.gen(g)] for g in ("K", "K^-1", "E", "F"))
    mul = lambda x, y: nc_mul(x, y, tp)
    cartan = (Q - q_power(-1)).inverse() * (mul(K, K) - mul(Kinv, Kinv))
    relations = [
        ("K.E - q E.K", mul(K, E) - Q * mul(E, K)),
        ("K.F - q^-1 F.K", mul(K, F) - q_power(-1) * mul(F, K)),
        ("[E, F] - (K^2 - K^-2)/(q - q^-1)", mul(E, F) - mul(F, E) - cartan),
        ("K.K^-1 - 1", mul(K, Kinv) - UNIT),
    ]
    failures = [f"{label} = {r.render(tp)}" for label, r in relations if r]
    return exact_report(f"delta-uq-{variant}", failures)


@timed_check
def check_delta_flip():
    """Delta_{q^-1} = flip . Delta_q on generators, and Delta_q(E) != Delta_{q^-1}(E)."""
    pres = builtin_presentation("uq_sl2")
    tp = tensor_presentation(pres, pres)
    failures = []
    for g in ("K", "K^-1", "E", "F"):
        dq, dqi = delta_uq(pres.g(g), "q"), delta_uq(pres.g(g), "qinv")
        if (diff := flip(dq, tp) - dqi):
            failures.append(f"flip(Delta_q({g})) - Delta_q^-1({g}) = {diff.render(tp)}")
    dq, dqi = delta_uq(pres.g("E"), "q"), delta_uq(pres.g("E"), "qinv")
    if dq == dqi:
        failures.append("Delta_q(E) equals Delta_q^-1(E)")
    notes = f"Delta_q(E) = {dq.render(tp)}; Delta_q^-1(E) = {dqi.render(tp)}"
    return exact_report("delta-flip", failures, notes=notes)


# -- covariance of the quantum plane calculus -------------------------------------

def _primed_images(pres, plane, qq, literal):
    """X' = AX + BY, Y' = CX + DY and the derivative transform, keyed by plane generator."""
    mul = lambda x, y: nc_mul(x, y, pres)
    A, B, C, D = (pres.g(n) for n in _ENTRIES)
    X, Y, Dx, Dy = (pres.g(n) for n in ("X", "Y", "Dx", "Dy"))
    up, down = (qq, qq.inverse()) if literal else (qq.inverse(), qq)
    return {
        plane.gen("X"): mul(A, X) + mul(B, Y),
        plane.gen("Y"): mul(C, X) + mul(D, Y),
        plane.gen("Dx"): mul(D, Dx) - up * mul(C, Dy),
        plane.gen("Dy"): -down * mul(B, Dx) + mul(A, Dy),
    }


def _plane_residuals(pres, plane, qq, literal):
    images = _primed_images(pres, plane, qq, literal)
    out = []
    for rule in plane.defining_rules:
        relation = NCPoly.word(*rule.lhs) - rule.rhs
        residual = apply_morphism(images, relation, pres, plane)
        if residual:
            out.append(f"{plane.render_word(rule.lhs)}' relation = {residual.render(pres)}")
    return out


LITERAL_DERIVATIVES = "[[D, -q C], [-q^-1 B, A]]"
INVERTED_DERIVATIVES = "[[D, -q^-1 C], [-q B, A]]"


@timed_check
def check_covariance():
    pres = builtin_presentation("covariance")
    plane = builtin_presentation("quantum_plane")
    literal = _plane_residuals(pres, plane, Q, literal=True)
    if not literal:
        notes = f"derivative matrix {LITERAL_DERIVATIVES} holds"
        failures, chosen = [], True
    else:
        failures = _plane_residuals(pres, plane, Q, literal=False)
        chosen = False
        notes = (f"derivative matrix {INVERTED_DERIVATIVES} holds; literal {LITERAL_DERIVATIVES} "
                 f"leaves {literal[0]}")
        if not failures:
            logger.warning("covariance: %s", notes)
        else:
            notes = f"neither derivative matrix holds; literal leaves {literal[0]}"
    classical = specialize(pres)
    classical_plane = specialize(plane)
    failures += [f"s=1: {w}" for w in _plane_residuals(classical, classical_plane, ONE, chosen)]
    logger.debug("covariance: %d words memoized", pres.memo_size)
    return exact_report("covariance", failures, notes=notes)
