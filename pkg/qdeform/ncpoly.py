"""Noncommutative polynomials over QScalar and their rewriting to normal form.

A Presentation lists its generators in PBW order and carries rewrite rules
with two-generator left-hand sides. Every right-hand side is strictly
smaller in the degree-then-lexicographic order of words, so leftmost
rewriting terminates; check_confluence resolves the length-3 overlaps.

Words are tuples of generator ids (positions in the generator list).
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import NamedTuple

from .errors import MorphismConfigurationError, PresentationError, UnknownCatalogKey
from .report import exact_report, timed_check
from .scalars import ONE, ZERO, Q, QScalar, q_power

logger = logging.getLogger(__name__)


class Generator(NamedTuple):
    id: int
    name: str
    slot: int = 0

    def label(self):
        return f"{self.name}@{self.slot}" if self.slot else self.name


def word_key(word):
    return (len(word), word)


class NCPoly:
    """Finite map word -> nonzero QScalar. Treated as immutable."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def word(cls, *ids, coeff=ONE):
        return cls({tuple(ids): QScalar.of(coeff)})

    @classmethod
    def scalar(cls, c):
        return cls({(): QScalar.of(c)})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self.terms == other.terms
        if isinstance(other, (int, QScalar)):
            return self.terms == NCPoly.scalar(other).terms
        return NotImplemented

    __hash__ = None

    def __add__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, ZERO) + c
        return NCPoly(out)

    def __neg__(self):
        return NCPoly({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, NCPoly):
            return NotImplemented
        c = QScalar.of(c)
        return NCPoly({w: c * v for w, v in self.terms.items()})

    __rmul__ = __mul__

    def concat(self, other):
        """Free-algebra product, no reduction."""
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, ZERO) + c1 * c2
        return NCPoly(out)

    def constant_term(self):
        return self.terms.get((), ZERO)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: word_key(item[0]))

    def shifted(self, offset):
        return NCPoly({tuple(i + offset for i in w): c for w, c in self.terms.items()})

    def map_coefficients(self, fn):
        return NCPoly({w: fn(c) for w, c in self.terms.items()})

    def render(self, pres):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            coeff = c.render()
            if " " in coeff:
                coeff = f"({coeff})"
            if w:
                parts.append(f"{coeff} * " + ".".join(pres.generators[i].label() for i in w))
            else:
                parts.append(coeff)
        return " + ".join(parts)

    def __repr__(self):
        return f"NCPoly({self.terms!r})"


UNIT = NCPoly.scalar(1)


# words kept in a presentation's reduction memo before it is flushed
MEMO_LIMIT = 200_000


class Rule(NamedTuple):
    lhs: tuple
    rhs: NCPoly


class Presentation:
    """Generators in PBW order plus terminating two-letter rewrite rules.

    The rule list may repeat a left-hand side; rewriting uses the first one
    and check_confluence compares all of them.
    """

    def __init__(self, name, generators, rules, inverse_pairs=(), memo_limit=MEMO_LIMIT):
        self.name = name
        self.memo_limit = memo_limit
        self.generators = tuple(generators)
        self.defining_rules = tuple(rules)
        self.inverse_pairs = tuple(inverse_pairs)
        n = len(self.generators)
        for i, g in enumerate(self.generators):
            if g.id != i:
                raise PresentationError(f"{name}: generator {g.name} has id {g.id}, expected {i}")
        if len({(g.name, g.slot) for g in self.generators}) != n:
            raise PresentationError(f"{name}: duplicate generator")
        inverse_rules = []
        for g, h in self.inverse_pairs:
            inverse_rules.append(Rule((g, h), UNIT))
            inverse_rules.append(Rule((h, g), UNIT))
        self.rules = self.defining_rules + tuple(inverse_rules)
        self._lookup = {}
        for rule in self.rules:
            self._validate(rule)
            self._lookup.setdefault(rule.lhs, rule.rhs)
        self._memo = {}

    def _validate(self, rule):
        n = len(self.generators)
        if len(rule.lhs) != 2 or not all(0 <= i < n for i in rule.lhs):
            raise PresentationError(f"{self.name}: bad left-hand side {rule.lhs}")
        for w, c in rule.rhs.terms.items():
            if not all(0 <= i < n for i in w):
                raise PresentationError(f"{self.name}: unknown generator in {w}")
            if word_key(w) >= word_key(rule.lhs):
                raise PresentationError(
                    f"{self.name}: rule {self.render_word(rule.lhs)} does not decrease to "
                    f"{self.render_word(w)}")
            if not c.is_rho_free:
                raise PresentationError(f"{self.name}: rule coefficients must be r-free")

    def __repr__(self):
        return f"Presentation({self.name!r}, {len(self.generators)} generators, {len(self.rules)} rules)"

    def index(self, name, slot=0):
        for g in self.generators:
            if g.name == name and g.slot == slot:
                return g.id
        raise UnknownCatalogKey("generator", f"{name}@{slot}" if slot else name,
                                [g.label() for g in self.generators])

    def gen(self, name, slot=0):
        return self.generators[self.index(name, slot)]

    def g(self, name, slot=0):
        """The generator as a one-word polynomial."""
        return NCPoly.word(self.index(name, slot))

    def word(self, *names, coeff=ONE):
        return NCPoly.word(*(self.index(n) for n in names), coeff=coeff)

    def rule_for(self, a, b):
        return self._lookup.get((a, b))

    def redexes(self, word):
        return [i for i in range(len(word) - 1) if (word[i], word[i + 1]) in self._lookup]

    def render_word(self, word):
        return ".".join(self.generators[i].label() for i in word) or "1"

    @property
    def memo_size(self):
        return len(self._memo)


def _accumulate(out, word, c):
    total = out.get(word, ZERO) + c
    if total:
        out[word] = total
    else:
        out.pop(word, None)


def _reduce_word(word, pres):
    cached = pres._memo.get(word)
    if cached is not None:
        return cached
    for i in range(len(word) - 1):
        rhs = pres._lookup.get((word[i], word[i + 1]))
        if rhs is None:
            continue
        prefix, suffix = word[:i], word[i + 2:]
        out = {}
        for w, c in rhs.terms.items():
            for w2, c2 in _reduce_word(prefix + w + suffix, pres).items():
                _accumulate(out, w2, c * c2)
        break
    else:
        out = {word: ONE}
    if len(pres._memo) >= pres.memo_limit:
        pres._memo.clear()
    pres._memo[word] = out
    return out


def _check_words(p, pres):
    n = len(pres.generators)
    for w in p.terms:
        if any(not 0 <= i < n for i in w):
            raise PresentationError(f"word {w} uses generators outside {pres.name}")


def _random_normal_form(p, pres, rng):
    pending = dict(p.terms)
    done = {}
    while pending:
        keys = list(pending)
        w = keys[int(rng.integers(len(keys)))]
        c = pending.pop(w)
        positions = pres.redexes(w)
        if not positions:
            _accumulate(done, w, c)
            continue
        i = positions[int(rng.integers(len(positions)))]
        for w2, c2 in pres.rule_for(w[i], w[i + 1]).terms.items():
            new = w[:i] + w2 + w[i + 2:]
            _accumulate(pending if pres.redexes(new) else done, new, c * c2)
    return NCPoly(done)


def normal_form(p, pres, rng=None):
    """Reduce p to its normal form in pres.

    With a numpy Generator the redex is chosen at random at every step and
    the memo is bypassed.
    """
    _check_words(p, pres)
    if rng is not None:
        return _random_normal_form(p, pres, rng)
    out = {}
    for w, c in p.terms.items():
        for w2, c2 in _reduce_word(w, pres).items():
            _accumulate(out, w2, c * c2)
    return NCPoly(out)


def nc_mul(p, r, pres):
    out = {}
    for w1, c1 in p.terms.items():
        for w2, c2 in r.terms.items():
            c = c1 * c2
            for w, c3 in _reduce_word(w1 + w2, pres).items():
                _accumulate(out, w, c * c3)
    return NCPoly(out)


def nc_power(p, n, pres):
    result = UNIT
    for _ in range(n):
        result = nc_mul(result, p, pres)
    return result


def commutator(p, r, pres):
    return nc_mul(p, r, pres) - nc_mul(r, p, pres)


@lru_cache(maxsize=None)
def tensor_presentation(p1, p2):
    """Slot-retagged disjoint union; slot-2 generators move right of slot-1 ones."""
    n1 = len(p1.generators)
    top = max(g.slot for g in p1.generators) + 1
    gens = list(p1.generators)
    gens += [Generator(g.id + n1, g.name, g.slot + top) for g in p2.generators]
    rules = list(p1.defining_rules)
    rules += [Rule((a + n1, b + n1), rhs.shifted(n1)) for (a, b), rhs in p2.defining_rules]
    rules += [Rule((j + n1, i), NCPoly.word(i, j + n1))
              for i in range(n1) for j in range(len(p2.generators))]
    pairs = tuple(p1.inverse_pairs) + tuple((g + n1, h + n1) for g, h in p2.inverse_pairs)
    return Presentation(f"{p1.name}(x){p2.name}", gens, rules, pairs)


def tensor(p, r, pres1):
    """p (x) r inside tensor_presentation(pres1, .); normal if p and r are."""
    return p.concat(r.shifted(len(pres1.generators)))


def flip(p, pres):
    """Exchange the slots of an element of tensor_presentation(P, P)."""
    n = len(pres.generators) // 2
    out = {}
    for w, c in p.terms.items():
        left = tuple(i + n for i in w if i < n)
        right = tuple(i - n for i in w if i >= n)
        _accumulate(out, right + left, c)
    return normal_form(NCPoly(out), pres)


def apply_morphism(images, p, target, source=None):
    """Extend the generator images to an algebra map and apply it to p."""
    by_id = {g.id: img for g, img in images.items()}
    out = NCPoly()
    for w, c in p.terms.items():
        acc = UNIT
        for gid in w:
            img = by_id.get(gid)
            if img is None:
                label = source.generators[gid].label() if source else f"#{gid}"
                raise MorphismConfigurationError(f"no image for generator {label}")
            acc = nc_mul(acc, img, target)
            if not acc:
                break
        out = out + c * acc
    return out


def specialize(pres):
    """The s = 1 image of a r-free, pole-free presentation."""
    rules = [Rule(lhs, rhs.map_coefficients(QScalar.at_one)) for lhs, rhs in pres.defining_rules]
    return Presentation(f"{pres.name}@q=1", pres.generators, rules, pres.inverse_pairs)


@timed_check
def check_confluence(pres):
    """Resolve every two-rule overlap of length 3 and every repeated left side."""
    failures = []

    def resolve(word, rhs, at):
        expanded = NCPoly.word(*word[:at]).concat(rhs).concat(NCPoly.word(*word[at + 2:]))
        return normal_form(expanded, pres)

    rules = pres.rules
    for n, r1 in enumerate(rules):
        for r2 in rules[n + 1:]:
            if r1.lhs == r2.lhs:
                a, b = resolve(r1.lhs, r1.rhs, 0), resolve(r2.lhs, r2.rhs, 0)
                if a != b:
                    failures.append(f"{pres.render_word(r1.lhs)}: {a.render(pres)} != {b.render(pres)}")
    for r1 in rules:
        for r2 in rules:
            if r1.lhs[1] != r2.lhs[0]:
                continue
            word = (r1.lhs[0], r1.lhs[1], r2.lhs[1])
            a, b = resolve(word, r1.rhs, 0), resolve(word, r2.rhs, 1)
            if a != b:
                failures.append(f"{pres.render_word(word)}: {a.render(pres)} != {b.render(pres)}")
    logger.debug("%s: %d words memoized after overlap resolution", pres.name, pres.memo_size)
    name = "confluence-" + pres.name.replace("_", "-")
    return exact_report(name, failures)


# -- catalog ------------------------------------------------------------------

def _build(name, names, relations, inverses=()):
    gens = [Generator(i, n) for i, n in enumerate(names)]
    index = {n: i for i, n in enumerate(names)}
    rules = []
    for lhs, rhs in relations:
        poly = NCPoly()
        for coeff, word in rhs:
            poly = poly + NCPoly.word(*(index[n] for n in word), coeff=coeff)
        rules.append(Rule(tuple(index[n] for n in lhs), poly))
    pairs = [(index[a], index[b]) for a, b in inverses]
    return Presentation(name, gens, rules, pairs)


_QI = q_power(-1)


def _quantum_plane():
    return _build("quantum_plane", ["X", "Y", "Dx", "Dy"], [
        (("Y", "X"), [(_QI, ("X", "Y"))]),
        (("Dy", "Dx"), [(Q, ("Dx", "Dy"))]),
        (("Dx", "Y"), [(Q, ("Y", "Dx"))]),
        (("Dy", "X"), [(Q, ("X", "Dy"))]),
        (("Dx", "X"), [(ONE, ()), (Q * Q, ("X", "Dx")), (Q * Q - 1, ("Y", "Dy"))]),
        (("Dy", "Y"), [(ONE, ()), (Q * Q, ("Y", "Dy"))]),
    ])


_FUNQ_RELATIONS = [
    (("B", "A"), [(_QI, ("A", "B"))]),
    (("C", "A"), [(_QI, ("A", "C"))]),
    (("D", "B"), [(_QI, ("B", "D"))]),
    (("D", "C"), [(_QI, ("C", "D"))]),
    (("C", "B"), [(ONE, ("B", "C"))]),
    (("D", "A"), [(ONE, ("A", "D")), (_QI - Q, ("B", "C"))]),
]


def _funq_gl2():
    return _build("funq_gl2", ["A", "B", "C", "D"], _FUNQ_RELATIONS)


def _funq_sl2():
    # B, C below A, D: normal words are B^i C^j A^k and B^i C^j D^l
    return _build("funq_sl2", ["B", "C", "A", "D"], [
        (("A", "B"), [(Q, ("B", "A"))]),
        (("A", "C"), [(Q, ("C", "A"))]),
        (("D", "B"), [(_QI, ("B", "D"))]),
        (("D", "C"), [(_QI, ("C", "D"))]),
        (("C", "B"), [(ONE, ("B", "C"))]),
        (("D", "A"), [(ONE, ("A", "D")), (_QI - Q, ("B", "C"))]),
        (("A", "D"), [(ONE, ()), (Q, ("B", "C"))]),
    ])


def _uq_sl2():
    c = (Q - _QI).inverse()
    return _build("uq_sl2", ["F", "K^-1", "K", "E"], [
        (("K", "F"), [(_QI, ("F", "K"))]),
        (("K^-1", "F"), [(Q, ("F", "K^-1"))]),
        (("E", "K"), [(_QI, ("K", "E"))]),
        (("E", "K^-1"), [(Q, ("K^-1", "E"))]),
        (("E", "F"), [(ONE, ("F", "E")), (c, ("K", "K")), (-c, ("K^-1", "K^-1"))]),
    ], inverses=[("K", "K^-1")])


def _q_osc():
    return _build("q_osc", ["Ad", "KN^-1", "KN", "A"], [
        (("KN", "Ad"), [(Q, ("Ad", "KN"))]),
        (("KN^-1", "Ad"), [(_QI, ("Ad", "KN^-1"))]),
        (("A", "KN"), [(Q, ("KN", "A"))]),
        (("A", "KN^-1"), [(_QI, ("KN^-1", "A"))]),
        (("A", "Ad"), [(Q, ("Ad", "A")), (ONE, ("KN^-1",))]),
    ], inverses=[("KN", "KN^-1")])


def _param_alg():
    return _build("param_alg", ["gamma", "u^-1", "u", "beta"], [
        (("u", "gamma"), [(Q, ("gamma", "u"))]),
        (("u^-1", "gamma"), [(_QI, ("gamma", "u^-1"))]),
        (("beta", "u"), [(_QI, ("u", "beta"))]),
        (("beta", "u^-1"), [(Q, ("u^-1", "beta"))]),
        (("beta", "gamma"), [(ONE, ("gamma", "beta"))]),
    ], inverses=[("u", "u^-1")])


def _covariance():
    """funq_sl2 and the quantum plane calculus with every cross pair commuting."""
    fun, plane = _funq_sl2(), _quantum_plane()
    n = len(fun.generators)
    gens = list(fun.generators) + [Generator(g.id + n, g.name) for g in plane.generators]
    rules = list(fun.defining_rules)
    rules += [Rule((a + n, b + n), rhs.shifted(n)) for (a, b), rhs in plane.defining_rules]
    rules += [Rule((j + n, i), NCPoly.word(i, j + n))
              for i in range(n) for j in range(len(plane.generators))]
    return Presentation("covariance", gens, rules)


_CATALOG = {
    "quantum_plane": _quantum_plane,
    "funq_gl2": _funq_gl2,
    "funq_sl2": _funq_sl2,
    "uq_sl2": _uq_sl2,
    "q_osc": _q_osc,
    "param_alg": _param_alg,
    "covariance": _covariance,
}

PRESENTATION_NAMES = tuple(_CATALOG)


@lru_cache(maxsize=None)
def builtin_presentation(name):
    try:
        build = _CATALOG[name]
    except KeyError:
        raise UnknownCatalogKey("presentation", name, PRESENTATION_NAMES) from None
    pres = build()
    logger.debug("built %r", pres)
    return pres


@timed_check
def check_classical_plane():
    """At s = 1 the quantum plane calculus is the commutative Weyl calculus."""
    plane = specialize(builtin_presentation("quantum_plane"))
    X, Y, Dx, Dy = (plane.g(n) for n in ("X", "Y", "Dx", "Dy"))
    expected = [
        ("[X, Y]", X, Y, NCPoly()),
        ("[Dx, Dy]", Dx, Dy, NCPoly()),
        ("[Dx, X]", Dx, X, UNIT),
        ("[Dy, Y]", Dy, Y, UNIT),
        ("[Dx, Y]", Dx, Y, NCPoly()),
        ("[Dy, X]", Dy, X, NCPoly()),
    ]
    failures = []
    for label, a, b, want in expected:
        got = commutator(a, b, plane)
        if got != want:
            failures.append(f"{label} = {got.render(plane)}")
    return exact_report("classical-plane", failures)
