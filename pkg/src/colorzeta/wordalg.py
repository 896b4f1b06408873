"""Q(xi_N)-linear combinations of words, the two products, regularization.

``LinComb`` is the universal symbolic carrier: a finite map YWord -> CycNumber
at a fixed level.  The harmonic (quasi-shuffle / "stuffle") product lives on
Y-words; the shuffle product lives on X-words and is pulled back through the
encoding.  ``reg_decompose`` expresses an arbitrary word of the subalgebra of
words with no trailing x0 as a polynomial in the divergent letter y(1,0) with
admissible coefficients, one decomposition per product.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import CycNumber
from .words import XWord, YWord, to_x, to_y

__all__ = [
    "LinComb",
    "RegDecomposition",
    "NotA1Error",
    "stuffle",
    "shuffle",
    "shuffle_x",
    "deconcat",
    "reg_decompose",
    "symmetrize_word",
    "DIVERGENT_LETTER",
]

DIVERGENT_LETTER = (1, 0)  # y(1,0): the unique letter whose series diverges


class NotA1Error(ValueError):
    """Input word is outside the no-trailing-x0 subalgebra."""


class LinComb:
    """Finite Q(xi_N)-linear combination of YWords; zero coefficients dropped."""

    __slots__ = ("level", "terms")

    def __init__(self, level: int, terms=None):
        tt = {}
        if terms:
            for w, c in dict(terms).items():
                if not isinstance(c, CycNumber):
                    c = CycNumber.from_rational(level, c)
                if not c.is_zero():
                    tt[YWord(w)] = c
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "terms", tt)

    def __setattr__(self, *a):
        raise AttributeError("LinComb is immutable")

    @classmethod
    def from_word(cls, w: YWord, level: int, coeff=1) -> "LinComb":
        return cls(level, {YWord(w): coeff})

    @classmethod
    def zero(cls, level: int) -> "LinComb":
        return cls(level, {})

    def _check(self, other: "LinComb"):
        if self.level != other.level:
            raise ValueError("level mismatch")

    def __add__(self, other: "LinComb") -> "LinComb":
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            out[w] = c if s is None else s + c
        return LinComb(self.level, out)

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __rmul__(self, scalar) -> "LinComb":
        if not isinstance(scalar, CycNumber):
            scalar = CycNumber.from_rational(self.level, scalar)
        return LinComb(self.level, {w: scalar * c for w, c in self.terms.items()})

    def __mul__(self, scalar) -> "LinComb":
        return self.__rmul__(scalar)

    def map_words(self, f) -> "LinComb":
        """Linear extension of a map word -> LinComb | SignedWord | YWord."""
        out = LinComb.zero(self.level)
        for w, c in self.terms.items():
            img = f(w)
            if isinstance(img, YWord):
                img = LinComb.from_word(img, self.level)
            elif not isinstance(img, LinComb):  # SignedWord
                img = LinComb.from_word(img.word, self.level, img.coeff)
            out = out + c * img
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def weight(self) -> int:
        """Weight when homogeneous; raises otherwise."""
        ws = {w.weight for w in self.terms}
        if len(ws) > 1:
            raise ValueError("combination is not weight-homogeneous")
        return ws.pop() if ws else 0

    def max_weight(self) -> int:
        return max((w.weight for w in self.terms), default=0)

    def canonical_items(self):
        from .words import canonical_key

        return sorted(self.terms.items(), key=lambda t: canonical_key(t[0]))

    def __eq__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        return self.level == other.level and self.terms == other.terms

    def __hash__(self):
        return hash((self.level, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for w, c in self.canonical_items():
            bits.append(f"({c!r})*{w!r}")
        return " + ".join(bits)

    def to_json(self):
        return {
            "level": self.level,
            "terms": [
                {"word": w.to_json(), "coeff": c.to_json()}
                for w, c in self.canonical_items()
            ],
        }

    @classmethod
    def from_json(cls, data):
        level = data["level"]
        terms = {}
        for t in data["terms"]:
            w = YWord(tuple((s, e) for s, e in t["word"]))
            terms[w] = CycNumber.from_json(t["coeff"])
        return cls(level, terms)


# ---------------------------------------------------------------------------
# Products.  Word-level kernels are memoized with integer coefficients; the
# public functions extend bilinearly with field coefficients.


@functools.lru_cache(maxsize=1 << 17)
def _stuffle_words(u: YWord, v: YWord, level: int):
    """Quasi-shuffle of two words; dict word -> int multiplicity."""
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    (m, a), us = u[0], YWord(u[1:])
    (n, b), vs = v[0], YWord(v[1:])
    out: dict[YWord, int] = {}

    def _accum(head, sub):
        for w, c in sub.items():
            key = YWord((head,) + tuple(w))
            out[key] = out.get(key, 0) + c

    _accum((m, a), _stuffle_words(us, v, level))
    _accum((n, b), _stuffle_words(u, vs, level))
    _accum((m + n, (a + b) % level), _stuffle_words(us, vs, level))
    return out


@functools.lru_cache(maxsize=1 << 17)
def _shuffle_words(u: XWord, v: XWord):
    """Shuffle of two X-words; dict word -> int multiplicity."""
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    out: dict[XWord, int] = {}
    for head, left, right in (
        (u[0], XWord(u[1:]), v),
        (v[0], u, XWord(v[1:])),
    ):
        for w, c in _shuffle_words(left, right).items():
            key = XWord((head,) + tuple(w))
            out[key] = out.get(key, 0) + c
    return out


def _as_lincomb(x, level) -> LinComb:
    if isinstance(x, LinComb):
        return x
    return LinComb.from_word(YWord(x), level)


def stuffle(u, v, level: int | None = None) -> LinComb:
    """Harmonic (quasi-shuffle) product, bilinear over Q(xi_N)."""
    if level is None:
        level = u.level if isinstance(u, LinComb) else v.level
    u = _as_lincomb(u, level)
    v = _as_lincomb(v, level)
    u._check(v)
    out: dict[YWord, CycNumber] = {}
    for wu, cu in u.terms.items():
        for wv, cv in v.terms.items():
            c = cu * cv
            for w, mult in _stuffle_words(wu, wv, level).items():
                s = out.get(w)
                t = c * mult
                out[w] = t if s is None else s + t
    return LinComb(level, out)


def shuffle_x(u: XWord, v: XWord) -> dict[XWord, int]:
    """Shuffle product of two X-words with integer multiplicities."""
    return dict(_shuffle_words(XWord(u), XWord(v)))


def shuffle(u, v, level: int | None = None) -> LinComb:
    """Shuffle product on Y-words via the X-encoding, bilinear over Q(xi_N).

    Both inputs must lie in the no-trailing-x0 subalgebra (every YWord does),
    and the result stays there, so the Y-encoding is total.
    """
    if level is None:
        level = u.level if isinstance(u, LinComb) else v.level
    u = _as_lincomb(u, level)
    v = _as_lincomb(v, level)
    u._check(v)
    out: dict[YWord, CycNumber] = {}
    for wu, cu in u.terms.items():
        xu = to_x(wu)
        for wv, cv in v.terms.items():
            c = cu * cv
            for xw, mult in _shuffle_words(xu, to_x(wv)).items():
                w = to_y(xw)
                s = out.get(w)
                t = c * mult
                out[w] = t if s is None else s + t
    return LinComb(level, out)


def deconcat(w):
    """All prefix/suffix splittings of a word (either encoding)."""
    cls = type(w)
    return [(cls(w[:j]), cls(w[j:])) for j in range(len(w) + 1)]


# ---------------------------------------------------------------------------
# Regularization


@dataclass(frozen=True)
class RegDecomposition:
    """w written as sum_j (1/j!) * z^(product j) o c_j with admissible c_j.

    ``coefficients[j]`` is the LinComb c_j, so that the regularized value of w
    is sum_j T^j/j! * value(c_j).  ``product`` is "stuffle" or "shuffle".
    """

    word: YWord
    product: str
    level: int
    coefficients: tuple[LinComb, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def reassemble(self) -> LinComb:
        """Exact reconstruction of the original word from the decomposition."""
        prod = stuffle if self.product == "stuffle" else shuffle
        z = LinComb.from_word(YWord((DIVERGENT_LETTER,)), self.level)
        out = LinComb.zero(self.level)
        zpow = LinComb.from_word(YWord(), self.level)
        for j, cj in enumerate(self.coefficients):
            if j > 0:
                zpow = prod(zpow, z)
            if not cj.is_zero():
                out = out + Fraction(1, math.factorial(j)) * prod(zpow, cj)
        return out


def _leading_run(w: YWord) -> int:
    run = 0
    for letter in w:
        if letter != DIVERGENT_LETTER:
            break
        run += 1
    return run


@functools.lru_cache(maxsize=1 << 15)
def _reg_word(w: YWord, product: str, level: int) -> tuple:
    """Decomposition of a single word; returns a tuple of LinCombs c_0..c_k."""
    prod = stuffle if product == "stuffle" else shuffle
    if w.is_admissible:
        return (LinComb.from_word(w, level),)
    m = _leading_run(w)
    z = LinComb.from_word(YWord((DIVERGENT_LETTER,)), level)
    head = YWord(w[1:])  # z^(m-1) rest
    expanded = prod(z, LinComb.from_word(head, level))
    # expanded = m * w + lower, where lower has a shorter divergent run
    lower = expanded - LinComb.from_word(w, level, m)
    shifted = _shift_decomposition(_reg_word(head, product, level), level)
    acc = [LinComb.zero(level) for _ in range(len(shifted))]
    for j, c in enumerate(shifted):
        acc[j] = acc[j] + c
    for word, coeff in lower.terms.items():
        sub = _reg_word(word, product, level)
        while len(acc) < len(sub):
            acc.append(LinComb.zero(level))
        for j, c in enumerate(sub):
            acc[j] = acc[j] - coeff * c
    inv_m = Fraction(1, m)
    out = tuple(inv_m * c for c in acc)
    while len(out) > 1 and out[-1].is_zero():
        out = out[:-1]
    return out


def _shift_decomposition(parts: tuple, level: int) -> tuple:
    """Multiply a decomposition by one divergent letter: c_j -> (j+1) c_(j+1)."""
    out = [LinComb.zero(level)]
    for j, c in enumerate(parts):
        out.append((j + 1) * c)
    return tuple(out)


def reg_decompose(w: YWord, product: str, level: int) -> RegDecomposition:
    """Regularization of a word with no trailing x0, for either product.

    Peels leading divergent letters one at a time: multiply the shortened
    word by the divergent letter, subtract the lower-run terms, and recurse.
    The degree never exceeds the length of the leading divergent run.
    """
    if product not in ("stuffle", "shuffle"):
        raise ValueError("product must be 'stuffle' or 'shuffle'")
    w = YWord(w)
    return RegDecomposition(w, product, level, _reg_word(w, product, level))


def reg_decompose_lincomb(L: LinComb, product: str) -> tuple[LinComb, ...]:
    """Linear extension of reg_decompose; returns the c_j columns."""
    acc: list[LinComb] = [LinComb.zero(L.level)]
    for w, coeff in L.terms.items():
        parts = _reg_word(w, product, L.level)
        while len(acc) < len(parts):
            acc.append(LinComb.zero(L.level))
        for j, c in enumerate(parts):
            acc[j] = acc[j] + coeff * c
    while len(acc) > 1 and acc[-1].is_zero():
        acc.pop()
    return tuple(acc)


# ---------------------------------------------------------------------------
# Trailing-x0 regularization on X-words (needed for series whose coefficients
# range over all X-words, where trailing x0 letters play the divergent role).


@functools.lru_cache(maxsize=1 << 15)
def _reg_word_trailing_x0(x: XWord) -> tuple:
    """Shuffle-decomposition of an X-word against trailing x0 letters.

    Returns (c_0, c_1, ..., c_k) as dicts XWord -> Fraction with every word in
    every c_j free of trailing x0, such that x = sum_j (1/j!) x0^(shuffle j)
    shuffled with c_j.
    """
    if not x.ends_in_x0:
        return ({x: Fraction(1)},)
    # trailing run length
    m = 0
    for a in reversed(x):
        if a is not None:
            break
        m += 1
    head = XWord(x[:-1])
    z = XWord((None,))
    expanded = _shuffle_words(z, head)
    lower_terms: list[tuple[XWord, int]] = []
    mult_x = 0
    for w, c in expanded.items():
        if w == x:
            mult_x = c
        else:
            lower_terms.append((w, c))
    assert mult_x == m, (x, mult_x, m)
    shifted: list[dict] = [{}]
    for j, cj in enumerate(_reg_word_trailing_x0(head)):
        shifted.append({w: (j + 1) * c for w, c in cj.items()})
    acc = [dict(d) for d in shifted]
    for word, coeff in lower_terms:
        sub = _reg_word_trailing_x0(word)
        while len(acc) < len(sub):
            acc.append({})
        for j, cj in enumerate(sub):
            for w, c in cj.items():
                acc[j][w] = acc[j].get(w, Fraction(0)) - coeff * c
    inv_m = Fraction(1, m)
    out = []
    for d in acc:
        out.append({w: inv_m * c for w, c in d.items() if c})
    while len(out) > 1 and not out[-1]:
        out.pop()
    return tuple(out)


def reg_trailing_constant(x: XWord) -> dict[XWord, Fraction]:
    """The T^0 part of the trailing-x0 shuffle regularization of an X-word."""
    return dict(_reg_word_trailing_x0(XWord(x))[0])


# ---------------------------------------------------------------------------
# Symmetrization


def symmetrize_word(w: YWord, level: int):
    """The d+1 symmetrization terms of a plain-index word.

    Returns a list of (coeff, left, right): left is the reversed, conjugated
    prefix, right the untouched suffix, and coeff = (-1)^(s_1+..+s_j) times
    xi^-(e_1+..+e_j).  Pairing each side with a regularized evaluator of
    either product and summing gives the corresponding symmetrized value.
    """
    w = YWord(w)
    out = []
    for j in range(len(w) + 1):
        prefix, suffix = w[:j], YWord(w[j:])
        sign = -1 if sum(s for s, _ in prefix) % 2 else 1
        coeff = CycNumber.root_power(level, -sum(e for _, e in prefix)) * sign
        left = YWord((s, (-e) % level) for s, e in reversed(prefix))
        out.append((coeff, left, suffix))
    return out
