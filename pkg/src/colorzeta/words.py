"""Index words in the two standard encodings, and the structural maps on them.

A ``YWord`` is a sequence of letters (s, e): exponent s >= 1 and a color
given as a residue e mod N (the root of unity is xi^e, kept symbolic).  An
``XWord`` is a sequence over the one-letter alphabet {x0} union {colors}:
``None`` encodes the differential-form letter x0, an integer e encodes the
color letter for xi^e.  The correspondence is y_(s,e) = x0^(s-1) x_e.

Words carry no level; operations that need arithmetic mod N take N as an
argument.  Exponents are expected to be already reduced into [0, N).
"""

from __future__ import annotations

from typing import Iterator, NamedTuple

from .cyclotomic import CycNumber

__all__ = [
    "YWord",
    "XWord",
    "SignedWord",
    "NotLevelOneError",
    "yword",
    "xword",
    "to_x",
    "to_y",
    "p_map",
    "q_map",
    "tau",
    "inv_map",
    "r_eta",
    "ratio_form",
    "plain_form",
    "all_ywords",
    "all_xwords",
    "parse_yword",
    "parse_xword",
    "canonical_key",
]


class NotLevelOneError(ValueError):
    """Operation defined only for words with every color exponent zero."""


class YWord(tuple):
    """Immutable word of (s, e) letters; the empty tuple is the empty word."""

    __slots__ = ()

    @property
    def weight(self) -> int:
        return sum(s for s, _ in self)

    @property
    def depth(self) -> int:
        return len(self)

    @property
    def is_admissible(self) -> bool:
        """Empty, or the first letter is not (1, 0) (the divergent letter)."""
        return not self or self[0] != (1, 0)

    @property
    def is_level_one(self) -> bool:
        return all(e == 0 for _, e in self)

    def exponents(self) -> tuple[int, ...]:
        return tuple(s for s, _ in self)

    def colors(self) -> tuple[int, ...]:
        return tuple(e for _, e in self)

    def reversed(self) -> "YWord":
        return YWord(self[::-1])

    def conjugated(self, level: int) -> "YWord":
        return YWord((s, (-e) % level) for s, e in self)

    def __repr__(self):
        if not self:
            return "1"
        return "".join(f"y({s},{e})" for s, e in self)

    def to_json(self):
        return [[s, e] for s, e in self]


class XWord(tuple):
    """Immutable word over {None} | colors; None is the x0 letter."""

    __slots__ = ()

    @property
    def weight(self) -> int:
        return len(self)

    @property
    def depth(self) -> int:
        return sum(1 for a in self if a is not None)

    @property
    def ends_in_x0(self) -> bool:
        return bool(self) and self[-1] is None

    @property
    def is_admissible(self) -> bool:
        return not self or (self[0] != 0 and self[-1] is not None)

    def reversed(self) -> "XWord":
        return XWord(self[::-1])

    def __repr__(self):
        if not self:
            return "1"
        return " ".join("x0" if a is None else f"x({a})" for a in self)

    def to_json(self):
        return [None if a is None else a for a in self]


class SignedWord(NamedTuple):
    """A scalar multiple of a word, for maps that emit a sign or root factor."""

    coeff: CycNumber
    word: YWord


def yword(pairs, level: int | None = None) -> YWord:
    """Build a YWord, reducing color exponents mod level when given."""
    out = []
    for s, e in pairs:
        s = int(s)
        e = int(e)
        if s < 1:
            raise ValueError("letter exponent must be >= 1")
        if level is not None:
            e %= level
        elif e < 0:
            raise ValueError("negative color without a level to reduce by")
        out.append((s, e))
    return YWord(out)


def xword(letters, level: int | None = None) -> XWord:
    out = []
    for a in letters:
        if a is None:
            out.append(None)
        else:
            a = int(a)
            if level is not None:
                a %= level
            elif a < 0:
                raise ValueError("negative color without a level to reduce by")
            out.append(a)
    return XWord(out)


# ---------------------------------------------------------------------------
# Encoding conversions


def to_x(w: YWord) -> XWord:
    out = []
    for s, e in w:
        out.extend([None] * (s - 1))
        out.append(e)
    return XWord(out)


def to_y(x: XWord) -> YWord:
    """Inverse of to_x; defined only for words not ending in x0."""
    if x.ends_in_x0:
        raise ValueError("word ends in x0 and has no Y-form")
    out = []
    run = 0
    for a in x:
        if a is None:
            run += 1
        else:
            out.append((run + 1, a))
            run = 0
    return YWord(out)


# ---------------------------------------------------------------------------
# Structural maps


def p_map(w: YWord, level: int) -> YWord:
    """Replace each color exponent by the cumulative sum mod N."""
    acc = 0
    out = []
    for s, e in w:
        acc = (acc + e) % level
        out.append((s, acc))
    return YWord(out)


def q_map(w: YWord, level: int) -> YWord:
    """Replace each color exponent by the difference with its predecessor."""
    prev = 0
    out = []
    for s, e in w:
        out.append((s, (e - prev) % level))
        prev = e
    return YWord(out)


def tau(w: YWord, level: int) -> SignedWord:
    """Reverse a level-one word and multiply by (-1)^weight."""
    if not w.is_level_one:
        raise NotLevelOneError(f"{w!r} has a nonzero color exponent")
    sign = -1 if w.weight % 2 else 1
    return SignedWord(CycNumber.from_rational(level, sign), w.reversed())


def inv_map(w: YWord, level: int) -> SignedWord:
    """Reverse the word; coefficient (-1)^weight * xi^(-sum of colors)."""
    sign = -1 if w.weight % 2 else 1
    coeff = CycNumber.root_power(level, -sum(e for _, e in w)) * sign
    return SignedWord(coeff, w.reversed())


def r_eta(x: XWord, eta_exp: int, level: int) -> XWord:
    """Divide every color letter by xi^eta_exp; x0 letters are fixed."""
    return XWord(
        a if a is None else (a - eta_exp) % level for a in x
    )


def ratio_form(s_vec, e_vec, level: int) -> YWord:
    """Word whose colors are the consecutive ratios of the given color tuple."""
    return q_map(yword(zip(s_vec, e_vec), level), level)


def plain_form(w: YWord, level: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Inverse of ratio_form: recover the plain (s, e) index tuples."""
    pw = p_map(w, level)
    return pw.exponents(), pw.colors()


# ---------------------------------------------------------------------------
# Enumeration, parsing, ordering


def _compositions(w: int, d: int) -> Iterator[tuple[int, ...]]:
    if d == 1:
        yield (w,)
        return
    for first in range(1, w - d + 2):
        for rest in _compositions(w - first, d - 1):
            yield (first,) + rest


def all_ywords(weight: int, level: int, admissible_only: bool = False):
    """All YWords of the exact weight at the given level, canonical order."""
    import itertools

    out = []
    for d in range(1, weight + 1):
        for comp in _compositions(weight, d):
            for es in itertools.product(range(level), repeat=d):
                w = YWord(zip(comp, es))
                if admissible_only and not w.is_admissible:
                    continue
                out.append(w)
    out.sort(key=canonical_key)
    return out


def all_xwords(weight: int, level: int):
    """All XWords of the exact weight (length) at the given level."""
    import itertools

    letters = [None] + list(range(level))
    return [XWord(t) for t in itertools.product(letters, repeat=weight)]


def canonical_key(w: YWord):
    """Sort key: (weight, depth, letters lexicographically)."""
    return (w.weight, w.depth, tuple(w))


def parse_yword(text: str, level: int) -> YWord:
    """Parse ``y(s,e) y(s,e) ...``; '1' or '' is the empty word."""
    import re

    text = text.strip()
    if text in ("", "1"):
        return YWord()
    pairs = []
    pos = 0
    pattern = re.compile(r"\s*y\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*")
    while pos < len(text):
        m = pattern.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse word at: {text[pos:]!r}")
        pairs.append((int(m.group(1)), int(m.group(2))))
        pos = m.end()
    return yword(pairs, level)


def parse_xword(text: str, level: int) -> XWord:
    """Parse ``x0 x(e) ...``; '1' or '' is the empty word."""
    import re

    text = text.strip()
    if text in ("", "1"):
        return XWord()
    letters = []
    pos = 0
    pattern = re.compile(r"\s*(x0|x\(\s*(-?\d+)\s*\))\s*")
    while pos < len(text):
        m = pattern.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse word at: {text[pos:]!r}")
        letters.append(None if m.group(1) == "x0" else int(m.group(2)))
        pos = m.end()
    return xword(letters, level)
