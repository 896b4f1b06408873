"""Exact arithmetic in the cyclotomic field Q(xi_N) and in F_p[X]/(X^N - 1).

Two coefficient rings are used throughout the package:

* ``CycNumber`` -- an element of the field Q(xi_N), stored as a rational
  coefficient vector of length phi(N) in the power basis 1, xi, ..., xi^(phi-1)
  (canonical form: reduced modulo the N-th cyclotomic polynomial).  This is the
  scalar field for all symbolic linear algebra.

* ``ModCycNumber`` -- the class of a polynomial in F_p[X]/(X^N - 1), stored as
  a length-N coefficient vector mod p, with X playing the role of a symbolic
  primitive N-th root of unity.  Per-prime values of finite colored zeta sums
  live here.  The ring has zero divisors; identities between zeta values are
  decided after reduction modulo the cyclotomic factor Phi_N(X) mod p, which
  is where a genuine primitive root lives.
"""

from __future__ import annotations

import functools
from fractions import Fraction

import numpy as np

__all__ = [
    "CycNumber",
    "ModCycNumber",
    "PrimeContext",
    "ZeroDivisorError",
    "EmbedDenominatorError",
    "cyclotomic_poly",
    "euler_phi",
    "get_prime_context",
    "embed_rational",
    "embed_cyc",
]


class ZeroDivisorError(ArithmeticError):
    """Inversion failed in F_p[X]/(X^N - 1); carries the offending gcd factor."""

    def __init__(self, factor, p, level):
        self.factor = tuple(factor)
        self.p = p
        self.level = level
        super().__init__(
            f"zero divisor in F_{p}[X]/(X^{level}-1): gcd factor {list(factor)}"
        )


class EmbedDenominatorError(ValueError):
    """Strict embedding hit a rational with denominator divisible by p."""

    def __init__(self, value, p):
        self.value = value
        self.p = p
        super().__init__(f"denominator of {value} is divisible by p={p}")


# ---------------------------------------------------------------------------
# Integer polynomial helpers (ascending coefficient lists)


@functools.lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, ascending, monic."""
    if n < 1:
        raise ValueError("n must be positive")
    # (X^n - 1) divided by the product of Phi_d for proper divisors d.
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            num = _poly_div_exact(num, cyclotomic_poly(d))
    return tuple(num)


def _poly_div_exact(num, den):
    """Exact division of integer polynomials (ascending lists)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        if c % den[-1] != 0:
            raise ArithmeticError("inexact polynomial division")
        q = c // den[-1]
        out[i] = q
        for j, dj in enumerate(den):
            num[i + j] -= q * dj
    if any(num[: len(den) - 1]):
        raise ArithmeticError("nonzero remainder in exact division")
    return out


def euler_phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


@functools.lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """xi^j in the power basis of Q(xi_n), for j = 0 .. max(n-1, 2*phi-2)."""
    phi = euler_phi(n)
    mod = cyclotomic_poly(n)
    top = max(n - 1, 2 * phi - 2)
    table = []
    cur = [Fraction(0)] * phi
    cur[0] = Fraction(1)
    for _ in range(top + 1):
        table.append(tuple(cur))
        # multiply by xi and reduce by the monic cyclotomic polynomial
        nxt = [Fraction(0)] + cur[:-1] if phi > 1 else [Fraction(0)]
        lead = cur[-1]
        if lead:
            for j in range(phi):
                nxt[j] -= lead * mod[j]
        cur = nxt
    return tuple(table)


class CycNumber:
    """Element of Q(xi_N), canonical coefficients of length phi(N)."""

    __slots__ = ("level", "coeffs")

    def __init__(self, level: int, coeffs):
        phi = euler_phi(level)
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != phi:
            raise ValueError(f"need {phi} coefficients for level {level}")
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):
        raise AttributeError("CycNumber is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rational(cls, level, r) -> "CycNumber":
        phi = euler_phi(level)
        return cls(level, (Fraction(r),) + (Fraction(0),) * (phi - 1))

    @classmethod
    def zero(cls, level) -> "CycNumber":
        return cls.from_rational(level, 0)

    @classmethod
    def one(cls, level) -> "CycNumber":
        return cls.from_rational(level, 1)

    @classmethod
    def root_power(cls, level, e: int) -> "CycNumber":
        """xi_N^e as a field element."""
        return cls(level, _power_table(level)[e % level])

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycNumber):
            if other.level != self.level:
                raise ValueError("level mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return CycNumber.from_rational(self.level, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycNumber(self.level, (a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.level, (-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycNumber(self.level, (a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        phi = len(self.coeffs)
        prod = [Fraction(0)] * (2 * phi - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    prod[i + j] += a * b
        table = _power_table(self.level)
        out = [Fraction(0)] * phi
        for k, c in enumerate(prod):
            if c:
                row = table[k]
                for j in range(phi):
                    if row[j]:
                        out[j] += c * row[j]
        return CycNumber(self.level, out)

    __rmul__ = __mul__

    def inverse(self) -> "CycNumber":
        """Multiplicative inverse via extended gcd with the cyclotomic polynomial."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(xi_N)")
        mod = [Fraction(c) for c in cyclotomic_poly(self.level)]
        a = list(self.coeffs)
        # extended Euclid over Q[X]: find u with u*a + v*mod = gcd
        r0, r1 = mod, _poly_trim(a)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while _poly_deg(r1) > 0:
            q, r = _poly_divmod_q(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul_q(q, s1))
        if _poly_deg(r1) < 0:
            raise ZeroDivisionError("inverse of zero in Q(xi_N)")
        c = r1[0]
        inv = [s / c for s in s1]
        inv = inv[: euler_phi(self.level)]
        inv += [Fraction(0)] * (euler_phi(self.level) - len(inv))
        return CycNumber(self.level, inv)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = CycNumber.one(self.level)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "CycNumber":
        """The automorphism xi -> xi^(N-1) (complex conjugation on roots)."""
        table = _power_table(self.level)
        phi = len(self.coeffs)
        out = [Fraction(0)] * phi
        for j, a in enumerate(self.coeffs):
            if a:
                row = table[(self.level - j) % self.level]
                for t in range(phi):
                    if row[t]:
                        out[t] += a * row[t]
        return CycNumber(self.level, out)

    # -- predicates / misc --------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_part(self) -> Fraction:
        return self.coeffs[0]

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.level, self.coeffs))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if j == 0:
                parts.append(str(c))
            else:
                mono = "r" if j == 1 else f"r^{j}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self):
        return {
            "level": self.level,
            "coeffs": [[c.numerator, c.denominator] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data):
        return cls(data["level"], [Fraction(n, d) for n, d in data["coeffs"]])


# rational polynomial helpers for the field inverse


def _poly_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_deg(p):
    return len(_poly_trim(p)) - 1


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


def _poly_mul_q(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _poly_trim(out)


def _poly_divmod_q(a, b):
    a = _poly_trim(a)
    b = _poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b) and _poly_trim(r):
        shift = len(r) - len(b)
        c = r[-1] / b[-1]
        q[shift] = c
        for j, bj in enumerate(b):
            r[shift + j] -= c * bj
        r = _poly_trim(r) + [Fraction(0)] * 0
        r = _poly_trim(r)
        if _poly_deg(r) < _poly_deg(b):
            break
    return _poly_trim(q), _poly_trim(r)


# ---------------------------------------------------------------------------
# The per-prime ring F_p[X]/(X^N - 1)


class PrimeContext:
    """Precomputed data for a prime p with p = -1 (mod N).

    Holds the table of modular inverses 1/k for 0 < k < p (built by batch
    inversion: one running product, a single modular exponentiation and a
    backward sweep) plus numpy views used by the harmonic-sum inner loop.
    """

    __slots__ = ("p", "level", "inv", "inv_np")

    def __init__(self, p: int, level: int):
        if p < 2:
            raise ValueError("p must be a prime >= 2")
        if (p + 1) % level != 0:
            raise ValueError(f"p={p} is not -1 mod N={level}")
        self.p = p
        self.level = level
        # batch inversion of 1..p-1
        pref = [1] * p
        for k in range(1, p):
            pref[k] = pref[k - 1] * k % p
        inv_all = pow(pref[p - 1], p - 2, p)
        inv = [0] * p
        for k in range(p - 1, 0, -1):
            inv[k] = inv_all * pref[k - 1] % p
            inv_all = inv_all * k % p
        self.inv = inv
        self.inv_np = np.array(inv, dtype=np.int64)

    def __repr__(self):
        return f"PrimeContext(p={self.p}, N={self.level})"


@functools.lru_cache(maxsize=512)
def get_prime_context(p: int, level: int) -> PrimeContext:
    return PrimeContext(p, level)


def embed_rational(r, p: int, strict: bool = False) -> int:
    """Reduce a rational mod p; rationals with p in the denominator map to 0.

    With ``strict=True`` the p-in-denominator case raises instead, which is
    the right mode when a silent zero would mask a bad relation coefficient.
    """
    r = Fraction(r)
    if r.denominator % p == 0:
        if strict:
            raise EmbedDenominatorError(r, p)
        return 0
    return r.numerator * pow(r.denominator, p - 2, p) % p


class ModCycNumber:
    """Class of a polynomial in F_p[X]/(X^N - 1); X is the symbolic root."""

    __slots__ = ("p", "level", "coeffs")

    def __init__(self, p: int, level: int, coeffs):
        coeffs = tuple(int(c) % p for c in coeffs)
        if len(coeffs) != level:
            raise ValueError(f"need {level} coefficients")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):
        raise AttributeError("ModCycNumber is immutable")

    @classmethod
    def zero(cls, p, level):
        return cls(p, level, (0,) * level)

    @classmethod
    def one(cls, p, level):
        return cls(p, level, (1,) + (0,) * (level - 1))

    @classmethod
    def scalar(cls, p, level, c):
        return cls(p, level, (c % p,) + (0,) * (level - 1))

    @classmethod
    def x_power(cls, p, level, e):
        c = [0] * level
        c[e % level] = 1
        return cls(p, level, c)

    def _check(self, other):
        if self.p != other.p or self.level != other.level:
            raise ValueError("prime/level mismatch")

    def __add__(self, other):
        if isinstance(other, int):
            other = ModCycNumber.scalar(self.p, self.level, other)
        self._check(other)
        p = self.p
        return ModCycNumber(
            p, self.level, ((a + b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        return ModCycNumber(self.p, self.level, (-a % self.p for a in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = ModCycNumber.scalar(self.p, self.level, other)
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, int):
            p = self.p
            o = other % p
            return ModCycNumber(p, self.level, (a * o % p for a in self.coeffs))
        self._check(other)
        p, n = self.p, self.level
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        k = i + j
                        if k >= n:
                            k -= n
                        out[k] = (out[k] + a * b) % p
        return ModCycNumber(p, n, out)

    __rmul__ = __mul__

    def __pow__(self, m: int):
        if m < 0:
            return self.try_invert() ** (-m)
        out = ModCycNumber.one(self.p, self.level)
        base = self
        while m:
            if m & 1:
                out = out * base
            base = base * base
            m >>= 1
        return out

    def conjugate(self) -> "ModCycNumber":
        """Index negation X^j -> X^(N-j); equals the p-power Frobenius here."""
        n = self.level
        return ModCycNumber(
            self.p, n, (self.coeffs[(n - j) % n] for j in range(n))
        )

    def try_invert(self) -> "ModCycNumber":
        """Invert if the class is a unit; raise ZeroDivisorError otherwise."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        p, n = self.p, self.level
        mod = [0] * (n + 1)
        mod[0], mod[n] = p - 1, 1
        g, u = _xgcd_poly_modp(list(self.coeffs), mod, p)
        if len(_trim_modp(g)) != 1:
            raise ZeroDivisorError(_trim_modp(g), p, n)
        c_inv = pow(g[0], p - 2, p)
        u = [x * c_inv % p for x in u]
        u = (u + [0] * n)[:n]
        return ModCycNumber(p, n, u)

    # -- cyclotomic-factor reduction ---------------------------------------

    def field_coeffs(self) -> tuple[int, ...]:
        """Coefficients of this class reduced mod Phi_N(X) over F_p.

        Two values are equal as colored zeta values exactly when these agree:
        the reduction identifies X with a genuine primitive N-th root of
        unity, simultaneously for every choice of that root.
        """
        p = self.p
        mod = [c % p for c in cyclotomic_poly(self.level)]
        phi = len(mod) - 1
        r = list(self.coeffs)
        for i in range(len(r) - 1, phi - 1, -1):
            c = r[i]
            if c:
                r[i] = 0
                for j in range(phi):
                    r[i - phi + j] = (r[i - phi + j] - c * mod[j]) % p
        return tuple(r[:phi])

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_zero_mod_cyclotomic(self) -> bool:
        return all(c == 0 for c in self.field_coeffs())

    def eq_mod_cyclotomic(self, other) -> bool:
        self._check(other)
        return self.field_coeffs() == other.field_coeffs()

    def __eq__(self, other):
        if isinstance(other, int):
            other = ModCycNumber.scalar(self.p, self.level, other)
        if not isinstance(other, ModCycNumber):
            return NotImplemented
        return (
            self.p == other.p
            and self.level == other.level
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.p, self.level, self.coeffs))

    def __repr__(self):
        return f"Mod({self.p},{self.level};{list(self.coeffs)})"

    def to_json(self):
        return {"prime": self.p, "level": self.level, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, data):
        return cls(data["prime"], data["level"], data["coeffs"])


def _trim_modp(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _xgcd_poly_modp(a, m, p):
    """Extended gcd of polynomials over F_p: returns (g, u) with u*a = g mod m."""
    r0, r1 = _trim_modp(m), _trim_modp(a)
    s0, s1 = [0], [1]
    while r1:
        # divide r0 by r1
        q = [0] * max(len(r0) - len(r1) + 1, 1)
        r = list(r0)
        inv_lead = pow(r1[-1], p - 2, p)
        while len(r) >= len(r1) and _trim_modp(r):
            r = _trim_modp(r)
            if len(r) < len(r1):
                break
            shift = len(r) - len(r1)
            c = r[-1] * inv_lead % p
            q[shift] = c
            for j, bj in enumerate(r1):
                r[shift + j] = (r[shift + j] - c * bj) % p
        r = _trim_modp(r)
        r0, r1 = r1, r
        qs1 = _polymul_modp(q, s1, p)
        ns = [0] * max(len(s0), len(qs1))
        for i, v in enumerate(s0):
            ns[i] = v
        for i, v in enumerate(qs1):
            ns[i] = (ns[i] - v) % p
        s0, s1 = s1, _trim_modp(ns) or [0]
    return (r0 or [0]), s0


def _polymul_modp(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = (out[i + j] + x * y) % p
    return _trim_modp(out)


def embed_cyc(a: CycNumber, ctx: PrimeContext, strict: bool = False) -> ModCycNumber:
    """Coefficient-wise reduction Q(xi_N) -> F_p[X]/(X^N-1) with xi -> X.

    Applied to the canonical (degree < phi(N)) representative.  The map is a
    ring homomorphism after reduction mod Phi_N, commutes with conjugation,
    and sends p-integral rationals to their residues.
    """
    if a.level != ctx.level:
        raise ValueError("level mismatch")
    coeffs = [0] * ctx.level
    for j, c in enumerate(a.coeffs):
        coeffs[j] = embed_rational(c, ctx.p, strict=strict)
    return ModCycNumber(ctx.p, ctx.level, coeffs)
