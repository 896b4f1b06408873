"""High-precision numerics: admissible colored zeta values, regularized
values as polynomials in T, both symmetrized versions, and the truncated
associator with its root-of-unity twists for independent cross-validation.

The numeric kernel writes an admissible value as the iterated integral of its
word over [0,1], splits the integration simplex at 1/2, and evaluates every
piece as a power series at z = 1/2.  After the substitution t -> 1-t on the
upper piece all poles lie at roots of unity xi^-e, at 1 - xi^-e, at 0 or at
1; for levels N in {1,2,3,4,6} every nonzero pole has modulus >= 1, so each
series converges geometrically with ratio 1/2 and carries a closed-form tail
bound (coefficients are dominated by binomial(n+D-1, D-1) with D the number
of nonzero-pole letters).  Other levels are rejected rather than evaluated
without a rigorous bound.

Convention firewall: ``admissible_value`` takes plain nested-series indices
(s_vec, e_vec).  Shuffle-regularized values interpret their input word in the
integral convention (letters are cumulative colors); the plain-to-integral
conversion happens in exactly one place, inside ``scv``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpc, mpf

from .cyclotomic import CycNumber
from .words import XWord, YWord, p_map, q_map, r_eta, to_x, to_y, yword
from .wordalg import (
    LinComb,
    reg_decompose,
    reg_trailing_constant,
    shuffle_x,
    symmetrize_word,
)

__all__ = [
    "NumericContext",
    "BigComplex",
    "RegPoly",
    "PrecisionNotAchieved",
    "TCancellationError",
    "admissible_value",
    "reg_value",
    "rho_apply",
    "scv",
    "Associator",
    "build_associator",
    "scv_via_phi",
    "moduloz2_residual",
    "rational_reconstruct",
]

_SAFE_LEVELS = (1, 2, 3, 4, 6)


class PrecisionNotAchieved(RuntimeError):
    """Requested tolerance could not be certified; carries best value+bound."""

    def __init__(self, value, bound, msg="precision not achieved"):
        self.value = value
        self.bound = bound
        super().__init__(f"{msg}: bound={bound}")


class TCancellationError(ArithmeticError):
    """Degree >= 1 coefficients of a symmetrized assembly failed to cancel."""


@dataclass(frozen=True)
class NumericContext:
    """Working precision (decimal digits) and target tolerances."""

    dps: int = 60
    tolerance: float = 1e-10

    @property
    def kernel_tol(self) -> float:
        """Per-value truncation target; far below the user tolerance."""
        return 10.0 ** -(max(self.dps - 10, 15))

    @property
    def workdps(self) -> int:
        return self.dps + 10


DEFAULT_CONTEXT = NumericContext()


class BigComplex:
    """An mpmath complex value with a conservatively propagated error bound."""

    __slots__ = ("value", "err")

    def __init__(self, value, err=0.0):
        if isinstance(value, Fraction):
            value = mpf(value.numerator) / value.denominator
        self.value = mpc(value)
        self.err = float(err)

    def _rel(self):
        # one-op rounding allowance at the current working precision
        return float(abs(self.value)) * 10.0 ** -(mp.dps - 2)

    @staticmethod
    def _coerce(other):
        if isinstance(other, BigComplex):
            return other
        if isinstance(other, (int, float, Fraction, mpf, mpc, complex)):
            return BigComplex(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = BigComplex(self.value + other.value, self.err + other.err)
        out.err += out._rel()
        return out

    __radd__ = __add__

    def __neg__(self):
        return BigComplex(-self.value, self.err)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = float(abs(self.value)), float(abs(other.value))
        out = BigComplex(
            self.value * other.value,
            a * other.err + b * self.err + self.err * other.err,
        )
        out.err += out._rel()
        return out

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = other if isinstance(other, BigComplex) else BigComplex(other)
        b = float(abs(other.value))
        if b == 0.0:
            raise ZeroDivisionError("division by zero BigComplex")
        q = self.value / other.value
        err = (self.err + float(abs(q)) * other.err) / max(b - other.err, b / 2)
        out = BigComplex(q, err)
        out.err += out._rel()
        return out

    def __abs__(self):
        return abs(self.value)

    def conjugate(self):
        return BigComplex(self.value.conjugate(), self.err)

    def __repr__(self):
        return f"BigComplex({self.value}, err<={self.err:.2e})"

    def to_json(self):
        return {
            "re": mp.nstr(self.value.real, mp.dps),
            "im": mp.nstr(self.value.imag, mp.dps),
            "err_bound": self.err,
        }


def cyc_to_mpc(c: CycNumber) -> mpc:
    """Numeric value of a cyclotomic number at xi = exp(2 pi i / N)."""
    out = mpc(0)
    for j, a in enumerate(c.coeffs):
        if a:
            root = mp.expjpi(mpf(2 * j) / c.level)
            out += mpf(a.numerator) / a.denominator * root
    return out


# ---------------------------------------------------------------------------
# The split-integral kernel


def _pole_of_letter(a, level: int):
    """Pole of the integrand form for an X-letter: None -> 0, e -> xi^-e."""
    if a is None:
        return None  # the dt/t form
    if a % level == 0:
        return mpc(1)
    return mp.expjpi(mpf(-2 * (a % level)) / level)


def _integrate_letter(series, pole, M):
    """One outer integration: series of G(w';t) -> series of int form*G."""
    if pole is None:
        # dt/t: g_n -> g_n / n; g_0 must vanish
        out = [mpc(0)] * M
        for n in range(1, M):
            out[n] = series[n] / n
        return out
    inv_q = 1 / pole
    out = [mpc(0)] * M
    r = mpc(0)
    for m in range(M - 1):
        r = (r + series[m]) * inv_q
        out[m + 1] = r / (m + 1)
    return out


def _tail_bound(M: int, D: int) -> float:
    """Bound for sum_(n>=M) C(n+D-1, D-1) (1/2)^n, valid for all |poles|>=1."""
    if D == 0:
        return 0.0
    term = math.comb(M + D - 1, D - 1) * 0.5**M
    rho = 0.5 * (M + D) / (M + 1)
    if rho >= 0.95:
        return float("inf")
    return term / (1.0 - rho)


def _choose_truncation(tol: float, weight: int) -> int:
    M = max(48, int(-math.log2(max(tol, 1e-300))) + 16)
    while _tail_bound(M, weight + 1) > tol and M < 1 << 20:
        M = int(M * 1.4) + 8
    return M


def _split_value(xw: XWord, level: int, ctx: NumericContext) -> BigComplex:
    """Iterated integral over [0,1] of an admissible X-word, by 1/2-splitting."""
    tol = ctx.kernel_tol
    M = _choose_truncation(tol, xw.weight)
    with mp.workdps(ctx.workdps):
        half = mpf(1) / 2
        powers = [half**n for n in range(M)]

        def evaluate(series):
            acc = mpc(0)
            for n in range(M - 1, -1, -1):
                if series[n]:
                    acc += series[n] * powers[n]
            return acc

        m = len(xw)
        # suffix chain: S[j] = value of the plain piece a_(j+1)..a_m at 1/2
        s_vals = [mpc(1)] * (m + 1)
        s_D = [0] * (m + 1)
        series = [mpc(0)] * M
        series[0] = mpc(1)
        for j in range(m - 1, -1, -1):
            pole = _pole_of_letter(xw[j], level)
            series = _integrate_letter(series, pole, M)
            s_D[j] = s_D[j + 1] + (0 if pole is None else 1)
            s_vals[j] = evaluate(series)
        # prefix chain: T[j] = value of the reflected piece of a_1..a_j, with sign
        t_vals = [mpc(1)] * (m + 1)
        t_D = [0] * (m + 1)
        signs = [1] * (m + 1)
        series = [mpc(0)] * M
        series[0] = mpc(1)
        for j in range(1, m + 1):
            a = xw[j - 1]
            if a is None:
                pole = mpc(1)  # 1/t at 1-tau is the pole-1 integrand
                signs[j] = signs[j - 1]
            elif a % level == 0:
                pole = None  # 1/(1-t) at 1-tau is 1/tau
                signs[j] = signs[j - 1]
            else:
                # 1/(q-t) at 1-tau is -1/((1-q)-tau)
                pole = 1 - mp.expjpi(mpf(-2 * (a % level)) / level)
                signs[j] = -signs[j - 1]
            series = _integrate_letter(series, pole, M)
            t_D[j] = t_D[j - 1] + (0 if pole is None else 1)
            t_vals[j] = evaluate(series)

        total = BigComplex(0)
        for j in range(m + 1):
            left = BigComplex(t_vals[j], _tail_bound(M, t_D[j]))
            right = BigComplex(s_vals[j], _tail_bound(M, s_D[j]))
            total = total + signs[j] * left * right
        if total.err > ctx.tolerance:
            raise PrecisionNotAchieved(total.value, total.err)
        return total


_value_cache: dict = {}


def admissible_value(
    s_vec, e_vec, level: int, ctx: NumericContext = DEFAULT_CONTEXT
) -> BigComplex:
    """Numeric value of the admissible nested series with plain indices.

    sum over k1 > ... > kd > 0 of xi^(e1 k1 + ... + ed kd) / (k1^s1 ... kd^sd)
    with xi = exp(2 pi i / N).  Requires (s1, e1) != (1, 0).
    """
    if level not in _SAFE_LEVELS:
        raise ValueError(
            f"level {level} has integrand poles inside the disk; "
            f"supported levels: {_SAFE_LEVELS}"
        )
    s_vec = tuple(int(s) for s in s_vec)
    e_vec = tuple(int(e) % level for e in e_vec)
    if len(s_vec) != len(e_vec):
        raise ValueError("index tuples differ in length")
    if s_vec and (s_vec[0], e_vec[0]) == (1, 0):
        raise ValueError("series diverges: leading index (1, trivial color)")
    key = (level, s_vec, e_vec, ctx.dps)
    hit = _value_cache.get(key)
    if hit is not None:
        return hit
    if not s_vec:
        out = BigComplex(1)
    else:
        w = yword(zip(s_vec, e_vec), level)
        xw = to_x(p_map(w, level))
        out = _split_value(xw, level, ctx)
    _value_cache[key] = out
    return out


# ---------------------------------------------------------------------------
# Regularized values as polynomials in T


class RegPoly:
    """Polynomial in the regularization parameter with BigComplex coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [c if isinstance(c, BigComplex) else BigComplex(c) for c in coeffs]
        while len(cs) > 1 and abs(cs[-1].value) <= cs[-1].err:
            cs.pop()
        if not cs:
            cs = [BigComplex(0)]
        self.coeffs = cs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, j: int) -> BigComplex:
        return self.coeffs[j] if j < len(self.coeffs) else BigComplex(0)

    def constant(self) -> BigComplex:
        return self.coeffs[0]

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return RegPoly(
            [self.coeff(j) + other.coeff(j) for j in range(n)]
        )

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return RegPoly([self.coeff(j) - other.coeff(j) for j in range(n)])

    def __mul__(self, other):
        if isinstance(other, RegPoly):
            out = [BigComplex(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return RegPoly(out)
        return RegPoly([other * c for c in self.coeffs])

    __rmul__ = __mul__

    def __repr__(self):
        return "RegPoly(" + ", ".join(repr(c) for c in self.coeffs) + ")"


def _eval_shuffle_word(w: YWord, level: int, ctx: NumericContext) -> BigComplex:
    """Value of an admissible integral-convention word (letters cumulative)."""
    pw = q_map(w, level)
    return admissible_value(pw.exponents(), pw.colors(), level, ctx)


def reg_value(
    w: YWord, product: str, level: int, ctx: NumericContext = DEFAULT_CONTEXT
) -> RegPoly:
    """Regularized value of a word as a polynomial in T.

    For ``product='stuffle'`` the word carries plain series indices; for
    ``product='shuffle'`` it is an integral-convention word (the letters are
    the cumulative colors).  In both cases the decomposition into admissible
    pieces happens symbolically and exactly; only admissible values are
    evaluated numerically.
    """
    decomp = reg_decompose(YWord(w), product, level)
    evalword = (
        (lambda v: admissible_value(v.exponents(), v.colors(), level, ctx))
        if product == "stuffle"
        else (lambda v: _eval_shuffle_word(v, level, ctx))
    )
    with mp.workdps(ctx.workdps):
        out = []
        for j, cj in enumerate(decomp.coefficients):
            acc = BigComplex(0)
            for word, coeff in cj.terms.items():
                acc = acc + BigComplex(cyc_to_mpc(coeff)) * evalword(word)
            out.append(Fraction(1, math.factorial(j)) * acc)
        return RegPoly(out)


def _zeta_constant(n: int, ctx: NumericContext) -> BigComplex:
    return admissible_value((n,), (0,), 1, ctx)


def rho_apply(poly: RegPoly, ctx: NumericContext = DEFAULT_CONTEXT) -> RegPoly:
    """The linear comparison map between the two regularizations.

    Acts on exp(Tu) by multiplication with exp(sum_(n>=2) (-1)^n zeta(n)/n u^n);
    concretely rho(T^n/n!) = sum_(j<=n) a_(n-j) T^j/j! with a the coefficient
    sequence of that exponential.
    """
    deg = poly.degree
    with mp.workdps(ctx.workdps):
        # c_n = (-1)^n zeta(n)/n for n >= 2; a = exp-series coefficients
        c = [BigComplex(0)] * (deg + 1)
        for n in range(2, deg + 1):
            sign = 1 if n % 2 == 0 else -1
            c[n] = Fraction(sign, n) * _zeta_constant(n, ctx)
        a = [BigComplex(0)] * (deg + 1)
        a[0] = BigComplex(1)
        for m in range(1, deg + 1):
            acc = BigComplex(0)
            for j in range(2, m + 1):
                acc = acc + j * c[j] * a[m - j]
            a[m] = Fraction(1, m) * acc
        out = [BigComplex(0)] * (deg + 1)
        for n in range(deg + 1):
            bn = poly.coeff(n)
            scaled = math.factorial(n) * bn
            for j in range(n + 1):
                out[j] = out[j] + Fraction(1, math.factorial(j)) * (
                    scaled * a[n - j]
                )
        return RegPoly(out)


# ---------------------------------------------------------------------------
# Symmetrized values


def scv(
    s_vec,
    e_vec,
    version: str,
    level: int,
    ctx: NumericContext = DEFAULT_CONTEXT,
) -> BigComplex:
    """Symmetrized value at plain indices, for either product version.

    Assembles the symmetrization terms with regularized values at symbolic T,
    checks that every degree >= 1 coefficient cancels (they must, so a failure
    signals an implementation or precision bug), and returns the constant.
    """
    if version not in ("stuffle", "shuffle"):
        raise ValueError("version must be 'stuffle' or 'shuffle'")
    w = yword(zip(s_vec, e_vec), level)
    with mp.workdps(ctx.workdps):
        total = RegPoly([BigComplex(0)])
        for coeff, left, right in symmetrize_word(w, level):
            if version == "stuffle":
                pl = reg_value(left, "stuffle", level, ctx)
                pr = reg_value(right, "stuffle", level, ctx)
            else:
                pl = reg_value(p_map(left, level), "shuffle", level, ctx)
                pr = reg_value(p_map(right, level), "shuffle", level, ctx)
            total = total + BigComplex(cyc_to_mpc(coeff)) * (pl * pr)
        for j in range(1, total.degree + 1):
            cj = total.coeff(j)
            if abs(cj.value) > max(ctx.tolerance, 10 * cj.err):
                raise TCancellationError(
                    f"T^{j} coefficient {cj!r} of symmetrized value "
                    f"({s_vec}; {e_vec}) at level {level} did not cancel"
                )
        return total.constant()


def scv_of_word(
    w: YWord, version: str, level: int, ctx: NumericContext = DEFAULT_CONTEXT
) -> BigComplex:
    """Symmetrized value of a word under the version's own word convention.

    Stuffle words carry plain indices; shuffle words are integral-convention
    and are converted through their consecutive color ratios.
    """
    w = YWord(w)
    if version == "stuffle":
        return scv(w.exponents(), w.colors(), version, level, ctx)
    pw = q_map(w, level)
    return scv(pw.exponents(), pw.colors(), version, level, ctx)


# ---------------------------------------------------------------------------
# Associator truncation


class Associator:
    """Weight-truncated coefficient table of the level-N associator.

    ``phi[u]`` for every X-word of weight <= max_weight, with the twisted
    tables and their inverses derived by re-coloring and reversal.  Group-like
    up to the truncation weight: phi[u sh v] = phi[u] phi[v].
    """

    def __init__(self, level: int, max_weight: int, ctx: NumericContext, phi):
        self.level = level
        self.max_weight = max_weight
        self.ctx = ctx
        self.phi = phi  # dict XWord -> BigComplex
        self._twist_cache: dict = {}

    def coeff(self, w: XWord) -> BigComplex:
        return self.phi.get(XWord(w), BigComplex(0))

    def twisted(self, eta_exp: int):
        """Coefficient tables of the twist and its inverse for xi^eta_exp."""
        key = eta_exp % self.level
        hit = self._twist_cache.get(key)
        if hit is not None:
            return hit
        tw = {}
        tw_inv = {}
        for w in self.phi:
            tw[w] = self.coeff(r_eta(w, key, self.level))
            sign = -1 if w.weight % 2 else 1
            tw_inv[w] = sign * self.coeff(r_eta(w.reversed(), key, self.level))
        out = (tw, tw_inv)
        self._twist_cache[key] = out
        return out

    def sandwich(self, eta_exp: int):
        """Series product (twist inverse) * x_eta * twist, truncated."""
        tw, tw_inv = self.twisted(eta_exp)
        mid = {
            XWord(((eta_exp % self.level),) + tuple(w)): c for w, c in tw.items()
        }
        return _series_product(tw_inv, mid, self.max_weight + 1)

    def group_like_defect(self) -> float:
        """Max |phi[u sh v] - phi[u] phi[v]| over nonempty split pairs."""
        worst = 0.0
        words = sorted(self.phi, key=lambda w: (w.weight, tuple(-2 if a is None else a for a in w)))
        for u in words:
            if not u or u.weight * 2 > self.max_weight:
                continue
            for v in words:
                if not v or u.weight + v.weight > self.max_weight:
                    continue
                acc = BigComplex(0)
                for w, mult in shuffle_x(u, v).items():
                    acc = acc + mult * self.coeff(w)
                diff = abs((acc - self.coeff(u) * self.coeff(v)).value)
                worst = max(worst, float(diff))
        return worst

    def to_json(self):
        items = sorted(self.phi.items(), key=lambda t: (t[0].weight, str(t[0])))
        return {
            "schema": 1,
            "level": self.level,
            "max_weight": self.max_weight,
            "precision": self.ctx.dps,
            "coefficients": [
                {"word": w.to_json(), "value": c.to_json()} for w, c in items
            ],
        }


def _series_product(a: dict, b: dict, max_weight: int) -> dict:
    out: dict[XWord, BigComplex] = {}
    for u, cu in a.items():
        if u.weight > max_weight:
            continue
        for v, cv in b.items():
            if u.weight + v.weight > max_weight:
                continue
            w = XWord(tuple(u) + tuple(v))
            prev = out.get(w)
            term = cu * cv
            out[w] = term if prev is None else prev + term
    return out


def build_associator(
    level: int, max_weight: int = 4, ctx: NumericContext = DEFAULT_CONTEXT
) -> Associator:
    """Fill every coefficient of weight <= max_weight from regularized values.

    Words with no trailing x0 get (-1)^depth times the shuffle-regularized
    value at T = 0; trailing x0 letters are removed by the mirror-image
    shuffle regularization, whose T^0 part is all that survives.
    """
    import itertools

    with mp.workdps(ctx.workdps):
        phi: dict[XWord, BigComplex] = {XWord(): BigComplex(1)}
        letters = [None] + list(range(level))
        for wgt in range(1, max_weight + 1):
            for tup in itertools.product(letters, repeat=wgt):
                u = XWord(tup)
                acc = BigComplex(0)
                for base, frac in reg_trailing_constant(u).items():
                    yw = to_y(base)
                    sign = -1 if yw.depth % 2 else 1
                    val = reg_value(yw, "shuffle", level, ctx).constant()
                    acc = acc + (sign * frac) * val
                phi[u] = acc
        assoc = Associator(level, max_weight, ctx, phi)
        defect = assoc.group_like_defect()
        if defect > ctx.tolerance:
            raise PrecisionNotAchieved(None, defect, "associator not group-like")
        return assoc


def scv_via_phi(
    w: YWord,
    level: int,
    ctx: NumericContext = DEFAULT_CONTEXT,
    assoc: Associator | None = None,
) -> BigComplex:
    """Shuffle-symmetrized value of a plain-index word from the associator.

    Extracts the coefficient of x_1 * (integral form of w) in the sandwich
    products, summed over twists with conjugate-root weights.  Independent of
    the direct symmetrized assembly, hence a cross-check of both.
    """
    w = YWord(w)
    if assoc is None:
        assoc = build_associator(level, max(w.weight + 1, 2), ctx)
    if w.weight + 1 > assoc.max_weight:
        raise ValueError(
            f"truncation weight {assoc.max_weight} too small for {w!r}"
        )
    u = to_x(p_map(w, level))
    target = XWord((0,) + tuple(u))
    with mp.workdps(ctx.workdps):
        total = BigComplex(0)
        for e in range(level):
            sandwich = assoc.sandwich(e)
            coeff = sandwich.get(target)
            if coeff is None:
                continue
            root = mp.expjpi(mpf(-2 * e) / level)  # conjugate of xi^e
            total = total + BigComplex(root) * coeff
        if w.depth % 2:
            total = -total
        return total


# ---------------------------------------------------------------------------
# Difference of the two versions modulo zeta(2), with rational reconstruction


def rational_reconstruct(x, tol: float, max_den: int = 10**4) -> Fraction | None:
    """Best continued-fraction approximation with bounded denominator."""
    x = mpf(x)
    p0, q0, p1, q1 = 1, 0, int(mp.floor(x)), 1
    frac = x - mp.floor(x)
    for _ in range(64):
        if abs(x - Fraction(p1, q1)) <= tol:
            return Fraction(p1, q1)
        if frac == 0:
            break
        x_next = 1 / frac
        a = int(mp.floor(x_next))
        frac = x_next - a
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        if q1 > max_den:
            return None
    return Fraction(p1, q1) if abs(mpf(x) - Fraction(p1, q1)) <= tol else None


@dataclass
class Zeta2Residual:
    """Outcome of dividing the version difference by zeta(2)."""

    value: BigComplex
    coords: tuple
    fractions: tuple
    reconstructed: bool

    def to_json(self):
        return {
            "value": self.value.to_json(),
            "coords": [mp.nstr(c, 20) for c in self.coords],
            "fractions": [
                None if f is None else [f.numerator, f.denominator]
                for f in self.fractions
            ],
            "reconstructed": self.reconstructed,
        }


def moduloz2_residual(
    s_vec, e_vec, level: int, ctx: NumericContext = DEFAULT_CONTEXT
) -> Zeta2Residual:
    """(shuffle version - stuffle version) / zeta(2), with an attempt to
    recognize the coordinates over the power basis of Q(xi_N) as rationals."""
    phi_n = len(CycNumber.one(level).coeffs)
    if phi_n > 2:
        raise ValueError("coordinate solve needs phi(N) <= 2")
    with mp.workdps(ctx.workdps):
        va = scv(s_vec, e_vec, "shuffle", level, ctx)
        vb = scv(s_vec, e_vec, "stuffle", level, ctx)
        z2 = _zeta_constant(2, ctx)
        resid = (va - vb) / z2
        if phi_n == 1:
            coords = (resid.value.real,)
        else:
            root = mp.expjpi(mpf(2) / level)
            # resid = r0 + r1 * root with r0, r1 real
            r1 = resid.value.imag / root.imag
            r0 = resid.value.real - r1 * root.real
            coords = (r0, r1)
        tol = max(resid.err * 10, 1e-12, abs(resid.value) * 1e-25)
        fracs = tuple(rational_reconstruct(c, tol) for c in coords)
        ok = all(f is not None for f in fracs)
        if phi_n == 1 and abs(resid.value.imag) > tol:
            ok = False
        return Zeta2Residual(resid, coords, fracs, ok)
