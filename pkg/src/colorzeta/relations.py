"""Relation families among finite colored zeta values, exact rank bounds
over Q(xi_N), basis checks, and the dual finite/symmetrized evidence harness.

Families generated symbolically as LinCombs over plain-index words:

* reversal      -- reversed word against the conjugated word;
* homogeneous   -- vanishing of equal-exponent words with trivial colors
                   (finite side only; the symmetrized analog is nonzero);
* imported      -- level-4 depth-one folding relations linking the color -1
                   to the colors +-i (these are classical inputs that the
                   shuffle/stuffle/reversal families do not reproduce);
* linear-shuffle -- u sh v = tau(u) v pushed to plain-index columns;
* linear-stuffle -- known lower-weight relations multiplied by all words.

All matrices share one column basis: plain-index words of a single weight in
canonical order.  Elimination is exact over the field Q(xi_N).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import mp, mpc, mpf

from .cyclotomic import CycNumber
from .fcv import VerifyReport, verify_fcv_relation
from .scv import BigComplex, NumericContext, DEFAULT_CONTEXT, cyc_to_mpc, scv
from .wordalg import LinComb, stuffle, shuffle
from .words import YWord, all_ywords, canonical_key, q_map, tau, yword

__all__ = [
    "RelationRecord",
    "BoundReport",
    "BasisReport",
    "DualReport",
    "gen_reversal",
    "gen_homogeneous",
    "gen_depth1_fold",
    "gen_linear_shuffle",
    "gen_linear_stuffle",
    "rank_and_bound",
    "basis_check",
    "conjectured_basis",
    "dual_verify",
    "build_relations",
    "StageResult",
]


@dataclass(frozen=True)
class RelationRecord:
    """One homogeneous relation: the combination asserts to zero."""

    level: int
    weight: int
    provenance: str
    combo: LinComb
    fcv_only: bool = False
    meta: tuple = ()

    def to_json(self):
        return {
            "schema": 1,
            "level": self.level,
            "weight": self.weight,
            "provenance": self.provenance,
            "fcv_only": self.fcv_only,
            "combo": self.combo.to_json(),
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            level=data["level"],
            weight=data["weight"],
            provenance=data.get("provenance", "imported"),
            combo=LinComb.from_json(data["combo"]),
            fcv_only=data.get("fcv_only", False),
        )


def _normalize_integral(combo: LinComb) -> LinComb:
    """Scale by a positive rational so all coordinates are coprime integers."""
    denom = 1
    for c in combo.terms.values():
        for x in c.coeffs:
            denom = denom * x.denominator // math.gcd(denom, x.denominator)
    scaled = Fraction(denom) * combo
    num_gcd = 0
    for c in scaled.terms.values():
        for x in c.coeffs:
            num_gcd = math.gcd(num_gcd, x.numerator)
    if num_gcd > 1:
        scaled = Fraction(1, num_gcd) * scaled
    return scaled


def _dedupe_key(combo: LinComb):
    items = combo.canonical_items()
    lead = items[0][1]
    unit = lead.inverse() * combo
    return tuple((tuple(w), u.coeffs) for w, u in unit.canonical_items())


def _record(level, weight, provenance, combo, fcv_only=False, meta=()):
    return RelationRecord(
        level, weight, provenance, _normalize_integral(combo), fcv_only, meta
    )


# ---------------------------------------------------------------------------
# Families


def gen_reversal(weight: int, level: int) -> list[RelationRecord]:
    """Reversed word minus the sign-and-root weighted conjugated word."""
    out = []
    seen = set()
    sign = -1 if weight % 2 else 1
    for w in all_ywords(weight, level):
        coeff = CycNumber.root_power(level, -sum(w.colors())) * sign
        combo = LinComb.from_word(w.reversed(), level) - LinComb.from_word(
            w.conjugated(level), level, coeff
        )
        if combo.is_zero():
            continue
        key = _dedupe_key(combo)
        if key in seen:
            continue
        seen.add(key)
        out.append(_record(level, weight, "reversal", combo, meta=(tuple(w),)))
    return out


def gen_homogeneous(weight: int, level: int) -> list[RelationRecord]:
    """Vanishing of ({s}^d; trivial colors) for each factorization s*d = w.

    Finite side only: the symmetrized values of these words are generally
    nonzero, so the records carry the fcv_only flag.
    """
    out = []
    for d in range(1, weight + 1):
        if weight % d:
            continue
        s = weight // d
        w = yword([(s, 0)] * d, level)
        out.append(
            _record(
                level,
                weight,
                "homogeneous",
                LinComb.from_word(w, level),
                fcv_only=True,
                meta=((s, d),),
            )
        )
    return out


def gen_depth1_fold(weight: int, level: int) -> list[RelationRecord]:
    """Level-4 depth-one folds: color -1 against the colors +-i.

    For odd w the half-range substitution k -> p-k gives
    z(w; -1) = 2^w (z(w; i) + z(w; -i)); for even w it gives z(w; -1) = 0.
    These classical inputs are required to reach the expected rank at even
    levels; they are not consequences of the other families.
    """
    if level != 4:
        return []
    minus_one = yword([(weight, 2)], level)
    if weight % 2 == 0:
        combo = LinComb.from_word(minus_one, level)
    else:
        combo = (
            LinComb.from_word(minus_one, level)
            - LinComb.from_word(yword([(weight, 1)], level), level, 2**weight)
            - LinComb.from_word(yword([(weight, 3)], level), level, 2**weight)
        )
    return [_record(level, weight, "imported", combo, meta=("depth1-fold",))]


def _level_one_words(weight: int) -> list[YWord]:
    return [w for w in all_ywords(weight, 1)]


def gen_linear_shuffle(weight: int, level: int) -> list[RelationRecord]:
    """Records q(u sh v - tau(u) v) for level-one u and level-N v.

    The shuffle-convention combination is converted once to plain-index
    columns so every family shares the same column basis.
    """
    out = []
    seen = set()
    for k in range(1, weight + 1):
        vs = (
            [YWord(())]
            if k == weight
            else all_ywords(weight - k, level)
        )
        for u1 in _level_one_words(k):
            u = yword(tuple(u1), level)
            t = tau(u, level)
            for v in vs:
                sh = shuffle(
                    LinComb.from_word(u, level), LinComb.from_word(v, level)
                )
                tv = LinComb.from_word(
                    YWord(tuple(t.word) + tuple(v)), level, t.coeff
                )
                combo = (sh - tv).map_words(lambda w: q_map(w, level))
                if combo.is_zero():
                    continue
                key = _dedupe_key(combo)
                if key in seen:
                    continue
                seen.add(key)
                out.append(
                    _record(
                        level,
                        weight,
                        "linear-shuffle",
                        combo,
                        meta=(tuple(u), tuple(v)),
                    )
                )
    return out


def gen_linear_stuffle(
    weight: int, level: int, known: list[RelationRecord]
) -> list[RelationRecord]:
    """Multiply each known lower-weight relation by every complementary word."""
    out = []
    seen = set()
    for rec in known:
        k = rec.weight
        if k >= weight:
            continue
        for v in all_ywords(weight - k, level):
            combo = stuffle(rec.combo, LinComb.from_word(v, level))
            if combo.is_zero():
                continue
            key = _dedupe_key(combo)
            if key in seen:
                continue
            seen.add(key)
            out.append(
                _record(level, weight, "linear-stuffle", combo, meta=(tuple(v),))
            )
    return out


# ---------------------------------------------------------------------------
# Exact elimination over Q(xi_N)


def _rows_from_records(records, columns_index):
    rows = []
    for rec in records:
        row = {}
        for w, c in rec.combo.terms.items():
            row[columns_index[w]] = c
        rows.append(row)
    return rows


def _reduce_against(row: dict, pivots: dict):
    """Eliminate a sparse row against echelon pivot rows (leading col minimal)."""
    r = dict(row)
    while r:
        c = min(r)
        piv = pivots.get(c)
        if piv is None:
            return c, r
        coeff = r.pop(c)
        for pc, pv in piv.items():
            if pc == c:
                continue
            cur = r.get(pc)
            nv = cur - coeff * pv if cur is not None else -1 * (coeff * pv)
            if nv.is_zero():
                r.pop(pc, None)
            else:
                r[pc] = nv
    return None, r


def _insert_row(row, pivots) -> bool:
    """Reduce and insert; True if the row increased the rank."""
    c, r = _reduce_against(row, pivots)
    if c is None:
        return False
    inv = r[c].inverse()
    pivots[c] = {k: inv * v for k, v in r.items()}
    return True


@dataclass
class BoundReport:
    level: int
    weight: int
    n_columns: int
    rank: int
    dim_upper_bound: int
    quotient_words: list
    family_ranks: dict
    q_rank: int | None = None
    q_dim_upper_bound: int | None = None

    def to_json(self):
        return {
            "schema": 1,
            "level": self.level,
            "weight": self.weight,
            "columns": self.n_columns,
            "rank": self.rank,
            "dim_upper_bound": self.dim_upper_bound,
            "quotient_words": [w.to_json() for w in self.quotient_words],
            "family_ranks": dict(self.family_ranks),
            "q_rank": self.q_rank,
            "q_dim_upper_bound": self.q_dim_upper_bound,
        }


def rank_and_bound(
    records: list[RelationRecord],
    weight: int,
    level: int,
    q_rank: bool = False,
) -> BoundReport:
    """Exact echelon rank of the relations over Q(xi_N) and the dimension bound.

    Rows are processed family by family in the given order, recording each
    family's marginal rank contribution.  The quotient words are the
    non-pivot columns, i.e. classes spanning the quotient space.

    With ``q_rank`` the computation is repeated over Q by restriction of
    scalars (each relation multiplied by each power of the root; columns
    split into phi(N) rational coordinates); exploratory.
    """
    columns = all_ywords(weight, level)
    col_index = {w: j for j, w in enumerate(columns)}
    pivots: dict = {}
    family_ranks: dict = {}
    for rec in records:
        row = {col_index[w]: c for w, c in rec.combo.terms.items()}
        if _insert_row(row, pivots):
            family_ranks[rec.provenance] = family_ranks.get(rec.provenance, 0) + 1
    rank = len(pivots)
    quotient = [columns[j] for j in range(len(columns)) if j not in pivots]
    report = BoundReport(
        level=level,
        weight=weight,
        n_columns=len(columns),
        rank=rank,
        dim_upper_bound=len(columns) - rank,
        quotient_words=quotient,
        family_ranks=family_ranks,
    )
    if q_rank:
        phi = len(CycNumber.one(level).coeffs)
        qpivots: dict = {}
        for rec in records:
            for t in range(phi):
                scaled = CycNumber.root_power(level, t) * rec.combo
                row = {}
                for w, c in scaled.terms.items():
                    base = col_index[w] * phi
                    for j, x in enumerate(c.coeffs):
                        if x:
                            row[base + j] = x
                _insert_q_row(row, qpivots)
        report.q_rank = len(qpivots)
        report.q_dim_upper_bound = len(columns) * phi - len(qpivots)
    return report


def _insert_q_row(row: dict, pivots: dict) -> bool:
    r = dict(row)
    while r:
        c = min(r)
        piv = pivots.get(c)
        if piv is None:
            inv = Fraction(1, 1) / r[c]
            pivots[c] = {k: inv * v for k, v in r.items()}
            return True
        coeff = r.pop(c)
        for pc, pv in piv.items():
            if pc == c:
                continue
            nv = r.get(pc, Fraction(0)) - coeff * pv
            if nv:
                r[pc] = nv
            else:
                r.pop(pc, None)
    return False


def conjectured_basis(weight: int, level: int) -> list[YWord]:
    """All-ones exponents with colors (1, d2, ..., dw), d in {0,1}."""
    import itertools

    out = []
    for ds in itertools.product((0, 1), repeat=weight - 1):
        out.append(yword([(1, 1)] + [(1, d) for d in ds], level))
    return sorted(out, key=canonical_key)


@dataclass
class BasisReport:
    level: int
    weight: int
    basis_words: list
    spans: bool
    dim_upper_bound: int
    unresolved: list

    def to_json(self):
        return {
            "schema": 1,
            "level": self.level,
            "weight": self.weight,
            "basis": [w.to_json() for w in self.basis_words],
            "spans": self.spans,
            "dim_upper_bound": self.dim_upper_bound,
            "unresolved": [w.to_json() for w in self.unresolved],
        }


def basis_check(
    weight: int, level: int, records: list[RelationRecord]
) -> BasisReport:
    """Do the conjectured basis words generate the quotient by the relations?

    Adds a unit row for each conjectured word on top of the relation echelon;
    the words generate exactly when the combined rank is full.  Generation is
    what is checked; linear independence is not claimed.
    """
    columns = all_ywords(weight, level)
    col_index = {w: j for j, w in enumerate(columns)}
    pivots: dict = {}
    for rec in records:
        row = {col_index[w]: c for w, c in rec.combo.terms.items()}
        _insert_row(row, pivots)
    rank = len(pivots)
    basis = conjectured_basis(weight, level)
    one = CycNumber.one(level)
    for b in basis:
        _insert_row({col_index[b]: one}, pivots)
    spans = len(pivots) == len(columns)
    unresolved = [columns[j] for j in range(len(columns)) if j not in pivots]
    return BasisReport(
        level=level,
        weight=weight,
        basis_words=basis,
        spans=spans,
        dim_upper_bound=len(columns) - rank,
        unresolved=unresolved,
    )


# ---------------------------------------------------------------------------
# Dual evidence harness


@dataclass
class DualReport:
    """Finite-side verdict and symmetrized-side residual for one relation."""

    record: RelationRecord
    fcv: VerifyReport
    scv_value: BigComplex
    scv_over_2pii: mpc
    projection_coeffs: list
    residual: float

    @property
    def fcv_ok(self) -> bool:
        return self.fcv.ok

    def to_json(self):
        return {
            "schema": 1,
            "relation": self.record.to_json(),
            "fcv_verdict": self.fcv.to_json(),
            "scv_value": self.scv_value.to_json(),
            "scv_over_2pii": {
                "re": mp.nstr(self.scv_over_2pii.real, 20),
                "im": mp.nstr(self.scv_over_2pii.imag, 20),
            },
            "scv_residual": self.residual,
        }


def dual_verify(
    record: RelationRecord,
    primes,
    ctx: NumericContext = DEFAULT_CONTEXT,
) -> DualReport:
    """Exact per-prime check plus the symmetrized 2-pi-i quotient evidence.

    The symmetrized image of the combination (shuffle version, plain-index
    map) is divided by 2 pi i and projected, in the least-squares sense, onto
    the complex span of the symmetrized values one weight below; the residual
    norm is reported.  Everything is data: no outcome raises.
    """
    rep = verify_fcv_relation(record.combo, primes)
    with mp.workdps(ctx.workdps):
        total = BigComplex(0)
        for w, c in record.combo.canonical_items():
            val = scv(w.exponents(), w.colors(), "shuffle", record.level, ctx)
            total = total + BigComplex(cyc_to_mpc(c)) * val
        two_pi_i = 2 * mp.pi * mpc(0, 1)
        target = total.value / two_pi_i
        # span one weight below (weight 0 contributes the constant 1)
        wlow = record.weight - 1
        if wlow <= 0:
            basis_vals = [mpc(1)]
        else:
            basis_vals = [
                scv(w.exponents(), w.colors(), "shuffle", record.level, ctx).value
                for w in all_ywords(wlow, record.level)
            ]
        norm2 = sum((abs(v) ** 2 for v in basis_vals), mpf(0))
        if norm2 > 0:
            coeffs = [v.conjugate() * target / norm2 for v in basis_vals]
            approx = sum(
                (x * v for x, v in zip(coeffs, basis_vals)), mpc(0)
            )
            residual = float(abs(target - approx))
        else:
            coeffs = [mpc(0) for _ in basis_vals]
            residual = float(abs(target))
    return DualReport(
        record=record,
        fcv=rep,
        scv_value=total,
        scv_over_2pii=target,
        projection_coeffs=coeffs,
        residual=residual,
    )


# ---------------------------------------------------------------------------
# Candidate discovery among quotient classes


def _discover_candidate(
    quotient_words: list,
    lower_classes: dict,
    level: int,
    weight: int,
    primes,
    ctx: NumericContext,
    maxcoeff: int = 10**9,
) -> LinComb | None:
    """One integer-relation candidate among quotient classes, exactly gated.

    Searches (with PSLQ) for an integer combination of the symmetrized
    quotient-class values and the 2-pi-i filtration of lower-weight classes.
    A candidate counts only if its class part is nonzero and the
    corresponding finite-value combination vanishes at every panel prime;
    the numeric search merely proposes, the exact per-prime check disposes.
    The working precision escalates when a proposal fails the exact check
    (deep relations with larger coefficients need more digits).
    """
    for dps in (ctx.dps, 2 * ctx.dps, 3 * ctx.dps):
        cand = _discover_at_dps(
            quotient_words,
            lower_classes,
            level,
            weight,
            primes,
            NumericContext(dps=dps, tolerance=ctx.tolerance),
            maxcoeff,
        )
        if cand is not None:
            return cand
    return None


def _discover_at_dps(
    quotient_words,
    lower_classes,
    level,
    weight,
    primes,
    ctx: NumericContext,
    maxcoeff,
) -> LinComb | None:
    from mpmath import pslq

    phi = len(CycNumber.one(level).coeffs)
    with mp.workdps(ctx.workdps):
        two_pi_i = 2 * mp.pi * mpc(0, 1)
        entries = []
        for x in quotient_words:
            v = scv(x.exponents(), x.colors(), "shuffle", level, ctx).value
            for t in range(phi):
                entries.append((v * mp.expjpi(mpf(2 * t) / level), ("q", x, t)))
        for j in range(1, weight + 1):
            for x in lower_classes.get(weight - j, ()):
                base = (
                    scv(x.exponents(), x.colors(), "shuffle", level, ctx).value
                    if x
                    else mpf(1)
                )
                v = two_pi_i**j * base
                for t in range(phi):
                    entries.append(
                        (v * mp.expjpi(mpf(2 * t) / level), ("f", (j, x), t))
                    )
        lam = mp.sqrt(2)
        vec, tags = [], []
        for z, tag in entries:
            r = mp.re(z) + lam * mp.im(z)
            if abs(r) > mpf(10) ** (-(ctx.dps - 8)):
                vec.append(r)
                tags.append(tag)
        for _ in range(16):
            rel = pslq(vec, maxcoeff=maxcoeff, maxsteps=4 * 10**6)
            if rel is None:
                return None
            combo = LinComb.zero(level)
            for c, tag in zip(rel, tags):
                if c and tag[0] == "q":
                    combo = combo + LinComb.from_word(
                        tag[1], level, CycNumber.root_power(level, tag[2]) * c
                    )
            if combo.is_zero():
                # a relation purely inside the filtration: eliminate one
                # unit-coefficient entry and search again
                drop = None
                for c, tag in zip(rel, tags):
                    if c in (1, -1) and tag[0] != "q":
                        drop = tag
                        break
                if drop is None:
                    return None
                keep = [k for k, t in enumerate(tags) if t != drop]
                vec = [vec[k] for k in keep]
                tags = [tags[k] for k in keep]
                continue
            if verify_fcv_relation(combo, primes).ok:
                return combo
            # numeric artifact of insufficient precision: let the caller
            # escalate the working precision
            return None
    return None


# ---------------------------------------------------------------------------
# Staged pipeline


@dataclass
class StageResult:
    weight: int
    records: list
    report: BoundReport
    reduced: list = field(default_factory=list)


DEFAULT_FAMILIES = (
    "homogeneous",
    "reversal",
    "imported",
    "linear-shuffle",
    "linear-stuffle",
)


def _echelon_state(records, columns, col_index):
    pivots: dict = {}
    for rec in records:
        row = {col_index[wd]: c for wd, c in rec.combo.terms.items()}
        _insert_row(row, pivots)
    return pivots


def build_relations(
    level: int,
    max_weight: int,
    families=DEFAULT_FAMILIES,
    q_rank: bool = False,
    discover: bool = False,
    primes=None,
    ctx: NumericContext = DEFAULT_CONTEXT,
    target_dim=None,
) -> dict[int, StageResult]:
    """Generate families weight by weight, eliminating each stage exactly.

    Lower-weight stages feed the linear-stuffle family through their reduced
    echelon rows, so the stuffle closure always multiplies a verified basis
    of the known relation space.

    With ``discover`` the stage is topped up by integer-relation candidates
    among the residual quotient classes (each admitted only after an exact
    per-prime check across the panel), stopping at ``target_dim`` classes
    (default 2^(w-1)).  Discovered rows carry provenance "imported".
    """
    stages: dict[int, StageResult] = {}
    known: list[RelationRecord] = []
    lower_classes: dict[int, list] = {0: [YWord(())]}
    if primes is None:
        from .fcv import default_primes

        primes = {}
    for w in range(1, max_weight + 1):
        panel = primes.get(w) if isinstance(primes, dict) else primes
        if panel is None:
            from .fcv import default_primes

            panel = default_primes(level)
        records: list[RelationRecord] = []
        if "homogeneous" in families:
            records += gen_homogeneous(w, level)
        if "reversal" in families:
            records += gen_reversal(w, level)
        if "imported" in families:
            records += gen_depth1_fold(w, level)
        if "linear-shuffle" in families:
            records += gen_linear_shuffle(w, level)
        if "linear-stuffle" in families:
            records += gen_linear_stuffle(w, level, known)
        columns = all_ywords(w, level)
        col_index = {wd: j for j, wd in enumerate(columns)}
        if discover:
            goal = (
                target_dim(w)
                if callable(target_dim)
                else (target_dim or 2 ** (w - 1))
            )
            while True:
                pivots = _echelon_state(records, columns, col_index)
                quotient = [
                    columns[j] for j in range(len(columns)) if j not in pivots
                ]
                if len(quotient) <= goal:
                    break
                cand = _discover_candidate(
                    quotient, lower_classes, level, w, panel, ctx
                )
                if cand is None:
                    break
                records.append(_record(level, w, "imported", cand, meta=("discovered",)))
        report = rank_and_bound(records, w, level, q_rank=q_rank)
        pivots = _echelon_state(records, columns, col_index)
        reduced = []
        for c in sorted(pivots):
            combo = LinComb(
                level, {columns[j]: v for j, v in pivots[c].items()}
            )
            reduced.append(_record(level, w, "reduced", combo))
        stages[w] = StageResult(w, records, report, reduced)
        known = known + reduced
        lower_classes[w] = report.quotient_words
    return stages
