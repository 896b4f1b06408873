"""Command-line interface: reproducible runs of the standard experiments.

Subcommands:
  fcv                exact per-prime components of one word
  scv                high-precision symmetrized value of one word
  verify             stream per-relation verdicts from a JSON-lines file
  bound              relation generation, exact rank, dimension upper bound
  basis              conjectured-basis generation check
  paper              replay the worked identities by id (PASS/FAIL per line)
  associator-build   build and store the truncated associator table

Exit codes: 0 success, 1 usage error, 2 verification failure,
3 precision not achieved.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from mpmath import mp, mpc, mpf

from .cyclotomic import CycNumber
from .fcv import default_primes, fcv, prime_range, verify_fcv_relation
from .relations import (
    RelationRecord,
    basis_check,
    build_relations,
    dual_verify,
    rank_and_bound,
)
from .scv import (
    NumericContext,
    PrecisionNotAchieved,
    build_associator,
    moduloz2_residual,
    scv,
)
from .wordalg import LinComb
from .words import parse_yword, yword


@dataclass
class RunConfig:
    """Run-wide settings; flags override config-file values."""

    level: int = 3
    max_weight: int = 3
    prime_bound: int = 312
    extra_primes: tuple = (1019,)
    precision: int = 60
    tolerance: float = 1e-10
    output: str | None = None
    jobs: int = 1
    associator_weight: int = 4

    def __post_init__(self):
        if self.tolerance < 10.0 ** -(self.precision - 10):
            raise ValueError(
                "tolerance must be at least 10^-(precision-10); "
                f"got {self.tolerance} at {self.precision} digits"
            )

    @property
    def numeric(self) -> NumericContext:
        return NumericContext(dps=self.precision, tolerance=self.tolerance)

    def primes(self, level=None):
        return default_primes(
            level or self.level, self.prime_bound, tuple(self.extra_primes)
        )


def _emit(payload, args) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _config_from_args(args) -> RunConfig:
    base = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            base = json.load(fh)
    merged = dict(base)
    for key in (
        "level",
        "max_weight",
        "prime_bound",
        "precision",
        "tolerance",
        "jobs",
        "output",
    ):
        v = getattr(args, key, None)
        if v is not None:
            merged[key] = v
    if getattr(args, "extra_primes", None) is not None:
        merged["extra_primes"] = tuple(args.extra_primes)
    elif "extra_primes" in merged:
        merged["extra_primes"] = tuple(merged["extra_primes"])
    return RunConfig(**merged)


def _parse_primes_spec(spec: str, level: int):
    """'lo..hi' or comma-separated primes."""
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return prime_range(level, int(lo), int(hi))
    return [int(p) for p in spec.split(",") if p.strip()]


# ---------------------------------------------------------------------------
# Subcommands


def cmd_fcv(args) -> int:
    cfg = _config_from_args(args)
    w = parse_yword(args.word, cfg.level)
    primes = (
        _parse_primes_spec(args.primes, cfg.level)
        if args.primes
        else cfg.primes()
    )
    value = fcv(w, primes, cfg.level)
    if args.csv:
        out = ["prime," + ",".join(f"c{j}" for j in range(cfg.level)) + ",below_threshold"]
        for row in value.csv_rows():
            out.append(",".join(str(x) for x in row))
        text = "\n".join(out)
        if cfg.output:
            with open(cfg.output, "w") as fh:
                fh.write(text + "\n")
        else:
            print(text)
        return 0
    _emit(value.to_json(), args)
    return 0


def cmd_scv(args) -> int:
    cfg = _config_from_args(args)
    w = parse_yword(args.word, cfg.level)
    version = {"star": "stuffle", "sha": "shuffle"}.get(args.version, args.version)
    try:
        with mp.workdps(cfg.numeric.workdps):
            val = scv(w.exponents(), w.colors(), version, cfg.level, cfg.numeric)
            payload = {
                "schema": 1,
                "level": cfg.level,
                "word": w.to_json(),
                "version": version,
                "value": val.to_json(),
                "precision": cfg.precision,
            }
            if args.residual:
                payload["zeta2_residual"] = moduloz2_residual(
                    w.exponents(), w.colors(), cfg.level, cfg.numeric
                ).to_json()
    except PrecisionNotAchieved as err:
        print(f"precision not achieved: bound {err.bound}", file=sys.stderr)
        return 3
    _emit(payload, args)
    return 0


def cmd_verify(args) -> int:
    cfg = _config_from_args(args)
    primes = cfg.primes()
    verdicts = []
    failures = 0
    with open(args.relations) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = RelationRecord.from_json(json.loads(line))
            except (KeyError, ValueError, TypeError) as err:
                print(f"{args.relations}:{lineno}: bad record: {err}", file=sys.stderr)
                return 1
            rep = verify_fcv_relation(rec.combo, primes)
            verdicts.append(
                {"line": lineno, "ok": rep.ok, "failing": sorted(rep.failing())}
            )
            if not rep.ok:
                failures += 1
    _emit({"schema": 1, "verdicts": verdicts, "failures": failures}, args)
    return 2 if failures else 0


def cmd_bound(args) -> int:
    cfg = _config_from_args(args)
    stages = build_relations(
        cfg.level,
        args.weight,
        discover=not args.no_discover,
        ctx=cfg.numeric,
        q_rank=args.q_rank,
    )
    table = {w: st.report.to_json() for w, st in stages.items()}
    _emit({"schema": 1, "stages": table}, args)
    st = stages[args.weight]
    print(
        f"level {cfg.level} weight {args.weight}: dimension upper bound "
        f"{st.report.dim_upper_bound}",
        file=sys.stderr,
    )
    return 0


def cmd_basis(args) -> int:
    cfg = _config_from_args(args)
    stages = build_relations(
        cfg.level, args.weight, discover=not args.no_discover, ctx=cfg.numeric
    )
    rep = basis_check(args.weight, cfg.level, stages[args.weight].records)
    _emit(rep.to_json(), args)
    return 0 if rep.spans else 2


def cmd_associator_build(args) -> int:
    cfg = _config_from_args(args)
    try:
        assoc = build_associator(cfg.level, args.max_weight, cfg.numeric)
    except PrecisionNotAchieved as err:
        print(f"precision not achieved: bound {err.bound}", file=sys.stderr)
        return 3
    _emit(assoc.to_json(), args)
    return 0


# ---------------------------------------------------------------------------
# Worked-identity replays


def _paper_registry():
    """id -> (description, callable(cfg) -> list of (label, passed, detail))."""
    return {
        "6.2": ("level-3 vanishing and reversal identities", _replay_62),
        "6.3": ("level-4 depth-one closed forms", _replay_63),
        "6.4-level3-weight2": (
            "level-3 weight-2 exact relation with symmetrized correction",
            lambda cfg: _replay_64(cfg, 3, 2),
        ),
        "6.4-level4-weight2": (
            "level-4 weight-2 exact relation with symmetrized correction",
            lambda cfg: _replay_64(cfg, 4, 2),
        ),
        "6.4-level3-weight3": (
            "level-3 weight-3 exact relation with symmetrized correction",
            lambda cfg: _replay_64(cfg, 3, 3),
        ),
        "6.4-level4-weight3": (
            "level-4 weight-3 exact relation with symmetrized correction",
            lambda cfg: _replay_64(cfg, 4, 3),
        ),
        "bounds": ("dimension upper bounds 1,2,4 at weights 1..3", _replay_bounds),
    }


def _fcv_zero(combo, cfg):
    rep = verify_fcv_relation(combo, cfg.primes(combo.level))
    return rep.ok, f"failing primes: {sorted(rep.failing())}" if not rep.ok else "exact at all panel primes"


def _replay_62(cfg):
    out = []
    level = 3
    for w in (1, 2, 3):
        combo = LinComb.from_word(yword([(w, 0)], level), level)
        ok, detail = _fcv_zero(combo, cfg)
        out.append((f"z_A(3)({w};1) = 0", ok, detail))
    for w in (1, 2):
        combo = LinComb.from_word(yword([(w, 0), (w, 0)], level), level)
        ok, detail = _fcv_zero(combo, cfg)
        out.append((f"z_A(3)({w},{w};1,1) = 0", ok, detail))
    xi2 = CycNumber.root_power(level, 2)
    for w in (1, 2, 3):
        sign = -1 if w % 2 else 1
        combo = LinComb.from_word(yword([(w, 1)], level), level) - LinComb.from_word(
            yword([(w, 2)], level), level, xi2 * sign
        )
        ok, detail = _fcv_zero(combo, cfg)
        out.append((f"z_A(3)({w};x) = x^2 (-1)^{w} z_A(3)({w};x^2)", ok, detail))
    return out


def _replay_63(cfg):
    from .cyclotomic import ModCycNumber, get_prime_context
    from .fcv import bernoulli_mod_p, below_threshold, fermat_quotient, harmonic_sum

    out = []
    level = 4
    ok_all, bad = True, []
    for p in cfg.primes(4):
        if below_threshold(p, 1):
            continue
        ctx = get_prime_context(p, level)
        v = harmonic_sum(yword([(1, 2)], level), p - 1, ctx)
        if not v.eq_mod_cyclotomic(ModCycNumber.scalar(p, level, -2 * fermat_quotient(p))):
            ok_all = False
            bad.append(p)
    out.append(("z_A(4)(1;-1) = -2 q_2", ok_all, f"bad primes {bad}" if bad else "exact"))

    combo = (
        LinComb.from_word(yword([(1, 2)], level), level)
        - LinComb.from_word(yword([(1, 1)], level), level, 2)
        - LinComb.from_word(yword([(1, 3)], level), level, 2)
    )
    ok, detail = _fcv_zero(combo, cfg)
    out.append(("z_A(4)(1;-1) = 2 z_A(4)(1;i) + 2 z_A(4)(1;i^3)", ok, detail))

    ok_all, bad = True, []
    for p in prime_range(4, 5, 200):
        ctx = get_prime_context(p, level)
        v = harmonic_sum(yword([(3, 2)], level), p - 1, ctx)
        c = (-2 * (1 - pow(4, -1, p)) * bernoulli_mod_p(p - 3, p) * pow(3, -1, p)) % p
        if not v.eq_mod_cyclotomic(ModCycNumber.scalar(p, level, c)):
            ok_all = False
            bad.append(p)
    out.append(
        ("z_A(4)(3;-1) = -2(1-2^-2) B_(p-3)/3", ok_all, f"bad primes {bad}" if bad else "exact for p < 200")
    )

    numctx = cfg.numeric
    with mp.workdps(numctx.workdps):
        i_num = mpc(0, 1)
        v_i = scv((1,), (1,), "stuffle", 4, numctx).value
        v_i3 = scv((1,), (3,), "stuffle", 4, numctx).value
        v_m1 = scv((1,), (2,), "stuffle", 4, numctx).value
        tol = numctx.tolerance
        out.append(
            (
                "scv*(1;-1) = -2 log 2",
                bool(abs(v_m1 + 2 * mp.log(2)) < tol),
                mp.nstr(v_m1, 20),
            )
        )
        out.append(
            (
                "scv*(1;i) = -log(1-i) - i log(1+i)",
                bool(abs(v_i - (-mp.log(1 - i_num) - i_num * mp.log(1 + i_num))) < tol),
                mp.nstr(v_i, 20),
            )
        )
        out.append(
            (
                "scv*(1;i^3) = conj(scv*(1;i))",
                bool(abs(v_i3 - v_i.conjugate()) < tol),
                mp.nstr(v_i3, 20),
            )
        )
        corr = v_m1 - 2 * v_i - 2 * v_i3
        out.append(
            (
                "scv*(1;-1) - 2 scv*(1;i) - 2 scv*(1;i^3) in 2 pi i Q(i)",
                bool(abs(corr + mp.pi) < tol),
                f"correction = {mp.nstr(corr, 20)} (= -pi)",
            )
        )
    return out


def _worked_relations(level, weight):
    """The four exactly-verified relations, as (combo, scv correction)."""
    if level == 3:
        xi = CycNumber.root_power(3, 1)
        one = CycNumber.one(3)
        if weight == 2:
            combo = LinComb(
                3,
                {
                    yword([(2, 1)], 3): 3,
                    yword([(1, 1), (1, 1)], 3): (one - xi) * (-2),
                    yword([(1, 1), (1, 0)], 3): 6,
                },
            )

            def corr(numctx):
                xin = mp.expjpi(mpf(2) / 3)
                return (2 * mp.pi * mpc(0, 1)) ** 2 / 12 * (2 + xin)

            return combo, corr
        if weight == 3:
            combo = LinComb(
                3,
                {
                    yword([(1, 0), (1, 2), (1, 1)], 3): 1,
                    yword([(1, 1), (1, 0), (1, 0)], 3): xi * (-3),
                },
            )

            def corr(numctx):
                xin = mp.expjpi(mpf(2) / 3)
                tp = 2 * mp.pi * mpc(0, 1)
                s1 = scv((1,), (1,), "stuffle", 3, numctx).value
                return tp**2 / 24 * (1 - xin) * s1 - tp**3 / 144 * (1 - xin)

            return combo, corr
    if level == 4:
        i_ = CycNumber.root_power(4, 1)
        one = CycNumber.one(4)
        if weight == 2:
            combo = LinComb(
                4,
                {
                    yword([(2, 1)], 4): 1,
                    yword([(1, 1), (1, 0)], 4): -(i_ - one),
                    yword([(1, 1), (1, 1)], 4): i_,
                },
            )

            def corr(numctx):
                i_num = mpc(0, 1)
                s_i = scv((1,), (1,), "stuffle", 4, numctx).value
                s_m1 = scv((1,), (2,), "stuffle", 4, numctx).value
                return (2 * mp.pi * i_num / 12) * (2 * (1 + i_num) * s_i - i_num * s_m1)

            return combo, corr
        if weight == 3:
            combo = LinComb(
                4,
                {
                    yword([(1, 0), (2, 0)], 4): CycNumber.from_rational(4, 15) - 66 * i_,
                    yword([(1, 1), (1, 1), (1, 0)], 4): (one + i_) * (-48),
                    yword([(1, 1), (1, 1), (1, 1)], 4): (one + 2 * i_) * 48,
                    yword([(1, 1), (1, 0), (1, 1)], 4): (one - i_) * (-96),
                    yword([(1, 1), (1, 0), (1, 0)], 4): (one - i_) * 144,
                },
            )

            def corr(numctx):
                i_num = mpc(0, 1)
                S = lambda sv, ev: scv(sv, ev, "stuffle", 4, numctx).value
                return 2 * mp.pi * i_num * (
                    (106 + 2 * i_num) * S((1, 1), (1, 1))
                    - (2 - 88 * i_num) * S((1, 1), (1, 0))
                    - (mpf(3) / 2 - 11 * i_num) * S((1, 1), (2, 2))
                    - (64 + 26 * i_num) * S((1, 1), (1, 2))
                )

            return combo, corr
    raise KeyError(f"no worked relation for level {level} weight {weight}")


def _replay_64(cfg, level, weight):
    from .scv import cyc_to_mpc

    out = []
    combo, corr = _worked_relations(level, weight)
    ok, detail = _fcv_zero(combo, cfg)
    out.append((f"finite side exact (level {level}, weight {weight})", ok, detail))
    numctx = cfg.numeric
    with mp.workdps(numctx.workdps):
        total = mpc(0)
        for w, c in combo.canonical_items():
            total += cyc_to_mpc(c) * scv(
                w.exponents(), w.colors(), "stuffle", level, numctx
            ).value
        defect = abs(total - corr(numctx))
        out.append(
            (
                f"symmetrized side matches printed 2-pi-i correction "
                f"(level {level}, weight {weight})",
                bool(defect < max(numctx.tolerance, 1e-8)),
                f"|difference| = {mp.nstr(mpf(defect), 8)}",
            )
        )
    return out


def _replay_bounds(cfg):
    out = []
    for level in (3, 4):
        stages = build_relations(level, 3, discover=True, ctx=cfg.numeric)
        for w, st in stages.items():
            got = st.report.dim_upper_bound
            out.append(
                (
                    f"dimension upper bound level {level} weight {w}",
                    got == 2 ** (w - 1),
                    f"bound {got}, expected {2**(w-1)}",
                )
            )
    return out


def cmd_paper(args) -> int:
    registry = _paper_registry()
    if args.list:
        for key, (desc, _) in sorted(registry.items()):
            print(f"{key}: {desc}")
        return 0
    if args.id not in registry:
        print(f"unknown id {args.id!r}; try --list", file=sys.stderr)
        return 1
    cfg = _config_from_args(args)
    desc, fn = registry[args.id]
    rows = fn(cfg)
    all_ok = True
    report = []
    for label, ok, detail in rows:
        all_ok = all_ok and ok
        print(f"{'PASS' if ok else 'FAIL'}  {label}  [{detail}]")
        report.append({"identity": label, "pass": ok, "detail": detail})
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(
                {"schema": 1, "id": args.id, "description": desc, "results": report},
                fh,
                indent=2,
                sort_keys=True,
            )
    return 0 if all_ok else 2


# ---------------------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="colorzeta",
        description="finite and symmetrized colored zeta values: exact and numeric engine",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--level", type=int, default=None)
        p.add_argument("--precision", type=int, default=None, help="working decimal digits")
        p.add_argument("--tolerance", type=float, default=None)
        p.add_argument("--prime-bound", dest="prime_bound", type=int, default=None)
        p.add_argument(
            "--extra-primes", dest="extra_primes", type=int, nargs="*", default=None
        )
        p.add_argument("--jobs", type=int, default=None)
        p.add_argument("--config", default=None, help="JSON config file; flags win")
        p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("fcv", help="exact per-prime components of one word")
    common(p)
    p.add_argument("--word", required=True, help='e.g. "y(1,2)" or "y(2,0)y(1,1)"')
    p.add_argument("--primes", default=None, help='"lo..hi" or comma list')
    p.add_argument("--csv", action="store_true")
    p.set_defaults(fn=cmd_fcv)

    p = sub.add_parser("scv", help="symmetrized value of one word")
    common(p)
    p.add_argument("--word", required=True)
    p.add_argument(
        "--version", default="sha", choices=["star", "sha", "stuffle", "shuffle"]
    )
    p.add_argument("--residual", action="store_true", help="also report the zeta(2) residual")
    p.set_defaults(fn=cmd_scv)

    p = sub.add_parser("verify", help="verify relations from a JSON-lines file")
    common(p)
    p.add_argument("relations")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("bound", help="rank and dimension upper bound")
    common(p)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--no-discover", action="store_true")
    p.add_argument("--q-rank", action="store_true", help="also report the rational rank")
    p.set_defaults(fn=cmd_bound)

    p = sub.add_parser("basis", help="conjectured-basis generation check")
    common(p)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--no-discover", action="store_true")
    p.set_defaults(fn=cmd_basis)

    p = sub.add_parser("paper", help="replay worked identities by id")
    common(p)
    p.add_argument("--id", default=None)
    p.add_argument("--list", action="store_true")
    p.set_defaults(fn=cmd_paper)

    p = sub.add_parser("associator-build", help="build the truncated associator")
    common(p)
    p.add_argument("--max-weight", type=int, default=4)
    p.set_defaults(fn=cmd_associator_build)

    return ap


def main(argv=None) -> int:
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as err:
        return 1 if err.code not in (0, None) else 0
    if getattr(args, "id", "unset") is None and not getattr(args, "list", False):
        print("paper: one of --id or --list is required", file=sys.stderr)
        return 1
    try:
        return args.fn(args)
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
