"""Command-line front end.

Exit codes: 0 success or verified, 1 verification failure (or, for
``kummer failure``, the obstruction not matching ``--expect``), 2 usage or
domain error. Floats are printed with 10 significant digits so output is
byte-stable for fixed arguments.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import arith, duality, fields, kummer, zeta
from .adele import format_idele, idele_mul, idele_norm, idele_pow, parse_idele
from .characters import QuadHeckeChar, hecke_eval, well_definedness_sweep
from .duality import CheckResult
from .errors import DomainError, PoleError, ConfigError

FLOAT_FMT = ".10g"
FUNCEQ_THRESHOLD = 1e-8


def fmt_float(x: float) -> str:
    return format(float(x), FLOAT_FMT)


def fmt_complex(z) -> str:
    z = complex(z)
    if z.imag == 0:
        return fmt_float(z.real)
    sign = "+" if z.imag >= 0 else "-"
    return f"{fmt_float(z.real)}{sign}{fmt_float(abs(z.imag))}j"


def _complex_json(z):
    z = complex(z)
    return z.real if z.imag == 0 else [z.real, z.imag]


def parse_s(text: str) -> complex:
    """``RE`` or ``RE,IM``."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise DomainError(f"bad value for s: {text!r} (expected RE or RE,IM)")


def _parse_levels(text: str) -> dict[int, int]:
    out = {}
    for chunk in filter(None, (c.strip() for c in text.split(","))):
        p, _, n = chunk.partition(":")
        try:
            out[int(p)] = int(n)
        except ValueError as exc:
            raise DomainError(f"bad level {chunk!r} (expected p:n)") from exc
    return out


# ---------------------------------------------------------------- reports


def check_to_dict(c: CheckResult) -> dict:
    return {"case": c.case, "p": c.p, "q": c.q, "lhs": c.lhs, "rhs": c.rhs, "ok": c.ok}


def summarize(checks: Sequence[CheckResult]) -> dict:
    counts = {case: 0 for case in duality.CASES}
    for c in checks:
        counts[c.case] = counts.get(c.case, 0) + 1
    failed = sum(1 for c in checks if not c.ok)
    return {"total": len(checks), "failed": failed, "counts": counts}


def emit_report(checks: Sequence[CheckResult], mode: str = "human", extra: Optional[dict] = None) -> str:
    """Render checks plus a summary (human lines or JSON lines)."""
    summary = summarize(checks)
    if extra:
        summary.update(extra)
    lines = []
    if mode == "json":
        lines += [json.dumps(check_to_dict(c)) for c in checks]
        lines.append(json.dumps({"summary": summary}))
        return "\n".join(lines) + "\n"
    if mode != "human":
        raise DomainError(f"unknown report mode {mode!r}")
    for c in checks:
        lines.append(f"{c.case:<2}{c.p:>6}{c.q:>6}{c.lhs:>4}{c.rhs:>4}  {'OK' if c.ok else 'FAIL'}")
    counts = " ".join(f"{k}={v}" for k, v in summary["counts"].items())
    tail = "".join(f" {k}={v}" for k, v in (extra or {}).items())
    if summary["failed"] == 0 and not (extra or {}).get("classical_failures"):
        lines.append(f"ALL PASS ({summary['total']} checks: {counts}{tail})")
    else:
        lines.append(f"FAILED {summary['failed']} of {summary['total']} ({counts}{tail})")
    return "\n".join(lines) + "\n"


def parse_report(text: str, mode: str = "human") -> tuple[list[CheckResult], dict]:
    """Inverse of :func:`emit_report` on the check lines.

    The returned summary is complete in json mode; in human mode it holds the
    footer line under ``"footer"``.
    """
    checks: list[CheckResult] = []
    summary: dict = {}
    for line in filter(None, text.splitlines()):
        if mode == "json":
            obj = json.loads(line)
            if "summary" in obj:
                summary = obj["summary"]
            else:
                checks.append(CheckResult(obj["case"], obj["p"], obj["q"], obj["lhs"], obj["rhs"]))
            continue
        fields_ = line.split()
        if len(fields_) == 6 and fields_[0] in duality.CASES:
            case, p, q, lhs, rhs, _ = fields_
            checks.append(CheckResult(case, int(p), int(q), int(lhs), int(rhs)))
        else:
            summary = {"footer": line}
    return checks, summary


# ---------------------------------------------------------------- commands


class Output:
    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.chunks: list[str] = []

    def write(self, text: str):
        self.chunks.append(text if text.endswith("\n") else text + "\n")

    def record(self, human: str, obj: dict):
        self.write(json.dumps(obj) if self.as_json else human)

    @property
    def text(self) -> str:
        return "".join(self.chunks)


def cmd_symbol(args, out: Output) -> int:
    if args.legendre:
        value = arith.legendre(args.D, args.n)
        kind = "legendre"
    else:
        value = arith.kronecker(args.D, args.n)
        kind = "kronecker"
    out.record(str(value), {"symbol": kind, "D": args.D, "n": args.n, "value": value})
    return 0


def cmd_idele(args, out: Output) -> int:
    x = parse_idele(args.literal)
    if args.times:
        x = idele_mul(x, parse_idele(args.times))
    if args.power is not None:
        x = idele_pow(x, args.power)
    norm = idele_norm(x)
    vals = x.valuation_vector()
    human = "\n".join([
        f"idele {format_idele(x)}",
        f"norm {norm}",
        "valuations " + (",".join(f"{p}:{v}" for p, v in vals.items()) or "-"),
    ])
    out.record(human, {"idele": format_idele(x), "norm": str(norm), "valuations": {str(p): v for p, v in vals.items()}})
    return 0


def cmd_hecke_eval(args, out: Output) -> int:
    chi = QuadHeckeChar(args.disc)
    value = hecke_eval(chi, parse_idele(args.idele))
    out.record(str(value), {"disc": args.disc, "value": value})
    return 0


def cmd_hecke_sweep(args, out: Output) -> int:
    rep = well_definedness_sweep(args.disc, args.rmax)
    status = "PASS" if rep.passed else f"FAIL at r={rep.counterexample}"
    out.record(
        f"D={rep.D} rmax={rep.r_max} checked={rep.checked} {status}",
        {"disc": rep.D, "rmax": rep.r_max, "checked": rep.checked, "counterexample": rep.counterexample, "ok": rep.passed},
    )
    return 0 if rep.passed else 1


def cmd_zeta(args, out: Output) -> int:
    s = parse_s(args.s)
    if args.zeta_kind == "local":
        if args.chi not in (1, -1):
            raise DomainError("--chi must be +1 or -1")
        value = complex(zeta.local_zeta_finite(args.p, args.level, args.chi, s))
        obj = {"p": args.p, "level": args.level, "chi": args.chi}
    elif args.zeta_kind == "real":
        odd = None if args.parity == "natural" else args.parity == "odd"
        value = zeta.local_zeta_real(args.profile, s, odd, Fraction(args.scale))
        obj = {"profile": args.profile, "scale": args.scale}
    else:
        profile = args.profile or (zeta.SIGNED_GAUSSIAN if args.disc < 0 else zeta.GAUSSIAN)
        f = zeta.TestFunction(_parse_levels(args.levels), profile, Fraction(args.scale))
        value = zeta.global_zeta(f, args.disc, s, args.tol)
        obj = {"disc": args.disc, "levels": args.levels, "profile": profile, "scale": args.scale}
    obj["s"] = args.s
    obj["value"] = _complex_json(value)
    out.record(fmt_complex(value), obj)
    return 0


def cmd_lfunction(args, out: Output) -> int:
    s = parse_s(args.s)
    if args.completed:
        value = zeta.completed_L(args.disc, s, args.tol)
    else:
        value = zeta.dirichlet_L(args.disc, s, args.tol)
    out.record(fmt_complex(value), {"disc": args.disc, "s": args.s, "completed": args.completed, "value": _complex_json(value)})
    return 0


def cmd_funceq(args, out: Output) -> int:
    res = zeta.functional_eq_residual(args.disc, parse_s(args.s), args.tol)
    ok = res < FUNCEQ_THRESHOLD
    out.record(f"residual {fmt_float(res)} {'OK' if ok else 'FAIL'}", {"disc": args.disc, "s": args.s, "residual": res, "ok": ok})
    return 0 if ok else 1


def cmd_fourier(args, out: Output) -> int:
    chk = zeta.fourier_scaling_check(Fraction(args.a))
    ok = chk.residual < args.threshold
    human = (
        f"a {fmt_float(chk.a)} prefactor {fmt_float(chk.prefactor)} residual {fmt_float(chk.residual)} "
        f"unscaled {fmt_float(chk.unscaled_residual)} {'OK' if ok else 'FAIL'}"
    )
    out.record(human, {
        "a": chk.a, "prefactor": chk.prefactor, "residual": chk.residual,
        "unscaled_residual": chk.unscaled_residual, "closed_form_residual": chk.closed_form_residual, "ok": ok,
    })
    return 0 if ok else 1


def cmd_quadext(args, out: Output) -> int:
    ext = fields.QuadExtension(args.d)
    pattern = ext.insertion_pattern()
    human = f"d {ext.d} D {ext.D} ramified " + ",".join(f"{v}:{m}" for v, m in pattern.items())
    out.record(human, {"d": ext.d, "D": ext.D, "ramified": {str(v): m for v, m in pattern.items()}})
    return 0


def cmd_classnumber(args, out: Output) -> int:
    grp = fields.class_group(args.disc)
    human = f"{grp.h}"
    if args.structure:
        human += " [" + ",".join(map(str, grp.invariant_factors)) + "]"
    out.record(human, {"disc": args.disc, "h": grp.h, "invariant_factors": grp.invariant_factors})
    return 0


def cmd_blocks(args, out: Output) -> int:
    n = fields.conformal_block_dim(args.disc)
    out.record(str(n), {"disc": args.disc, "blocks": n})
    return 0


def _config(wilson: str, d: Optional[int]) -> duality.InsertionConfig:
    return duality.InsertionConfig(duality.parse_wilson(wilson), None if d is None else fields.quad_ext(d))


def cmd_amplitude(args, out: Output) -> int:
    cfg = _config(args.wilson, args.thooft_d)
    amp = duality.amplitude(cfg)
    deriv = " ".join(f"{v}^{m}->{f:+d}" for v, m, f in amp.derivation)
    out.record(
        f"{amp.value:+d}" + (f"  ({deriv})" if args.verbose else ""),
        {"config": cfg.describe(), "value": amp.value, "derivation": [[str(v), m, f] for v, m, f in amp.derivation]},
    )
    return 0


def cmd_sduality(args, out: Output) -> int:
    if args.action == "transform":
        cfg = _config(args.wilson, args.thooft_d)
        dual = duality.s_dual(cfg)
        out.record(
            f"wilson {duality.format_wilson(dual.wilson)} thooft-d {dual.thooft.d}",
            {"wilson": duality.format_wilson(dual.wilson), "thooft_d": dual.thooft.d, "inverted": dual.inverted},
        )
        return 0
    cases = duality.CASES if args.case == "all" else (args.case,)
    fault = None
    if args.inject_fault:
        try:
            D, p = (int(t) for t in args.inject_fault.split(","))
        except ValueError as exc:
            raise DomainError("--inject-fault expects D,P") from exc
        fault = (D, p)
    rep = duality.reciprocity_sweep(args.pmax, cases, fault)
    extra = {"classical_pairs": rep.classical_pairs, "classical_failures": len(rep.classical_failures)}
    out.write(emit_report(rep.checks, "json" if out.as_json else "human", extra))
    return 0 if rep.passed else 1


def cmd_kummer(args, out: Output) -> int:
    if args.action == "conductor":
        c = kummer.kummer_conductor_exponent(args.q)
        tame = ",".join(f"{k}:{v}" for k, v in c.tame_exponents.items()) or "-"
        out.record(
            f"q {c.q} w {c.w} f_v {c.conductor_exponent} disc_exp_v {c.disc_exponent} tame {tame}",
            {"q": c.q, "w": c.w, "f_v": c.conductor_exponent, "disc_exp_v": c.disc_exponent, "tame": c.tame_exponents},
        )
        return 0
    if args.action == "failure":
        r = kummer.failure_case_report(args.q)
        out.record(
            f"q {r.q} disc_exp_v {r.disc_exponent} mod3 {r.residue_mod_3} obstruction {r.verdict}",
            {"q": r.q, "disc_exp_v": r.disc_exponent, "mod3": r.residue_mod_3, "obstruction": r.verdict},
        )
        return 0 if r.verdict == args.expect.upper() else 1
    seed = args.seed if args.sub_seed is None else args.sub_seed
    pairs = kummer.random_primary_pairs(args.count, seed, args.max_norm)
    failures = 0
    for a, b in pairs:
        ok = kummer.cubic_reciprocity_check(a, b)
        failures += not ok
        if args.verbose or not ok:
            out.record(f"{a} {b} {'OK' if ok else 'FAIL'}", {"a": str(a), "b": str(b), "ok": ok})
    status = "ALL PASS" if failures == 0 else f"FAILED {failures}"
    out.record(f"{status} ({len(pairs)} pairs, seed {seed})", {"summary": {"pairs": len(pairs), "failed": failures, "seed": seed}})
    return 0 if failures == 0 else 1


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tatecft", description="Idelic zeta integrals and reciprocity checks over Q")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--out", metavar="FILE", help="also write the output to FILE")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps (default 0)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("symbol", help="Kronecker or Legendre symbol")
    p.add_argument("-D", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--kronecker", action="store_true")
    kind.add_argument("--legendre", action="store_true", help="Euler criterion, n an odd prime")
    p.set_defaults(func=cmd_symbol)

    p = sub.add_parser("idele", help="canonical form, norm and valuations of an idele literal")
    p.add_argument("literal")
    p.add_argument("--times", help="multiply by a second literal")
    p.add_argument("--power", type=int)
    p.set_defaults(func=cmd_idele)

    p = sub.add_parser("hecke-eval", help="evaluate chi_D on an idele")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--idele", required=True)
    p.set_defaults(func=cmd_hecke_eval)

    p = sub.add_parser("hecke-sweep", help="well-definedness sweep of chi_D")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--rmax", type=int, required=True)
    p.set_defaults(func=cmd_hecke_sweep)

    p = sub.add_parser("zeta", help="local and global zeta integrals")
    zsub = p.add_subparsers(dest="zeta_kind", required=True)
    z = zsub.add_parser("local")
    z.add_argument("--p", type=int, required=True)
    z.add_argument("--level", type=int, default=0)
    z.add_argument("--chi", type=int, default=1)
    z.add_argument("--s", required=True)
    z = zsub.add_parser("real")
    z.add_argument("--profile", choices=zeta.PROFILES, default=zeta.GAUSSIAN)
    z.add_argument("--parity", choices=("natural", "even", "odd"), default="natural")
    z.add_argument("--scale", default="1")
    z.add_argument("--s", required=True)
    z = zsub.add_parser("global")
    z.add_argument("--disc", type=int, default=1)
    z.add_argument("--levels", default="", help="p:n,... test-function levels")
    z.add_argument("--profile", choices=zeta.PROFILES)
    z.add_argument("--scale", default="1")
    z.add_argument("--tol", type=float, default=1e-12)
    z.add_argument("--s", required=True)
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("lfunction", help="L(s, chi_D), or Lambda with --completed")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--s", required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--completed", action="store_true")
    p.set_defaults(func=cmd_lfunction)

    p = sub.add_parser("funceq", help="|Lambda(s) - Lambda(1-s)|")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--s", required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=cmd_funceq)

    p = sub.add_parser("fourier-check", help="Fourier scaling identity for the real Gaussian")
    p.add_argument("--a", required=True)
    p.add_argument("--threshold", type=float, default=1e-6)
    p.set_defaults(func=cmd_fourier)

    p = sub.add_parser("quadext", help="ramification data of Q(sqrt d)")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_quadext)

    p = sub.add_parser("classnumber", help="class number of an imaginary quadratic field")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--structure", action="store_true", help="also print invariant factors")
    p.set_defaults(func=cmd_classnumber)

    p = sub.add_parser("blocks", help="conformal block dimension")
    p.add_argument("--disc", type=int, required=True)
    p.set_defaults(func=cmd_blocks)

    p = sub.add_parser("amplitude", help="amplitude of a Wilson/t'Hooft configuration")
    p.add_argument("--wilson", required=True, help='e.g. "13:1,2:2,inf:1"')
    p.add_argument("--thooft-d", type=int, required=True)
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_amplitude)

    p = sub.add_parser("sduality", help="S-duality transform and reciprocity sweep")
    ssub = p.add_subparsers(dest="action", required=True)
    s = ssub.add_parser("verify")
    s.add_argument("--pmax", type=int, required=True)
    s.add_argument("--case", choices=duality.CASES + ("all",), default="all")
    s.add_argument("--inject-fault", metavar="D,P", help="flip kronecker(D, P) (harness self-test)")
    s = ssub.add_parser("transform")
    s.add_argument("--wilson", required=True)
    s.add_argument("--thooft-d", type=int, required=True)
    p.set_defaults(func=cmd_sduality)

    p = sub.add_parser("kummer", help="cubic Kummer extensions of Q(zeta_3)")
    ksub = p.add_subparsers(dest="action", required=True)
    k = ksub.add_parser("conductor")
    k.add_argument("--q", type=int, required=True)
    k = ksub.add_parser("failure")
    k.add_argument("--q", type=int, required=True)
    k.add_argument("--expect", choices=("present", "absent"), default="present")
    k = ksub.add_parser("cubic-check")
    k.add_argument("--count", type=int, default=50)
    k.add_argument("--seed", dest="sub_seed", type=int, default=None)
    k.add_argument("--max-norm", type=int, default=10**4)
    k.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_kummer)
    return parser


def main(argv: Optional[Iterable[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(None if argv is None else list(argv))
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    out = Output(args.json)
    try:
        code = args.func(args, out)
    except (DomainError, PoleError, ConfigError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(out.text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out.text)
    return code


if __name__ == "__main__":
    sys.exit(main())
