"""``zfr``: constants report, region queries, certification runs, parameter searches.

Exit codes: 0 all selected checks proved, 1 some check failed, 2 some
check inconclusive and none failed, 64 usage error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from pathlib import Path

from flint import arb

from . import __version__
from .arith import mertens_E
from .certifier import SUITE_NAMES, Constants, exit_code, render, run_suites, summary
from .mp_core import (
    MIN_PREC,
    DomainError,
    decimal_str,
    endpoints,
    fmt_bounds,
    fmt_interval,
    num,
    parse_bounds,
    precision,
    pw,
)
from .region import (
    HypothesisAB,
    M1_of,
    MCCURLEY_CONST,
    appendixB_c,
    candidate_widths,
    sup_X,
)
from .smoothing import kernel_system
from .tuning import SEARCHES, leading_constant
from .zero_counts import zerocount_constants

EXIT_USAGE = 64
FORMATS = ("text", "tsv", "records")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad input, which would collide with "inconclusive"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --------------------------------------------------------------------------
# configuration


def parse_height(text: str) -> str:
    """Validate a height: plain decimal, scientific, or ``e^<decimal>``."""
    s = text.strip()
    body = s[2:] if s.startswith("e^") else s
    try:
        value = Fraction(body)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot read height {text!r}") from None
    if not s.startswith("e^") and value < 0:
        raise UsageError("height must be nonnegative")
    return s


def parse_modulus(text: str) -> int:
    try:
        q = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot read modulus {text!r}") from None
    if q.denominator != 1 or q < 3:
        raise UsageError("q must be an integer >= 3")
    return int(q)


@dataclass
class RunConfig:
    command: str
    precision_bits: int = 256
    suites: list[str] = field(default_factory=lambda: ["all"])
    q: int | None = None
    t: str | None = None
    fmt: str = "text"
    digits: int = 30
    perturb: list[str] = field(default_factory=list)
    out: Path | None = None
    param: str | None = None
    grid: int | None = None

    def __post_init__(self):
        if self.precision_bits < MIN_PREC:
            raise UsageError(f"--precision-bits must be at least {MIN_PREC}")
        if self.digits < 1:
            raise UsageError("--digits must be positive")
        bad = [s for s in self.suites if s not in SUITE_NAMES]
        if bad:
            raise UsageError(f"unknown suite {bad[0]!r}; choose from {', '.join(SUITE_NAMES)}")
        if self.grid is not None and self.grid < 2:
            raise UsageError("--grid must be at least 2")

    @property
    def working_bits(self) -> int:
        # enough bits for the requested decimal digits
        return max(self.precision_bits, int(self.digits * 3.33) + 32)

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        kw = {"command": ns.command, "precision_bits": ns.precision_bits}
        if ns.command == "constants":
            kw.update(fmt=ns.format, digits=ns.digits)
        elif ns.command == "region":
            kw.update(q=parse_modulus(ns.q), t=parse_height(ns.t), digits=ns.digits)
        elif ns.command == "verify":
            kw.update(suites=ns.suite or ["all"], perturb=ns.perturb or [], out=ns.out,
                      digits=ns.digits)
        elif ns.command == "optimize":
            kw.update(param=ns.param, grid=ns.grid)
        elif ns.command == "report":
            kw.update(digits=ns.digits)
        return cls(**kw)


# --------------------------------------------------------------------------
# constants table


@dataclass(frozen=True)
class ConstantRow:
    name: str
    source: str     # "printed" when a printed value is reproduced, else "derived"
    printed: str    # printed decimal, or "-"
    lo: Fraction
    hi: Fraction

    @classmethod
    def of(cls, name: str, value: arb, printed: str | None = None) -> "ConstantRow":
        lo, hi = endpoints(value)
        return cls(name, "printed" if printed else "derived", printed or "-", lo, hi)

    def enclosure(self, digits: int) -> str:
        return fmt_bounds(self.lo, self.hi, digits)

    def width(self, digits: int) -> str:
        # the enclosure as printed, not the ball underneath
        lo, hi = parse_bounds(self.enclosure(digits))
        if hi == lo:
            return "0"
        return format(Decimal(decimal_str(hi - lo, 3, "up")), ".2e")


def constant_rows(*, prec: int | None = None) -> list[ConstantRow]:
    with precision(prec) as bits:
        ks = kernel_system(prec=bits)
        p = ks.poly
        b0, b5 = p.ball("b0"), p.ball("b5")
        C1, C2 = zerocount_constants("0.00019")
        h = HypothesisAB.of()
        C = num(4) / 3
        C23 = pw(C, num(-2) / 3)
        sx = sup_X("e^1944", h).value
        R = ConstantRow.of
        rows = [
            R("theta", ks.theta, "1.152214629976363048877"),
            R("w(0)", ks.w0, "6.82602968445295450905"),
            R("W(0)", ks.W0),
            R("W(-1)", ks.Wm1),
            R("c0", ks.c0, "16.2983216223932350562"),
            R("c1", ks.c1, "19.9352005926244107856"),
            R("c2", ks.c2, "9.4813169452950521682"),
            R("c3", ks.c3, "3.945405755634895592"),
            R("H(197)", ks.H_R),
            R("c4", ks.c4, "1.055656"),
            R("c5", ks.c5),
            R("sup e^x w(x)", ks.sup_exp_w, "7.23"),
        ]
        rows += [R(f"b{i}", p.ball(f"b{i}"), decimal_str(getattr(p, f"b{i}"), 30, "down"))
                 for i in range(6)]
        E = mertens_E(prec=bits).E
        rows += [
            R("E (Mertens)", E),
            R("C1(0.00019)", C1, "0.2297"),
            R("C2(0.00019)", C2, "24.77"),
            R("b5/b0", b5 / b0),
            R("E (eta exponent)", pw(4 * (1 + b0 / b5) / 3, num(2) / 3)),
            R("leading constant", leading_constant("0.225", "0.9"), "2.99968"),
            R("C^(-2/3)", C23),
            R("lazy main term", C23 * (b5 * (num(1) / 3 + C / 2) + b0 / 3), "30.26576"),
            R("1minusb", b0 / num("3.238") - num("0.99988") * p.ball("b1") / num("4.238"), "-0.953"),
            R("c (weak region)", appendixB_c(h)),
            R("sup X", sx, "5.61718"),
            R("B^(2/3)/M1", pw(h.B, num(2) / 3) / M1_of("e^1944", h, supX=sx), "61.306"),
        ]
        return rows


TSV_HEADER = "name\tsource\tprinted\tenclosure\twidth"


def format_constants(rows: list[ConstantRow], fmt: str = "text", digits: int = 30) -> str:
    if fmt == "tsv":
        lines = [TSV_HEADER]
        lines += [f"{r.name}\t{r.source}\t{r.printed}\t{r.enclosure(digits)}\t{r.width(digits)}"
                  for r in rows]
    elif fmt == "records":
        lines = [f"CONST {r.name.replace(' ', '_')} source={r.source} printed={r.printed} "
                 f"enclosure={r.enclosure(digits)} width={r.width(digits)}" for r in rows]
    elif fmt == "text":
        wn = max(len(r.name) for r in rows)
        lines = [f"{r.name:<{wn}}  {r.source:<8} {r.enclosure(digits)}  width {r.width(digits)}"
                 + ("" if r.printed == "-" else f"  printed {r.printed}") for r in rows]
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return "\n".join(lines) + "\n"


def parse_constants_tsv(text: str) -> list[ConstantRow]:
    """Inverse of ``format_constants(rows, "tsv")``; widths are recomputed."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != TSV_HEADER:
        raise ValueError("missing tsv header")
    out = []
    for ln in lines[1:]:
        name, source, printed, enc, _ = ln.split("\t")
        if source not in ("printed", "derived"):
            raise ValueError(f"bad source {source!r}")
        lo, hi = parse_bounds(enc)
        out.append(ConstantRow(name, source, printed, lo, hi))
    return out


# --------------------------------------------------------------------------
# commands


def cmd_constants(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    rows = constant_rows(prec=cfg.working_bits)
    out.write(format_constants(rows, cfg.fmt, cfg.digits))
    return 0


def cmd_region(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    d = cfg.digits
    with precision(cfg.working_bits):
        rows = candidate_widths(cfg.q, cfg.t)
        usable = [(p, w) for p, w, note in rows if w is not None and (p.effective or p.name == "mccurley")]
        best_p, best_w = max(usable, key=lambda r: r[1].mid())
        out.write(f"q = {cfg.q}, t = {cfg.t}\n")
        out.write(f"best width {fmt_interval(best_w, d)} from {best_p.name}\n")
        if best_p.name == "mccurley":
            why = ("t is below every other region's validity range"
                   if all(p.name == "mccurley" for p, _ in usable)
                   else "the classical region is the widest valid one here")
            out.write(f"{why}; using 1/({MCCURLEY_CONST} log max(q, qt, 10)), valid for all t >= 0\n")
        out.write("candidates:\n")
        for p, w, note in rows:
            shown = fmt_interval(w, d) if w is not None else "-"
            out.write(f"  {p.name:<17} {shown}  {note}\n")
    return 0


def cmd_verify(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    try:
        k = Constants.parse(cfg.perturb)
    except (KeyError, ValueError) as e:
        raise UsageError(f"--perturb: {e.args[0]}") from None
    certs = run_suites(cfg.suites, bits=cfg.precision_bits, constants=k)
    text = render(certs, min(cfg.digits, 30))
    if cfg.out is not None:
        cfg.out.write_text(text)
        s = summary(certs)
        out.write(f"SUMMARY total={s['total']} proved={s['proved']} failed={s['failed']} "
                  f"inconclusive={s['inconclusive']}\n")
    else:
        out.write(text)
    return exit_code(certs)


def _fmt_result(r, out) -> None:
    out.write(f"parameter {r.param}\nobjective {r.objective}\n")
    out.write(f"search optimum  {', '.join(f'{v:.10g}' for v in r.best)}  "
              f"value {r.best_value:.12g} (floating point)\n")
    out.write(f"at the optimum  {fmt_interval(r.optimum_value, 15)}\n")
    shown = ", ".join(fmt_interval(v, 15) if isinstance(v, arb) else str(v) for v in r.chosen)
    out.write(f"chosen          {shown}  value {fmt_interval(r.chosen_value, 15)}\n")
    out.write(f"relative gap    {fmt_interval(r.relative_gap, 4)}\n")
    out.write(f"chosen within 1e-3 of optimum: {'yes' if r.within else 'no'}\n")
    for key, v in r.extra.items():
        out.write(f"  {key} = {fmt_interval(v, 15) if isinstance(v, arb) else v}\n")


def cmd_optimize(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    fn = SEARCHES[cfg.param]
    kw = {} if cfg.grid is None else {"grid": cfg.grid}
    _fmt_result(fn(prec=cfg.precision_bits, **kw), out)
    return 0


def cmd_report(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    out.write(f"zfr {__version__}\n\n")
    cmd_constants(RunConfig("constants", cfg.precision_bits, digits=min(cfg.digits, 20)), out)
    certs = run_suites(["all"], bits=cfg.precision_bits)
    s = summary(certs)
    out.write(f"\nverify all: {s['proved']} proved, {s['failed']} failed, "
              f"{s['inconclusive']} inconclusive of {s['total']}\n")
    for c in certs:
        if not c.proved:
            out.write(c.line(20) + "\n")
    return exit_code(certs)


COMMANDS = {"constants": cmd_constants, "region": cmd_region, "verify": cmd_verify,
            "optimize": cmd_optimize, "report": cmd_report}


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="zfr", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"zfr {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--precision-bits", type=int, default=256, metavar="P")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("constants", parents=[common], help="certified constants with enclosures")
    c.add_argument("--digits", type=int, default=30)
    c.add_argument("--format", choices=FORMATS, default="text")

    r = sub.add_parser("region", parents=[common], help="zero-free widths at (q, t)")
    r.add_argument("--q", required=True)
    r.add_argument("--t", required=True, help='decimal, scientific or "e^N"')
    r.add_argument("--digits", type=int, default=12)

    v = sub.add_parser("verify", parents=[common], help="run certification suites")
    v.add_argument("--suite", action="append", metavar="S", help=f"one of {', '.join(SUITE_NAMES)}")
    v.add_argument("--perturb", action="append", metavar="NAME=VALUE")
    v.add_argument("--out", type=Path)
    v.add_argument("--digits", type=int, default=30)

    o = sub.add_parser("optimize", parents=[common], help="parameter searches")
    o.add_argument("--param", required=True, choices=tuple(SEARCHES))
    o.add_argument("--grid", type=int)

    rep = sub.add_parser("report", parents=[common], help="constants plus a full verify")
    rep.add_argument("--digits", type=int, default=20)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"zfr: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as e:
        print(f"zfr: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
