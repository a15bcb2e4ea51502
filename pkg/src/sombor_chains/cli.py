"""Command-line front end.

Usage examples::

    sombor-chains compute --l 5 --n 3 --seq 1
    sombor-chains moments --preset polyphenyl --n 4 --p 0.333333,0.333333,0.333334
    sombor-chains enumerate --preset polyonino --n 4 --p 0.5,0.5 --format json
    sombor-chains simulate --preset polyphenyl --n 200 --p 0.5,0.3,0.2 --samples 10000 --seed 42 --ks
    sombor-chains normality --preset pentachain --n 30,100,200 --p 0.5,0.5
    sombor-chains audit --preset pentachain --n 5 --p 0.5,0.5
    sombor-chains table --l 7 --n 50 --p 0.5,0.25,0.25

Exit codes: 0 on success (audit mismatches are findings, not failures),
2 on invalid input, 3 when an exact computation exceeds its size guard.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Any

from . import __version__
from .chain import ChainSpec, SpecError, build_chain, degree_census, validate_spec
from .moments import (
    ChainTemplate,
    affine_form,
    closed_form_moments,
    FAMILIES,
    family_preset,
    moments_affine_in_n,
)
from .oracle import GuardError, audit, enumerate_exact
from .simulate import monte_carlo, normal_params, normal_table
from .sombor import SomborVariant, average_degree, sombor_of_graph

SCHEMA_VERSION = "1.0"
CLI_PROB_TOL = 1e-6
DEFAULT_SEED = 0

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_GUARD = 3


def _parse_probs(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise SpecError(f"malformed probability list {text!r}") from None


def _parse_ints(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise SpecError(f"malformed {what} {text!r}; expected comma-separated integers") from None


def _variant(args) -> SomborVariant:
    if args.a is not None:
        if args.variant not in (None, "general"):
            raise SpecError("--a only applies to the general variant")
        return SomborVariant.general(args.a)
    try:
        return SomborVariant.parse(args.variant or "plain")
    except ValueError as exc:
        raise SpecError(str(exc)) from None


def _polygon_size(args) -> tuple[int, str | None]:
    if args.preset:
        return family_preset(args.preset).l, args.preset
    if args.l is None:
        raise SpecError("one of --l or --preset is required")
    return args.l, None


class Context:
    """Resolved flags shared by every subcommand."""

    def __init__(self, args):
        self.args = args
        self.l, self.family = _polygon_size(args)
        self.variant = _variant(args)
        self.renormalized = False
        self.probs: tuple[float, ...] | None = None
        if getattr(args, "p", None):
            raw = _parse_probs(args.p)
            spec = validate_spec(ChainSpec(self.l, 1, raw), tol=CLI_PROB_TOL)
            self.renormalized = spec.probs != raw
            if self.renormalized:
                print(f"note: probabilities renormalized to sum 1 ({', '.join(repr(p) for p in spec.probs)})", file=sys.stderr)
            self.probs = spec.probs

    def need_probs(self) -> tuple[float, ...]:
        if self.probs is None:
            raise SpecError("--p is required for this command")
        return self.probs

    def spec(self, n: int, variant: SomborVariant | None = None) -> ChainSpec:
        return validate_spec(ChainSpec(self.l, n, self.need_probs(), variant or self.variant))

    def config(self) -> dict[str, Any]:
        a = self.args
        cfg: dict[str, Any] = {"l": self.l, "family": self.family, "variant": self.variant.label()}
        ns = _parse_ints(a.n, "--n")
        cfg["n"] = ns[0] if len(ns) == 1 else list(ns)
        for key in ("seq", "samples", "seed"):
            if getattr(a, key, None) is not None:
                cfg[key] = getattr(a, key)
        if self.probs is not None:
            cfg["probs"] = list(self.probs)
            cfg["renormalized"] = self.renormalized
        return cfg


def _single_n(ctx: Context) -> int:
    ns = _parse_ints(ctx.args.n, "--n")
    if len(ns) != 1:
        raise SpecError("this command takes a single --n")
    return ns[0]


def cmd_compute(ctx: Context) -> tuple[list[dict], dict]:
    n = _single_n(ctx)
    if ctx.args.seq is None:
        raise SpecError("compute needs --seq (comma-separated attachment types, empty for n <= 2)")
    seq = _parse_ints(ctx.args.seq, "--seq")
    g = build_chain(ctx.l, n, seq)
    census = degree_census(g)
    val = sombor_of_graph(g, ctx.variant)
    row = {
        "l": ctx.l,
        "n": n,
        "seq": ",".join(str(t) for t in seq),
        "variant": ctx.variant.label(),
        "value": val.value,
        "resolved_a": val.resolved_a,
        "vertices": g.vertex_count,
        "edges": g.edge_count,
        "average_degree": average_degree(g),
        "m22": census.m22,
        "m23": census.m23,
        "m33": census.m33,
    }
    return [row], {}


def cmd_moments(ctx: Context) -> tuple[list[dict], dict]:
    n = _single_n(ctx)
    spec = ctx.spec(n)
    m = closed_form_moments(spec)
    row: dict[str, Any] = {"l": ctx.l, "n": n}
    row.update({f"p{i}": p for i, p in enumerate(spec.probs, start=1)})
    row.update({"variant": ctx.variant.label(), "mean": m.mean, "variance": m.variance})
    if spec.l >= 4 and n >= 2:
        A, B, C = affine_form(spec)
    else:
        A = B = C = None
    row.update({"A": A, "B": B, "C": C})
    if ctx.variant.depends_on_graph:
        row["note"] = "M,N,P,Q undefined: the average variant's shift depends on n"
    elif spec.l >= 4:
        aff = moments_affine_in_n(ChainTemplate(ctx.l, spec.probs, ctx.variant))
        row.update({"M": aff.M, "N": aff.N, "P": aff.P, "Q": aff.Q})
    return [row], {}


def cmd_enumerate(ctx: Context) -> tuple[list[dict], dict]:
    n = _single_n(ctx)
    spec = ctx.spec(n)
    summary, pmf = enumerate_exact(spec, threads=ctx.args.threads)
    row = {"l": ctx.l, "n": n, "variant": ctx.variant.label(), "mean": summary.mean, "variance": summary.variance,
           "atoms": len(pmf.support), "source": summary.source}
    extra = {"pmf": [{"value": v, "probability": p} for v, p in pmf.support]}
    return [row], extra


def cmd_simulate(ctx: Context) -> tuple[list[dict], dict]:
    n = _single_n(ctx)
    spec = ctx.spec(n)
    args = ctx.args
    stats = monte_carlo(spec, args.samples, seed=args.seed, threads=args.threads, ks=args.ks)
    ref = closed_form_moments(spec) if spec.l >= 4 else None
    row = {
        "l": ctx.l,
        "n": n,
        "variant": ctx.variant.label(),
        "samples": stats.sample_count,
        "seed": stats.seed,
        "mean": stats.mean,
        "unbiased_variance": stats.unbiased_variance,
        "std_error": stats.std_error,
        "closed_form_mean": ref.mean if ref else None,
        "closed_form_variance": ref.variance if ref else None,
        "ks_statistic": stats.ks_statistic,
    }
    return [row], {}


def cmd_normality(ctx: Context) -> tuple[list[dict], dict]:
    args = ctx.args
    rows = []
    for n in _parse_ints(args.n, "--n"):
        spec = ctx.spec(n)
        params = normal_params(spec)
        stats = monte_carlo(spec, args.samples, seed=args.seed, threads=args.threads, ks=True)
        rows.append({"l": ctx.l, "n": n, "variant": ctx.variant.label(), "p1": spec.p1, "mu": params.mu,
                     "sigma2": params.sigma2, "samples": stats.sample_count, "seed": stats.seed,
                     "ks_statistic": stats.ks_statistic})
    return rows, {}


AUDIT_COLUMNS = ["formula_id", "n", "p1", "variant", "a", "printed_value", "derived_value", "derived_source",
                 "abs_diff", "rel_diff", "verdict", "anchor"]


def cmd_audit(ctx: Context) -> tuple[list[dict], dict]:
    template = ChainTemplate(ctx.l, ctx.need_probs(), ctx.variant, ctx.family)
    reports = audit(template, _parse_ints(ctx.args.n, "--n"), threads=ctx.args.threads)
    rows = [{c: getattr(r, c) for c in AUDIT_COLUMNS} for r in reports]
    counts = {v: sum(r.verdict == v for r in reports) for v in ("match", "mismatch", "impossible")}
    return rows, {"verdict_counts": counts}


def cmd_table(ctx: Context) -> tuple[list[dict], dict]:
    return normal_table(ctx.l, _single_n(ctx), ctx.need_probs()), {}


COMMANDS = {
    "compute": (cmd_compute, "index value of one explicit chain"),
    "moments": (cmd_moments, "closed-form mean, variance and affine coefficients"),
    "enumerate": (cmd_enumerate, "exact moments and pmf by exhaustive enumeration"),
    "simulate": (cmd_simulate, "seeded Monte Carlo sample moments"),
    "normality": (cmd_normality, "KS distance to the normal approximation for one or more n"),
    "audit": (cmd_audit, "compare published formulas with derived values"),
    "table": (cmd_table, "normal parameters per index, derived and published side by side"),
}


def _fmt(value, full: bool) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if full or not math.isfinite(value):
            return repr(value)
        return format(value, ".9g")
    return str(value)


def _json_safe(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


def render(command: str, config: dict, rows: list[dict], extra: dict, fmt: str, full: bool) -> str:
    if fmt == "json":
        payload = {"schema_version": SCHEMA_VERSION, "command": command, "config": config, "results": rows}
        payload.update(extra)
        return json.dumps(_json_safe(payload), indent=2) + "\n"
    columns: list[str] = []
    for row in rows:
        columns.extend(c for c in row if c not in columns)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row.get(c), full) for c in columns])
        return buf.getvalue()
    lines = []
    if len(rows) == 1:
        width = max(len(c) for c in columns)
        lines += [f"{c.ljust(width)}  {_fmt(rows[0].get(c), full)}" for c in columns]
    else:
        table = [columns] + [[_fmt(r.get(c), full) for c in columns] for r in rows]
        widths = [max(len(t[i]) for t in table) for i in range(len(columns))]
        lines += ["  ".join(cell.ljust(w) for cell, w in zip(t, widths)).rstrip() for t in table]
    for key, value in extra.items():
        if key == "pmf":
            lines.append("pmf:")
            lines += [f"  {_fmt(a['value'], full)}  {_fmt(a['probability'], full)}" for a in value]
        else:
            lines.append(f"{key}: {json.dumps(value)}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sombor-chains", description="Sombor indices of random polygonal chains.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        size = p.add_mutually_exclusive_group()
        size.add_argument("--l", type=int, help="polygon size (vertices per cycle)")
        size.add_argument("--preset", choices=sorted(FAMILIES), help="named chain family")
        multi = name in ("normality", "audit")
        p.add_argument("--n", required=True, help="chain length" + (" (comma-separated list allowed)" if multi else ""))
        p.add_argument("--p", help="attachment probabilities p1,...,pk (sum within 1e-6, renormalized)")
        p.add_argument("--variant", help="plain (default), reduced, average or general:<a>")
        p.add_argument("--a", type=float, help="shift for the general variant")
        if name == "compute":
            p.add_argument("--seq", help="attachment types t3..tn, comma-separated")
        if name in ("simulate", "normality"):
            p.add_argument("--samples", type=int, default=10_000)
            p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        if name == "simulate":
            p.add_argument("--ks", action="store_true", help="attach the KS distance to the normal approximation")
        p.add_argument("--format", choices=("plain", "json", "csv"), default="plain")
        p.add_argument("--output", "-o", help="write to this file instead of standard output")
        p.add_argument("--full-precision", action="store_true", help="print shortest round-trip floats")
        p.add_argument("--threads", type=int, help="worker cap (default: $SOMBOR_THREADS or CPU count)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    fn, _ = COMMANDS[args.command]
    try:
        if args.threads is not None and args.threads < 1:
            raise SpecError("--threads must be >= 1")
        ctx = Context(args)
        rows, extra = fn(ctx)
        text = render(args.command, ctx.config(), rows, extra, args.format, args.full_precision)
    except GuardError as exc:
        print(f"error: {exc} (bound {exc.bound})", file=sys.stderr)
        return EXIT_GUARD
    except (SpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
