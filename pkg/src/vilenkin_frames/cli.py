"""Command line front end.

Exit codes: 0 success, 1 the checked property fails, 2 input error,
3 degenerate (zero) generator.  Reports go to stdout unless ``--out`` is
given; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__, duals, frames, oracle
from .bracket import periodization
from .errors import DegenerateGeneratorError, SchemaError, VilenkinError
from .group import ModelConfig
from .io import dumps, read_signal, signal_to_dict
from .walsh import Signal, forward

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_DEGENERATE = 3

ORACLE_TOL = 1e-9


class _Parser(argparse.ArgumentParser):
    """Raise instead of exiting so :func:`main` can map usage errors to code 2."""

    def error(self, message):
        raise SchemaError(f"usage: {message}")


def _config_doc(cfg: ModelConfig) -> dict:
    return {"p": cfg.p, "m": cfg.m, "n": cfg.n}


def report_dict(phi: Signal, tol: float | None = None, label: str | None = None) -> dict:
    rep = frames.analyze(phi, tol)
    doc = {}
    if label is not None:
        doc["label"] = label
    doc["config"] = _config_doc(phi.cfg)
    doc["bounds"] = {"C": rep.C, "D": rep.D}
    doc["flags"] = {
        "parseval": rep.is_parseval,
        "onb": rep.is_onb,
        "canonical_dual_in_span": rep.has_canonical_dual_in_span,
    }
    doc["periodization"] = [float(v) for v in rep.periodization]
    doc["support_omega"] = [bool(v) for v in rep.support.omega]
    doc["residuals"] = dict(rep.residuals)
    doc["tool_version"] = __version__
    return doc


def report_table(phi: Signal, tol: float | None = None) -> str:
    """Tab-separated rows ``alpha, lambda*, P, omega`` over the U*-samples."""
    rep = frames.analyze(phi, tol)
    scale = phi.cfg.h_count
    lines = ["alpha\tlambda_star\tperiodization\tomega"]
    for a, (v, on) in enumerate(zip(rep.periodization, rep.support.omega)):
        lines.append(f"{a}\t{a / scale:.17g}\t{float(v):.17g}\t{int(bool(on))}")
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_analyze(args) -> int:
    chunks = []
    for path in args.inputs:
        phi, label = read_signal(path, args.tol)
        if args.table:
            chunks.append(report_table(phi))
        else:
            chunks.append(report_dict(phi, label=label))
    if args.table:
        _emit("".join(chunks), args.out)
    elif len(chunks) == 1:
        _emit(dumps(chunks[0]), args.out)
    else:
        _emit(dumps(chunks), args.out)
    return EXIT_OK


def cmd_dual(args) -> int:
    phi, label = read_signal(args.input, args.tol)
    build = frames.canonical_dual if args.mode == "canonical" else frames.tight_generator
    out = build(phi)
    new_label = f"{args.mode} of {label}" if label else args.mode
    _emit(dumps(signal_to_dict(out, new_label)), args.out)
    return EXIT_OK


def _same_windows(signals) -> None:
    cfg = signals[0].cfg
    for s in signals[1:]:
        if (s.cfg.p, s.cfg.m, s.cfg.n) != (cfg.p, cfg.m, cfg.n):
            raise SchemaError("input files use different (p, m, n)")


def _verdict_doc(mode: str, v: duals.DualVerdict) -> dict:
    return {
        "mode": mode,
        "condition_residual": v.condition_residual,
        "reconstruction_residual": v.reconstruction_residual,
        "holds": v.holds,
    }


def cmd_check_dual(args) -> int:
    paths = args.inputs
    if args.multi:
        if len(paths) < 2 or len(paths) % 2:
            raise SchemaError("--multi needs 2k paths: k generators followed by k duals")
    elif len(paths) != 2:
        raise SchemaError("check-dual needs exactly two paths (generator, dual)")
    if args.multi and args.range is not None:
        raise SchemaError("--range cannot be combined with --multi")
    signals = [read_signal(p, args.tol)[0] for p in paths]
    _same_windows(signals)

    if args.range is not None:
        L = args.range
        if L < 0:
            raise SchemaError("--range must be nonnegative")
        phi, phit = signals
        cfg = phi.cfg
        big = ModelConfig(cfg.p, cfg.m + L, cfg.n + L, tol_zero=cfg.tol_zero)
        rep = duals.check_dilation_condition(phi, phit, range(-L, min(L, big.m) + 1), range(-L, L + 1), big)
        doc = {
            "mode": "dilation",
            "window": _config_doc(big),
            "l_range": list(rep.l_range),
            "required": rep.required,
            "exact": rep.exact,
            "residuals": {str(n): r for n, r in rep.residuals.items()},
            "holds": rep.holds,
        }
        _emit(dumps(doc), args.out)
        return EXIT_FAIL if rep.holds is False else EXIT_OK

    if args.multi:
        k = len(signals) // 2
        fam = duals.GeneratorFamily(signals[:k], signals[k:])
        verdict = duals.check_multi_dual(fam)
        cross = duals.check_cross_condition(fam)
        doc = _verdict_doc("multi", verdict)
        doc["cross_condition"] = {"residual": cross.residual, "holds": cross.holds}
    else:
        verdict = duals.check_pair_dual(*signals)
        doc = _verdict_doc("pair", verdict)
    _emit(dumps(doc), args.out)
    return EXIT_OK if verdict.holds else EXIT_FAIL


def random_signal(cfg: ModelConfig, seed: int) -> Signal:
    rng = np.random.default_rng(seed)
    return Signal(cfg, rng.standard_normal(cfg.size) + 1j * rng.standard_normal(cfg.size))


def cmd_oracle_verify(args) -> int:
    if args.input is not None:
        phi, _ = read_signal(args.input, args.tol)
    else:
        if args.seed is None:
            raise SchemaError("oracle-verify needs an input file or --seed")
        phi = random_signal(ModelConfig(args.p, args.m, args.n), args.seed)
    eig, _ = oracle.hermitian_eigen(oracle.gram_matrix(phi))
    P = np.sort(periodization(forward(phi)).values)
    if P[-1] <= 0.0:
        raise DegenerateGeneratorError("periodization vanishes identically")
    deviation = float(np.max(np.abs(eig - P)))
    relative = deviation / float(P[-1])
    doc = {
        "config": _config_doc(phi.cfg),
        "eigenvalues": [float(v) for v in eig],
        "periodization_sorted": [float(v) for v in P],
        "max_deviation": deviation,
        "relative_deviation": relative,
        "holds": relative <= ORACLE_TOL,
    }
    _emit(dumps(doc), args.out)
    return EXIT_OK if relative <= ORACLE_TOL else EXIT_FAIL


def cmd_generate(args) -> int:
    phi = random_signal(ModelConfig(args.p, args.m, args.n), args.seed)
    _emit(dumps(signal_to_dict(phi, f"random seed {args.seed}")), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vilenkin-frames", description="Frames of translates on a finite Vilenkin window.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--tol", type=float, default=None, help="relative zero threshold (default 1e-10)")
        p.add_argument("--out", default=None, help="write the result here instead of stdout")

    p = sub.add_parser("analyze", help="frame bounds and flags of a generator")
    p.add_argument("inputs", nargs="+")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="table", action="store_false", help="JSON report (default)")
    fmt.add_argument("--table", dest="table", action="store_true", help="tab-separated periodization table")
    common(p)
    p.set_defaults(func=cmd_analyze, table=False)

    p = sub.add_parser("dual", help="canonical dual or tight generator")
    p.add_argument("input")
    p.add_argument("--mode", choices=("canonical", "tight"), default="canonical")
    common(p)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("check-dual", help="verify a dual pair, a dual family or the dilation condition")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--multi", action="store_true", help="k generators followed by k duals")
    p.add_argument("--range", type=int, default=None, metavar="L", help="dilation mode with |l|, |n| <= L")
    common(p)
    p.set_defaults(func=cmd_check_dual)

    p = sub.add_parser("oracle-verify", help="compare Gram eigenvalues with the periodization")
    p.add_argument("input", nargs="?")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--n", type=int, default=2)
    common(p)
    p.set_defaults(func=cmd_oracle_verify)

    p = sub.add_parser("generate", help="write a random generator file")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except DegenerateGeneratorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (VilenkinError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
