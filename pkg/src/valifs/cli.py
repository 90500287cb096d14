"""Command-line entry point: ``valifs demo | verify | render``.

Exit codes: 0 holds, 1 fails (a witness is reported), 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import ConfigError, load_config, replay, run_verify
from .demos import DEMOS
from .errors import BudgetExceededError, NotACoveringError, PrecisionError
from .render import render_svg
from .report import VerificationReport

EXIT_HOLDS, EXIT_FAILS, EXIT_INVALID = 0, 1, 2


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_demo(args) -> int:
    kw = {}
    if args.mu is not None:
        kw["mu"] = args.mu
    if args.center is not None:
        kw["center"] = args.center
    ok, text = DEMOS[args.example](**kw)
    sys.stdout.write(text)
    if args.out:
        _write(Path(args.out), text)
    return EXIT_HOLDS if ok else EXIT_FAILS


def cmd_verify(args) -> int:
    cfg = load_config(args.config)
    if args.budget is not None:
        cfg.options["budget"] = args.budget
    if args.replay:
        with open(args.replay, encoding="utf-8") as fh:
            report = VerificationReport.from_json(json.load(fh))
        ok = replay(cfg, report)
        sys.stdout.write(f"certificate replay: {'ok' if ok else 'FAILED'}\n")
        return EXIT_HOLDS if ok else EXIT_FAILS
    report = run_verify(cfg, oracle=args.oracle, max_k=args.max_k)
    text = report.to_text()
    sys.stdout.write(text)
    if args.out:
        out = Path(args.out)
        _write(out, report.dumps())
        _write(out.with_suffix(".txt"), text)
    return EXIT_HOLDS if report.holds else EXIT_FAILS


def cmd_render(args) -> int:
    cfg = load_config(args.config)
    budget = args.budget if args.budget is not None else cfg.budget
    svg = render_svg(cfg.ifs(), cfg.universe(), args.depth, budget)
    if args.out:
        _write(Path(args.out), svg)
    else:
        sys.stdout.write(svg)
    return EXIT_HOLDS


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="valifs", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    d = sub.add_parser("demo", help="reproduce a worked construction")
    d.add_argument("example", type=int, choices=sorted(DEMOS))
    d.add_argument("--mu", type=int, help="block length minus one (demo 4)")
    d.add_argument("--center", help="digit text of the center a (demo 18)")
    d.add_argument("--out", help="also write the report text here")
    d.set_defaults(func=cmd_demo)

    v = sub.add_parser("verify", help="decide SC / SC* for a configured model")
    v.add_argument("--config", required=True)
    v.add_argument("--oracle", action="store_true", help="cross-check with brute-force minimal k")
    v.add_argument("--max-k", type=int, dest="max_k")
    v.add_argument("--budget", type=int, help="cap on exhaustive evaluations")
    v.add_argument("--out", help="JSON report path; text report goes next to it as .txt")
    v.add_argument("--replay", help="re-verify the certificate of an emitted JSON report")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("render", help="SVG of composition images via the Monna map")
    r.add_argument("--config", required=True)
    r.add_argument("--depth", type=int, default=3)
    r.add_argument("--budget", type=int)
    r.add_argument("--out")
    r.set_defaults(func=cmd_render)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        for line in exc.diagnostics:
            print(f"config error: {line}", file=sys.stderr)
        return EXIT_INVALID
    except (NotACoveringError, PrecisionError, BudgetExceededError, ValueError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
