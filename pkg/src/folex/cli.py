"""Command-line front end.  JSON on stdout, diagnostics on stderr.

Exit codes: 0 success, 1 ``--assert`` mismatch or failing corpus, 2 usage or
input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Dict, List, Optional, Sequence

from . import corpus, reports

# command -> [(flag, options)]
_F = ("--f", {"required": True, "help": "fermat:<n>:<d>, quadric:<n> or a homogeneous polynomial"})
_N = ("--n", {"help": "ambient dimension (for inline inputs)"})
_OMEGA = ("--omega", {"required": True, "help": "catalog name or form text"})

FLAGS: Dict[str, List[tuple]] = {
    "dims": [("--n", {"required": True}), ("--q", {"required": True}), ("--k", {"required": True})],
    "kernel": [_F, ("--q", {"required": True}), ("--k", {"required": True}), _N,
               ("--basis", {"action": "store_true", "help": "print the kernel basis"})],
    "invariant": [_F, _OMEGA, _N],
    "restrict-zero": [_F, _OMEGA, _N],
    "saturate": [_OMEGA, _N],
    "integrable": [_OMEGA, _N],
    "decomposable": [_OMEGA, _N, ("--check-integrability", {"action": "store_true"})],
    "extend": [_F, ("--beta", {"required": True}), _N],
    "extend-dist": [_F, ("--beta", {"required": True}), _N],
    "certify-nonextension": [_F, ("--beta", {"required": True}), _N],
    "trivial-extend": [_OMEGA, _N],
    "roundtrip": [_F, ("--alpha", {"required": True}), _N],
    "poincare": [_F, _OMEGA, _N],
    "gauss": [_F, ("--point", {"required": True}), _N],
    "sff-rank": [_F, ("--point", {"required": True}), _N],
    "morse": [_F, ("--g", {"required": True}), ("--point", {"required": True}), ("--chart", {"default": "0"}), _N,
              ("--denominator", {}), ("--lambda-family", {"metavar": "K"}),
              ("--lambda-check", {"metavar": "L1,L2,..."})],
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="folex", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--human", action="store_true", help="render a table instead of JSON")
    common.add_argument("--assert", dest="expected", metavar="EXPECTED", help="exit 1 unless the verdict matches")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, flags in FLAGS.items():
        p = sub.add_parser(name, parents=[common])
        for flag, opts in flags:
            p.add_argument(flag, **opts)
    c = sub.add_parser("corpus", parents=[common], help="replay the example corpus")
    c.add_argument("--dir", help="directory of case files (default: shipped corpus)")
    return parser


def _flatten(prefix: str, value: Any, rows: List[tuple]) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else k, v, rows)
    else:
        rows.append((prefix, value if isinstance(value, str) else json.dumps(value)))


def render_human(report: Dict[str, Any]) -> str:
    rows: List[tuple] = []
    _flatten("", report, rows)
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def render_json(report: Dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args = {k.replace("-", "_"): v for k, v in vars(ns).items() if k not in ("command", "human", "expected")}
    code = 0
    try:
        if ns.command == "corpus":
            report, code = corpus.run_corpus(args.get("dir"))
        else:
            report = reports.run(ns.command, {k: v for k, v in args.items() if v is not None})
    except ValueError as exc:
        print(f"folex {ns.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    print(render_human(report) if ns.human else render_json(report))
    if ns.expected is not None:
        got = reports.verdict_text(report.get("verdict"))
        if got.lower() != ns.expected.lower():
            print(f"assertion failed: verdict {got!r}, expected {ns.expected!r}", file=sys.stderr)
            return 1
    return code


if __name__ == "__main__":
    sys.exit(main())
