"""Command line: ``veritas verify ...`` and ``veritas export NAME PATH``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import pipeline
from .pipeline import Choices, ClaimRecord


def _fmt(x) -> str:
    return json.dumps(x, separators=(",", ":")) if not isinstance(x, str) else x


def text_report(records: list[ClaimRecord], manifest: dict) -> str:
    lines = [
        f"veritas {manifest['tool_version']}  manifest {manifest['manifest_hash']}  "
        f"p={manifest['p']['index']}  tau={manifest['tau']}",
        "",
        f"{'claim':<28} {'status':<6} expected / observed",
    ]
    for r in records:
        lines.append(f"{r.id:<28} {r.status.upper():<6} {_fmt(r.expected)} / {_fmt(r.observed)}")
    passed = sum(r.passed for r in records)
    lines += ["", f"{passed}/{len(records)} claims pass"]
    return "\n".join(lines) + "\n"


def json_report(records: list[ClaimRecord], manifest: dict) -> str:
    body = {
        "manifest": manifest,
        "claims": [r.to_json() for r in records],
        "summary": {
            "total": len(records),
            "passed": sum(r.passed for r in records),
            "failed": [r.id for r in records if not r.passed],
        },
    }
    return json.dumps(body, sort_keys=True, indent=2) + "\n"


def cmd_verify(args) -> int:
    try:
        ids = pipeline.resolve(args.claims)
    except KeyError as exc:
        print(f"error: {exc.args[0]}; known claims: {', '.join(pipeline.REGISTRY)}", file=sys.stderr)
        return 2
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    choices = Choices(alt_p=args.alt_p, alt_tau=args.alt_tau)
    pipe, records = pipeline.run(ids, choices, jobs=args.jobs, out_dir=out)
    manifest = pipe.manifest
    text = text_report(records, manifest)
    (out / "report.json").write_text(json_report(records, manifest))
    (out / "report.txt").write_text(text)
    (out / "timings.json").write_text(
        json.dumps({r.id: round(r.elapsed_ms, 1) for r in records}, indent=2) + "\n"
    )
    if args.emit in ("text", "both"):
        sys.stdout.write(text)
    if args.emit in ("json", "both"):
        sys.stdout.write(json_report(records, manifest))
    return 0 if all(r.passed for r in records) else 1


def cmd_export(args) -> int:
    if args.name not in pipeline.EXPORT_NAMES:
        print(f"error: unknown complex {args.name!r}; valid names: {', '.join(pipeline.EXPORT_NAMES)}", file=sys.stderr)
        return 2
    cx = pipeline.Pipeline().export(args.name)
    path = Path(args.path)
    path.parent.mkdir(parents=True, exist_ok=True)
    cx.save(path)
    print(f"{args.name}: {cx.num_vertices} vertices, {len(cx)} maximal simplices -> {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="veritas", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true", help="log pipeline progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run claims and write report.json / report.txt")
    v.add_argument("claims", nargs="*", default=["all"], help="'all', claim ids, or Cnn prefixes")
    v.add_argument("--out", default="veritas-out", help="output and cache directory")
    v.add_argument("--jobs", type=int, default=1, help="worker processes for parallel stages")
    v.add_argument("--alt-p", action="store_true", help="use the alternative order-5 element")
    v.add_argument("--alt-tau", action="store_true", help="use the alternative odd permutation")
    v.add_argument("--emit", choices=("json", "text", "both"), default="text")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("export", help="write a complex as canonical JSON")
    e.add_argument("name", help=", ".join(pipeline.EXPORT_NAMES))
    e.add_argument("path")
    e.set_defaults(func=cmd_export)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except Exception as exc:  # internal error, not a claim failure
        logging.getLogger(__name__).exception("internal error")
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
