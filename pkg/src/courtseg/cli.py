"""Command-line interface: segment, stats, fetch-geo, and the verify workflow."""

import argparse
import json
import os
import socket
import sys
from pathlib import Path

from . import __version__
from .geo import DEFAULT_API_BASE, GeoFetchError, GeoLoadError, fetch_directory
from .jsonl import RecordError, read_segmented_stream
from .pipeline import manifest_path_for, run_segment
from .references import load_known_codes
from .stats import coverage, render_report, report_to_json
from .verification import (
    IncompleteReviewError,
    VerificationSession,
    plan,
    plan_to_dict,
    report,
    report_to_dict,
)

ENV_API_BASE = "COURTSEG_API_BASE"
ENV_UI_DIR = "COURTSEG_UI_DIR"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="courtseg",
        description="Segment German court decision dumps and audit the result.",
    )
    parser.add_argument("--version", action="version", version=f"courtseg {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    seg = sub.add_parser("segment", help="segment a raw JSONL dump")
    seg.add_argument("--input", required=True, help="raw dump (JSONL with HTML content)")
    seg.add_argument("--output", required=True, help="segmented corpus to write (JSONL)")
    seg.add_argument("--states", help="states snapshot file (JSON array)")
    seg.add_argument("--cities", help="cities snapshot file (JSON array)")
    seg.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")
    seg.add_argument("--known-codes", help="extra statute codes, one per line")

    st = sub.add_parser("stats", help="coverage report over a segmented corpus")
    st.add_argument("--input", required=True, help="segmented corpus (JSONL)")
    st.add_argument("--json", action="store_true", help="emit JSON instead of a table")

    geo = sub.add_parser("fetch-geo", help="refresh the states/cities snapshots from the API")
    geo.add_argument(
        "--base-url",
        default=os.environ.get(ENV_API_BASE, DEFAULT_API_BASE),
        help=f"API base URL (or ${ENV_API_BASE})",
    )
    geo.add_argument("--states", required=True, help="states snapshot file to write")
    geo.add_argument("--cities", required=True, help="cities snapshot file to write")

    ver = sub.add_parser("verify", help="sampling-based quality audit")
    vsub = ver.add_subparsers(dest="verify_command", required=True)

    vplan = vsub.add_parser("plan", help="compute the sample size")
    vplan.add_argument("--population", type=int, required=True)
    vplan.add_argument("--confidence", type=float, default=0.95)
    vplan.add_argument("--margin", type=float, default=0.05)
    vplan.add_argument("--assumed-p", type=float, default=0.5)
    vplan.add_argument("--json", action="store_true")

    vsample = vsub.add_parser("sample", help="draw a review sample from a segmented corpus")
    vsample.add_argument("--corpus", required=True, help="segmented corpus (JSONL)")
    vsample.add_argument("--session", required=True, help="session file to create")
    vsample.add_argument("--seed", type=int, default=0)
    vsample.add_argument("--confidence", type=float, default=0.95)
    vsample.add_argument("--margin", type=float, default=0.05)
    vsample.add_argument("--assumed-p", type=float, default=0.5)

    vserve = vsub.add_parser("serve", help="serve the review API and UI")
    vserve.add_argument("--session", required=True)
    vserve.add_argument("--corpus", required=True)
    vserve.add_argument("--port", type=int, default=8765)
    vserve.add_argument("--host", default="127.0.0.1")
    vserve.add_argument(
        "--ui-dir",
        default=os.environ.get(ENV_UI_DIR),
        help=f"built UI assets to serve at / (or ${ENV_UI_DIR}; default: frontend/dist if present)",
    )

    vreport = vsub.add_parser("report", help="point estimate and confidence interval")
    vreport.add_argument("--session", required=True)
    vreport.add_argument("--json", action="store_true")

    return parser


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


def cmd_segment(args) -> int:
    if bool(args.states) != bool(args.cities):
        return _fail("--states and --cities must be given together")
    try:
        known_codes = load_known_codes(args.known_codes) if args.known_codes else None
    except OSError as exc:
        return _fail(f"cannot read known-codes file: {exc}")
    try:
        manifest = run_segment(
            args.input,
            args.output,
            states_file=args.states,
            cities_file=args.cities,
            jobs=args.jobs,
            known_codes=known_codes,
        )
    except (OSError, GeoLoadError) as exc:
        return _fail(str(exc))
    print(
        f"read {manifest.read} records: {manifest.segmented} segmented, "
        f"{manifest.skipped} skipped, {manifest.errors} errors"
    )
    print(f"manifest: {manifest_path_for(args.output)}")
    return 0


def _iter_segmented(path):
    """Stream records from a segmented corpus, warning on bad lines."""
    with open(path, encoding="utf-8") as fh:
        for item in read_segmented_stream(fh):
            if isinstance(item, RecordError):
                print(f"warning: line {item.line_no}: {item.message}", file=sys.stderr)
            else:
                yield item


def cmd_stats(args) -> int:
    try:
        rep = coverage(_iter_segmented(args.input))
    except OSError as exc:
        return _fail(str(exc))
    print(report_to_json(rep) if args.json else render_report(rep))
    return 0


def cmd_fetch_geo(args) -> int:
    try:
        directory = fetch_directory(args.base_url, args.states, args.cities)
    except (GeoFetchError, OSError) as exc:
        return _fail(str(exc))
    print(f"fetched {len(directory.states)} states and {len(directory.cities)} cities")
    print(f"snapshots: {args.states}, {args.cities}")
    return 0


def _print_plan(sampling_plan, as_json: bool) -> None:
    if as_json:
        print(json.dumps(plan_to_dict(sampling_plan), indent=2))
        return
    p = sampling_plan
    print(f"population N:  {p.population_n}")
    print(f"confidence:    {p.confidence}  (z = {p.z})")
    print(f"margin e:      {p.margin_e}")
    print(f"assumed p:     {p.assumed_p}")
    print(f"n0 (infinite): {p.n0:.2f}")
    print(f"n (FPC):       {p.n_real:.2f}")
    print(f"sample size:   {p.n}")


def cmd_verify_plan(args) -> int:
    try:
        sampling_plan = plan(args.population, args.confidence, args.margin, args.assumed_p)
    except ValueError as exc:
        return _fail(str(exc))
    _print_plan(sampling_plan, args.json)
    return 0


def cmd_verify_sample(args) -> int:
    try:
        ids = [rec.id for rec in _iter_segmented(args.corpus)]
    except OSError as exc:
        return _fail(str(exc))
    if not ids:
        return _fail(f"no records in {args.corpus}")
    try:
        sampling_plan = plan(len(ids), args.confidence, args.margin, args.assumed_p)
        session = VerificationSession.create(sampling_plan, ids, args.seed, args.session)
    except (ValueError, OSError) as exc:
        return _fail(str(exc))
    print(f"session {args.session}: {session.plan.n} of {len(ids)} decisions sampled (seed {args.seed})")
    return 0


def _load_session(path: str) -> VerificationSession:
    if not Path(path).is_file():
        raise FileNotFoundError(f"session file not found: {path}")
    return VerificationSession.load(path)


def cmd_verify_serve(args) -> int:
    import uvicorn

    from .review_api import create_app

    try:
        session = _load_session(args.session)
        corpus = {rec.id: rec for rec in _iter_segmented(args.corpus) if session.is_sampled(rec.id)}
    except (OSError, ValueError, KeyError) as exc:
        return _fail(str(exc))
    missing = [i for i in session.sampled_ids if i not in corpus]
    if missing:
        return _fail(f"{len(missing)} sampled ids missing from {args.corpus} (first: {missing[0]})")

    ui_dir = args.ui_dir
    if ui_dir is None and Path("frontend/dist/index.html").is_file():
        ui_dir = "frontend/dist"

    with socket.socket(socket.AF_INET, socket.SOCK_STREAM) as probe:
        try:
            probe.bind((args.host, args.port))
        except OSError as exc:
            return _fail(f"cannot bind {args.host}:{args.port}: {exc}")

    app = create_app(session, corpus, ui_dir)
    print(f"serving review API on http://{args.host}:{args.port}/ ({len(corpus)} cases)")
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def cmd_verify_report(args) -> int:
    try:
        session = _load_session(args.session)
    except (OSError, ValueError, KeyError) as exc:
        return _fail(str(exc))
    try:
        rep = report(session)
    except IncompleteReviewError as exc:
        return _fail(f"incomplete review: {len(exc.missing_ids)} judgments missing")
    if args.json:
        print(json.dumps(report_to_dict(rep), indent=2))
    else:
        print(f"judged n:    {rep.n}")
        print(f"correct k:   {rep.k_correct}")
        print(f"p-hat:       {rep.p_hat:.4f}  ({100 * rep.p_hat:.2f}%)")
        print(f"{int(rep.confidence * 100)}% CI:      ({rep.ci_low:.4f}, {rep.ci_high:.4f})")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "segment":
        return cmd_segment(args)
    if args.command == "stats":
        return cmd_stats(args)
    if args.command == "fetch-geo":
        return cmd_fetch_geo(args)
    if args.command == "verify":
        handler = {
            "plan": cmd_verify_plan,
            "sample": cmd_verify_sample,
            "serve": cmd_verify_serve,
            "report": cmd_verify_report,
        }[args.verify_command]
        return handler(args)
    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
