"""Command-line interface: construct codes, analyze them, run FER sweeps.

Exit codes: 0 success, 2 usage error (argparse), 3 data or parse error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import pscf
from .channel import ChannelSpec
from .construct import build_classical_polar, build_polar_subcode
from .galois import make_field
from .parentcodes import (ebch_check_matrix, generator_from_checks,
                          min_distance_bruteforce)
from .polarize import (bec_reliability, derive_constraints, ga_reliability,
                       make_kernel, sc_error_prob, transform_matrix)
from .simulate import (DEFAULT_MAX_FRAMES, DEFAULT_TARGET_ERRORS, SimReport,
                       run_fer)

EXIT_DATA_ERROR = 3


def _parse_channel(text: str, k: int | None = None, n: int | None = None) -> ChannelSpec:
    """bec:EPS | awgn:ESNO_DB | awgn-eb:EBNO_DB (rate-aware, needs k and n)."""
    kind, _, val = text.partition(":")
    if not val:
        raise ValueError(f"channel {text!r} needs a parameter, e.g. bec:0.5")
    if kind == "bec":
        return ChannelSpec("bec", float(val))
    if kind == "awgn":
        return ChannelSpec("biawgn", float(val))
    if kind == "awgn-eb":
        if k is None or n is None:
            raise ValueError("awgn-eb needs code dimensions for the conversion")
        return ChannelSpec.from_eb_no_db(float(val), k, n)
    raise ValueError(f"unknown channel kind {kind!r}")


def _reliability_profile(channel: ChannelSpec, m: int):
    if channel.kind == "bec":
        return bec_reliability(m, channel.param)
    return ga_reliability(m, channel.noise_sigma)


def cmd_construct(args) -> int:
    m = args.m
    n = 1 << m
    channel = _parse_channel(args.channel, args.k, n)
    profile = _reliability_profile(channel, m)
    if args.parent == "none":
        spec = build_classical_polar(n, args.k, profile)
    else:
        field = make_field(m)
        parent = ebch_check_matrix(field, args.d)
        kernel = make_kernel("arikan", 2)
        parent_cs = derive_constraints(parent, kernel, m)
        spec = build_polar_subcode(parent_cs, profile, args.k,
                                   parent_label=parent.label)
    pscf.save(spec, args.out)
    cs = spec.constraints
    print(f"wrote {args.out}: ({spec.n},{spec.k}) code, "
          f"{len(cs.frozen)} frozen symbols")
    print(f"dynamic equations f={cs.num_dynamic_rows()} "
          f"with T={cs.num_dynamic_terms()} terms")
    return 0


def cmd_analyze(args) -> int:
    spec = pscf.load(args.spec)
    cs = spec.constraints
    print(f"n={spec.n} k={spec.k} kernel={spec.kernel_kind} "
          f"l={spec.l} m={spec.m}")
    if spec.parent_label:
        print(f"parent: {spec.parent_label}")
    if spec.channel_label:
        print(f"construction channel: {spec.channel_label}")
    hist: dict[int, int] = {}
    for j in cs.frozen:
        hist[j.bit_count()] = hist.get(j.bit_count(), 0) + 1
    print("frozen-weight histogram: " +
          " ".join(f"wt{w}:{hist[w]}" for w in sorted(hist)))
    print(f"dynamic equations f={cs.num_dynamic_rows()} "
          f"with T={cs.num_dynamic_terms()} terms")
    if args.channel:
        channel = _parse_channel(args.channel, spec.k, spec.n)
        profile = _reliability_profile(channel, spec.m)
        p = sc_error_prob(profile.as_error_prob(), cs)
        print(f"SC error probability estimate on {channel}: {p:.6g}")
    if spec.k <= args.max_distance_dimension:
        # precoder rows span u-space; map through the transform for codewords
        gen = generator_from_checks(cs.to_matrix())
        a = transform_matrix(make_kernel(spec.kernel_kind, spec.l), spec.m)
        print(f"minimum distance (brute force): "
              f"{min_distance_bruteforce(gen.matmul(a))}")
    return 0


def cmd_simulate(args) -> int:
    spec = pscf.load(args.spec)
    points = [float(x) for x in args.sweep.split(",")]
    rows = [SimReport.csv_header()]
    for p in points:
        if args.channel_kind == "bec":
            channel = ChannelSpec("bec", p)
        elif args.channel_kind == "awgn":
            channel = ChannelSpec("biawgn", p)
        else:
            channel = ChannelSpec.from_eb_no_db(p, spec.k, spec.n)
        report = run_fer(
            spec, args.decoder, channel, seed=args.seed,
            max_frames=args.max_frames,
            target_frame_errors=args.target_errors,
            workers=args.workers,
            code_label=os.path.basename(args.spec))
        rows.append(report.csv_row())
        print(rows[-1])
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("\n".join(rows) + "\n")
    return 0


def _default_workers() -> int:
    env = os.environ.get("PSC_WORKERS")
    if env:
        return int(env)
    return os.cpu_count() or 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="polarsub",
        description="Polar subcodes with dynamic frozen symbols")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a code and write a PSCF file")
    c.add_argument("--parent", default="ebch", choices=["ebch", "none"],
                   help="parent code family (none = classical polar)")
    c.add_argument("--m", type=int, required=True, help="levels: n = 2^m")
    c.add_argument("--d", type=int, help="EBCH design distance")
    c.add_argument("--k", type=int, required=True, help="target dimension")
    c.add_argument("--channel", required=True,
                   help="construction channel: bec:EPS | awgn:ESNO_DB | awgn-eb:EBNO_DB")
    c.add_argument("--out", required=True, help="output PSCF path")
    c.set_defaults(func=cmd_construct)

    a = sub.add_parser("analyze", help="report code structure")
    a.add_argument("spec", help="PSCF file")
    a.add_argument("--channel", help="channel for the SC error estimate")
    a.add_argument("--max-distance-dimension", type=int, default=26,
                   help="brute-force distance bound on k")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("simulate", help="FER sweep, one CSV row per point")
    s.add_argument("spec", help="PSCF file")
    s.add_argument("--decoder", default="sc", help="sc or list:L")
    s.add_argument("--channel-kind", default="awgn-eb",
                   choices=["bec", "awgn", "awgn-eb"])
    s.add_argument("--sweep", required=True,
                   help="comma-separated channel parameters")
    s.add_argument("--seed", type=int, required=True,
                   help="simulation seed (all randomness is derived from it)")
    s.add_argument("--max-frames", type=int, default=DEFAULT_MAX_FRAMES)
    s.add_argument("--target-errors", type=int, default=DEFAULT_TARGET_ERRORS)
    s.add_argument("--workers", type=int, default=_default_workers())
    s.add_argument("--out", required=True, help="output CSV path")
    s.set_defaults(func=cmd_simulate)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "construct":
        if args.parent == "ebch" and args.d is None:
            ap.error("--d is required for an EBCH parent")
    try:
        return args.func(args)
    except (pscf.PscfError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
