"""``linsan`` command line: inspect, mechanize, sweep, sanitize.

Exit codes: 0 success, 2 parse/usage, 3 domain, 4 internal infeasibility,
5 records that do not match the mechanism.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager

import numpy as np

from . import io as lio
from .errors import LinsanError, LpInfeasible, ValidationError
from .nonmarkov import induced_channel, verify_realization
from .privacy import privacy_report
from .reduction import check_alpha
from .sanitize import RNG_ID, Sanitizer
from .sweep import DISTORTION, FAMILIES, MARKOV, build_mechanism, parse_grid, sweep, write_tsv
from .utility import DistortionMatrix, utility_report


@contextmanager
def _output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _distortion(args, j):
    if args.distortion:
        return lio.read_distortion(args.distortion, j.x_alphabet)
    return DistortionMatrix.hamming(j.shape[1])


def cmd_inspect(args) -> int:
    j = lio.load_joint(args.input, args.format)
    if args.alpha is None:
        priv = privacy_report(j, None, args.base)
        channel = np.eye(j.shape[1])
        family = "identity"
    else:
        priv = privacy_report(j, args.alpha, args.base)
        m = build_mechanism(j, args.alpha, args.family, _distortion(args, j))
        channel = induced_channel(m, j)
        family = args.family
    util = utility_report(channel, j.p_x, _distortion(args, j))
    report = {
        "family": family,
        "alpha": args.alpha,
        "base": args.base,
        "p_s": dict(zip(j.s_alphabet, j.p_s.tolist())),
        "p_x": dict(zip(j.x_alphabet, j.p_x.tolist())),
        "ldp": priv.ldp,
        "log_lift": priv.log_lift,
        "loglift_witness": {"x": priv.loglift_argmax[0], "s": priv.loglift_argmax[1]},
        "ldp_first_order": priv.ldp_first_order,
        "loglift_first_order": priv.loglift_first_order,
        "dtv_half": util.dtv_half,
        "dtv_full": util.dtv_full,
        "expected_distortion": util.expected_distortion,
        "entropy_x_bits": util.entropy_x_bits,
        "mutual_information_bits": util.mutual_information_bits,
        "utility_loss_bits": util.utility_loss_bits,
    }
    if args.json:
        print(json.dumps(report, indent=2))
        return 0
    for key, value in report.items():
        if isinstance(value, dict):
            value = " ".join(f"{k}={v:.9g}" if isinstance(v, float) else f"{k}={v}" for k, v in value.items())
        elif isinstance(value, float):
            value = f"{value:.9g}"
        print(f"{key}\t{value}")
    return 0


def cmd_mechanize(args) -> int:
    alpha = check_alpha(args.alpha)
    if args.family == DISTORTION and not args.distortion:
        raise ValidationError("--distortion is required for the nonmarkov_distortion family")
    j = lio.load_joint(args.input, args.format)
    d = _distortion(args, j) if args.family == DISTORTION else None
    m = build_mechanism(j, alpha, args.family, d)
    report = verify_realization(m, j, alpha)
    if not report.passed:
        raise LpInfeasible(f"constructed mechanism fails the realization check: {report}")
    meta = {
        "alpha": repr(alpha),
        "family": args.family,
        "base": args.base,
        "rng": RNG_ID,
        "input_sha256": lio.file_sha256(args.input),
    }
    with _output(args.out) as fh:
        lio.write_mechanism(fh, m, meta)
    return 0


def cmd_sweep(args) -> int:
    j = lio.load_joint(args.input, args.format)
    alphas = parse_grid(args.grid)
    families = [f.strip() for f in args.family.split(",") if f.strip()]
    points = sweep(j, alphas, families, _distortion(args, j), args.base)
    with _output(args.out) as fh:
        write_tsv(fh, points)
    return 0


def cmd_sanitize(args) -> int:
    m, _ = lio.read_mechanism(args.mechanism)
    records = lio.read_records(args.records)
    lio.check_records(records, m)
    ys = Sanitizer(m, args.seed).sanitize(records)
    with _output(args.out) as fh:
        fh.write(f"# seed={args.seed}\n# rng={RNG_ID}\n")
        fh.write(f"# mechanism_sha256={lio.file_sha256(args.mechanism)}\n")
        fh.write("y_label\n")
        fh.write("".join(y + "\n" for y in ys))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="linsan", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("input", help="joint, conditional or records CSV")
            p.add_argument("--format", choices=lio.FORMATS, default="auto")
        p.add_argument("--base", choices=("bits", "nats"), default="bits")

    p = sub.add_parser("inspect", help="privacy and utility report")
    common(p)
    p.add_argument("--alpha", type=float, help="report the release at this reduction level")
    p.add_argument("--family", choices=FAMILIES, default=MARKOV)
    p.add_argument("--distortion", help="CSV x_in,x_out,cost (default Hamming)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("mechanize", help="write a mechanism file")
    common(p)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--family", choices=FAMILIES, default=MARKOV)
    p.add_argument("--distortion", help="CSV x_in,x_out,cost")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_mechanize)

    p = sub.add_parser("sweep", help="tradeoff TSV over an alpha grid")
    common(p)
    p.add_argument("--grid", default="0.011:1.0:0.05", help="start:stop:step or a,b,c")
    p.add_argument("--family", default=f"{MARKOV},nonmarkov_tv", help="comma-separated families")
    p.add_argument("--distortion", help="CSV x_in,x_out,cost (default Hamming)")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("sanitize", help="randomize a records file")
    p.add_argument("records", help="CSV s_label,x_label")
    p.add_argument("--mechanism", required=True, help="mechanism file from 'mechanize'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_sanitize)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except LinsanError as exc:
        print(f"linsan: error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
