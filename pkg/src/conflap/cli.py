"""Command-line front end.

Exit codes: 0 all cases pass, 1 a mathematical mismatch, 2 usage or parse
error, 3 the composition term cap was exceeded.
"""

import argparse
import os
import re
import sys

from . import flat, numcheck, properties, sphere
from .errors import ConflapError, LimitExceeded, ParseError
from .exactfn import parse_polynomial
from .report import Report

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3

# fixed ranges of the full acceptance run
RN_K_MAX = 4
COMM_W_RANGE = (-3, 3)
COMM_K_MAX = 5
COVARIANCE_N = (2, 3, 4)
COVARIANCE_K = (1, 2)
YAMABE_N = (2, 3, 4)
MAIN_PAIRS = ((2, 1), (2, 2), (2, 3), (4, 1), (4, 2), (3, 1), (3, 2))
SPECTRUM_N = (2, 3, 4)
SPECTRUM_K_MAX = 2
SPECTRUM_L_MAX = 4


class UsageError(ConflapError, ValueError):
    pass


def _w_range(text):
    m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected lo..hi, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _common(p, *, sampling=False):
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--term-cap", type=_positive, help="monomial cap for operator composition")
    if sampling:
        p.add_argument("--samples", type=_positive, default=20)
        p.add_argument("--tol", type=float, default=1e-8)
        p.add_argument("--seed", type=int, default=42)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="conflap",
        description="Exact verification of conformal covariance identities for powers of the Laplacian.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run one exact verifier")
    vsub = verify.add_subparsers(dest="target", required=True)

    p = vsub.add_parser("rn", help="factorized form of Delta^k on R^n as an operator identity")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--apply-to", metavar="EXPR")
    _common(p)

    p = vsub.add_parser("comm", help="commutators of Delta, the Euler field and |y|^2 weights")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--w-range", type=_w_range, default=COMM_W_RANGE, metavar="LO..HI")
    p.add_argument("--k-max", type=int, default=COMM_K_MAX)
    p.add_argument("--apply-to", metavar="EXPR")
    p.add_argument("--inject-bug", action="store_true", help=argparse.SUPPRESS)
    _common(p)

    p = vsub.add_parser("covariance", help="covariance of Delta^k under conformal motions of R^n")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--motion", default="all", help="motion name such as inversion or dilation.inversion, or all")
    p.add_argument("--max-degree", type=int)
    p.add_argument("--radical", choices=("on", "off", "auto"), default="auto")
    p.add_argument("--apply-to", metavar="EXPR")
    _common(p)

    p = vsub.add_parser("conformality", help="inverse stereographic projection is conformal")
    p.add_argument("--n", type=int, default=2)
    _common(p)

    for name, helptext, default_k in (
        ("yamabe", "the second-order sphere intertwining identity", None),
        ("main", "the sphere intertwining identity for prod(Delta_S - c_j)", 1),
    ):
        p = vsub.add_parser(name, help=helptext)
        p.add_argument("--n", type=int, default=2)
        if default_k is not None:
            p.add_argument("--k", type=int, default=default_k)
        p.add_argument("--max-degree", type=int)
        p.add_argument("--radical", choices=("on", "off", "auto"), default="auto")
        p.add_argument("--apply-to", metavar="EXPR")
        _common(p)

    p = sub.add_parser("spectrum", help="eigenvalues of the sphere operator on explicit harmonics")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--l-max", type=int, default=SPECTRUM_L_MAX)
    _common(p)

    p = sub.add_parser("numcheck", help="floating-point shadow of an exact verifier")
    p.add_argument(
        "target",
        nargs="?",
        default="fd",
        choices=("fd", "rn", "comm", "covariance", "conformality", "yamabe", "main", "spectrum"),
    )
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--w-range", type=_w_range, default=COMM_W_RANGE, metavar="LO..HI")
    p.add_argument("--k-max", type=int, default=COMM_K_MAX)
    p.add_argument("--l-max", type=int, default=SPECTRUM_L_MAX)
    p.add_argument("--motion", default="all")
    p.add_argument("--max-degree", type=int)
    _common(p, sampling=True)

    p = sub.add_parser("all", help="the full acceptance run")
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--k-max", type=int, default=3)
    p.add_argument("--instances", type=_positive, default=properties.DEFAULT_INSTANCES)
    _common(p, sampling=True)
    return parser


def _fix_negative_values(argv):
    # argparse reads "-3..3" as an option; glue it to its flag
    out = []
    i = 0
    while i < len(argv):
        if argv[i] == "--w-range" and i + 1 < len(argv):
            out.append(f"--w-range={argv[i + 1]}")
            i += 2
            continue
        out.append(argv[i])
        i += 1
    return out


def _need(cond, message):
    if not cond:
        raise UsageError(message)


def _check_nk(args, need_k=True):
    _need(args.n >= 1, "--n must be >= 1")
    if need_k and hasattr(args, "k"):
        _need(args.k >= 1, "--k must be >= 1 (k is a natural number)")


def _user_function(args, nvars):
    text = getattr(args, "apply_to", None)
    if text is None:
        return None
    return parse_polynomial(text, nvars)


def _motions(name, n):
    if name == "all":
        return flat.motion_family(n)
    return [flat.motion_by_name(name, n)]


def _cfg(args):
    return numcheck.SampleConfig(sample_count=args.samples, tolerance=args.tol, seed=args.seed)


def _merge(command, params, reports, seed=None):
    out = Report(command, params, seed=seed)
    for r in reports:
        out.merge(r)
    return out


def run_verify(args):
    t = args.target
    _check_nk(args)
    f = _user_function(args, args.n)
    if t == "rn":
        return flat.verify_rn(args.n, args.k, apply_to=f)
    if t == "comm":
        _need(args.k_max >= 1, "--k-max must be >= 1")
        return flat.verify_commutators(args.n, args.w_range, args.k_max, inject_bug=args.inject_bug, apply_to=f)
    if t == "covariance":
        fns = None if f is None else [f]
        reports = [
            flat.verify_translaw(args.n, args.k, m, args.max_degree, fns, radical=args.radical)
            for m in _motions(args.motion, args.n)
        ]
        params = {"n": args.n, "k": args.k, "motion": args.motion, "radical": args.radical}
        return _merge("verify covariance", params, reports)
    if t == "conformality":
        return sphere.verify_conformality(args.n)
    fns = None if f is None else [f]
    if t == "yamabe":
        return sphere.verify_yamabe(args.n, 3 if args.max_degree is None else args.max_degree, args.radical, fns)
    return sphere.verify_main(args.n, args.k, args.max_degree, args.radical, fns)


def run_spectrum(args):
    _check_nk(args)
    _need(args.l_max >= 0, "--l-max must be >= 0")
    return sphere.spectrum(args.n, args.k, args.l_max)


def run_numcheck(args):
    cfg = _cfg(args)
    t = args.target
    if t == "fd":
        return numcheck.fd_suite(seed=args.seed)
    _check_nk(args)
    if t == "rn":
        return numcheck.shadow_rn(args.n, args.k, cfg)
    if t == "comm":
        return numcheck.shadow_comm(args.n, args.w_range, args.k_max, cfg)
    if t == "covariance":
        reports = [numcheck.shadow_covariance(args.n, args.k, m, args.max_degree, cfg) for m in _motions(args.motion, args.n)]
        return _merge("numcheck covariance", {"n": args.n, "k": args.k, "motion": args.motion}, reports, cfg.seed)
    if t == "conformality":
        return numcheck.shadow_conformality(args.n, cfg)
    if t == "yamabe":
        return numcheck.shadow_main(args.n, 1, 3 if args.max_degree is None else args.max_degree, cfg, command="yamabe")
    if t == "main":
        return numcheck.shadow_main(args.n, args.k, args.max_degree, cfg)
    return numcheck.shadow_spectrum(args.n, args.k, args.l_max, cfg)


def run_all(args):
    """Every acceptance run whose dimensions fit under --n-max and --k-max."""
    _need(args.n_max >= 1, "--n-max must be >= 1")
    _need(args.k_max >= 1, "--k-max must be >= 1")
    cfg = _cfg(args)
    N, K = args.n_max, args.k_max
    report = Report(
        "all",
        {"n_max": N, "k_max": K, "samples": cfg.sample_count, "tol": cfg.tolerance, "instances": args.instances},
        seed=cfg.seed,
    )
    for n in range(1, N + 1):
        for k in range(1, min(K, RN_K_MAX) + 1):
            report.merge(flat.verify_rn(n, k))
            report.merge(numcheck.shadow_rn(n, k, cfg))
        report.merge(flat.verify_commutators(n, COMM_W_RANGE, COMM_K_MAX))
        report.merge(numcheck.shadow_comm(n, COMM_W_RANGE, COMM_K_MAX, cfg))
        report.merge(sphere.verify_conformality(n))
        report.merge(numcheck.shadow_conformality(n, cfg))
    for n in (n for n in COVARIANCE_N if n <= N):
        for k in (k for k in COVARIANCE_K if k <= K):
            for m in flat.motion_family(n):
                report.merge(flat.verify_translaw(n, k, m))
                report.merge(numcheck.shadow_covariance(n, k, m, cfg=cfg))
    for n in (n for n in YAMABE_N if n <= N):
        report.merge(sphere.verify_yamabe(n))
        report.merge(numcheck.shadow_main(n, 1, 3, cfg, command="yamabe"))
    for n, k in MAIN_PAIRS:
        if n <= N and k <= K:
            report.merge(sphere.verify_main(n, k))
            report.merge(numcheck.shadow_main(n, k, cfg=cfg))
    for n in (n for n in SPECTRUM_N if n <= N):
        for k in range(1, min(K, SPECTRUM_K_MAX) + 1):
            report.merge(sphere.spectrum(n, k, SPECTRUM_L_MAX))
            report.merge(numcheck.shadow_spectrum(n, k, SPECTRUM_L_MAX, cfg))
    report.merge(properties.run_all(args.instances, cfg.seed))
    report.merge(numcheck.fd_suite(seed=cfg.seed))
    report.data = {}
    return report


DISPATCH = {"verify": run_verify, "spectrum": run_spectrum, "numcheck": run_numcheck, "all": run_all}


def exit_code(report):
    return {"pass": EXIT_PASS, "fail": EXIT_FAIL, "limit": EXIT_LIMIT}[report.status]


def render(report, fmt):
    return report.to_json() if fmt == "json" else report.to_text()


def run(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_fix_negative_values(argv))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    saved_cap = os.environ.get("CONFLAP_TERM_CAP")
    if args.term_cap is not None:
        os.environ["CONFLAP_TERM_CAP"] = str(args.term_cap)
    try:
        report = DISPATCH[args.command](args)
    except ParseError as exc:
        print(f"conflap: cannot parse --apply-to: {exc}", file=err)
        return EXIT_USAGE
    except LimitExceeded as exc:
        print(f"conflap: {exc}", file=err)
        return EXIT_LIMIT
    except ValueError as exc:
        print(f"conflap: usage error: {exc}", file=err)
        return EXIT_USAGE
    finally:
        if args.term_cap is not None:
            if saved_cap is None:
                os.environ.pop("CONFLAP_TERM_CAP", None)
            else:
                os.environ["CONFLAP_TERM_CAP"] = saved_cap
    print(render(report, args.format), file=out)
    return exit_code(report)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
